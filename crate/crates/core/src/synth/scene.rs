//! Scene layout: non-overlapping actors on a flat ground plane.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::classes::ClassTable;
use crate::context::Context;
use crate::geometry::{bev_iou, Box3D, SensorPose};

/// Placement parameters for actor sampling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SceneConfig {
    pub n_actors_min: usize,
    pub n_actors_max: usize,
    /// Actors are placed with |x|, |y| below this extent.
    pub placement_extent: f32,
    /// Keep-out radius around the sensor rig.
    pub min_origin_distance: f32,
    /// Placement retries per actor before giving up on it.
    pub max_attempts: usize,
}

impl Default for SceneConfig {
    fn default() -> Self {
        SceneConfig {
            n_actors_min: 6,
            n_actors_max: 14,
            placement_extent: 28.0,
            min_origin_distance: 4.0,
            max_attempts: 50,
        }
    }
}

/// Everything needed to lay out one deterministic scene.
#[derive(Clone, Debug)]
pub struct SceneSpec {
    pub seed: u64,
    pub context: Context,
    pub n_actors: usize,
    pub config: SceneConfig,
    pub classes: ClassTable,
}

/// Ego pose plus ground-truth actors.
#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub ego: SensorPose<f32>,
    pub actors: Vec<Box3D<f32>>,
}

/// Samples actors without BEV overlap. Placement failures after the
/// configured retries reduce the actor count rather than looping forever.
pub fn generate_scene(spec: &SceneSpec) -> Scene {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut actors: Vec<Box3D<f32>> = Vec::with_capacity(spec.n_actors);
    let total_weight = spec.classes.total_weight();
    let ext = spec.config.placement_extent;

    for _ in 0..spec.n_actors {
        'attempts: for _ in 0..spec.config.max_attempts {
            let mut pick = rng.gen_range(0.0..total_weight);
            let mut class_id = spec.classes.len() - 1;
            for (i, class) in spec.classes.classes.iter().enumerate() {
                if pick < class.weight {
                    class_id = i;
                    break;
                }
                pick -= class.weight;
            }
            let class = &spec.classes.classes[class_id];
            let mut extent = [0.0f32; 3];
            for a in 0..3 {
                let jitter = class.extent_jitter[a];
                let delta = if jitter > 0.0 {
                    rng.gen_range(-jitter..=jitter)
                } else {
                    0.0
                };
                extent[a] = (class.extent_mean[a] + delta).max(0.05);
            }
            let x = rng.gen_range(-ext..=ext);
            let y = rng.gen_range(-ext..=ext);
            let yaw = rng.gen_range(-std::f32::consts::PI..=std::f32::consts::PI);
            if (x * x + y * y).sqrt() < spec.config.min_origin_distance {
                continue 'attempts;
            }
            let candidate = Box3D::new([x, y, extent[2] / 2.0], extent, yaw, class_id)
                .expect("sampled extent is positive");
            if actors.iter().any(|a| bev_iou(a, &candidate) > 0.0) {
                continue 'attempts;
            }
            actors.push(candidate);
            break 'attempts;
        }
    }

    Scene {
        ego: SensorPose::identity(),
        actors,
    }
}
