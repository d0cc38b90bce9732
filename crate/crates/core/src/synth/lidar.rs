//! Spinning-lidar simulation with rain scattering and attenuation.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::raycast::cast;
use super::scene::Scene;
use crate::context::Context;
use crate::geometry::{Point, PointCloud};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LidarConfig {
    /// Azimuthal rays per elevation ring.
    pub azimuth_count: usize,
    /// Elevation rings.
    pub elevation_count: usize,
    /// Elevation span in radians, lowest to highest ring.
    pub elevation_min: f32,
    pub elevation_max: f32,
    /// Sensor mount height above ground.
    pub mount_z: f32,
    pub max_range: f32,
    /// Intensity decay constant exp(-r/r0) in clear weather.
    pub r0_clear: f32,
    /// Reduced decay constant while raining.
    pub r0_rain: f32,
    /// Per-ray probability of scattering into a false droplet return.
    pub p_scatter: f32,
    /// Per-ray probability of dropping entirely in rain.
    pub p_drop: f32,
    /// Range span of scattered droplet returns, meters.
    pub scatter_range_min: f32,
    pub scatter_range_max: f32,
}

impl Default for LidarConfig {
    fn default() -> Self {
        LidarConfig {
            azimuth_count: 360,
            elevation_count: 8,
            elevation_min: -20.0_f32.to_radians(),
            elevation_max: 2.0_f32.to_radians(),
            mount_z: 1.8,
            max_range: 120.0,
            r0_clear: 60.0,
            r0_rain: 40.0,
            p_scatter: 0.08,
            p_drop: 0.10,
            scatter_range_min: 1.0,
            scatter_range_max: 15.0,
        }
    }
}

/// Per-simulation ray accounting, used by the context-asymmetry checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LidarStats {
    pub rays: usize,
    pub returns: usize,
    pub scattered: usize,
    pub dropped: usize,
}

/// Casts `azimuth_count * elevation_count` rays from the sensor and keeps
/// the nearest box or ground hit per ray, with intensity exp(-r/r0).
///
/// Rain makes each ray independently drop (p_drop), scatter into a false
/// return at uniform range (p_scatter, evaluated when not dropped), and
/// lowers r0. Night has no effect on lidar: the night flag is never read
/// here, so toggling it cannot change the output.
pub fn simulate_lidar(
    scene: &Scene,
    context: Context,
    cfg: &LidarConfig,
    rng: &mut impl Rng,
) -> PointCloud<f32> {
    simulate_lidar_with_stats(scene, context, cfg, rng).0
}

pub fn simulate_lidar_with_stats(
    scene: &Scene,
    context: Context,
    cfg: &LidarConfig,
    rng: &mut impl Rng,
) -> (PointCloud<f32>, LidarStats) {
    let origin = [0.0, 0.0, cfg.mount_z];
    let r0 = if context.is_rain { cfg.r0_rain } else { cfg.r0_clear };
    let mut points = Vec::new();
    let mut stats = LidarStats::default();

    let elevations: Vec<f32> = (0..cfg.elevation_count)
        .map(|i| {
            if cfg.elevation_count == 1 {
                cfg.elevation_min
            } else {
                cfg.elevation_min
                    + (cfg.elevation_max - cfg.elevation_min) * i as f32
                        / (cfg.elevation_count - 1) as f32
            }
        })
        .collect();

    for ring in &elevations {
        let (se, ce) = ring.sin_cos();
        for az_idx in 0..cfg.azimuth_count {
            stats.rays += 1;
            let az = 2.0 * std::f32::consts::PI * az_idx as f32 / cfg.azimuth_count as f32;
            let (sa, ca) = az.sin_cos();
            let dir = [ce * ca, ce * sa, se];

            if context.is_rain {
                let drop = rng.gen::<f32>() < cfg.p_drop;
                let scatter = rng.gen::<f32>() < cfg.p_scatter;
                if drop {
                    stats.dropped += 1;
                    continue;
                }
                if scatter {
                    let r = rng.gen_range(cfg.scatter_range_min..=cfg.scatter_range_max);
                    points.push(ray_point(origin, dir, r, r0));
                    stats.scattered += 1;
                    stats.returns += 1;
                    continue;
                }
            }

            if let Some((t, _surface)) = cast(origin, dir, &scene.actors, cfg.max_range) {
                points.push(ray_point(origin, dir, t, r0));
                stats.returns += 1;
            }
        }
    }

    let cloud = PointCloud::new(points).expect("simulated returns are finite and in range");
    (cloud, stats)
}

fn ray_point(origin: [f32; 3], dir: [f32; 3], r: f32, r0: f32) -> Point<f32> {
    Point {
        x: origin[0] + dir[0] * r,
        y: origin[1] + dir[1] * r,
        z: origin[2] + dir[2] * r,
        intensity: (-r / r0).exp().clamp(0.0, 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Box3D, SensorPose};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn one_box_scene() -> Scene {
        Scene {
            ego: SensorPose::identity(),
            actors: vec![Box3D::new([12.0, 0.0, 1.25], [2.0, 6.0, 2.5], 0.0, 0).unwrap()],
        }
    }

    #[test]
    fn clear_weather_has_no_scatter() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (_, stats) = simulate_lidar_with_stats(
            &one_box_scene(),
            Context::DAY_CLEAR,
            &LidarConfig::default(),
            &mut rng,
        );
        assert_eq!(stats.scattered, 0);
        assert_eq!(stats.dropped, 0);
        assert!(stats.returns > 0);
    }

    #[test]
    fn front_box_returns_match_raycast_oracle() {
        // Day+clear, one large box ahead: every emitted point must match an
        // independent per-ray nearest-hit search, and the box face must show
        // up as a contiguous azimuth arc per ring.
        let scene = one_box_scene();
        let cfg = LidarConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cloud = simulate_lidar(&scene, Context::DAY_CLEAR, &cfg, &mut rng);

        let origin = [0.0, 0.0, cfg.mount_z];
        let mut expected = Vec::new();
        for ring in 0..cfg.elevation_count {
            let el = cfg.elevation_min
                + (cfg.elevation_max - cfg.elevation_min) * ring as f32
                    / (cfg.elevation_count - 1) as f32;
            for az_idx in 0..cfg.azimuth_count {
                let az = 2.0 * std::f32::consts::PI * az_idx as f32 / cfg.azimuth_count as f32;
                let dir = [el.cos() * az.cos(), el.cos() * az.sin(), el.sin()];
                // Oracle: fine marching to bracket the nearest surface, then
                // bisection refinement, independent of the slab-test path.
                if let Some(t) = marching_oracle(origin, dir, &scene, cfg.max_range) {
                    expected.push((origin[0] + dir[0] * t, origin[1] + dir[1] * t, t));
                }
            }
        }
        assert_eq!(cloud.len(), expected.len());
        for (p, (ex, ey, et)) in cloud.points.iter().zip(&expected) {
            assert!((p.x - ex).abs() < 1e-3, "x {} vs {}", p.x, ex);
            assert!((p.y - ey).abs() < 1e-3);
            let r = ((p.x).powi(2) + (p.y).powi(2) + (p.z - cfg.mount_z).powi(2)).sqrt();
            assert!((r - et).abs() < 1e-3);
        }
    }

    fn inside_box_or_below_ground(p: [f32; 3], scene: &Scene) -> bool {
        if p[2] <= 0.0 {
            return true;
        }
        scene.actors.iter().any(|b| {
            let (s, c) = b.yaw.sin_cos();
            let dx = p[0] - b.center[0];
            let dy = p[1] - b.center[1];
            let lx = c * dx + s * dy;
            let ly = -s * dx + c * dy;
            lx.abs() <= b.extent[0] / 2.0
                && ly.abs() <= b.extent[1] / 2.0
                && (p[2] - b.center[2]).abs() <= b.extent[2] / 2.0
        })
    }

    fn marching_oracle(origin: [f32; 3], dir: [f32; 3], scene: &Scene, max_range: f32) -> Option<f32> {
        let step = 0.01;
        let mut t = super::super::raycast::T_NEAR;
        while t < max_range {
            let p = [origin[0] + dir[0] * t, origin[1] + dir[1] * t, origin[2] + dir[2] * t];
            if inside_box_or_below_ground(p, scene) {
                // Bisect between t-step (outside) and t (inside).
                let mut lo = t - step;
                let mut hi = t;
                for _ in 0..40 {
                    let mid = 0.5 * (lo + hi);
                    let pm = [
                        origin[0] + dir[0] * mid,
                        origin[1] + dir[1] * mid,
                        origin[2] + dir[2] * mid,
                    ];
                    if inside_box_or_below_ground(pm, scene) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                return Some(0.5 * (lo + hi));
            }
            t += step;
        }
        None
    }

    #[test]
    fn rain_scatter_fraction_within_binomial_ci() {
        // 100k rays; scattered fraction ~ Binomial(n, p_scatter*(1-p_drop)).
        let cfg = LidarConfig {
            azimuth_count: 12500,
            ..LidarConfig::default()
        };
        let scene = one_box_scene();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (cloud, stats) = simulate_lidar_with_stats(&scene, Context::DAY_RAIN, &cfg, &mut rng);
        let n = stats.rays as f64;
        let p = (cfg.p_scatter * (1.0 - cfg.p_drop)) as f64;
        let sd = (n * p * (1.0 - p)).sqrt();
        let got = stats.scattered as f64;
        assert!(
            (got - n * p).abs() < 2.576 * sd,
            "scattered {got} outside 99% CI around {}",
            n * p
        );
        assert!(cloud.len() > 0);
    }

    #[test]
    fn scattered_points_lie_within_configured_range() {
        let cfg = LidarConfig::default();
        let scene = Scene {
            ego: SensorPose::identity(),
            actors: vec![],
        };
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (cloud, stats) = simulate_lidar_with_stats(&scene, Context::NIGHT_RAIN, &cfg, &mut rng);
        // Empty scene: rays only return when scattered or when they hit ground.
        assert!(stats.scattered > 0);
        let origin_z = cfg.mount_z;
        for p in &cloud.points {
            let r = (p.x.powi(2) + p.y.powi(2) + (p.z - origin_z).powi(2)).sqrt();
            let is_scatterish = r <= cfg.scatter_range_max + 1e-3;
            let is_ground = p.z.abs() < 1e-3;
            assert!(is_scatterish || is_ground, "return at range {r} is neither");
            if !is_ground {
                assert!(r >= cfg.scatter_range_min - 1e-3);
            }
        }
    }

    #[test]
    fn night_flag_never_changes_lidar() {
        let scene = one_box_scene();
        let cfg = LidarConfig::default();
        for (a, b) in [
            (Context::DAY_CLEAR, Context::NIGHT_CLEAR),
            (Context::DAY_RAIN, Context::NIGHT_RAIN),
        ] {
            let mut rng_a = ChaCha8Rng::seed_from_u64(5);
            let mut rng_b = ChaCha8Rng::seed_from_u64(5);
            let cloud_a = simulate_lidar(&scene, a, &cfg, &mut rng_a);
            let cloud_b = simulate_lidar(&scene, b, &cfg, &mut rng_b);
            assert_eq!(cloud_a, cloud_b);
        }
    }
}
