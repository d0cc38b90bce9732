//! Dataset assembly and NuScenes-inspired on-disk serialization.
//!
//! Layout under the dataset root:
//!
//! ```text
//! manifest.json                  index, grid, classes, splits, context counts
//! samples/<token>/lidar.bin      little-endian f32 (x, y, z, intensity) records
//! samples/<token>/cam_<i>.bin    little-endian f32 (intensity, depth) pairs,
//!                                row-major; depth sentinel -1.0
//! samples/<token>/ann.json       boxes plus context flags as 0/1 integers
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::camera::{camera_poses, simulate_cameras, CameraConfig, CameraImage};
use super::classes::ClassTable;
use super::lidar::{simulate_lidar, LidarConfig};
use super::scene::{generate_scene, SceneConfig, SceneSpec};
use super::seeds::{
    sample_seed, splitmix64, stream_seed, STREAM_CAM_NOISE, STREAM_CAM_RAIN, STREAM_LIDAR,
    STREAM_META, STREAM_SCENE, STREAM_TOKEN,
};
use super::DatasetError;
use crate::context::Context;
use crate::geometry::{points_in_box, BevGridSpec, Box3D, Point, PointCloud};

pub const MANIFEST_SCHEMA: &str = "adverseop3d-mini/1";

/// Every constant the generator consumes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SynthConfig {
    pub grid: BevGridSpec<f32>,
    pub classes: ClassTable,
    pub scene: SceneConfig,
    pub lidar: LidarConfig,
    pub camera: CameraConfig,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            grid: BevGridSpec::desk_default(),
            classes: ClassTable::default(),
            scene: SceneConfig::default(),
            lidar: LidarConfig::default(),
            camera: CameraConfig::default(),
        }
    }
}

/// One multimodal frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub token: String,
    pub cloud: PointCloud<f32>,
    pub cameras: Vec<CameraImage<f32>>,
    pub annotations: Vec<Box3D<f32>>,
    pub context: Context,
}

/// Exactly n/4 of each context, cycling through the canonical bucket
/// order so every prefix stays near-balanced.
pub fn balanced_contexts(n_total: usize) -> Result<Vec<Context>, DatasetError> {
    if n_total % 4 != 0 {
        return Err(DatasetError::UnbalancedCount(n_total));
    }
    Ok((0..n_total).map(|i| Context::ALL[i % 4]).collect())
}

/// Keeps exactly the boxes containing at least one cloud point; order preserved.
pub fn filter_annotations(boxes: &[Box3D<f32>], cloud: &PointCloud<f32>) -> Vec<Box3D<f32>> {
    boxes
        .iter()
        .filter(|b| !points_in_box(cloud, b).is_empty())
        .copied()
        .collect()
}

/// Generates one sample deterministically from (config, dataset seed, index).
pub fn generate_sample(
    cfg: &SynthConfig,
    dataset_seed: u64,
    index: u64,
    context: Context,
) -> Sample {
    let s_seed = sample_seed(dataset_seed, index);
    let mut meta_rng = ChaCha8Rng::seed_from_u64(stream_seed(s_seed, STREAM_META));
    let n_actors = meta_rng.gen_range(cfg.scene.n_actors_min..=cfg.scene.n_actors_max);

    let scene = generate_scene(&SceneSpec {
        seed: stream_seed(s_seed, STREAM_SCENE),
        context,
        n_actors,
        config: cfg.scene,
        classes: cfg.classes.clone(),
    });

    let mut lidar_rng = ChaCha8Rng::seed_from_u64(stream_seed(s_seed, STREAM_LIDAR));
    let cloud = simulate_lidar(&scene, context, &cfg.lidar, &mut lidar_rng);

    let mut noise_rng = ChaCha8Rng::seed_from_u64(stream_seed(s_seed, STREAM_CAM_NOISE));
    let mut rain_rng = ChaCha8Rng::seed_from_u64(stream_seed(s_seed, STREAM_CAM_RAIN));
    let cameras = simulate_cameras(&scene, context, &cfg.camera, &mut noise_rng, &mut rain_rng);

    let annotations = filter_annotations(&scene.actors, &cloud);

    Sample {
        token: format!("{:016x}", stream_seed(s_seed, STREAM_TOKEN)),
        cloud,
        cameras,
        annotations,
        context,
    }
}

/// Generates a context-balanced dataset of `n_total` samples.
pub fn generate_dataset(
    cfg: &SynthConfig,
    n_total: usize,
    seed: u64,
) -> Result<Vec<Sample>, DatasetError> {
    let contexts = balanced_contexts(n_total)?;
    Ok(contexts
        .into_iter()
        .enumerate()
        .map(|(i, ctx)| generate_sample(cfg, seed, i as u64, ctx))
        .collect())
}

/// Train/val split assignment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            train_fraction: 0.8,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleRecord {
    pub token: String,
    pub context: Context,
    pub split: String,
    /// Directory of the sample payloads, relative to the dataset root.
    pub dir: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetManifest {
    pub schema: String,
    pub grid: BevGridSpec<f32>,
    pub classes: ClassTable,
    pub camera: CameraConfig,
    pub split: SplitSpec,
    /// Sample count per context bucket name.
    pub context_counts: BTreeMap<String, usize>,
    pub samples: Vec<SampleRecord>,
}

#[derive(Serialize, Deserialize)]
struct Annotations {
    context: Context,
    boxes: Vec<Box3D<f32>>,
}

/// Writes samples plus a manifest. The split is assigned per context
/// bucket (deterministic shuffle from `split.seed`), so context balance
/// carries over to each split exactly when the counts divide evenly.
pub fn write_dataset(
    samples: &[Sample],
    cfg: &SynthConfig,
    split: SplitSpec,
    out_dir: &Path,
) -> Result<DatasetManifest, DatasetError> {
    if !(split.train_fraction > 0.0 && split.train_fraction <= 1.0) {
        return Err(DatasetError::InvalidSplitFraction(split.train_fraction));
    }
    let mut seen = std::collections::HashSet::new();
    for s in samples {
        if !seen.insert(&s.token) {
            return Err(DatasetError::TokenCollision(s.token.clone()));
        }
    }

    // Per-bucket deterministic split.
    let mut split_of = vec!["train"; samples.len()];
    for (bucket_idx, ctx) in Context::ALL.iter().enumerate() {
        let mut indices: Vec<usize> = samples
            .iter()
            .enumerate()
            .filter(|(_, s)| s.context == *ctx)
            .map(|(i, _)| i)
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(split.seed ^ bucket_idx as u64));
        indices.shuffle(&mut rng);
        let n_train = (split.train_fraction * indices.len() as f64).round() as usize;
        for &i in indices.iter().skip(n_train) {
            split_of[i] = "val";
        }
    }

    let mut context_counts = BTreeMap::new();
    for ctx in Context::ALL {
        context_counts.insert(ctx.bucket_name().to_string(), 0usize);
    }
    let mut records = Vec::with_capacity(samples.len());
    for (i, sample) in samples.iter().enumerate() {
        *context_counts
            .get_mut(sample.context.bucket_name())
            .expect("all buckets present") += 1;
        let dir = format!("samples/{}", sample.token);
        write_sample(sample, &out_dir.join(&dir))?;
        records.push(SampleRecord {
            token: sample.token.clone(),
            context: sample.context,
            split: split_of[i].to_string(),
            dir,
        });
    }

    let manifest = DatasetManifest {
        schema: MANIFEST_SCHEMA.to_string(),
        grid: cfg.grid,
        classes: cfg.classes.clone(),
        camera: cfg.camera,
        split,
        context_counts,
        samples: records,
    };
    let manifest_path = out_dir.join("manifest.json");
    let json = serde_json::to_vec_pretty(&manifest)
        .map_err(|e| DatasetError::corrupt(&manifest_path, e.to_string()))?;
    fs::write(&manifest_path, json).map_err(|e| DatasetError::io(&manifest_path, e))?;
    Ok(manifest)
}

fn write_sample(sample: &Sample, dir: &Path) -> Result<(), DatasetError> {
    fs::create_dir_all(dir).map_err(|e| DatasetError::io(dir, e))?;

    let lidar_path = dir.join("lidar.bin");
    let mut buf = Vec::with_capacity(sample.cloud.len() * 16);
    for p in &sample.cloud.points {
        for v in [p.x, p.y, p.z, p.intensity] {
            buf.extend_from_slice(&v.to_le_bytes());
        }
    }
    fs::write(&lidar_path, &buf).map_err(|e| DatasetError::io(&lidar_path, e))?;

    for (i, cam) in sample.cameras.iter().enumerate() {
        let cam_path = dir.join(format!("cam_{i}.bin"));
        let mut buf = Vec::with_capacity(cam.intensity.len() * 8);
        for idx in 0..cam.intensity.len() {
            buf.extend_from_slice(&cam.intensity[idx].to_le_bytes());
            buf.extend_from_slice(&cam.depth[idx].to_le_bytes());
        }
        fs::write(&cam_path, &buf).map_err(|e| DatasetError::io(&cam_path, e))?;
    }

    let ann_path = dir.join("ann.json");
    let ann = Annotations {
        context: sample.context,
        boxes: sample.annotations.clone(),
    };
    let json = serde_json::to_vec_pretty(&ann)
        .map_err(|e| DatasetError::corrupt(&ann_path, e.to_string()))?;
    fs::write(&ann_path, json).map_err(|e| DatasetError::io(&ann_path, e))?;
    Ok(())
}

pub fn read_manifest(dir: &Path) -> Result<DatasetManifest, DatasetError> {
    let path = dir.join("manifest.json");
    let bytes = fs::read(&path).map_err(|e| DatasetError::io(&path, e))?;
    let manifest: DatasetManifest = serde_json::from_slice(&bytes)
        .map_err(|e| DatasetError::corrupt(&path, e.to_string()))?;
    if manifest.schema != MANIFEST_SCHEMA {
        return Err(DatasetError::SchemaMismatch {
            expected: MANIFEST_SCHEMA.to_string(),
            found: manifest.schema,
        });
    }
    let mut seen = std::collections::HashSet::new();
    for rec in &manifest.samples {
        if !seen.insert(&rec.token) {
            return Err(DatasetError::TokenCollision(rec.token.clone()));
        }
    }
    // Declared context counts must match the actual records.
    let mut actual = BTreeMap::new();
    for ctx in Context::ALL {
        actual.insert(ctx.bucket_name().to_string(), 0usize);
    }
    for rec in &manifest.samples {
        *actual.get_mut(rec.context.bucket_name()).unwrap() += 1;
    }
    if actual != manifest.context_counts {
        return Err(DatasetError::corrupt(
            &path,
            format!(
                "declared context counts {:?} do not match records {:?}",
                manifest.context_counts, actual
            ),
        ));
    }
    Ok(manifest)
}

pub fn read_sample(
    root: &Path,
    manifest: &DatasetManifest,
    record: &SampleRecord,
) -> Result<Sample, DatasetError> {
    let dir = root.join(&record.dir);

    let lidar_path = dir.join("lidar.bin");
    let bytes = read_file(&lidar_path)?;
    if bytes.len() % 16 != 0 {
        return Err(DatasetError::corrupt(
            &lidar_path,
            format!("length {} is not a multiple of 16", bytes.len()),
        ));
    }
    let mut points = Vec::with_capacity(bytes.len() / 16);
    for rec in bytes.chunks_exact(16) {
        let f = |off: usize| f32::from_le_bytes(rec[off..off + 4].try_into().unwrap());
        points.push(Point {
            x: f(0),
            y: f(4),
            z: f(8),
            intensity: f(12),
        });
    }
    let cloud = PointCloud::new(points)
        .map_err(|e| DatasetError::corrupt(&lidar_path, e.to_string()))?;

    let poses = camera_poses(&manifest.camera);
    let (w, h) = (manifest.camera.width, manifest.camera.height);
    let mut cameras = Vec::with_capacity(6);
    for (i, pose) in poses.iter().enumerate() {
        let cam_path = dir.join(format!("cam_{i}.bin"));
        let bytes = read_file(&cam_path)?;
        if bytes.len() != w * h * 8 {
            return Err(DatasetError::corrupt(
                &cam_path,
                format!("expected {} bytes, found {}", w * h * 8, bytes.len()),
            ));
        }
        let mut intensity = Vec::with_capacity(w * h);
        let mut depth = Vec::with_capacity(w * h);
        for rec in bytes.chunks_exact(8) {
            intensity.push(f32::from_le_bytes(rec[0..4].try_into().unwrap()));
            depth.push(f32::from_le_bytes(rec[4..8].try_into().unwrap()));
        }
        cameras.push(CameraImage {
            width: w,
            height: h,
            pose: *pose,
            hfov: manifest.camera.hfov,
            intensity,
            depth,
        });
    }

    let ann_path = dir.join("ann.json");
    let bytes = read_file(&ann_path)?;
    let ann: Annotations = serde_json::from_slice(&bytes)
        .map_err(|e| DatasetError::corrupt(&ann_path, e.to_string()))?;
    if ann.context != record.context {
        return Err(DatasetError::corrupt(
            &ann_path,
            "annotation context disagrees with the manifest record",
        ));
    }

    Ok(Sample {
        token: record.token.clone(),
        cloud,
        cameras,
        annotations: ann.boxes,
        context: record.context,
    })
}

/// Reads the full dataset back, in manifest order.
pub fn read_dataset(dir: &Path) -> Result<(Vec<Sample>, DatasetManifest), DatasetError> {
    let manifest = read_manifest(dir)?;
    let samples = manifest
        .samples
        .iter()
        .map(|rec| read_sample(dir, &manifest, rec))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((samples, manifest))
}

fn read_file(path: &Path) -> Result<Vec<u8>, DatasetError> {
    let mut buf = Vec::new();
    fs::File::open(path)
        .map_err(|e| DatasetError::io(path, e))?
        .read_to_end(&mut buf)
        .map_err(|e| DatasetError::io(path, e))?;
    Ok(buf)
}

/// Writes raw bytes; used by report/CSV emitters that want dataset-style
/// error reporting.
pub(crate) fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), DatasetError> {
    let mut f = fs::File::create(path).map_err(|e| DatasetError::io(path, e))?;
    f.write_all(bytes).map_err(|e| DatasetError::io(path, e))
}
