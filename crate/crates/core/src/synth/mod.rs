//! Procedural generator for AdverseOp3D-mini.
//!
//! Scenes of parked actors, simulated lidar and six cameras with
//! context-dependent degradation, annotation filtering and NuScenes-style
//! on-disk serialization with exact context balance.
//!
//! Generation is a pure function of (config, seed): every sample derives
//! its own seed from the dataset seed via a splitmix64 chain, and each
//! sensor subsystem draws from its own stream so that toggling one context
//! flag never perturbs the randomness of an unrelated subsystem.

mod camera;
mod classes;
mod dataset;
mod lidar;
mod raycast;
mod scene;
pub mod seeds;

pub use camera::{camera_poses, simulate_cameras, CameraConfig, CameraImage, DEPTH_NONE};
pub use classes::{ClassSpec, ClassTable};
pub use dataset::{
    balanced_contexts, filter_annotations, generate_dataset, generate_sample, read_dataset,
    read_manifest, read_sample, write_dataset, DatasetManifest, Sample, SampleRecord, SplitSpec,
    SynthConfig, MANIFEST_SCHEMA,
};
pub use lidar::{simulate_lidar, simulate_lidar_with_stats, LidarConfig, LidarStats};
pub use scene::{generate_scene, Scene, SceneConfig, SceneSpec};

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("sample count {0} is not divisible by 4, so contexts cannot be balanced exactly")]
    UnbalancedCount(usize),
    #[error("duplicate sample token '{0}'")]
    TokenCollision(String),
    #[error("manifest schema mismatch: expected '{expected}', found '{found}'")]
    SchemaMismatch { expected: String, found: String },
    #[error("corrupt dataset file {path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
    #[error("I/O error on {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid split fraction {0}; must lie in (0, 1]")]
    InvalidSplitFraction(f64),
    #[error("geometry error during generation: {0}")]
    Geometry(#[from] crate::geometry::GeometryError),
}

impl DatasetError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        DatasetError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn corrupt(path: impl Into<PathBuf>, reason: impl Into<String>) -> Self {
        DatasetError::Corrupt {
            path: path.into(),
            reason: reason.into(),
        }
    }
}
