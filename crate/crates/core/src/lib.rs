//! Context-gated camera-lidar fusion for bird's-eye-view 3D object detection.
//!
//! The crate covers the full desk-scale pipeline:
//!
//! - [`geometry`]: oriented boxes, point clouds, BEV grids, rotated IoU,
//!   voxelization.
//! - [`synth`]: procedural generation of the AdverseOp3D-mini dataset
//!   (scenes, simulated lidar and cameras with night/rain degradation,
//!   NuScenes-style on-disk serialization).
//! - [`bev`]: lidar z-flattening and camera soft-depth splatting into the
//!   shared BEV feature plane.
//! - [`fusion`]: the context gate, the gated convolution, the BEV encoder
//!   and the center-heatmap detection head with box decoding.
//! - [`train`]: a small reverse-mode autodiff tape covering exactly the
//!   operators the model uses, the detection loss, SGD training and
//!   finite-difference gradient checks.
//! - [`eval`]: center-distance matching, average precision, per-context
//!   breakdowns and report emission.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`). Sensor payloads
//! are generated and stored as `f32` to match the on-disk layout; model
//! training and evaluation run in `f64`.

pub mod bev;
pub mod config;
pub mod context;
pub mod eval;
pub mod fusion;
pub mod geometry;
pub mod scalar;
pub mod synth;
pub mod tensor;
pub mod train;

pub use context::Context;
pub use scalar::{real, Real};
pub use tensor::Tensor;

/// Scalar used for sensor payloads: generation and the on-disk binary
/// layout are both little-endian `f32`.
pub type PayloadScalar = f32;

/// Scalar used for model parameters, training and evaluation.
pub type ModelScalar = f64;

/// Boxes as stored in datasets (annotation payloads).
pub type PayloadBox = geometry::Box3D<PayloadScalar>;

/// Boxes as produced by the detector and consumed by evaluation.
pub type ModelBox = geometry::Box3D<ModelScalar>;
