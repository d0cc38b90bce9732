//! Oriented-box and point-cloud geometry shared by every other module.
//!
//! All operations are pure functions of their inputs; values are immutable
//! once constructed and safe to use from any number of threads.

mod box3d;
mod cloud;
mod grid;
mod iou;
mod pose;
mod voxel;

pub use box3d::Box3D;
pub use cloud::{Point, PointCloud};
pub use grid::BevGridSpec;
pub use iou::{bev_iou, center_distance};
pub use pose::{transform_points, SensorPose};
pub use voxel::{voxelize, VoxelGrid};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("box extent must be strictly positive, got ({0}, {1}, {2})")]
    NonPositiveExtent(f64, f64, f64),
    #[error("score must lie in [0, 1], got {0}")]
    ScoreOutOfRange(f64),
    #[error("point coordinates must be finite")]
    NonFinitePoint,
    #[error("intensity must lie in [0, 1], got {0}")]
    IntensityOutOfRange(f64),
    #[error("grid range [{min}, {max}] is empty or non-finite")]
    EmptyRange { min: f64, max: f64 },
    #[error("cell size must be strictly positive, got {0}")]
    NonPositiveCellSize(f64),
    #[error("grid range [{min}, {max}] is not an integer multiple of cell size {cell}")]
    RangeNotDivisible { min: f64, max: f64, cell: f64 },
    #[error("z_bins must be at least 1")]
    NoZBins,
}

/// Indices of cloud points inside the yaw-rotated 3D cuboid. Boundary
/// points count as inside.
pub fn points_in_box<T: crate::Real>(cloud: &PointCloud<T>, b: &Box3D<T>) -> Vec<usize> {
    let half = [
        b.extent[0] / crate::real(2.0),
        b.extent[1] / crate::real(2.0),
        b.extent[2] / crate::real(2.0),
    ];
    let (sin_yaw, cos_yaw) = b.yaw.sin_cos();
    cloud
        .points
        .iter()
        .enumerate()
        .filter(|(_, p)| {
            let dx = p.x - b.center[0];
            let dy = p.y - b.center[1];
            let dz = p.z - b.center[2];
            // Rotate the offset into the box frame (inverse yaw).
            let local_x = cos_yaw * dx + sin_yaw * dy;
            let local_y = -sin_yaw * dx + cos_yaw * dy;
            local_x.abs() <= half[0] && local_y.abs() <= half[1] && dz.abs() <= half[2]
        })
        .map(|(i, _)| i)
        .collect()
}
