//! Oriented 3D bounding box.

use serde::{Deserialize, Serialize};

use super::GeometryError;
use crate::scalar::{real, Real};

/// Oriented 3D box in the ego frame (x forward, y left, z up).
///
/// `center` is the box midpoint in meters, `extent` is (length, width,
/// height) and must be strictly positive, `yaw` rotates about z and is
/// normalized to (-pi, pi]. Ground-truth boxes carry no score.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Box3D<T> {
    pub center: [T; 3],
    pub extent: [T; 3],
    pub yaw: T,
    pub class_id: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub score: Option<T>,
}

impl<T: Real> Box3D<T> {
    pub fn new(center: [T; 3], extent: [T; 3], yaw: T, class_id: usize) -> Result<Self, GeometryError> {
        if !(extent[0] > T::zero() && extent[1] > T::zero() && extent[2] > T::zero()) {
            return Err(GeometryError::NonPositiveExtent(
                extent[0].to_f64_lossy(),
                extent[1].to_f64_lossy(),
                extent[2].to_f64_lossy(),
            ));
        }
        Ok(Box3D {
            center,
            extent,
            yaw: normalize_yaw(yaw),
            class_id,
            score: None,
        })
    }

    pub fn with_score(mut self, score: T) -> Result<Self, GeometryError> {
        if !(score >= T::zero() && score <= T::one()) {
            return Err(GeometryError::ScoreOutOfRange(score.to_f64_lossy()));
        }
        self.score = Some(score);
        Ok(self)
    }

    /// BEV footprint corners in counter-clockwise order.
    pub fn bev_corners(&self) -> [[T; 2]; 4] {
        let hl = self.extent[0] / real(2.0);
        let hw = self.extent[1] / real(2.0);
        let (s, c) = self.yaw.sin_cos();
        let rot = |lx: T, ly: T| {
            [
                self.center[0] + c * lx - s * ly,
                self.center[1] + s * lx + c * ly,
            ]
        };
        [rot(hl, hw), rot(-hl, hw), rot(-hl, -hw), rot(hl, -hw)]
    }

    /// BEV footprint area in square meters.
    pub fn bev_area(&self) -> T {
        self.extent[0] * self.extent[1]
    }

    pub fn cast<U: Real>(&self) -> Box3D<U> {
        let cvt = |v: T| U::from(v).expect("scalar cast");
        Box3D {
            center: [cvt(self.center[0]), cvt(self.center[1]), cvt(self.center[2])],
            extent: [cvt(self.extent[0]), cvt(self.extent[1]), cvt(self.extent[2])],
            yaw: cvt(self.yaw),
            class_id: self.class_id,
            score: self.score.map(cvt),
        }
    }
}

/// Wraps an angle into (-pi, pi].
pub fn normalize_yaw<T: Real>(yaw: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut y = yaw % two_pi;
    if y <= -T::PI() {
        y += two_pi;
    } else if y > T::PI() {
        y -= two_pi;
    }
    y
}
