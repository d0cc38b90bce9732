//! Rigid sensor-to-ego transforms.

use serde::{Deserialize, Serialize};

use super::{Point, PointCloud};
use crate::scalar::Real;

/// Rigid transform from sensor frame to ego frame, parameterized as a
/// translation plus intrinsic yaw-pitch-roll (applied as Rz * Ry * Rx).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SensorPose<T> {
    pub translation: [T; 3],
    pub yaw: T,
    pub pitch: T,
    pub roll: T,
}

impl<T: Real> SensorPose<T> {
    pub fn identity() -> Self {
        SensorPose {
            translation: [T::zero(); 3],
            yaw: T::zero(),
            pitch: T::zero(),
            roll: T::zero(),
        }
    }

    pub fn new(translation: [T; 3], yaw: T, pitch: T, roll: T) -> Self {
        SensorPose {
            translation,
            yaw,
            pitch,
            roll,
        }
    }

    /// Row-major rotation matrix Rz(yaw) * Ry(pitch) * Rx(roll).
    pub fn rotation(&self) -> [[T; 3]; 3] {
        let (sy, cy) = self.yaw.sin_cos();
        let (sp, cp) = self.pitch.sin_cos();
        let (sr, cr) = self.roll.sin_cos();
        [
            [cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr],
            [sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr],
            [-sp, cp * sr, cp * cr],
        ]
    }

    pub fn apply(&self, p: [T; 3]) -> [T; 3] {
        let r = self.rotation();
        [
            r[0][0] * p[0] + r[0][1] * p[1] + r[0][2] * p[2] + self.translation[0],
            r[1][0] * p[0] + r[1][1] * p[1] + r[1][2] * p[2] + self.translation[1],
            r[2][0] * p[0] + r[2][1] * p[1] + r[2][2] * p[2] + self.translation[2],
        ]
    }

    /// Rotates a direction without translating (for ray directions).
    pub fn rotate(&self, d: [T; 3]) -> [T; 3] {
        let r = self.rotation();
        [
            r[0][0] * d[0] + r[0][1] * d[1] + r[0][2] * d[2],
            r[1][0] * d[0] + r[1][1] * d[1] + r[1][2] * d[2],
            r[2][0] * d[0] + r[2][1] * d[1] + r[2][2] * d[2],
        ]
    }

    /// The inverse rigid transform, re-expressed as yaw-pitch-roll.
    ///
    /// Angles are recovered from the transposed rotation matrix; poses with
    /// |pitch| at exactly pi/2 are gimbal-degenerate and not supported.
    pub fn inverse(&self) -> SensorPose<T> {
        let r = self.rotation();
        // Transpose is the inverse rotation.
        let inv = [
            [r[0][0], r[1][0], r[2][0]],
            [r[0][1], r[1][1], r[2][1]],
            [r[0][2], r[1][2], r[2][2]],
        ];
        let yaw = inv[1][0].atan2(inv[0][0]);
        let pitch = (-inv[2][0]).asin();
        let roll = inv[2][1].atan2(inv[2][2]);
        let t = self.translation;
        SensorPose {
            translation: [
                -(inv[0][0] * t[0] + inv[0][1] * t[1] + inv[0][2] * t[2]),
                -(inv[1][0] * t[0] + inv[1][1] * t[1] + inv[1][2] * t[2]),
                -(inv[2][0] * t[0] + inv[2][1] * t[1] + inv[2][2] * t[2]),
            ],
            yaw,
            pitch,
            roll,
        }
    }
}

/// Rigidly transforms every point; intensity is untouched.
pub fn transform_points<T: Real>(cloud: &PointCloud<T>, pose: &SensorPose<T>) -> PointCloud<T> {
    PointCloud {
        points: cloud
            .points
            .iter()
            .map(|p| {
                let [x, y, z] = pose.apply([p.x, p.y, p.z]);
                Point {
                    x,
                    y,
                    z,
                    intensity: p.intensity,
                }
            })
            .collect(),
    }
}
