//! Point cloud carrier.

use super::GeometryError;
use crate::scalar::Real;

/// One lidar return: position in meters plus a unitless intensity in [0, 1].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
    pub z: T,
    pub intensity: T,
}

impl<T: Real> Point<T> {
    pub fn new(x: T, y: T, z: T, intensity: T) -> Result<Self, GeometryError> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(GeometryError::NonFinitePoint);
        }
        if !(intensity >= T::zero() && intensity <= T::one()) {
            return Err(GeometryError::IntensityOutOfRange(intensity.to_f64_lossy()));
        }
        Ok(Point { x, y, z, intensity })
    }

    pub fn range(&self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct PointCloud<T> {
    pub points: Vec<Point<T>>,
}

impl<T: Real> PointCloud<T> {
    pub fn new(points: Vec<Point<T>>) -> Result<Self, GeometryError> {
        for p in &points {
            if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
                return Err(GeometryError::NonFinitePoint);
            }
            if !(p.intensity >= T::zero() && p.intensity <= T::one()) {
                return Err(GeometryError::IntensityOutOfRange(p.intensity.to_f64_lossy()));
            }
        }
        Ok(PointCloud { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn cast<U: Real>(&self) -> PointCloud<U> {
        let cvt = |v: T| U::from(v).expect("scalar cast");
        PointCloud {
            points: self
                .points
                .iter()
                .map(|p| Point {
                    x: cvt(p.x),
                    y: cvt(p.y),
                    z: cvt(p.z),
                    intensity: cvt(p.intensity),
                })
                .collect(),
        }
    }
}
