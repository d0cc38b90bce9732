//! The shared bird's-eye-view grid.

use serde::{Deserialize, Serialize};

use super::GeometryError;
use crate::scalar::{real, Real};

/// Metric extent and resolution of the BEV feature plane.
///
/// Columns index x (forward), rows index y (left): cell `(iy, ix)` covers
/// `[x_min + ix*cell, x_min + (ix+1)*cell) x [y_min + iy*cell, ...)`.
/// Coordinates exactly on the max edge bin into the last cell, so the
/// closed ranges are fully covered.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BevGridSpec<T> {
    pub x_min: T,
    pub x_max: T,
    pub y_min: T,
    pub y_max: T,
    pub cell_size: T,
    pub z_min: T,
    pub z_max: T,
    pub z_bins: usize,
}

impl<T: Real> BevGridSpec<T> {
    pub fn new(
        x_range: (T, T),
        y_range: (T, T),
        cell_size: T,
        z_range: (T, T),
        z_bins: usize,
    ) -> Result<Self, GeometryError> {
        let spec = BevGridSpec {
            x_min: x_range.0,
            x_max: x_range.1,
            y_min: y_range.0,
            y_max: y_range.1,
            cell_size,
            z_min: z_range.0,
            z_max: z_range.1,
            z_bins,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Desk-scale default: x, y in [-32, 32] m at 1 m cells (64x64),
    /// z in [-2, 6] m over 8 bins.
    pub fn desk_default() -> Self {
        BevGridSpec::new(
            (real(-32.0), real(32.0)),
            (real(-32.0), real(32.0)),
            real(1.0),
            (real(-2.0), real(6.0)),
            8,
        )
        .expect("default grid is valid")
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        for (min, max) in [(self.x_min, self.x_max), (self.y_min, self.y_max), (self.z_min, self.z_max)] {
            if !(min.is_finite() && max.is_finite() && min < max) {
                return Err(GeometryError::EmptyRange {
                    min: min.to_f64_lossy(),
                    max: max.to_f64_lossy(),
                });
            }
        }
        if !(self.cell_size > T::zero() && self.cell_size.is_finite()) {
            return Err(GeometryError::NonPositiveCellSize(self.cell_size.to_f64_lossy()));
        }
        if self.z_bins == 0 {
            return Err(GeometryError::NoZBins);
        }
        for (min, max) in [(self.x_min, self.x_max), (self.y_min, self.y_max)] {
            let span = max - min;
            let cells = (span / self.cell_size).round();
            let tol = real::<T>(1e-6) * self.cell_size;
            if cells < T::one() || (span - cells * self.cell_size).abs() > tol {
                return Err(GeometryError::RangeNotDivisible {
                    min: min.to_f64_lossy(),
                    max: max.to_f64_lossy(),
                    cell: self.cell_size.to_f64_lossy(),
                });
            }
        }
        Ok(())
    }

    /// Number of columns (x direction).
    pub fn width(&self) -> usize {
        ((self.x_max - self.x_min) / self.cell_size)
            .round()
            .to_usize()
            .expect("validated grid width")
    }

    /// Number of rows (y direction).
    pub fn height(&self) -> usize {
        ((self.y_max - self.y_min) / self.cell_size)
            .round()
            .to_usize()
            .expect("validated grid height")
    }

    /// Cell of a BEV position, or `None` when outside the closed ranges.
    /// The max edge maps to the last cell.
    pub fn cell_of(&self, x: T, y: T) -> Option<(usize, usize)> {
        let ix = edge_bin(x, self.x_min, self.x_max, self.cell_size, self.width())?;
        let iy = edge_bin(y, self.y_min, self.y_max, self.cell_size, self.height())?;
        Some((iy, ix))
    }

    /// Z bin of a height value under the same convention.
    pub fn z_bin_of(&self, z: T) -> Option<usize> {
        let span = self.z_max - self.z_min;
        let bin_size = span / T::from_usize(self.z_bins).unwrap();
        edge_bin(z, self.z_min, self.z_max, bin_size, self.z_bins)
    }

    /// Metric center of cell `(iy, ix)`.
    pub fn cell_center(&self, iy: usize, ix: usize) -> (T, T) {
        let half = real::<T>(0.5);
        (
            self.x_min + (T::from_usize(ix).unwrap() + half) * self.cell_size,
            self.y_min + (T::from_usize(iy).unwrap() + half) * self.cell_size,
        )
    }

    pub fn cast<U: Real>(&self) -> BevGridSpec<U> {
        let cvt = |v: T| U::from(v).expect("scalar cast");
        BevGridSpec {
            x_min: cvt(self.x_min),
            x_max: cvt(self.x_max),
            y_min: cvt(self.y_min),
            y_max: cvt(self.y_max),
            cell_size: cvt(self.cell_size),
            z_min: cvt(self.z_min),
            z_max: cvt(self.z_max),
            z_bins: self.z_bins,
        }
    }
}

fn edge_bin<T: Real>(v: T, min: T, max: T, bin_size: T, bins: usize) -> Option<usize> {
    if !(v >= min && v <= max) {
        return None;
    }
    let idx = ((v - min) / bin_size).floor().to_usize()?;
    Some(idx.min(bins - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desk_default_dimensions() {
        let g = BevGridSpec::<f64>::desk_default();
        assert_eq!(g.width(), 64);
        assert_eq!(g.height(), 64);
        assert_eq!(g.z_bins, 8);
    }

    #[test]
    fn rejects_indivisible_range() {
        let err = BevGridSpec::new((0.0, 10.0), (0.0, 10.0), 3.0, (0.0, 1.0), 1);
        assert!(matches!(err, Err(GeometryError::RangeNotDivisible { .. })));
    }

    #[test]
    fn floor_convention_with_max_edge_in_last_cell() {
        let g = BevGridSpec::<f64>::desk_default();
        assert_eq!(g.cell_of(0.0, 0.0), Some((32, 32)));
        assert_eq!(g.cell_of(-32.0, -32.0), Some((0, 0)));
        assert_eq!(g.cell_of(32.0, 32.0), Some((63, 63)));
        assert_eq!(g.cell_of(32.1, 0.0), None);
        assert_eq!(g.z_bin_of(6.0), Some(7));
        assert_eq!(g.z_bin_of(-2.0), Some(0));
        assert_eq!(g.z_bin_of(6.1), None);
    }

    #[test]
    fn cell_center_roundtrip() {
        let g = BevGridSpec::<f64>::desk_default();
        let (x, y) = g.cell_center(32, 32);
        assert_eq!((x, y), (0.5, 0.5));
        assert_eq!(g.cell_of(x, y), Some((32, 32)));
    }
}
