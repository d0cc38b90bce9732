//! Point-cloud voxelization onto the BEV grid.

use super::{BevGridSpec, PointCloud};
use crate::scalar::Real;

/// Occupancy counts per (z, y, x) voxel plus per-BEV-cell max-z and
/// mean-intensity planes. Counts are exact; empty cells report the grid
/// z_min as max-z and 0 mean intensity.
#[derive(Clone, Debug, PartialEq)]
pub struct VoxelGrid<T> {
    pub z_bins: usize,
    pub height: usize,
    pub width: usize,
    /// z_bins * height * width occupancy counts, row-major (z, y, x).
    pub counts: Vec<u32>,
    /// height * width maximum point z per cell.
    pub max_z: Vec<T>,
    /// height * width mean intensity per cell.
    pub mean_intensity: Vec<T>,
}

impl<T: Real> VoxelGrid<T> {
    pub fn count_at(&self, z: usize, y: usize, x: usize) -> u32 {
        self.counts[(z * self.height + y) * self.width + x]
    }

    pub fn total_count(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }
}

/// Bins points into the grid; points outside any range are discarded.
pub fn voxelize<T: Real>(cloud: &PointCloud<T>, grid: &BevGridSpec<T>) -> VoxelGrid<T> {
    let (h, w, zb) = (grid.height(), grid.width(), grid.z_bins);
    let mut counts = vec![0u32; zb * h * w];
    let mut max_z = vec![grid.z_min; h * w];
    let mut intensity_sum = vec![T::zero(); h * w];
    let mut cell_points = vec![0u32; h * w];

    for p in &cloud.points {
        let Some((iy, ix)) = grid.cell_of(p.x, p.y) else {
            continue;
        };
        let Some(iz) = grid.z_bin_of(p.z) else {
            continue;
        };
        counts[(iz * h + iy) * w + ix] += 1;
        let cell = iy * w + ix;
        if p.z > max_z[cell] {
            max_z[cell] = p.z;
        }
        intensity_sum[cell] += p.intensity;
        cell_points[cell] += 1;
    }

    let mean_intensity = intensity_sum
        .iter()
        .zip(&cell_points)
        .map(|(&s, &n)| {
            if n == 0 {
                T::zero()
            } else {
                s / T::from_u32(n).unwrap()
            }
        })
        .collect();

    VoxelGrid {
        z_bins: zb,
        height: h,
        width: w,
        counts,
        max_z,
        mean_intensity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty_cloud_gives_zero_tensors() {
        let grid = BevGridSpec::<f64>::desk_default();
        let v = voxelize(&PointCloud::new(vec![]).unwrap(), &grid);
        assert_eq!(v.total_count(), 0);
        assert!(v.max_z.iter().all(|&z| z == grid.z_min));
        assert!(v.mean_intensity.iter().all(|&i| i == 0.0));
    }

    #[test]
    fn single_point_at_grid_center() {
        let grid = BevGridSpec::<f64>::desk_default();
        // (0, 0, 2): x and y at the symmetric center, z at the middle of [-2, 6].
        let cloud = PointCloud::new(vec![Point::new(0.0, 0.0, 2.0, 0.75).unwrap()]).unwrap();
        let v = voxelize(&cloud, &grid);
        assert_eq!(v.total_count(), 1);
        assert_eq!(v.count_at(4, 32, 32), 1);
        assert_eq!(v.max_z[32 * 64 + 32], 2.0);
        assert_eq!(v.mean_intensity[32 * 64 + 32], 0.75);
    }

    #[test]
    fn counts_match_bruteforce_binning_oracle() {
        let grid = BevGridSpec::<f64>::desk_default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cloud = PointCloud::new(
            (0..500)
                .map(|_| {
                    Point::new(
                        rng.gen_range(-40.0..40.0),
                        rng.gen_range(-40.0..40.0),
                        rng.gen_range(-4.0..8.0),
                        rng.gen_range(0.0..1.0),
                    )
                    .unwrap()
                })
                .collect(),
        )
        .unwrap();
        let v = voxelize(&cloud, &grid);

        // Brute-force oracle: independent floor-binning per point.
        let mut oracle = vec![0u32; 8 * 64 * 64];
        let mut in_range = 0u64;
        for p in &cloud.points {
            if p.x < -32.0 || p.x > 32.0 || p.y < -32.0 || p.y > 32.0 || p.z < -2.0 || p.z > 6.0 {
                continue;
            }
            let ix = (((p.x + 32.0).floor() as usize).min(63)) as usize;
            let iy = (((p.y + 32.0).floor() as usize).min(63)) as usize;
            let iz = ((p.z + 2.0).floor() as usize).min(7);
            oracle[(iz * 64 + iy) * 64 + ix] += 1;
            in_range += 1;
        }
        assert_eq!(v.counts, oracle);
        assert_eq!(v.total_count(), in_range);
    }
}
