//! Rotated-rectangle IoU in the BEV plane.

use super::Box3D;
use crate::scalar::{real, Real};

/// Intersection-over-union of the yaw-rotated BEV footprints of two boxes.
/// Symmetric, in [0, 1]; z extent is ignored. Degenerate (zero-area)
/// intersections return 0.
pub fn bev_iou<T: Real>(a: &Box3D<T>, b: &Box3D<T>) -> T {
    let inter = intersection_area(&a.bev_corners(), &b.bev_corners());
    if inter <= T::zero() {
        return T::zero();
    }
    let union = a.bev_area() + b.bev_area() - inter;
    if union <= T::zero() {
        return T::zero();
    }
    (inter / union).min(T::one())
}

/// Euclidean distance between the BEV (x, y) centers.
pub fn center_distance<T: Real>(a: &Box3D<T>, b: &Box3D<T>) -> T {
    let dx = a.center[0] - b.center[0];
    let dy = a.center[1] - b.center[1];
    (dx * dx + dy * dy).sqrt()
}

/// Convex polygon intersection area via Sutherland-Hodgman clipping.
fn intersection_area<T: Real>(subject: &[[T; 2]; 4], clip: &[[T; 2]; 4]) -> T {
    let mut polygon: Vec<[T; 2]> = subject.to_vec();
    for i in 0..4 {
        if polygon.is_empty() {
            return T::zero();
        }
        let edge_a = clip[i];
        let edge_b = clip[(i + 1) % 4];
        polygon = clip_by_edge(&polygon, edge_a, edge_b);
    }
    polygon_area(&polygon)
}

/// Keeps the part of `polygon` on the left of the directed edge a->b.
/// Corners of `clip` are counter-clockwise, so "left" is inside.
fn clip_by_edge<T: Real>(polygon: &[[T; 2]], a: [T; 2], b: [T; 2]) -> Vec<[T; 2]> {
    let inside = |p: [T; 2]| (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) >= T::zero();
    let mut out = Vec::with_capacity(polygon.len() + 2);
    for i in 0..polygon.len() {
        let current = polygon[i];
        let prev = polygon[(i + polygon.len() - 1) % polygon.len()];
        let cur_in = inside(current);
        let prev_in = inside(prev);
        if cur_in {
            if !prev_in {
                if let Some(p) = line_intersection(prev, current, a, b) {
                    out.push(p);
                }
            }
            out.push(current);
        } else if prev_in {
            if let Some(p) = line_intersection(prev, current, a, b) {
                out.push(p);
            }
        }
    }
    out
}

fn line_intersection<T: Real>(p1: [T; 2], p2: [T; 2], a: [T; 2], b: [T; 2]) -> Option<[T; 2]> {
    let r = [p2[0] - p1[0], p2[1] - p1[1]];
    let s = [b[0] - a[0], b[1] - a[1]];
    let denom = r[0] * s[1] - r[1] * s[0];
    if denom == T::zero() {
        return None; // parallel; endpoints handled by the inside tests
    }
    let t = ((a[0] - p1[0]) * s[1] - (a[1] - p1[1]) * s[0]) / denom;
    Some([p1[0] + t * r[0], p1[1] + t * r[1]])
}

/// Shoelace area of a simple polygon (vertices in order).
fn polygon_area<T: Real>(polygon: &[[T; 2]]) -> T {
    if polygon.len() < 3 {
        return T::zero();
    }
    let mut acc = T::zero();
    for i in 0..polygon.len() {
        let p = polygon[i];
        let q = polygon[(i + 1) % polygon.len()];
        acc += p[0] * q[1] - q[0] * p[1];
    }
    (acc / real(2.0)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mk(center: [f64; 2], extent: [f64; 2], yaw: f64) -> Box3D<f64> {
        Box3D::new([center[0], center[1], 0.0], [extent[0], extent[1], 1.0], yaw, 0).unwrap()
    }

    #[test]
    fn identical_boxes_have_iou_one() {
        let b = mk([1.0, -2.0], [4.0, 2.0], 0.7);
        assert!((bev_iou(&b, &b) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn distant_boxes_have_iou_zero() {
        let a = mk([0.0, 0.0], [1.0, 1.0], 0.0);
        let b = mk([100.0, 0.0], [1.0, 1.0], 0.3);
        assert_eq!(bev_iou(&a, &b), 0.0);
    }

    #[test]
    fn touching_boxes_have_iou_zero() {
        // Shared edge: intersection is a degenerate zero-area strip.
        let a = mk([0.0, 0.0], [2.0, 2.0], 0.0);
        let b = mk([2.0, 0.0], [2.0, 2.0], 0.0);
        assert_eq!(bev_iou(&a, &b), 0.0);
    }

    #[test]
    fn axis_aligned_overlap_matches_analytic_value() {
        // 2x2 squares at (0,0) and (1,0): intersection 2, union 6.
        let a = mk([0.0, 0.0], [2.0, 2.0], 0.0);
        let b = mk([1.0, 0.0], [2.0, 2.0], 0.0);
        assert!((bev_iou(&a, &b) - 2.0 / 6.0).abs() < 1e-12);
    }

    fn contains(b: &Box3D<f64>, x: f64, y: f64) -> bool {
        let (s, c) = b.yaw.sin_cos();
        let dx = x - b.center[0];
        let dy = y - b.center[1];
        let lx = c * dx + s * dy;
        let ly = -s * dx + c * dy;
        lx.abs() <= b.extent[0] / 2.0 && ly.abs() <= b.extent[1] / 2.0
    }

    /// Monte-Carlo area oracle: sample points over the joint bounding box
    /// and estimate intersection / union areas by counting.
    fn monte_carlo_iou(a: &Box3D<f64>, b: &Box3D<f64>, n: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let corners: Vec<[f64; 2]> = a.bev_corners().iter().chain(b.bev_corners().iter()).copied().collect();
        let x_min = corners.iter().map(|c| c[0]).fold(f64::INFINITY, f64::min);
        let x_max = corners.iter().map(|c| c[0]).fold(f64::NEG_INFINITY, f64::max);
        let y_min = corners.iter().map(|c| c[1]).fold(f64::INFINITY, f64::min);
        let y_max = corners.iter().map(|c| c[1]).fold(f64::NEG_INFINITY, f64::max);
        let mut inter = 0usize;
        let mut union = 0usize;
        for _ in 0..n {
            let x = rng.gen_range(x_min..x_max);
            let y = rng.gen_range(y_min..y_max);
            let in_a = contains(a, x, y);
            let in_b = contains(b, x, y);
            if in_a && in_b {
                inter += 1;
            }
            if in_a || in_b {
                union += 1;
            }
        }
        if union == 0 {
            0.0
        } else {
            inter as f64 / union as f64
        }
    }

    #[test]
    fn matches_monte_carlo_oracle_on_axis_aligned_case() {
        let a = mk([0.0, 0.0], [2.0, 2.0], 0.0);
        let b = mk([1.0, 0.0], [2.0, 2.0], 0.0);
        let mc = monte_carlo_iou(&a, &b, 1_000_000, 9);
        assert!((bev_iou(&a, &b) - mc).abs() < 1e-3, "mc={mc}");
    }

    #[test]
    fn matches_monte_carlo_oracle_on_rotated_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        for trial in 0..20 {
            let a = mk(
                [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)],
                [rng.gen_range(1.0..5.0), rng.gen_range(1.0..4.0)],
                rng.gen_range(-3.1..3.1),
            );
            let b = mk(
                [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)],
                [rng.gen_range(1.0..5.0), rng.gen_range(1.0..4.0)],
                rng.gen_range(-3.1..3.1),
            );
            let exact = bev_iou(&a, &b);
            let mc = monte_carlo_iou(&a, &b, 400_000, 100 + trial);
            assert!(
                (exact - mc).abs() < 4e-3,
                "trial {trial}: exact={exact} mc={mc}"
            );
        }
    }

    #[test]
    fn center_distance_cases() {
        let a = mk([0.0, 0.0], [1.0, 1.0], 0.0);
        let b = mk([3.0, 4.0], [1.0, 1.0], 0.0);
        assert_eq!(center_distance(&a, &a), 0.0);
        assert!((center_distance(&a, &b) - 5.0).abs() < 1e-12);
        assert_eq!(center_distance(&a, &b), center_distance(&b, &a));
    }
}
