//! Shared ray casting against oriented boxes and the ground plane.

use crate::geometry::Box3D;

/// Minimum hit distance; returns closer than this are ignored.
pub const T_NEAR: f32 = 0.3;

/// Nearest intersection of a ray with a yaw-rotated box, as a distance
/// along the (unit) direction. Rays starting inside the box miss.
pub fn ray_box(origin: [f32; 3], dir: [f32; 3], b: &Box3D<f32>) -> Option<f32> {
    let (s, c) = b.yaw.sin_cos();
    // Into the box frame: translate, then rotate by -yaw about z.
    let ox = origin[0] - b.center[0];
    let oy = origin[1] - b.center[1];
    let oz = origin[2] - b.center[2];
    let lo = [c * ox + s * oy, -s * ox + c * oy, oz];
    let ld = [c * dir[0] + s * dir[1], -s * dir[0] + c * dir[1], dir[2]];
    let half = [b.extent[0] / 2.0, b.extent[1] / 2.0, b.extent[2] / 2.0];

    let mut t_min = f32::NEG_INFINITY;
    let mut t_max = f32::INFINITY;
    for a in 0..3 {
        if ld[a].abs() < 1e-9 {
            if lo[a].abs() > half[a] {
                return None;
            }
            continue;
        }
        let inv = 1.0 / ld[a];
        let mut t1 = (-half[a] - lo[a]) * inv;
        let mut t2 = (half[a] - lo[a]) * inv;
        if t1 > t2 {
            std::mem::swap(&mut t1, &mut t2);
        }
        t_min = t_min.max(t1);
        t_max = t_max.min(t2);
        if t_min > t_max {
            return None;
        }
    }
    (t_min >= T_NEAR).then_some(t_min)
}

/// Distance to the flat ground plane z = 0, for downward rays.
pub fn ray_ground(origin: [f32; 3], dir: [f32; 3]) -> Option<f32> {
    if dir[2] >= -1e-6 {
        return None;
    }
    let t = -origin[2] / dir[2];
    (t >= T_NEAR).then_some(t)
}

/// What a ray hit first.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Surface {
    Box(usize),
    Ground,
}

/// Nearest hit among all boxes and the ground within `max_range`.
pub fn cast(
    origin: [f32; 3],
    dir: [f32; 3],
    boxes: &[Box3D<f32>],
    max_range: f32,
) -> Option<(f32, Surface)> {
    let mut best: Option<(f32, Surface)> = None;
    for (i, b) in boxes.iter().enumerate() {
        if let Some(t) = ray_box(origin, dir, b) {
            if t <= max_range && best.map_or(true, |(bt, _)| t < bt) {
                best = Some((t, Surface::Box(i)));
            }
        }
    }
    if let Some(t) = ray_ground(origin, dir) {
        if t <= max_range && best.map_or(true, |(bt, _)| t < bt) {
            best = Some((t, Surface::Ground));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mk(center: [f32; 3], extent: [f32; 3], yaw: f32) -> Box3D<f32> {
        Box3D::new(center, extent, yaw, 0).unwrap()
    }

    #[test]
    fn hits_front_face_of_axis_aligned_box() {
        let b = mk([10.0, 0.0, 1.0], [2.0, 2.0, 2.0], 0.0);
        let t = ray_box([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], &b).unwrap();
        assert!((t - 9.0).abs() < 1e-5);
    }

    #[test]
    fn misses_box_behind_origin() {
        let b = mk([-10.0, 0.0, 1.0], [2.0, 2.0, 2.0], 0.0);
        assert_eq!(ray_box([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], &b), None);
    }

    #[test]
    fn rotated_box_hit_distance() {
        // 45-degree box centered at (10, 0); the near corner faces the origin
        // at 10 - sqrt(2) along x.
        let b = mk([10.0, 0.0, 1.0], [2.0, 2.0, 2.0], std::f32::consts::FRAC_PI_4);
        let t = ray_box([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], &b).unwrap();
        assert!((t - (10.0 - 2.0_f32.sqrt())).abs() < 1e-4);
    }

    #[test]
    fn ground_distance() {
        let t = ray_ground([0.0, 0.0, 2.0], [0.0, 0.0, -1.0]).unwrap();
        assert!((t - 2.0).abs() < 1e-6);
        assert_eq!(ray_ground([0.0, 0.0, 2.0], [1.0, 0.0, 0.0]), None);
    }

    #[test]
    fn cast_prefers_nearest_surface() {
        let near = mk([5.0, 0.0, 1.0], [2.0, 2.0, 2.0], 0.0);
        let far = mk([15.0, 0.0, 1.0], [2.0, 2.0, 2.0], 0.0);
        let (t, surf) = cast([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], &[far, near], 100.0).unwrap();
        assert_eq!(surf, Surface::Box(1));
        assert!((t - 4.0).abs() < 1e-5);
    }
}
