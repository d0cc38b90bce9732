//! Six-camera simulation with night and rain degradation.
//!
//! Cameras emit (intensity, estimated depth) per pixel rather than RGB:
//! the degradation the pipeline cares about acts directly on the quantity
//! the BEV lift consumes. Depth noise exists in every context (sigma0);
//! night widens it by (1 + lambda_night), dims intensity by kappa_night
//! and adds glare blobs; rain masks whole pixel columns to "no return".
//!
//! Randomness discipline: depth noise and glare draw from `noise_rng`,
//! streak masks from `rain_rng`. Toggling one context flag therefore
//! leaves the other subsystem's draws untouched.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::raycast::{cast, Surface};
use super::scene::Scene;
use crate::context::Context;
use crate::geometry::SensorPose;
use crate::scalar::Real;

/// Depth sentinel for "no return" (matches the on-disk encoding).
pub const DEPTH_NONE: f32 = -1.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CameraConfig {
    pub width: usize,
    pub height: usize,
    /// Horizontal field of view, radians.
    pub hfov: f32,
    /// Mount height above ground.
    pub mount_z: f32,
    pub max_range: f32,
    /// Baseline depth-noise sigma, meters (applies in every context).
    pub depth_sigma0: f32,
    /// Night multiplies sigma by (1 + lambda_night).
    pub lambda_night: f32,
    /// Night intensity scale.
    pub kappa_night: f32,
    /// Glare blobs per image at night.
    pub glare_count: usize,
    pub glare_sigma_min: f32,
    pub glare_sigma_max: f32,
    /// Fraction of pixel columns masked by rain streaks.
    pub f_rain: f32,
    /// Shading albedos and range attenuation for the toy renderer.
    pub box_albedo: f32,
    pub ground_albedo: f32,
    pub sky_intensity: f32,
    pub shade_attenuation: f32,
}

impl Default for CameraConfig {
    fn default() -> Self {
        CameraConfig {
            width: 96,
            height: 32,
            hfov: 70.0_f32.to_radians(),
            mount_z: 1.6,
            max_range: 120.0,
            depth_sigma0: 0.5,
            lambda_night: 4.0,
            kappa_night: 0.25,
            glare_count: 3,
            glare_sigma_min: 2.0,
            glare_sigma_max: 6.0,
            f_rain: 0.15,
            box_albedo: 0.8,
            ground_albedo: 0.35,
            sky_intensity: 0.05,
            shade_attenuation: 80.0,
        }
    }
}

/// Yaw offsets of the six cameras, covering 360 degrees.
pub const CAMERA_YAWS: [f32; 6] = [
    0.0,
    std::f32::consts::FRAC_PI_3,
    -std::f32::consts::FRAC_PI_3,
    2.0 * std::f32::consts::FRAC_PI_3,
    -2.0 * std::f32::consts::FRAC_PI_3,
    std::f32::consts::PI,
];

/// One toy camera frame: per-pixel intensity in [0, 1] and estimated depth
/// along the pixel ray (negative = no return).
#[derive(Clone, Debug, PartialEq)]
pub struct CameraImage<T> {
    pub width: usize,
    pub height: usize,
    pub pose: SensorPose<T>,
    pub hfov: T,
    /// Row-major, length width * height.
    pub intensity: Vec<T>,
    /// Row-major; values < 0 mean no return.
    pub depth: Vec<T>,
}

impl<T: Real> CameraImage<T> {
    #[inline]
    pub fn idx(&self, u: usize, v: usize) -> usize {
        v * self.width + u
    }

    pub fn depth_at(&self, u: usize, v: usize) -> Option<T> {
        let d = self.depth[self.idx(u, v)];
        (d >= T::zero()).then_some(d)
    }

    /// Unit ray of pixel (u, v) in the ego frame, through the pixel center.
    pub fn pixel_ray(&self, u: usize, v: usize) -> [T; 3] {
        let two = crate::real::<T>(2.0);
        let half = crate::real::<T>(0.5);
        let w = T::from_usize(self.width).unwrap();
        let h = T::from_usize(self.height).unwrap();
        let fx = (w / two) / (self.hfov / two).tan();
        let uc = T::from_usize(u).unwrap() + half - w / two;
        let vc = T::from_usize(v).unwrap() + half - h / two;
        // Camera frame: x forward, y left, z up; pixel u grows rightward
        // (negative y), v grows downward (negative z).
        let d = [T::one(), -uc / fx, -vc / fx];
        let norm = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        self.pose.rotate([d[0] / norm, d[1] / norm, d[2] / norm])
    }

    pub fn masked_fraction(&self) -> f64 {
        let masked = self.depth.iter().filter(|&&d| d < T::zero()).count();
        masked as f64 / self.depth.len() as f64
    }

    pub fn cast<U: Real>(&self) -> CameraImage<U> {
        let cvt = |v: T| U::from(v).expect("scalar cast");
        CameraImage {
            width: self.width,
            height: self.height,
            pose: SensorPose {
                translation: [
                    cvt(self.pose.translation[0]),
                    cvt(self.pose.translation[1]),
                    cvt(self.pose.translation[2]),
                ],
                yaw: cvt(self.pose.yaw),
                pitch: cvt(self.pose.pitch),
                roll: cvt(self.pose.roll),
            },
            hfov: cvt(self.hfov),
            intensity: self.intensity.iter().map(|&v| cvt(v)).collect(),
            depth: self.depth.iter().map(|&v| cvt(v)).collect(),
        }
    }
}

/// The fixed six-camera rig for a given config.
pub fn camera_poses(cfg: &CameraConfig) -> [SensorPose<f32>; 6] {
    CAMERA_YAWS.map(|yaw| SensorPose::new([0.0, 0.0, cfg.mount_z], yaw, 0.0, 0.0))
}

/// Renders the six cameras for a scene under the given context.
pub fn simulate_cameras(
    scene: &Scene,
    context: Context,
    cfg: &CameraConfig,
    noise_rng: &mut impl Rng,
    rain_rng: &mut impl Rng,
) -> Vec<CameraImage<f32>> {
    camera_poses(cfg)
        .iter()
        .map(|pose| render_camera(scene, context, cfg, *pose, noise_rng, rain_rng))
        .collect()
}

fn render_camera(
    scene: &Scene,
    context: Context,
    cfg: &CameraConfig,
    pose: SensorPose<f32>,
    noise_rng: &mut impl Rng,
    rain_rng: &mut impl Rng,
) -> CameraImage<f32> {
    let (w, h) = (cfg.width, cfg.height);
    let mut image = CameraImage {
        width: w,
        height: h,
        pose,
        hfov: cfg.hfov,
        intensity: vec![0.0; w * h],
        depth: vec![DEPTH_NONE; w * h],
    };

    let sigma = if context.is_night {
        cfg.depth_sigma0 * (1.0 + cfg.lambda_night)
    } else {
        cfg.depth_sigma0
    };
    let noise = Normal::new(0.0f32, sigma).expect("sigma is finite and positive");

    for v in 0..h {
        for u in 0..w {
            let idx = v * w + u;
            let dir = image.pixel_ray(u, v);
            match cast(pose.translation, dir, &scene.actors, cfg.max_range) {
                Some((t, surface)) => {
                    let albedo = match surface {
                        Surface::Box(_) => cfg.box_albedo,
                        Surface::Ground => cfg.ground_albedo,
                    };
                    image.intensity[idx] = albedo * (-t / cfg.shade_attenuation).exp();
                    let noisy = t + noise.sample(noise_rng);
                    image.depth[idx] = noisy.max(0.1);
                }
                None => {
                    image.intensity[idx] = cfg.sky_intensity;
                    // depth stays DEPTH_NONE
                }
            }
        }
    }

    if context.is_night {
        for px in image.intensity.iter_mut() {
            *px *= cfg.kappa_night;
        }
        for _ in 0..cfg.glare_count {
            let gx = noise_rng.gen_range(0.0..w as f32);
            let gy = noise_rng.gen_range(0.0..h as f32);
            let gs = noise_rng.gen_range(cfg.glare_sigma_min..=cfg.glare_sigma_max);
            for v in 0..h {
                for u in 0..w {
                    let d2 = (u as f32 + 0.5 - gx).powi(2) + (v as f32 + 0.5 - gy).powi(2);
                    image.intensity[v * w + u] += (-d2 / (2.0 * gs * gs)).exp();
                }
            }
        }
        for px in image.intensity.iter_mut() {
            *px = px.clamp(0.0, 1.0);
        }
    }

    if context.is_rain {
        for u in 0..w {
            if rain_rng.gen::<f32>() < cfg.f_rain {
                for v in 0..h {
                    image.depth[v * w + u] = DEPTH_NONE;
                }
            }
        }
    }

    image
}
