//! Seed derivation for reproducible concurrent generation.
//!
//! Per-sample seeds come from `splitmix64(dataset_seed ^ sample_index)`,
//! and each sensor subsystem gets its own stream via a fixed tag, so
//! samples can be produced independently (and concurrently) while staying
//! bit-identical to the sequential order.

/// Stream tag for scene layout randomness.
pub const STREAM_SCENE: u64 = 0x5343_454e;
/// Stream tag for the per-sample actor-count draw.
pub const STREAM_META: u64 = 0x4d45_5441;
/// Stream tag for lidar rays (rain scatter/drop).
pub const STREAM_LIDAR: u64 = 0x4c49_4441;
/// Stream tag for camera sensor noise (depth noise, glare).
pub const STREAM_CAM_NOISE: u64 = 0x434e_4f49;
/// Stream tag for camera rain streaks.
pub const STREAM_CAM_RAIN: u64 = 0x4352_4149;
/// Stream tag for sample tokens.
pub const STREAM_TOKEN: u64 = 0x544f_4b45;

/// The splitmix64 mixing function (Steele, Lea & Flood constants).
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for one sample of a dataset.
pub fn sample_seed(dataset_seed: u64, sample_index: u64) -> u64 {
    splitmix64(dataset_seed ^ splitmix64(sample_index))
}

/// Seed for one subsystem stream within a sample.
pub fn stream_seed(sample_seed: u64, tag: u64) -> u64 {
    splitmix64(sample_seed ^ tag)
}
