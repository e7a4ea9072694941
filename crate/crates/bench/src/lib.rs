//! Inputs shared by the criterion benchmarks.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use gwsample_core::{Class, Frame, ScoreRecord};

pub fn random_frames(width: usize, height: usize, count: usize, seed: u64) -> Vec<Frame> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|t| {
            let mut px = vec![0u8; width * height * 3];
            rng.fill(px.as_mut_slice());
            Frame::new(width, height, 3, px, t).expect("valid frame")
        })
        .collect()
}

/// Two overlapping score distributions, half live and half spoof.
pub fn random_scores(count: usize, seed: u64) -> Vec<ScoreRecord> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let live = i % 2 == 0;
            let score = rng.random::<f64>() + if live { 0.4 } else { 0.0 };
            let label = if live { Class::Live } else { Class::Spoof };
            ScoreRecord::new(format!("s{i}"), label, score).expect("finite score")
        })
        .collect()
}
