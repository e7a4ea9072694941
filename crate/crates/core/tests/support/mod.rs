//! Reference implementations used as test oracles.
//!
//! Everything here is written independently of the library's code paths:
//! plain loops, direct counting and exhaustive enumeration.

#![allow(dead_code)]

pub mod invariants;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use gwsample_core::{Class, Frame, ScoreRecord};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleWeights {
    Ramp,
    Gaussian { mu: f64, sigma: f64 },
    Uniform,
}

impl OracleWeights {
    pub fn raw(&self, q: usize) -> f64 {
        let pos = (q + 1) as f64;
        match *self {
            OracleWeights::Ramp => pos,
            OracleWeights::Uniform => 1.0,
            OracleWeights::Gaussian { mu, sigma } => {
                (-(pos - mu).powi(2) / (2.0 * sigma.powi(2))).exp()
            }
        }
    }
}

/// Per-pixel double loop over a list of frames, with weights renormalized to
/// the number of frames supplied.
pub fn naive_accumulate(frames: &[&[u8]], weights: OracleWeights) -> Vec<f64> {
    let n = frames[0].len();
    let total: f64 = (0..frames.len()).map(|q| weights.raw(q)).sum();
    let mut out = vec![0.0; n];
    for p in 0..n {
        let mut acc = 0.0;
        for (q, frame) in frames.iter().enumerate() {
            acc += f64::from(frame[p]) * (weights.raw(q) / total);
        }
        out[p] = acc;
    }
    out
}

/// Naive whole-video reference: `(start, end, values)` per segment.
pub fn naive_encode(
    frames: &[Vec<u8>],
    z: usize,
    weights: OracleWeights,
    keep_tail: bool,
) -> Vec<(usize, usize, Vec<f64>)> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < frames.len() {
        let end = (start + z).min(frames.len());
        if end - start < z && !keep_tail {
            break;
        }
        let slice: Vec<&[u8]> = frames[start..end].iter().map(|f| f.as_slice()).collect();
        out.push((start, end, naive_accumulate(&slice, weights)));
        start = end;
    }
    out
}

pub fn random_video(rng: &mut StdRng, w: usize, h: usize, c: usize, len: usize) -> Vec<Vec<u8>> {
    (0..len)
        .map(|_| (0..w * h * c).map(|_| rng.random::<u8>()).collect())
        .collect()
}

pub fn to_frames(raw: &[Vec<u8>], w: usize, h: usize, c: usize) -> Vec<Frame> {
    raw.iter()
        .enumerate()
        .map(|(i, px)| Frame::new(w, h, c, px.clone(), i).unwrap())
        .collect()
}

/// FAR/FRR by counting, accepting iff `score >= threshold`.
pub fn count_rates(records: &[ScoreRecord], threshold: f64) -> (f64, f64) {
    let (mut live, mut spoof, mut fa, mut fr) = (0usize, 0usize, 0usize, 0usize);
    for r in records {
        let accepted = r.score >= threshold;
        match r.label {
            Class::Live => {
                live += 1;
                if !accepted {
                    fr += 1;
                }
            }
            Class::Spoof => {
                spoof += 1;
                if accepted {
                    fa += 1;
                }
            }
        }
    }
    (fa as f64 / spoof as f64, fr as f64 / live as f64)
}

pub fn count_hter(records: &[ScoreRecord], threshold: f64) -> f64 {
    let (far, frr) = count_rates(records, threshold);
    (far + frr) / 2.0
}

/// Exhaustive equal-error search: every score, every midpoint between
/// neighbouring distinct scores, and one point beyond each end. Picks the
/// smallest |FAR - FRR|, then the smallest HTER; returns `(eer, threshold)`.
pub fn brute_force_eer(records: &[ScoreRecord]) -> (f64, f64) {
    let mut scores: Vec<f64> = records.iter().map(|r| r.score).collect();
    scores.sort_by(|a, b| a.partial_cmp(b).unwrap());
    scores.dedup();
    let mut candidates = scores.clone();
    for w in scores.windows(2) {
        candidates.push((w[0] + w[1]) / 2.0);
    }
    candidates.push(scores[0] - 1.0);
    candidates.push(scores[scores.len() - 1] + 1.0);

    let mut best: Option<(f64, f64, f64)> = None;
    for t in candidates {
        let (far, frr) = count_rates(records, t);
        let gap = (far - frr).abs();
        let h = (far + frr) / 2.0;
        let better = match best {
            None => true,
            Some((bg, bh, _)) => gap < bg || (gap == bg && h < bh),
        };
        if better {
            best = Some((gap, h, t));
        }
    }
    let (_, h, t) = best.unwrap();
    (h, t)
}

/// Dense threshold grid over `[lo, hi]` at `step`, same selection rule.
pub fn grid_eer(records: &[ScoreRecord], lo: f64, hi: f64, step: f64) -> f64 {
    let steps = ((hi - lo) / step).round() as usize;
    let mut best = (f64::INFINITY, f64::INFINITY);
    for i in 0..=steps {
        let t = lo + i as f64 * step;
        let (far, frr) = count_rates(records, t);
        let key = ((far - frr).abs(), (far + frr) / 2.0);
        if key.0 < best.0 || (key.0 == best.0 && key.1 < best.1) {
            best = key;
        }
    }
    best.1
}

/// AUC by comparing every live/spoof pair, ties counted one half.
pub fn pairwise_auc(records: &[ScoreRecord]) -> f64 {
    let live: Vec<f64> = records
        .iter()
        .filter(|r| r.label == Class::Live)
        .map(|r| r.score)
        .collect();
    let spoof: Vec<f64> = records
        .iter()
        .filter(|r| r.label == Class::Spoof)
        .map(|r| r.score)
        .collect();
    let mut wins = 0.0;
    for l in &live {
        for s in &spoof {
            if l > s {
                wins += 1.0;
            } else if l == s {
                wins += 0.5;
            }
        }
    }
    wins / (live.len() * spoof.len()) as f64
}

/// Random two-class score set; scores are drawn on a coarse grid so that
/// ties occur.
pub fn random_scores(rng: &mut StdRng, n: usize) -> Vec<ScoreRecord> {
    let n = n.max(2);
    let shift = rng.random_range(0.0..2.0);
    let coarse = rng.random_bool(0.5);
    (0..n)
        .map(|i| {
            // guarantee both classes
            let label = match i {
                0 => Class::Live,
                1 => Class::Spoof,
                _ if rng.random_bool(0.5) => Class::Live,
                _ => Class::Spoof,
            };
            let mut score: f64 = rng.random_range(0.0..1.0);
            if label == Class::Live {
                score += shift * 0.5;
            }
            if coarse {
                score = (score * 50.0).round() / 50.0;
            }
            ScoreRecord::new(format!("r{i}"), label, score).unwrap()
        })
        .collect()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
