//! Encoder invariants as reusable property checks.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use gwsample_core::{accumulate, Frame, SubSequence, WeightKind, WeightVector};

/// Small frame geometry plus a run of frames.
#[derive(Debug, Clone)]
pub struct Clip {
    pub width: usize,
    pub height: usize,
    pub channels: usize,
    pub frames: Vec<Vec<u8>>,
}

impl Clip {
    pub fn frames(&self) -> Vec<Frame> {
        self.frames
            .iter()
            .enumerate()
            .map(|(i, px)| {
                Frame::new(self.width, self.height, self.channels, px.clone(), i).unwrap()
            })
            .collect()
    }

    pub fn samples(&self) -> usize {
        self.width * self.height * self.channels
    }
}

pub fn clip(max_len: usize, max_value: u8) -> impl Strategy<Value = Clip> {
    (
        1usize..=6,
        1usize..=6,
        prop_oneof![Just(1usize), Just(3usize)],
        1..=max_len,
    )
        .prop_flat_map(move |(w, h, c, len)| {
            proptest::collection::vec(proptest::collection::vec(0..=max_value, w * h * c), len)
                .prop_map(move |frames| Clip {
                    width: w,
                    height: h,
                    channels: c,
                    frames,
                })
        })
}

pub fn weights_for(len: usize) -> impl Strategy<Value = WeightVector> {
    prop_oneof![
        Just(WeightVector::ramp(len).unwrap()),
        Just(WeightVector::uniform(len).unwrap()),
        (0.0..(len as f64 + 1.0), 0.3..(len as f64 + 1.0))
            .prop_map(move |(mu, sigma)| WeightVector::gaussian(len, mu, sigma).unwrap()),
        proptest::collection::vec(0.0..10.0f64, len).prop_filter_map("all zero", |raw| {
            WeightVector::new(raw, WeightKind::Uniform).ok()
        }),
    ]
}

pub fn clip_with_weights(
    max_len: usize,
    max_value: u8,
) -> impl Strategy<Value = (Clip, WeightVector)> {
    clip(max_len, max_value).prop_flat_map(|c| {
        let len = c.frames.len();
        (Just(c), weights_for(len))
    })
}

fn encode(clip: &Clip, w: &WeightVector) -> Vec<f64> {
    let frames = clip.frames();
    accumulate(&SubSequence::new(&frames).unwrap(), w)
        .unwrap()
        .values()
        .to_vec()
}

pub fn normalization(w: &WeightVector) -> Result<(), TestCaseError> {
    let n = w.normalized();
    let sum: f64 = n.iter().sum();
    prop_assert!((sum - 1.0).abs() <= 1e-12, "sum {}", sum);
    let total: f64 = w.raw().iter().sum();
    for (a, r) in n.iter().zip(w.raw()) {
        prop_assert_eq!(*a, r / total);
    }
    Ok(())
}

pub fn convexity(clip: &Clip, w: &WeightVector) -> Result<(), TestCaseError> {
    let out = encode(clip, w);
    for p in 0..clip.samples() {
        let lo = clip.frames.iter().map(|f| f[p]).min().unwrap();
        let hi = clip.frames.iter().map(|f| f[p]).max().unwrap();
        prop_assert!(
            out[p] >= f64::from(lo) && out[p] <= f64::from(hi),
            "pixel {} = {} outside [{}, {}]",
            p,
            out[p],
            lo,
            hi
        );
        prop_assert!(out[p].is_finite());
    }
    Ok(())
}

pub fn constant_identity(clip: &Clip, w: &WeightVector) -> Result<(), TestCaseError> {
    let constant = Clip {
        frames: vec![clip.frames[0].clone(); clip.frames.len()],
        ..clip.clone()
    };
    let out = encode(&constant, w);
    for (o, p) in out.iter().zip(&clip.frames[0]) {
        prop_assert!((o - f64::from(*p)).abs() <= 1e-12, "{} vs {}", o, p);
    }
    Ok(())
}

pub fn scale_invariance(clip: &Clip, w: &WeightVector, c: f64) -> Result<(), TestCaseError> {
    let scaled = WeightVector::new(w.raw().iter().map(|v| v * c).collect(), w.kind()).unwrap();
    let a = encode(clip, w);
    let b = encode(clip, &scaled);
    for (x, y) in a.iter().zip(&b) {
        prop_assert!((x - y).abs() <= 1e-12, "{} vs {} (c = {})", x, y, c);
    }
    Ok(())
}

pub fn uniform_is_mean(clip: &Clip) -> Result<(), TestCaseError> {
    let w = WeightVector::uniform(clip.frames.len()).unwrap();
    let out = encode(clip, &w);
    for p in 0..clip.samples() {
        let mean =
            clip.frames.iter().map(|f| f64::from(f[p])).sum::<f64>() / clip.frames.len() as f64;
        prop_assert!((out[p] - mean).abs() <= 1e-12, "{} vs {}", out[p], mean);
    }
    Ok(())
}

/// `a` and `b` must share geometry and length; the combination must fit in u8.
pub fn linearity(
    a: &Clip,
    b: &Clip,
    alpha: u8,
    beta: u8,
    w: &WeightVector,
) -> Result<(), TestCaseError> {
    let combined = Clip {
        frames: a
            .frames
            .iter()
            .zip(&b.frames)
            .map(|(fa, fb)| {
                fa.iter()
                    .zip(fb)
                    .map(|(x, y)| alpha * x + beta * y)
                    .collect()
            })
            .collect(),
        ..a.clone()
    };
    let lhs = encode(&combined, w);
    let ea = encode(a, w);
    let eb = encode(b, w);
    for p in 0..lhs.len() {
        let rhs = f64::from(alpha) * ea[p] + f64::from(beta) * eb[p];
        prop_assert!((lhs[p] - rhs).abs() <= 1e-9, "{} vs {}", lhs[p], rhs);
    }
    Ok(())
}

/// Ramp weights on two frames: reversing the order changes every pixel
/// where the frames differ.
pub fn permutation_sensitivity(x: &[u8], y: &[u8]) -> Result<(), TestCaseError> {
    let n = x.len();
    let fwd = vec![
        Frame::new(n, 1, 1, x.to_vec(), 0).unwrap(),
        Frame::new(n, 1, 1, y.to_vec(), 1).unwrap(),
    ];
    let rev = vec![
        Frame::new(n, 1, 1, y.to_vec(), 0).unwrap(),
        Frame::new(n, 1, 1, x.to_vec(), 1).unwrap(),
    ];
    let w = WeightVector::ramp(2).unwrap();
    let a = accumulate(&SubSequence::new(&fwd).unwrap(), &w).unwrap();
    let b = accumulate(&SubSequence::new(&rev).unwrap(), &w).unwrap();
    for p in 0..n {
        if x[p] != y[p] {
            prop_assert_ne!(a.values()[p], b.values()[p]);
        } else {
            prop_assert_eq!(a.values()[p], b.values()[p]);
        }
    }
    Ok(())
}
