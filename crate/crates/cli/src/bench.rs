//! Encoder throughput on synthetic frames held in memory.

use std::io::Write;
use std::time::{Duration, Instant};

use gwsample_core::{Encoder, EncoderConfig, Frame};

use crate::{with_jobs, BenchArgs, CliError, ExitCode};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Throughput {
    pub frames: usize,
    pub width: usize,
    pub height: usize,
    pub subseq_len: usize,
    pub jobs: usize,
    pub median: Duration,
    pub fps: f64,
    pub mb_per_s: f64,
}

impl std::fmt::Display for Throughput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "frames={} shape={}x{}x3 subseq_len={} jobs={} median_s={:.6} fps={:.1} mb_per_s={:.1}",
            self.frames,
            self.width,
            self.height,
            self.subseq_len,
            self.jobs,
            self.median.as_secs_f64(),
            self.fps,
            self.mb_per_s
        )
    }
}

/// Deterministic RGB frames with a drifting gradient.
pub fn synthetic_frames(width: usize, height: usize, count: usize) -> Vec<Frame> {
    (0..count)
        .map(|t| {
            let mut px = Vec::with_capacity(width * height * 3);
            for y in 0..height {
                for x in 0..width {
                    for c in 0..3 {
                        px.push(((x * 3 + y * 5 + t * 7 + c * 11) % 256) as u8);
                    }
                }
            }
            Frame::new(width, height, 3, px, t).expect("valid synthetic frame")
        })
        .collect()
}

/// Median wall time of `iters` encodes of `frames` on the current rayon pool.
pub fn measure(
    frames: &[Frame],
    subseq_len: usize,
    iters: usize,
) -> gwsample_core::Result<Throughput> {
    let encoder = Encoder::new(EncoderConfig {
        subseq_len,
        ..Default::default()
    })?;
    let mut times = Vec::with_capacity(iters);
    for _ in 0..iters.max(1) {
        let t0 = Instant::now();
        let images = encoder.encode_frames(frames)?;
        times.push(t0.elapsed());
        drop(std::hint::black_box(images));
    }
    times.sort();
    let median = times[times.len() / 2];
    let first = &frames[0];
    let secs = median.as_secs_f64().max(1e-9);
    let fps = frames.len() as f64 / secs;
    Ok(Throughput {
        frames: frames.len(),
        width: first.width(),
        height: first.height(),
        subseq_len,
        jobs: rayon::current_num_threads(),
        median,
        fps,
        mb_per_s: fps * first.pixels().len() as f64 / 1e6,
    })
}

pub fn bench_cmd(a: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    for (name, v) in [
        ("--width", a.width),
        ("--height", a.height),
        ("--frames", a.frames),
        ("--subseq-len", a.subseq_len),
        ("--iters", a.iters),
    ] {
        if v == 0 {
            return Err(CliError::usage(format!("{name} must be at least 1")));
        }
    }
    let frames = synthetic_frames(a.width, a.height, a.frames);
    let result = with_jobs(a.jobs, || Ok(measure(&frames, a.subseq_len, a.iters)?))?;
    writeln!(out, "{result}").map_err(|e| CliError {
        code: ExitCode::Io,
        message: format!("stdout: {e}"),
    })
}

/// Parses a line printed by `bench`.
pub fn parse_report(line: &str) -> Option<(f64, f64)> {
    let field = |key: &str| {
        line.split_whitespace()
            .find_map(|kv| kv.strip_prefix(key)?.strip_prefix('='))
            .and_then(|v| v.parse::<f64>().ok())
    };
    Some((field("fps")?, field("median_s")?))
}
