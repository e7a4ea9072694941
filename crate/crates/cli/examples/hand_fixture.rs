//! Writes the synthetic hand-movement clip used by the smoke test:
//! 120 frames of 64x64 RGB, a skin-toned hand sweeping and trembling in
//! front of a static textured background.
//!
//!     cargo run -p gwsample-cli --example hand_fixture -- <out-dir>

use std::f64::consts::TAU;
use std::path::PathBuf;

const SIZE: usize = 64;
const FRAMES: usize = 120;

fn background(x: usize, y: usize) -> [u8; 3] {
    let check = ((x / 8 + y / 8) % 2) as u8 * 24;
    [60 + check + (y as u8), 70 + check, 90 + (x as u8) / 2]
}

fn inside_hand(x: f64, y: f64, cx: f64, cy: f64) -> bool {
    let palm = ((x - cx) / 9.0).powi(2) + ((y - cy) / 11.0).powi(2) <= 1.0;
    let fingers = (0..4).any(|k| {
        let fx = cx - 7.5 + 5.0 * k as f64;
        (x - fx).abs() <= 1.8 && y <= cy - 6.0 && y >= cy - 22.0 + (k as f64 - 1.5).abs() * 2.0
    });
    palm || fingers
}

fn main() {
    let out: PathBuf = std::env::args_os()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| "crates/cli/tests/fixtures/hand_movement".into());
    std::fs::create_dir_all(&out).expect("create output directory");
    for t in 0..FRAMES {
        let phase = t as f64 / FRAMES as f64;
        let cx = 32.0 + 14.0 * (TAU * 1.5 * phase).sin() + 1.5 * (TAU * t as f64 / 4.0).sin();
        let cy = 38.0 + 4.0 * (TAU * phase).cos() + 1.0 * (TAU * t as f64 / 5.0).cos();
        let mut px = Vec::with_capacity(SIZE * SIZE * 3);
        for y in 0..SIZE {
            for x in 0..SIZE {
                let rgb = if inside_hand(x as f64, y as f64, cx, cy) {
                    [224, 172, 140]
                } else {
                    background(x, y)
                };
                px.extend_from_slice(&rgb);
            }
        }
        image::save_buffer(
            out.join(format!("frame_{t:03}.png")),
            &px,
            SIZE as u32,
            SIZE as u32,
            image::ExtendedColorType::Rgb8,
        )
        .expect("write frame");
    }
}
