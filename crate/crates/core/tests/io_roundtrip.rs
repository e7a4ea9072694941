mod support;

use std::fs;

use gwsample_core::frame_io::{read_npy, read_sidecar};
use gwsample_core::{
    quantize, read_frames, write_encoded, Encoder, EncoderConfig, FrameSource, OutputFormat,
    OutputSpec, WeightScheme,
};
use support::{random_video, rng, to_frames};

#[test]
fn npy_and_png_agree_after_quantization() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = rng(3);
    let raw = random_video(&mut r, 9, 7, 3, 50);
    let encoder = Encoder::new(EncoderConfig {
        subseq_len: 5,
        weights: WeightScheme::Gaussian {
            mu: None,
            sigma: None,
        },
        ..Default::default()
    })
    .unwrap();
    let images = encoder.encode_frames(&to_frames(&raw, 9, 7, 3)).unwrap();

    let npy_dir = dir.path().join("npy");
    let png_dir = dir.path().join("png");
    let npy = write_encoded(&images, &OutputSpec::new(OutputFormat::Npy, &npy_dir), 5).unwrap();
    let png = write_encoded(&images, &OutputSpec::new(OutputFormat::Png8, &png_dir), 5).unwrap();
    assert_eq!(npy.len(), 10);

    for ((img, n), p) in images.iter().zip(&npy).zip(&png) {
        let (shape, values) = read_npy(n).unwrap();
        assert_eq!(shape, vec![7, 9, 3]);
        for (v, e) in values.iter().zip(img.values()) {
            assert_eq!(*v, *e as f32);
        }
        let decoded = image::open(p).unwrap().to_rgb8().into_raw();
        let expected: Vec<u8> = values.iter().map(|v| quantize(f64::from(*v))).collect();
        assert_eq!(decoded, expected);
    }

    let sidecar = read_sidecar(&npy_dir).unwrap();
    assert_eq!(sidecar.len(), 10);
    assert_eq!(sidecar[3].start, 15);
    assert_eq!(sidecar[3].end, 20);
    assert_eq!(sidecar[3].z, 5);
    assert!(npy_dir.join(&sidecar[3].path).exists());
}

#[test]
fn raw_rgb24_ingest_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = rng(4);
    let raw = random_video(&mut r, 4, 3, 3, 6);
    let path = dir.path().join("clip.rgb");
    fs::write(&path, raw.concat()).unwrap();
    let frames: Vec<_> = read_frames(&FrameSource::RawRgb24 {
        path,
        width: 4,
        height: 3,
    })
    .unwrap()
    .collect::<Result<_, _>>()
    .unwrap();
    assert_eq!(frames.len(), 6);
    for (i, (f, want)) in frames.iter().zip(&raw).enumerate() {
        assert_eq!(f.index(), i);
        assert_eq!(f.pixels(), want.as_slice());
    }
}

#[test]
fn image_directory_is_read_in_name_order() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = rng(6);
    let raw = random_video(&mut r, 5, 5, 3, 4);
    for (i, px) in raw.iter().enumerate().rev() {
        image::save_buffer(
            dir.path().join(format!("f{i:03}.png")),
            px,
            5,
            5,
            image::ExtendedColorType::Rgb8,
        )
        .unwrap();
    }
    let frames: Vec<_> = read_frames(&FrameSource::Images {
        path: dir.path().to_path_buf(),
    })
    .unwrap()
    .collect::<Result<_, _>>()
    .unwrap();
    let got: Vec<Vec<u8>> = frames.into_iter().map(|f| f.into_pixels()).collect();
    assert_eq!(got, raw);
}
