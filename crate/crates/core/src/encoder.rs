//! Temporal encoding of frame sub-sequences.
//!
//! A video is cut into consecutive, non-overlapping runs of `Z` frames and each
//! run is collapsed into one image by a normalized weighted sum over time:
//!
//! ```text
//! out[p] = sum_q frame_q[p] * M_q / sum_q M_q
//! ```
//!
//! Accumulation is always done in `f64`; quantization to 8 bits happens only
//! when an [`EncodedImage`] is exported (see [`crate::frame_io`]).

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pixel tile processed per pass over the frames of a segment. Small enough
/// for the accumulator and bounds to stay in L1.
const TILE: usize = 1024;

/// Geometry shared by frames and encoded images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrameShape {
    pub width: usize,
    pub height: usize,
    pub channels: usize,
}

impl FrameShape {
    pub fn new(width: usize, height: usize, channels: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter(format!(
                "frame dimensions must be positive, got {width}x{height}"
            )));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidParameter(format!(
                "frames must have 1 or 3 channels, got {channels}"
            )));
        }
        Ok(FrameShape {
            width,
            height,
            channels,
        })
    }

    /// Number of samples in one frame (`width * height * channels`).
    pub fn sample_count(&self) -> usize {
        self.width * self.height * self.channels
    }
}

impl fmt::Display for FrameShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}x{}", self.width, self.height, self.channels)
    }
}

/// One decoded video frame: row-major, channel-interleaved 8-bit samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    shape: FrameShape,
    pixels: Vec<u8>,
    index: usize,
}

impl Frame {
    pub fn new(
        width: usize,
        height: usize,
        channels: usize,
        pixels: Vec<u8>,
        index: usize,
    ) -> Result<Self> {
        Self::from_shape(FrameShape::new(width, height, channels)?, pixels, index)
    }

    pub fn from_shape(shape: FrameShape, pixels: Vec<u8>, index: usize) -> Result<Self> {
        if pixels.len() != shape.sample_count() {
            return Err(Error::shape(
                format!("frame {index}"),
                format!(
                    "{} samples supplied for a {shape} frame ({} expected)",
                    pixels.len(),
                    shape.sample_count()
                ),
            ));
        }
        Ok(Frame {
            shape,
            pixels,
            index,
        })
    }

    pub fn shape(&self) -> FrameShape {
        self.shape
    }

    pub fn width(&self) -> usize {
        self.shape.width
    }

    pub fn height(&self) -> usize {
        self.shape.height
    }

    pub fn channels(&self) -> usize {
        self.shape.channels
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    /// Position of the frame in its source video, 0-based.
    pub fn index(&self) -> usize {
        self.index
    }
}

/// A borrowed run of consecutive, shape-consistent frames.
#[derive(Debug, Clone, Copy)]
pub struct SubSequence<'a> {
    frames: &'a [Frame],
    start_index: usize,
}

impl<'a> SubSequence<'a> {
    pub fn new(frames: &'a [Frame]) -> Result<Self> {
        let first = frames
            .first()
            .ok_or_else(|| Error::EmptyInput("sub-sequence has no frames".into()))?;
        let shape = first.shape();
        let start_index = first.index();
        for (offset, frame) in frames.iter().enumerate() {
            if frame.shape() != shape {
                return Err(Error::shape(
                    format!("frame {}", frame.index()),
                    format!("expected {shape}, found {}", frame.shape()),
                ));
            }
            if frame.index() != start_index + offset {
                return Err(Error::InvalidParameter(format!(
                    "frame indices must be consecutive: expected {}, found {}",
                    start_index + offset,
                    frame.index()
                )));
            }
        }
        Ok(SubSequence {
            frames,
            start_index,
        })
    }

    pub fn frames(&self) -> &'a [Frame] {
        self.frames
    }

    pub fn start_index(&self) -> usize {
        self.start_index
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn shape(&self) -> FrameShape {
        self.frames[0].shape()
    }
}

/// How a weight vector was generated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum WeightKind {
    /// `M = [1, 2, ..., Z]`.
    Ramp,
    /// `M_q = exp(-(q - mu)^2 / (2 sigma^2))` for `q = 1..=Z`.
    Gaussian { mu: f64, sigma: f64 },
    /// All ones; the encoded image is the mean frame.
    Uniform,
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightKind::Ramp => f.write_str("ramp"),
            WeightKind::Gaussian { mu, sigma } => write!(f, "gaussian(mu={mu},sigma={sigma})"),
            WeightKind::Uniform => f.write_str("uniform"),
        }
    }
}

/// Non-negative temporal weights, at least one of them positive.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    raw: Vec<f64>,
    kind: WeightKind,
}

impl WeightVector {
    pub fn new(raw: Vec<f64>, kind: WeightKind) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidParameter(
                "weight vector must have at least one element".into(),
            ));
        }
        if let Some(bad) = raw.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "weights must be finite and non-negative, found {bad}"
            )));
        }
        if raw.iter().all(|w| *w == 0.0) {
            return Err(Error::DegenerateWeights);
        }
        Ok(WeightVector { raw, kind })
    }

    /// `[1, 2, ..., z]`.
    pub fn ramp(z: usize) -> Result<Self> {
        check_len(z)?;
        Self::new((1..=z).map(|q| q as f64).collect(), WeightKind::Ramp)
    }

    /// Gaussian bump evaluated at positions `1..=z`.
    pub fn gaussian(z: usize, mu: f64, sigma: f64) -> Result<Self> {
        check_len(z)?;
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gaussian sigma must be positive and finite, got {sigma}"
            )));
        }
        if !mu.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gaussian mu must be finite, got {mu}"
            )));
        }
        let denom = 2.0 * sigma * sigma;
        let raw = (1..=z)
            .map(|q| {
                let d = q as f64 - mu;
                (-(d * d) / denom).exp()
            })
            .collect();
        Self::new(raw, WeightKind::Gaussian { mu, sigma })
    }

    pub fn uniform(z: usize) -> Result<Self> {
        check_len(z)?;
        Self::new(vec![1.0; z], WeightKind::Uniform)
    }

    pub fn raw(&self) -> &[f64] {
        &self.raw
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.raw.iter().sum()
    }

    /// Weights divided by their sum.
    pub fn normalized(&self) -> Vec<f64> {
        let total = self.total();
        self.raw.iter().map(|w| w / total).collect()
    }

    /// The first `len` weights, as used for a short tail segment.
    pub fn truncated(&self, len: usize) -> Result<Self> {
        if len == 0 || len > self.raw.len() {
            return Err(Error::InvalidParameter(format!(
                "cannot truncate {} weights to {len}",
                self.raw.len()
            )));
        }
        Self::new(self.raw[..len].to_vec(), self.kind)
    }
}

fn check_len(z: usize) -> Result<()> {
    if z == 0 {
        Err(Error::InvalidParameter(
            "sub-sequence length must be at least 1".into(),
        ))
    } else {
        Ok(())
    }
}

/// Free-function form of [`WeightVector::normalized`].
pub fn normalize(weights: &WeightVector) -> Vec<f64> {
    weights.normalized()
}

/// What to do with a final segment shorter than `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailPolicy {
    /// Encode it with the leading weights, renormalized.
    #[default]
    KeepTruncated,
    Drop,
}

/// Half-open frame range `[start, start + len)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub start: usize,
    pub len: usize,
}

impl Segment {
    pub fn end(&self) -> usize {
        self.start + self.len
    }
}

/// Splits `frame_count` frames into consecutive runs of `z`.
pub fn partition(frame_count: usize, z: usize, tail: TailPolicy) -> Result<Vec<Segment>> {
    if frame_count == 0 {
        return Err(Error::EmptyInput("video has no frames".into()));
    }
    check_len(z)?;
    let mut segments = Vec::with_capacity(frame_count.div_ceil(z));
    let mut start = 0;
    while start < frame_count {
        let len = z.min(frame_count - start);
        if len < z && tail == TailPolicy::Drop {
            break;
        }
        segments.push(Segment { start, len });
        start += len;
    }
    Ok(segments)
}

/// The single image produced from one sub-sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedImage {
    shape: FrameShape,
    values: Vec<f64>,
    start: usize,
    end: usize,
    weight_kind: WeightKind,
}

impl EncodedImage {
    pub fn new(
        shape: FrameShape,
        values: Vec<f64>,
        source_range: (usize, usize),
        weight_kind: WeightKind,
    ) -> Result<Self> {
        if values.len() != shape.sample_count() {
            return Err(Error::shape(
                format!("encoded image {}..{}", source_range.0, source_range.1),
                format!("{} values for a {shape} image", values.len()),
            ));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "encoded values must be finite, found {v}"
            )));
        }
        Ok(EncodedImage {
            shape,
            values,
            start: source_range.0,
            end: source_range.1,
            weight_kind,
        })
    }

    pub fn shape(&self) -> FrameShape {
        self.shape
    }

    pub fn width(&self) -> usize {
        self.shape.width
    }

    pub fn height(&self) -> usize {
        self.shape.height
    }

    pub fn channels(&self) -> usize {
        self.shape.channels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Source frame range, end exclusive.
    pub fn source_range(&self) -> (usize, usize) {
        (self.start, self.end)
    }

    pub fn weight_kind(&self) -> WeightKind {
        self.weight_kind
    }
}

/// Collapses a sub-sequence into one image with the given weights.
///
/// If the sub-sequence is shorter than the weight vector, only the leading
/// weights are used and they are renormalized. Each output sample is clamped
/// to the range of its inputs so rounding can never leave the convex hull.
pub fn accumulate(sub: &SubSequence<'_>, weights: &WeightVector) -> Result<EncodedImage> {
    if sub.len() > weights.len() {
        return Err(Error::InvalidParameter(format!(
            "sub-sequence of {} frames exceeds weight vector length {}",
            sub.len(),
            weights.len()
        )));
    }
    let raw = &weights.raw()[..sub.len()];
    let total: f64 = raw.iter().sum();
    if total == 0.0 {
        return Err(Error::DegenerateWeights);
    }

    let shape = sub.shape();
    let mut values = vec![0.0f64; shape.sample_count()];
    let mut lo = [0u8; TILE];
    let mut hi = [0u8; TILE];
    for (tile, out) in values.chunks_mut(TILE).enumerate() {
        let base = tile * TILE;
        let n = out.len();
        let (lo, hi) = (&mut lo[..n], &mut hi[..n]);
        lo.fill(u8::MAX);
        hi.fill(u8::MIN);
        for (frame, &w) in sub.frames().iter().zip(raw) {
            let px = &frame.pixels()[base..base + n];
            for i in 0..n {
                let p = px[i];
                out[i] += w * f64::from(p);
                lo[i] = lo[i].min(p);
                hi[i] = hi[i].max(p);
            }
        }
        for i in 0..n {
            out[i] = (out[i] / total).clamp(f64::from(lo[i]), f64::from(hi[i]));
        }
    }

    Ok(EncodedImage {
        shape,
        values,
        start: sub.start_index(),
        end: sub.start_index() + sub.len(),
        weight_kind: weights.kind(),
    })
}

/// Weight family selection with optional Gaussian parameters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum WeightScheme {
    #[default]
    Ramp,
    /// Unset parameters default to `mu = (Z + 1) / 2`, `sigma = Z / 6`.
    Gaussian {
        mu: Option<f64>,
        sigma: Option<f64>,
    },
    Uniform,
}

impl WeightScheme {
    pub fn build(&self, z: usize) -> Result<WeightVector> {
        match *self {
            WeightScheme::Ramp => WeightVector::ramp(z),
            WeightScheme::Uniform => WeightVector::uniform(z),
            WeightScheme::Gaussian { mu, sigma } => WeightVector::gaussian(
                z,
                mu.unwrap_or((z as f64 + 1.0) / 2.0),
                sigma.unwrap_or(z as f64 / 6.0),
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncoderConfig {
    pub subseq_len: usize,
    pub weights: WeightScheme,
    pub tail: TailPolicy,
}

impl Default for EncoderConfig {
    fn default() -> Self {
        EncoderConfig {
            subseq_len: 40,
            weights: WeightScheme::Ramp,
            tail: TailPolicy::KeepTruncated,
        }
    }
}

/// Encodes whole videos segment by segment.
///
/// Segments are independent, so they are encoded on the ambient rayon pool;
/// results are always returned in segment order and are bitwise identical to
/// a sequential run.
#[derive(Debug, Clone)]
pub struct Encoder {
    config: EncoderConfig,
    weights: WeightVector,
}

impl Encoder {
    pub fn new(config: EncoderConfig) -> Result<Self> {
        let weights = config.weights.build(config.subseq_len)?;
        Ok(Encoder { config, weights })
    }

    pub fn config(&self) -> &EncoderConfig {
        &self.config
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    /// Encodes an in-memory video.
    pub fn encode_frames(&self, frames: &[Frame]) -> Result<Vec<EncodedImage>> {
        let first = frames
            .first()
            .ok_or_else(|| Error::EmptyInput("video has no frames".into()))?;
        check_stream_shape(frames, first.shape())?;
        let segments = partition(frames.len(), self.config.subseq_len, self.config.tail)?;
        segments
            .par_iter()
            .map(|seg| self.encode_segment(&frames[seg.start..seg.end()]))
            .collect()
    }

    /// Sequential reference path for [`Encoder::encode_frames`].
    pub fn encode_frames_sequential(&self, frames: &[Frame]) -> Result<Vec<EncodedImage>> {
        let first = frames
            .first()
            .ok_or_else(|| Error::EmptyInput("video has no frames".into()))?;
        check_stream_shape(frames, first.shape())?;
        partition(frames.len(), self.config.subseq_len, self.config.tail)?
            .iter()
            .map(|seg| self.encode_segment(&frames[seg.start..seg.end()]))
            .collect()
    }

    pub fn encode_segment(&self, frames: &[Frame]) -> Result<EncodedImage> {
        accumulate(&SubSequence::new(frames)?, &self.weights)
    }

    /// Encodes a frame stream, holding at most `batch_segments * Z` frames in
    /// memory. Encoded images are handed to `sink` in batches, in segment
    /// order. Returns the number of images produced.
    pub fn encode_stream<I, F>(
        &self,
        frames: I,
        batch_segments: usize,
        mut sink: F,
    ) -> Result<usize>
    where
        I: IntoIterator<Item = Result<Frame>>,
        F: FnMut(Vec<EncodedImage>) -> Result<()>,
    {
        let z = self.config.subseq_len;
        let batch_len = z * batch_segments.max(1);
        let mut buffer: Vec<Frame> = Vec::with_capacity(batch_len);
        let mut shape = None;
        let mut seen = 0usize;
        let mut produced = 0usize;

        for frame in frames {
            let frame = frame?;
            let expected = *shape.get_or_insert(frame.shape());
            if frame.shape() != expected {
                return Err(Error::shape(
                    format!("frame {}", frame.index()),
                    format!("expected {expected}, found {}", frame.shape()),
                ));
            }
            seen += 1;
            buffer.push(frame);
            if buffer.len() == batch_len {
                let images: Vec<EncodedImage> = buffer
                    .par_chunks(z)
                    .map(|chunk| self.encode_segment(chunk))
                    .collect::<Result<_>>()?;
                produced += images.len();
                sink(images)?;
                buffer.clear();
            }
        }

        if seen == 0 {
            return Err(Error::EmptyInput("video has no frames".into()));
        }
        let images: Vec<EncodedImage> = buffer
            .par_chunks(z)
            .filter(|chunk| chunk.len() == z || self.config.tail == TailPolicy::KeepTruncated)
            .map(|chunk| self.encode_segment(chunk))
            .collect::<Result<_>>()?;
        produced += images.len();
        if !images.is_empty() {
            sink(images)?;
        }
        Ok(produced)
    }
}

fn check_stream_shape(frames: &[Frame], expected: FrameShape) -> Result<()> {
    match frames.iter().find(|f| f.shape() != expected) {
        Some(bad) => Err(Error::shape(
            format!("frame {}", bad.index()),
            format!("expected {expected}, found {}", bad.shape()),
        )),
        None => Ok(()),
    }
}

/// Encodes a frame stream into one image per partition segment.
pub fn encode_video<I>(frames: I, config: &EncoderConfig) -> Result<Vec<EncodedImage>>
where
    I: IntoIterator<Item = Result<Frame>>,
{
    let encoder = Encoder::new(*config)?;
    let mut out = Vec::new();
    encoder.encode_stream(frames, rayon::current_num_threads(), |batch| {
        out.extend(batch);
        Ok(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gray(values: &[u8]) -> Vec<Frame> {
        values
            .iter()
            .enumerate()
            .map(|(i, v)| Frame::new(1, 1, 1, vec![*v], i).unwrap())
            .collect()
    }

    fn seg(start: usize, len: usize) -> Segment {
        Segment { start, len }
    }

    #[test]
    fn partition_examples() {
        let keep = TailPolicy::KeepTruncated;
        assert_eq!(
            partition(90, 30, keep).unwrap(),
            vec![seg(0, 30), seg(30, 30), seg(60, 30)]
        );
        assert_eq!(
            partition(100, 40, keep).unwrap(),
            vec![seg(0, 40), seg(40, 40), seg(80, 20)]
        );
        assert_eq!(
            partition(100, 40, TailPolicy::Drop).unwrap(),
            vec![seg(0, 40), seg(40, 40)]
        );
        assert_eq!(partition(10, 40, TailPolicy::Drop).unwrap(), vec![]);
    }

    #[test]
    fn partition_errors() {
        assert!(matches!(
            partition(0, 30, TailPolicy::KeepTruncated),
            Err(Error::EmptyInput(_))
        ));
        assert!(matches!(
            partition(10, 0, TailPolicy::KeepTruncated),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn ramp_examples() {
        let expected: Vec<f64> = (1..=30).map(f64::from).collect();
        assert_eq!(WeightVector::ramp(30).unwrap().raw(), expected.as_slice());
        assert_eq!(WeightVector::ramp(1).unwrap().raw(), &[1.0]);
        assert_eq!(WeightVector::ramp(4).unwrap().raw(), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(WeightVector::ramp(4).unwrap().kind(), WeightKind::Ramp);
        assert!(WeightVector::ramp(0).is_err());
    }

    #[test]
    fn gaussian_examples() {
        let w = WeightVector::gaussian(3, 2.0, 1.0).unwrap();
        assert_eq!(w.raw(), &[(-0.5f64).exp(), 1.0, (-0.5f64).exp()]);
        assert_eq!(WeightVector::gaussian(1, 1.0, 1.0).unwrap().raw(), &[1.0]);
        assert!(matches!(
            WeightVector::gaussian(3, 2.0, 0.0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(WeightVector::gaussian(3, 2.0, -1.0).is_err());
    }

    #[test]
    fn gaussian_defaults_center_the_window() {
        let w = WeightScheme::Gaussian {
            mu: None,
            sigma: None,
        }
        .build(40)
        .unwrap();
        assert_eq!(
            w.kind(),
            WeightKind::Gaussian {
                mu: 20.5,
                sigma: 40.0 / 6.0
            }
        );
        let raw = w.raw();
        for q in 0..20 {
            assert_eq!(raw[q], raw[39 - q]);
        }
    }

    #[test]
    fn normalize_examples() {
        let w = WeightVector::new(vec![1.0, 2.0, 3.0], WeightKind::Ramp).unwrap();
        assert_eq!(normalize(&w), vec![1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0]);
        let w = WeightVector::new(vec![5.0], WeightKind::Uniform).unwrap();
        assert_eq!(normalize(&w), vec![1.0]);
        let n = normalize(&WeightVector::ramp(30).unwrap());
        for (q, v) in n.iter().enumerate() {
            assert_eq!(*v, (q + 1) as f64 / 465.0);
        }
    }

    #[test]
    fn weight_vector_validation() {
        assert!(matches!(
            WeightVector::new(vec![0.0, 0.0], WeightKind::Uniform),
            Err(Error::DegenerateWeights)
        ));
        assert!(WeightVector::new(vec![], WeightKind::Uniform).is_err());
        assert!(WeightVector::new(vec![1.0, -1.0], WeightKind::Uniform).is_err());
        assert!(WeightVector::new(vec![f64::NAN], WeightKind::Uniform).is_err());
    }

    #[test]
    fn two_frame_forced_arithmetic() {
        let frames = gray(&[0, 255]);
        let w = WeightVector::new(vec![1.0, 3.0], WeightKind::Ramp).unwrap();
        let img = accumulate(&SubSequence::new(&frames).unwrap(), &w).unwrap();
        assert_eq!(img.values(), &[191.25]);
        assert_eq!(img.source_range(), (0, 2));
    }

    #[test]
    fn identical_frames_are_preserved() {
        let frame: Vec<u8> = (0..12).map(|v| v * 20).collect();
        let frames: Vec<Frame> = (0..5)
            .map(|i| Frame::new(2, 2, 3, frame.clone(), i).unwrap())
            .collect();
        for w in [
            WeightVector::ramp(5).unwrap(),
            WeightVector::gaussian(5, 3.0, 1.0).unwrap(),
            WeightVector::uniform(7).unwrap(),
        ] {
            let img = accumulate(&SubSequence::new(&frames).unwrap(), &w).unwrap();
            let expected: Vec<f64> = frame.iter().map(|v| f64::from(*v)).collect();
            assert_eq!(img.values(), expected.as_slice());
        }
    }

    #[test]
    fn short_segment_uses_leading_weights() {
        // weights [1,2,3,4] truncated to [1,2] -> 1/3, 2/3
        let frames = gray(&[30, 90]);
        let img = accumulate(
            &SubSequence::new(&frames).unwrap(),
            &WeightVector::ramp(4).unwrap(),
        )
        .unwrap();
        assert!((img.values()[0] - 70.0).abs() < 1e-12);
    }

    #[test]
    fn accumulate_rejects_oversized_sequence() {
        let frames = gray(&[1, 2, 3]);
        let err = accumulate(
            &SubSequence::new(&frames).unwrap(),
            &WeightVector::ramp(2).unwrap(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn subsequence_validation() {
        assert!(matches!(SubSequence::new(&[]), Err(Error::EmptyInput(_))));
        let frames = vec![
            Frame::new(1, 1, 1, vec![0], 0).unwrap(),
            Frame::new(1, 1, 3, vec![0, 0, 0], 1).unwrap(),
        ];
        assert!(matches!(
            SubSequence::new(&frames),
            Err(Error::Shape { .. })
        ));
        let frames = vec![
            Frame::new(1, 1, 1, vec![0], 0).unwrap(),
            Frame::new(1, 1, 1, vec![0], 2).unwrap(),
        ];
        assert!(SubSequence::new(&frames).is_err());
    }

    #[test]
    fn frame_validation() {
        assert!(Frame::new(0, 1, 1, vec![], 0).is_err());
        assert!(Frame::new(1, 1, 2, vec![0, 0], 0).is_err());
        assert!(matches!(
            Frame::new(2, 2, 3, vec![0; 11], 0),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn reversing_order_changes_output() {
        let frames = gray(&[0, 200]);
        let reversed = vec![
            Frame::new(1, 1, 1, vec![200], 0).unwrap(),
            Frame::new(1, 1, 1, vec![0], 1).unwrap(),
        ];
        let w = WeightVector::ramp(2).unwrap();
        let a = accumulate(&SubSequence::new(&frames).unwrap(), &w).unwrap();
        let b = accumulate(&SubSequence::new(&reversed).unwrap(), &w).unwrap();
        assert_ne!(a.values(), b.values());
    }

    #[test]
    fn encode_constant_video() {
        let frames: Vec<Frame> = (0..80)
            .map(|i| Frame::new(3, 2, 3, vec![77; 18], i).unwrap())
            .collect();
        let images = encode_video(frames.into_iter().map(Ok), &EncoderConfig::default()).unwrap();
        assert_eq!(images.len(), 2);
        for img in &images {
            assert!(img.values().iter().all(|v| *v == 77.0));
        }
        assert_eq!(images[1].source_range(), (40, 80));
    }

    #[test]
    fn encode_keeps_truncated_tail() {
        let frames: Vec<Frame> = (0..100)
            .map(|i| Frame::new(1, 1, 1, vec![(i % 256) as u8], i).unwrap())
            .collect();
        let images =
            encode_video(frames.iter().cloned().map(Ok), &EncoderConfig::default()).unwrap();
        assert_eq!(images.len(), 3);
        assert_eq!(images[2].source_range(), (80, 100));
        // frames 80..100 with weights 1..=20: sum (80+k-1)*k / 210
        let expected: f64 = (1..=20).map(|k| (79 + k) as f64 * k as f64).sum::<f64>() / 210.0;
        assert!((images[2].values()[0] - expected).abs() < 1e-9);

        let drop = EncoderConfig {
            tail: TailPolicy::Drop,
            ..EncoderConfig::default()
        };
        assert_eq!(
            encode_video(frames.into_iter().map(Ok), &drop)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn shape_drift_reports_frame_index() {
        let mut frames: Vec<Frame> = (0..10)
            .map(|i| Frame::new(2, 2, 1, vec![0; 4], i).unwrap())
            .collect();
        frames[7] = Frame::new(2, 1, 1, vec![0; 2], 7).unwrap();
        let config = EncoderConfig {
            subseq_len: 4,
            ..EncoderConfig::default()
        };
        let err = encode_video(frames.clone().into_iter().map(Ok), &config).unwrap_err();
        assert!(err.to_string().contains("frame 7"), "{err}");
        let err = Encoder::new(config)
            .unwrap()
            .encode_frames(&frames)
            .unwrap_err();
        assert!(err.to_string().contains("frame 7"), "{err}");
    }

    #[test]
    fn empty_stream_is_an_error() {
        let err = encode_video(std::iter::empty(), &EncoderConfig::default()).unwrap_err();
        assert!(matches!(err, Error::EmptyInput(_)));
    }

    #[test]
    fn stream_batches_match_in_memory_encoding() {
        let frames: Vec<Frame> = (0..53)
            .map(|i| {
                let px = (0..6).map(|c| ((i * 7 + c * 13) % 256) as u8).collect();
                Frame::new(1, 2, 3, px, i).unwrap()
            })
            .collect();
        let encoder = Encoder::new(EncoderConfig {
            subseq_len: 5,
            ..EncoderConfig::default()
        })
        .unwrap();
        let expected = encoder.encode_frames_sequential(&frames).unwrap();
        for batch in [1, 2, 3, 16] {
            let mut got = Vec::new();
            let n = encoder
                .encode_stream(frames.iter().cloned().map(Ok), batch, |imgs| {
                    got.extend(imgs);
                    Ok(())
                })
                .unwrap();
            assert_eq!(n, expected.len());
            assert_eq!(got, expected);
        }
    }
}
