//! Frame ingest and encoded-image export.
//!
//! Inputs: a directory of still images (PNG/JPEG, lexicographic order), a raw
//! interleaved RGB24 file, or a YUV4MPEG2 stream. Outputs: quantized 8-bit PNG
//! or unquantized float32 NPY, plus a JSON-lines sidecar describing each file.

pub mod npy;
pub mod y4m;

use std::collections::{HashSet, VecDeque};
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use image::{ColorType, ExtendedColorType, ImageEncoder};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::encoder::{EncodedImage, Frame, FrameShape};
use crate::error::{Error, Result};

/// File name of the JSON-lines sidecar written next to encoded outputs.
pub const SIDECAR_NAME: &str = "manifest.jsonl";

const IMAGE_EXTENSIONS: &[&str] = &["png", "jpg", "jpeg"];

/// Where frames come from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FrameSource {
    /// Every PNG/JPEG file in a directory, sorted by file name.
    Images {
        path: PathBuf,
    },
    /// Headerless interleaved RGB24 frames of a declared size.
    RawRgb24 {
        path: PathBuf,
        width: usize,
        height: usize,
    },
    Y4m {
        path: PathBuf,
    },
}

impl FrameSource {
    pub fn path(&self) -> &Path {
        match self {
            FrameSource::Images { path }
            | FrameSource::RawRgb24 { path, .. }
            | FrameSource::Y4m { path } => path,
        }
    }

    /// Same source with its path resolved against `base` when relative.
    pub fn resolved_against(&self, base: &Path) -> FrameSource {
        let fix = |p: &Path| {
            if p.is_relative() {
                base.join(p)
            } else {
                p.to_path_buf()
            }
        };
        match self {
            FrameSource::Images { path } => FrameSource::Images { path: fix(path) },
            FrameSource::RawRgb24 {
                path,
                width,
                height,
            } => FrameSource::RawRgb24 {
                path: fix(path),
                width: *width,
                height: *height,
            },
            FrameSource::Y4m { path } => FrameSource::Y4m { path: fix(path) },
        }
    }
}

enum StreamState {
    Images {
        files: VecDeque<PathBuf>,
        shape: Option<FrameShape>,
    },
    Raw {
        reader: BufReader<File>,
        path: PathBuf,
        shape: FrameShape,
        remaining: usize,
    },
    Y4m {
        reader: BufReader<File>,
        path: PathBuf,
        header: y4m::StreamHeader,
        pending: Option<Vec<u8>>,
    },
    Done,
}

/// Single-consumer iterator over the frames of a [`FrameSource`], in index order.
///
/// The stream ends after the first error.
pub struct FrameStream {
    state: StreamState,
    next_index: usize,
}

impl FrameStream {
    fn next_frame(&mut self) -> Result<Option<Frame>> {
        let index = self.next_index;
        let frame = match &mut self.state {
            StreamState::Done => return Ok(None),
            StreamState::Images { files, shape } => {
                let Some(path) = files.pop_front() else {
                    return Ok(None);
                };
                let frame = decode_image(&path, index)?;
                let expected = *shape.get_or_insert(frame.shape());
                if frame.shape() != expected {
                    return Err(Error::shape(
                        format!("{} (frame {index})", path.display()),
                        format!("expected {expected}, found {}", frame.shape()),
                    ));
                }
                frame
            }
            StreamState::Raw {
                reader,
                path,
                shape,
                remaining,
            } => {
                if *remaining == 0 {
                    return Ok(None);
                }
                let mut pixels = vec![0u8; shape.sample_count()];
                reader
                    .read_exact(&mut pixels)
                    .map_err(|e| Error::io(path.clone(), e))?;
                *remaining -= 1;
                Frame::from_shape(*shape, pixels, index)?
            }
            StreamState::Y4m {
                reader,
                path,
                header,
                pending,
            } => {
                let planes = match pending.take() {
                    Some(p) => p,
                    None => {
                        match y4m::read_frame(reader, header).map_err(|detail| Error::Decode {
                            path: path.clone(),
                            detail: format!("frame {index}: {detail}"),
                        })? {
                            Some(p) => p,
                            None => return Ok(None),
                        }
                    }
                };
                let shape = FrameShape::new(header.width, header.height, header.channels())?;
                Frame::from_shape(shape, y4m::to_interleaved(header, &planes), index)?
            }
        };
        self.next_index += 1;
        Ok(Some(frame))
    }
}

impl Iterator for FrameStream {
    type Item = Result<Frame>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.next_frame() {
            Ok(Some(frame)) => Some(Ok(frame)),
            Ok(None) => {
                self.state = StreamState::Done;
                None
            }
            Err(e) => {
                self.state = StreamState::Done;
                Some(Err(e))
            }
        }
    }
}

fn decode_image(path: &Path, index: usize) -> Result<Frame> {
    let img = image::open(path).map_err(|e| Error::Decode {
        path: path.to_path_buf(),
        detail: e.to_string(),
    })?;
    let (width, height) = (img.width() as usize, img.height() as usize);
    let grayscale = matches!(
        img.color(),
        ColorType::L8 | ColorType::L16 | ColorType::La8 | ColorType::La16
    );
    let (channels, pixels) = if grayscale {
        (1, img.into_luma8().into_raw())
    } else {
        (3, img.into_rgb8().into_raw())
    };
    Frame::new(width, height, channels, pixels, index)
}

fn list_images(dir: &Path) -> Result<VecDeque<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        let is_image = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| IMAGE_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()));
        if is_image && !hidden && path.is_file() {
            files.push(path);
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files.into())
}

/// Opens a frame source, validating what can be checked up front.
pub fn read_frames(source: &FrameSource) -> Result<FrameStream> {
    let path = source.path();
    if !path.exists() {
        return Err(Error::io(
            path,
            std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or directory"),
        ));
    }
    let state = match source {
        FrameSource::Images { path } => {
            let files = list_images(path)?;
            if files.is_empty() {
                return Err(Error::EmptyInput(format!(
                    "{}: no image files found",
                    path.display()
                )));
            }
            StreamState::Images { files, shape: None }
        }
        FrameSource::RawRgb24 {
            path,
            width,
            height,
        } => {
            let shape = FrameShape::new(*width, *height, 3)?;
            let size = fs::metadata(path).map_err(|e| Error::io(path, e))?.len() as usize;
            let frame_bytes = shape.sample_count();
            if size % frame_bytes != 0 {
                return Err(Error::shape(
                    path.display().to_string(),
                    format!(
                        "file size {size} is not a multiple of the {frame_bytes}-byte \
                         {width}x{height} RGB24 frame size (offset {} is a partial frame)",
                        size - size % frame_bytes
                    ),
                ));
            }
            if size == 0 {
                return Err(Error::EmptyInput(format!("{}: no frames", path.display())));
            }
            let file = File::open(path).map_err(|e| Error::io(path, e))?;
            StreamState::Raw {
                reader: BufReader::new(file),
                path: path.clone(),
                shape,
                remaining: size / frame_bytes,
            }
        }
        FrameSource::Y4m { path } => {
            let file = File::open(path).map_err(|e| Error::io(path, e))?;
            let mut reader = BufReader::new(file);
            let decode_err = |detail: String| Error::Decode {
                path: path.clone(),
                detail,
            };
            let header = y4m::read_header(&mut reader).map_err(decode_err)?;
            let first = y4m::read_frame(&mut reader, &header)
                .map_err(|d| decode_err(format!("frame 0: {d}")))?
                .ok_or_else(|| Error::EmptyInput(format!("{}: no frames", path.display())))?;
            StreamState::Y4m {
                reader,
                path: path.clone(),
                header,
                pending: Some(first),
            }
        }
    };
    Ok(FrameStream {
        state,
        next_index: 0,
    })
}

/// Export encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    /// 8-bit PNG: the float32 value, rounded half to even and clamped to
    /// `[0, 255]`.
    Png8,
    /// Unquantized float32, shape `(H, W, C)`.
    Npy,
}

impl OutputFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Png8 => "png",
            OutputFormat::Npy => "npy",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputSpec {
    pub format: OutputFormat,
    pub directory: PathBuf,
    /// File stem pattern. `{start}`, `{end}` and `{index}` expand to
    /// zero-padded six digit numbers.
    pub naming: String,
}

impl OutputSpec {
    pub const DEFAULT_NAMING: &'static str = "seg_{start}";

    pub fn new(format: OutputFormat, directory: impl Into<PathBuf>) -> Self {
        OutputSpec {
            format,
            directory: directory.into(),
            naming: Self::DEFAULT_NAMING.to_string(),
        }
    }

    pub fn file_name(&self, image: &EncodedImage, index: usize) -> String {
        let (start, end) = image.source_range();
        let stem = self
            .naming
            .replace("{start}", &format!("{start:06}"))
            .replace("{end}", &format!("{end:06}"))
            .replace("{index}", &format!("{index:06}"));
        format!("{stem}.{}", self.format.extension())
    }
}

/// One line of the sidecar manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SidecarRecord {
    pub path: String,
    pub start: usize,
    /// Exclusive.
    pub end: usize,
    pub weights: String,
    #[serde(rename = "Z")]
    pub z: usize,
}

/// Round half to even, then clamp into `u8`.
pub fn quantize(value: f64) -> u8 {
    value.round_ties_even().clamp(0.0, 255.0) as u8
}

fn encode_bytes(image: &EncodedImage, format: OutputFormat) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    match format {
        OutputFormat::Png8 => {
            // quantize the stored float32 value so PNG == quantize(NPY) exactly
            let pixels: Vec<u8> = image
                .values()
                .iter()
                .map(|v| quantize(f64::from(*v as f32)))
                .collect();
            let color = if image.channels() == 1 {
                ExtendedColorType::L8
            } else {
                ExtendedColorType::Rgb8
            };
            image::codecs::png::PngEncoder::new(&mut buf)
                .write_image(&pixels, image.width() as u32, image.height() as u32, color)
                .map_err(|e| Error::InvalidParameter(format!("png encoding failed: {e}")))?;
        }
        OutputFormat::Npy => {
            let values: Vec<f32> = image.values().iter().map(|v| *v as f32).collect();
            let shape = [image.height(), image.width(), image.channels()];
            npy::write_f32(&mut buf, &shape, &values)
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        }
    }
    Ok(buf)
}

/// Incremental writer; call [`EncodedWriter::finish`] to emit the sidecar.
pub struct EncodedWriter {
    spec: OutputSpec,
    subseq_len: usize,
    names: HashSet<String>,
    records: Vec<SidecarRecord>,
    written: Vec<PathBuf>,
}

impl EncodedWriter {
    pub fn create(spec: OutputSpec, subseq_len: usize) -> Result<Self> {
        if spec.naming.contains(['/', '\\']) || spec.naming.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "naming pattern {:?} must be a non-empty file stem",
                spec.naming
            )));
        }
        fs::create_dir_all(&spec.directory).map_err(|e| Error::io(&spec.directory, e))?;
        Ok(EncodedWriter {
            spec,
            subseq_len,
            names: HashSet::new(),
            records: Vec::new(),
            written: Vec::new(),
        })
    }

    /// Writes a batch of images; files within the batch are encoded in parallel.
    pub fn write_batch(&mut self, images: &[EncodedImage]) -> Result<Vec<PathBuf>> {
        let first_index = self.records.len();
        let mut names = Vec::with_capacity(images.len());
        for (offset, image) in images.iter().enumerate() {
            let name = self.spec.file_name(image, first_index + offset);
            if !self.names.insert(name.clone()) {
                return Err(Error::NamingCollision {
                    path: self.spec.directory.join(name),
                });
            }
            names.push(name);
        }

        let format = self.spec.format;
        let dir = &self.spec.directory;
        let paths: Vec<PathBuf> = images
            .par_iter()
            .zip(names.par_iter())
            .map(|(image, name)| {
                let path = dir.join(name);
                let bytes = encode_bytes(image, format)?;
                fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
                Ok(path)
            })
            .collect::<Result<_>>()?;

        for (image, name) in images.iter().zip(names) {
            let (start, end) = image.source_range();
            self.records.push(SidecarRecord {
                path: name,
                start,
                end,
                weights: image.weight_kind().to_string(),
                z: self.subseq_len,
            });
        }
        self.written.extend(paths.iter().cloned());
        Ok(paths)
    }

    /// Writes the sidecar and returns every image path written, in order.
    pub fn finish(self) -> Result<Vec<PathBuf>> {
        let path = self.spec.directory.join(SIDECAR_NAME);
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        let mut out = BufWriter::new(file);
        for record in &self.records {
            let line = serde_json::to_string(record).expect("sidecar record serializes");
            writeln!(out, "{line}").map_err(|e| Error::io(&path, e))?;
        }
        out.flush().map_err(|e| Error::io(&path, e))?;
        Ok(self.written)
    }
}

/// Writes every image plus the sidecar manifest, returning the image paths.
pub fn write_encoded(
    images: &[EncodedImage],
    spec: &OutputSpec,
    subseq_len: usize,
) -> Result<Vec<PathBuf>> {
    let mut writer = EncodedWriter::create(spec.clone(), subseq_len)?;
    writer.write_batch(images)?;
    writer.finish()
}

/// Reads back an NPY file written by [`write_encoded`] as `(shape, values)`.
pub fn read_npy(path: &Path) -> Result<(Vec<usize>, Vec<f32>)> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    npy::read_f32(&mut BufReader::new(file)).map_err(|e| Error::Decode {
        path: path.to_path_buf(),
        detail: e.to_string(),
    })
}

/// Reads the sidecar manifest of an output directory.
pub fn read_sidecar(dir: &Path) -> Result<Vec<SidecarRecord>> {
    let path = dir.join(SIDECAR_NAME);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            serde_json::from_str(l).map_err(|e| Error::Decode {
                path: path.clone(),
                detail: e.to_string(),
            })
        })
        .collect()
}
