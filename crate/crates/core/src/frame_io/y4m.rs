//! YUV4MPEG2 reader for 8-bit streams.
//!
//! Colour streams are converted to interleaved RGB with the BT.601
//! limited-range matrix and nearest-neighbour chroma upsampling; `mono`
//! streams yield single-channel frames holding the luma plane.

use std::io::{BufRead, Read};

/// Chroma layout of a stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chroma {
    C420,
    C422,
    C444,
    Mono,
}

impl Chroma {
    fn parse(tag: &str) -> Option<Self> {
        match tag {
            "420" | "420jpeg" | "420paldv" | "420mpeg2" => Some(Chroma::C420),
            "422" => Some(Chroma::C422),
            "444" => Some(Chroma::C444),
            "mono" => Some(Chroma::Mono),
            _ => None,
        }
    }

    /// (horizontal, vertical) subsampling factors.
    fn factors(self) -> (usize, usize) {
        match self {
            Chroma::C420 => (2, 2),
            Chroma::C422 => (2, 1),
            Chroma::C444 | Chroma::Mono => (1, 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamHeader {
    pub width: usize,
    pub height: usize,
    pub chroma: Chroma,
}

impl StreamHeader {
    pub fn channels(&self) -> usize {
        if self.chroma == Chroma::Mono {
            1
        } else {
            3
        }
    }

    fn chroma_dims(&self) -> (usize, usize) {
        let (fx, fy) = self.chroma.factors();
        (self.width.div_ceil(fx), self.height.div_ceil(fy))
    }

    /// Bytes of planar payload per frame.
    pub fn frame_bytes(&self) -> usize {
        let luma = self.width * self.height;
        if self.chroma == Chroma::Mono {
            luma
        } else {
            let (cw, ch) = self.chroma_dims();
            luma + 2 * cw * ch
        }
    }
}

fn read_line<R: BufRead>(reader: &mut R, limit: usize) -> Result<Option<String>, String> {
    let mut buf = Vec::new();
    let n = reader
        .by_ref()
        .take(limit as u64)
        .read_until(b'\n', &mut buf)
        .map_err(|e| e.to_string())?;
    if n == 0 {
        return Ok(None);
    }
    if buf.last() != Some(&b'\n') {
        return Err("unterminated header line".into());
    }
    buf.pop();
    String::from_utf8(buf)
        .map(Some)
        .map_err(|_| "header is not ASCII".into())
}

pub fn read_header<R: BufRead>(reader: &mut R) -> Result<StreamHeader, String> {
    let line = read_line(reader, 1024)?.ok_or("empty stream")?;
    let mut tokens = line.split(' ');
    if tokens.next() != Some("YUV4MPEG2") {
        return Err("missing YUV4MPEG2 signature".into());
    }
    let (mut width, mut height, mut chroma) = (None, None, Chroma::C420);
    for tok in tokens.filter(|t| !t.is_empty()) {
        let (tag, value) = tok.split_at(1);
        match tag {
            "W" => width = value.parse().ok(),
            "H" => height = value.parse().ok(),
            "C" => {
                chroma = Chroma::parse(value)
                    .ok_or_else(|| format!("unsupported colourspace C{value}"))?
            }
            _ => {}
        }
    }
    match (width, height) {
        (Some(w), Some(h)) if w > 0 && h > 0 => Ok(StreamHeader {
            width: w,
            height: h,
            chroma,
        }),
        _ => Err("missing or invalid W/H parameters".into()),
    }
}

/// Reads the next frame's planar payload. `Ok(None)` at clean end of stream.
pub fn read_frame<R: BufRead>(
    reader: &mut R,
    header: &StreamHeader,
) -> Result<Option<Vec<u8>>, String> {
    let Some(line) = read_line(reader, 1024)? else {
        return Ok(None);
    };
    if line != "FRAME" && !line.starts_with("FRAME ") {
        return Err(format!("expected FRAME marker, found {line:?}"));
    }
    let mut planes = vec![0u8; header.frame_bytes()];
    reader
        .read_exact(&mut planes)
        .map_err(|_| "truncated frame payload".to_string())?;
    Ok(Some(planes))
}

fn clamp_u8(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// Converts planar YUV to interleaved RGB (or passes luma through for mono).
pub fn to_interleaved(header: &StreamHeader, planes: &[u8]) -> Vec<u8> {
    let (w, h) = (header.width, header.height);
    let luma = &planes[..w * h];
    if header.chroma == Chroma::Mono {
        return luma.to_vec();
    }
    let (cw, ch) = header.chroma_dims();
    let u_plane = &planes[w * h..w * h + cw * ch];
    let v_plane = &planes[w * h + cw * ch..];
    let (fx, fy) = header.chroma.factors();
    let mut rgb = Vec::with_capacity(w * h * 3);
    for y in 0..h {
        for x in 0..w {
            let c = (y / fy) * cw + x / fx;
            let yy = 1.164_383 * (f64::from(luma[y * w + x]) - 16.0);
            let u = f64::from(u_plane[c]) - 128.0;
            let v = f64::from(v_plane[c]) - 128.0;
            rgb.push(clamp_u8(yy + 1.596_027 * v));
            rgb.push(clamp_u8(yy - 0.391_762 * u - 0.812_968 * v));
            rgb.push(clamp_u8(yy + 2.017_232 * u));
        }
    }
    rgb
}
