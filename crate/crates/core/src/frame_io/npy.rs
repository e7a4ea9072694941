//! Minimal NPY (format version 1.0) support for `<f4` tensors in C order.
//!
//! The header layout follows numpy's own writer: a dict literal with sorted
//! keys and a trailing `, `, space padded so that the payload starts on a
//! 64-byte boundary, terminated by `\n`.

use std::io::{self, Read, Write};

pub const MAGIC: &[u8; 6] = b"\x93NUMPY";
const ALIGN: usize = 64;
const PREFIX_LEN: usize = MAGIC.len() + 2 + 2;

/// Header dict text for a little-endian float32 C-order tensor.
pub fn header(shape: &[usize]) -> Vec<u8> {
    let dims = match shape {
        [d] => format!("({d},)"),
        _ => format!(
            "({})",
            shape
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    };
    let mut dict = format!("{{'descr': '<f4', 'fortran_order': False, 'shape': {dims}, }}");
    let pad = ALIGN - (PREFIX_LEN + dict.len() + 1) % ALIGN;
    dict.extend(std::iter::repeat(' ').take(pad % ALIGN));
    dict.push('\n');

    let mut out = Vec::with_capacity(PREFIX_LEN + dict.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&[1, 0]);
    out.extend_from_slice(&(dict.len() as u16).to_le_bytes());
    out.extend_from_slice(dict.as_bytes());
    out
}

pub fn write_f32<W: Write>(writer: &mut W, shape: &[usize], values: &[f32]) -> io::Result<()> {
    let expected: usize = shape.iter().product();
    if expected != values.len() {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            format!("shape {shape:?} does not match {} values", values.len()),
        ));
    }
    writer.write_all(&header(shape))?;
    let mut payload = Vec::with_capacity(values.len() * 4);
    for v in values {
        payload.extend_from_slice(&v.to_le_bytes());
    }
    writer.write_all(&payload)
}

fn invalid(msg: impl Into<String>) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.into())
}

/// Reads a `<f4` C-order array, returning its shape and values.
pub fn read_f32<R: Read>(reader: &mut R) -> io::Result<(Vec<usize>, Vec<f32>)> {
    let mut prefix = [0u8; 8];
    reader.read_exact(&mut prefix)?;
    if &prefix[..6] != MAGIC {
        return Err(invalid("not an npy file"));
    }
    let header_len = match prefix[6] {
        1 => {
            let mut len = [0u8; 2];
            reader.read_exact(&mut len)?;
            u16::from_le_bytes(len) as usize
        }
        2 | 3 => {
            let mut len = [0u8; 4];
            reader.read_exact(&mut len)?;
            u32::from_le_bytes(len) as usize
        }
        v => return Err(invalid(format!("unsupported npy version {v}"))),
    };
    let mut dict = vec![0u8; header_len];
    reader.read_exact(&mut dict)?;
    let dict = String::from_utf8(dict).map_err(|_| invalid("header is not valid text"))?;

    let descr = dict_value(&dict, "descr").ok_or_else(|| invalid("missing descr"))?;
    if descr.trim().trim_matches('\'') != "<f4" {
        return Err(invalid(format!("unsupported dtype {descr}")));
    }
    let order =
        dict_value(&dict, "fortran_order").ok_or_else(|| invalid("missing fortran_order"))?;
    if order.trim() != "False" {
        return Err(invalid("Fortran order is not supported"));
    }
    let shape = parse_shape(&dict)?;

    let count: usize = shape.iter().product();
    let mut payload = vec![0u8; count * 4];
    reader.read_exact(&mut payload)?;
    let values = payload
        .chunks_exact(4)
        .map(|b| f32::from_le_bytes([b[0], b[1], b[2], b[3]]))
        .collect();
    Ok((shape, values))
}

fn dict_value<'a>(dict: &'a str, key: &str) -> Option<&'a str> {
    let pat = format!("'{key}':");
    let start = dict.find(&pat)? + pat.len();
    let rest = &dict[start..];
    let end = rest.find(',').unwrap_or(rest.len());
    Some(&rest[..end])
}

fn parse_shape(dict: &str) -> io::Result<Vec<usize>> {
    let start = dict
        .find("'shape':")
        .ok_or_else(|| invalid("missing shape"))?;
    let rest = &dict[start..];
    let open = rest.find('(').ok_or_else(|| invalid("malformed shape"))?;
    let close = rest.find(')').ok_or_else(|| invalid("malformed shape"))?;
    rest[open + 1..close]
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| invalid(format!("bad dimension {s:?}")))
        })
        .collect()
}
