//! Eigenvalue file formats.
//!
//! Binary files start with the magic `SPK1` followed by any number of records,
//! each a little-endian `u32` count and that many little-endian `f64` values.
//! Text files hold one value per line; blank lines and lines starting with `#`
//! are ignored.

use std::io::{Read, Write};

use crate::error::{Error, Location, Result};

pub const SPK1_MAGIC: &[u8; 4] = b"SPK1";

pub fn write_spk1<W: Write>(mut w: W, records: &[Vec<f64>]) -> Result<()> {
    w.write_all(SPK1_MAGIC)?;
    for rec in records {
        let count = u32::try_from(rec.len())
            .map_err(|_| Error::Domain(format!("record of {} values is too long", rec.len())))?;
        w.write_all(&count.to_le_bytes())?;
        for v in rec {
            w.write_all(&v.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_spk1<R: Read>(mut r: R) -> Result<Vec<Vec<f64>>> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)?;
    parse_spk1(&buf)
}

pub fn parse_spk1(buf: &[u8]) -> Result<Vec<Vec<f64>>> {
    let err = |offset: usize, message: String| Error::Parse {
        location: Location::Offset(offset as u64),
        message,
    };
    if buf.len() < 4 || &buf[..4] != SPK1_MAGIC {
        return Err(err(0, "missing SPK1 magic header".into()));
    }
    let mut pos = 4;
    let mut records = Vec::new();
    while pos < buf.len() {
        if buf.len() - pos < 4 {
            return Err(err(pos, "truncated record count".into()));
        }
        let count = u32::from_le_bytes(buf[pos..pos + 4].try_into().unwrap()) as usize;
        pos += 4;
        let need = count.checked_mul(8).unwrap_or(usize::MAX);
        if buf.len() - pos < need {
            return Err(err(
                pos,
                format!("record declares {count} values but only {} bytes remain", buf.len() - pos),
            ));
        }
        let mut rec = Vec::with_capacity(count);
        for k in 0..count {
            let at = pos + 8 * k;
            let v = f64::from_le_bytes(buf[at..at + 8].try_into().unwrap());
            if !v.is_finite() {
                return Err(err(at, format!("non-finite value {v}")));
            }
            rec.push(v);
        }
        pos += need;
        records.push(rec);
    }
    Ok(records)
}

pub fn parse_text(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let field = t.trim_end_matches(',').trim();
        let v: f64 = field.parse().map_err(|_| Error::Parse {
            location: Location::Line(i + 1),
            message: format!("cannot parse {field:?} as a number"),
        })?;
        if !v.is_finite() {
            return Err(Error::Parse {
                location: Location::Line(i + 1),
                message: format!("non-finite value {v}"),
            });
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err(Error::Parse {
            location: Location::Line(0),
            message: "no values found".into(),
        });
    }
    Ok(out)
}

/// Reads eigenvalue vectors from bytes, detecting the format by the magic.
pub fn parse_eigenvalue_file(bytes: &[u8]) -> Result<Vec<Vec<f64>>> {
    if bytes.starts_with(SPK1_MAGIC) {
        parse_spk1(bytes)
    } else {
        let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
            location: Location::Offset(e.valid_up_to() as u64),
            message: "input is neither SPK1 nor UTF-8 text".into(),
        })?;
        Ok(vec![parse_text(text)?])
    }
}
