//! JSON channel files: `{"din": 2, "dout": 3, "kraus": [op, ...]}` where each
//! operator is a dout×din nested array of `[re, im]` pairs.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::kraus::KrausChannel;
use crate::error::{Error, Result};
use crate::qmat::ComplexMatrix;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelDocument {
    din: usize,
    dout: usize,
    kraus: Vec<Vec<Vec<[f64; 2]>>>,
}

fn parse_error(path: &Path, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

/// Parses a channel document; `origin` only labels error messages.
pub fn channel_from_json(text: &str, origin: &Path) -> Result<KrausChannel> {
    let doc: ChannelDocument = serde_json::from_str(text).map_err(|e| parse_error(origin, e.to_string()))?;
    if doc.din == 0 || doc.dout == 0 {
        return Err(parse_error(origin, "din and dout must be positive"));
    }
    let mut ops = Vec::with_capacity(doc.kraus.len());
    for (k, op) in doc.kraus.iter().enumerate() {
        if op.len() != doc.dout || op.iter().any(|row| row.len() != doc.din) {
            return Err(parse_error(
                origin,
                format!("Kraus operator {k} is not a {}x{} array", doc.dout, doc.din),
            ));
        }
        let data: Vec<Complex64> = op.iter().flatten().map(|&[re, im]| Complex64::new(re, im)).collect();
        ops.push(ComplexMatrix::from_vec(doc.dout, doc.din, data).map_err(|e| parse_error(origin, e.to_string()))?);
    }
    KrausChannel::new(doc.din, doc.dout, ops)
}

pub fn channel_to_json(ch: &KrausChannel) -> String {
    let doc = ChannelDocument {
        din: ch.din(),
        dout: ch.dout(),
        kraus: ch
            .kraus_ops()
            .iter()
            .map(|op| {
                (0..op.rows())
                    .map(|r| op.row(r).iter().map(|z| [z.re, z.im]).collect())
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("channel document serializes")
}

pub fn read_channel_file(path: &Path) -> Result<KrausChannel> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    channel_from_json(&text, path)
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents).map_err(io_err)?;
    tmp.flush().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

pub fn write_channel_file(path: &Path, ch: &KrausChannel) -> Result<()> {
    let mut text = channel_to_json(ch);
    text.push('\n');
    write_atomic(path, text.as_bytes())
}
