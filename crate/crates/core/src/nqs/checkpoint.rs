//! Parameter checkpoints.
//!
//! Binary layout, all integers and floats little-endian:
//!
//! | bytes | content                         |
//! |-------|---------------------------------|
//! | 4     | magic `RBMP`                    |
//! | 4     | packing version (`u32`, = 1)    |
//! | 8     | `n` visible units (`u64`)       |
//! | 8     | `m` hidden units (`u64`)        |
//! | 8 · P | packed parameters as `f64`      |
//!
//! `P = n·m + 2(n+m)`. A JSON sidecar at `<path>.json` records the run
//! configuration.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::rbm::{num_params, RbmParams};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MAGIC: &[u8; 4] = b"RBMP";
pub const PACKING_VERSION: u32 = 1;

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

pub fn encode<T: Scalar>(params: &RbmParams<T>) -> Vec<u8> {
    let packed = params.pack();
    let mut out = Vec::with_capacity(24 + 8 * packed.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&PACKING_VERSION.to_le_bytes());
    out.extend_from_slice(&(params.n_visible() as u64).to_le_bytes());
    out.extend_from_slice(&(params.n_hidden() as u64).to_le_bytes());
    for x in packed {
        out.extend_from_slice(&x.to_f64_lossy().to_le_bytes());
    }
    out
}

pub fn decode<T: Scalar>(mut bytes: &[u8]) -> Result<RbmParams<T>> {
    let bad = |msg: &str| Error::InvalidArgument(format!("checkpoint: {msg}"));
    let mut magic = [0u8; 4];
    bytes
        .read_exact(&mut magic)
        .map_err(|_| bad("truncated header"))?;
    if &magic != MAGIC {
        return Err(bad("bad magic"));
    }
    let mut word = [0u8; 4];
    bytes
        .read_exact(&mut word)
        .map_err(|_| bad("truncated header"))?;
    let version = u32::from_le_bytes(word);
    if version != PACKING_VERSION {
        return Err(bad(&format!("unsupported packing version {version}")));
    }
    let read_u64 = |bytes: &mut &[u8]| -> Result<u64> {
        let mut w = [0u8; 8];
        bytes
            .read_exact(&mut w)
            .map_err(|_| bad("truncated header"))?;
        Ok(u64::from_le_bytes(w))
    };
    let n = read_u64(&mut bytes)? as usize;
    let m = read_u64(&mut bytes)? as usize;
    let p = num_params(n, m);
    if bytes.len() != 8 * p {
        return Err(bad(&format!(
            "expected {p} parameters, found {} bytes",
            bytes.len()
        )));
    }
    let packed: Vec<T> = bytes
        .chunks_exact(8)
        .map(|c| T::lit(f64::from_le_bytes(c.try_into().expect("8-byte chunk"))))
        .collect();
    RbmParams::from_packed(n, m, &packed)
}

/// Writes the binary checkpoint and its JSON sidecar.
pub fn save<T: Scalar, C: Serialize>(path: &Path, params: &RbmParams<T>, config: &C) -> Result<()> {
    fs::File::create(path)?.write_all(&encode(params))?;
    let sidecar = fs::File::create(sidecar_path(path))?;
    serde_json::to_writer_pretty(io::BufWriter::new(sidecar), config)?;
    Ok(())
}

pub fn load<T: Scalar>(path: &Path) -> Result<RbmParams<T>> {
    decode(&fs::read(path)?)
}
