//! Self-describing binary container for named parameter tensors.
//!
//! Layout, all integers little-endian u32: format version, tensor count,
//! then per tensor {name length, UTF-8 name, rank, shape dims, row-major
//! 32-bit little-endian float data}. Bit-exact across platforms.

use super::tensor::Tensor;
use crate::{Error, Result};

const FORMAT_VERSION: u32 = 1;

/// Serialize named tensors in the given order.
pub fn save_checkpoint(params: &[(String, &Tensor<f32>)]) -> Vec<u8> {
    let mut out = Vec::new();
    push_u32(&mut out, FORMAT_VERSION);
    push_u32(&mut out, params.len() as u32);
    for (name, t) in params {
        push_u32(&mut out, name.len() as u32);
        out.extend_from_slice(name.as_bytes());
        push_u32(&mut out, 2);
        push_u32(&mut out, t.rows as u32);
        push_u32(&mut out, t.cols as u32);
        for v in &t.data {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

/// Parse a checkpoint back into named tensors, in stored order.
pub fn load_checkpoint(bytes: &[u8]) -> Result<Vec<(String, Tensor<f32>)>> {
    let mut cur = Cursor { bytes, pos: 0 };
    let version = cur.u32()?;
    if version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported checkpoint version {version} (expected {FORMAT_VERSION})"
        )));
    }
    let count = cur.u32()? as usize;
    let mut params = Vec::with_capacity(count);
    for _ in 0..count {
        let name_len = cur.u32()? as usize;
        let name = String::from_utf8(cur.take(name_len)?.to_vec())
            .map_err(|_| Error::Format("checkpoint name is not UTF-8".into()))?;
        let rank = cur.u32()?;
        if rank != 2 {
            return Err(Error::Format(format!("tensor `{name}` has rank {rank}, expected 2")));
        }
        let rows = cur.u32()? as usize;
        let cols = cur.u32()? as usize;
        let n = rows.checked_mul(cols).ok_or_else(|| {
            Error::Format(format!("tensor `{name}` shape {rows}x{cols} overflows"))
        })?;
        let raw = cur.take(n.checked_mul(4).ok_or_else(|| {
            Error::Format(format!("tensor `{name}` data length overflows"))
        })?)?;
        let data = raw
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        params.push((name, Tensor::from_vec(rows, cols, data)));
    }
    if cur.pos != bytes.len() {
        return Err(Error::Format("trailing bytes after last tensor".into()));
    }
    Ok(params)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.bytes.len() {
            return Err(Error::Format("checkpoint truncated".into()));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }
}

fn push_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_preserves_everything() {
        let a = Tensor::from_vec(2, 3, vec![1.0f32, -2.5, 0.0, f32::MIN_POSITIVE, 1e30, -0.125]);
        let b = Tensor::zeros(1, 1);
        let bytes =
            save_checkpoint(&[("alpha".to_string(), &a), ("beta.w".to_string(), &b)]);
        let back = load_checkpoint(&bytes).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].0, "alpha");
        assert_eq!(back[0].1, a);
        assert_eq!(back[1].0, "beta.w");
        assert_eq!(back[1].1, b);
    }

    #[test]
    fn empty_set_round_trips() {
        let bytes = save_checkpoint(&[]);
        assert!(load_checkpoint(&bytes).unwrap().is_empty());
    }

    #[test]
    fn wrong_version_fails_cleanly() {
        let mut bytes = save_checkpoint(&[]);
        bytes[0] = 99;
        assert!(matches!(load_checkpoint(&bytes), Err(Error::Format(_))));
    }

    #[test]
    fn truncation_fails_cleanly() {
        let t = Tensor::from_vec(4, 4, vec![1.0f32; 16]);
        let bytes = save_checkpoint(&[("t".to_string(), &t)]);
        for cut in [bytes.len() - 1, bytes.len() - 5, 10, 3] {
            assert!(load_checkpoint(&bytes[..cut]).is_err(), "cut at {cut}");
        }
    }

    #[test]
    fn trailing_garbage_fails_cleanly() {
        let mut bytes = save_checkpoint(&[]);
        bytes.push(0);
        assert!(load_checkpoint(&bytes).is_err());
    }

    #[test]
    fn save_is_deterministic() {
        let t = Tensor::from_vec(1, 2, vec![0.5f32, -0.5]);
        let one = save_checkpoint(&[("x".to_string(), &t)]);
        let two = save_checkpoint(&[("x".to_string(), &t)]);
        assert_eq!(one, two);
    }
}
