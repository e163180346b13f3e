//! Little helpers for the versioned binary file formats: magic bytes,
//! length-prefixed sections, fixed-width field/group encodings.

use crate::error::{Result, ZkError};
use crate::field::FieldElement;
use crate::group::GroupElement;

pub const MAGIC: &[u8; 4] = b"ZKT1";

#[derive(Default)]
pub struct ByteWriter {
    buf: Vec<u8>,
}

impl ByteWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_magic(section: u8) -> Self {
        let mut w = Self::new();
        w.buf.extend_from_slice(MAGIC);
        w.write_u8(section);
        w
    }

    pub fn write_u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn write_u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn write_u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn write_i64(&mut self, v: i64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn write_bytes(&mut self, data: &[u8]) {
        self.write_u32(data.len() as u32);
        self.buf.extend_from_slice(data);
    }

    pub fn write_raw(&mut self, data: &[u8]) {
        self.buf.extend_from_slice(data);
    }

    pub fn write_scalar<F: FieldElement>(&mut self, v: &F) {
        self.buf.extend_from_slice(&v.to_bytes());
    }

    pub fn write_scalars<F: FieldElement>(&mut self, vs: &[F]) {
        self.write_u32(vs.len() as u32);
        for v in vs {
            self.write_scalar(v);
        }
    }

    pub fn write_point<G: GroupElement>(&mut self, p: &G) {
        self.buf.extend_from_slice(&p.compress());
    }

    pub fn write_points<G: GroupElement>(&mut self, ps: &[G]) {
        self.write_u32(ps.len() as u32);
        for p in ps {
            self.write_point(p);
        }
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }
}

pub struct ByteReader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> ByteReader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        ByteReader { buf, pos: 0 }
    }

    pub fn with_magic(buf: &'a [u8], section: u8) -> Result<Self> {
        let mut r = Self::new(buf);
        let magic = r.take(4)?;
        if magic != MAGIC {
            return Err(ZkError::decode("bad magic bytes"));
        }
        let s = r.read_u8()?;
        if s != section {
            return Err(ZkError::decode(format!(
                "wrong section tag: expected {section}, got {s}"
            )));
        }
        Ok(r)
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.buf.len() {
            return Err(ZkError::decode("unexpected end of input"));
        }
        let out = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    pub fn read_u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn read_u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub fn read_u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub fn read_i64(&mut self) -> Result<i64> {
        Ok(i64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub fn read_len(&mut self, cap: usize) -> Result<usize> {
        let n = self.read_u32()? as usize;
        if n > cap {
            return Err(ZkError::decode(format!("length {n} exceeds cap {cap}")));
        }
        Ok(n)
    }

    pub fn read_bytes(&mut self) -> Result<&'a [u8]> {
        let n = self.read_u32()? as usize;
        self.take(n)
    }

    pub fn read_raw(&mut self, n: usize) -> Result<&'a [u8]> {
        self.take(n)
    }

    pub fn read_scalar<F: FieldElement>(&mut self) -> Result<F> {
        let bytes = self.take(F::NUM_BYTES)?;
        F::from_bytes(bytes).ok_or_else(|| ZkError::decode("non-canonical field element"))
    }

    pub fn read_scalars<F: FieldElement>(&mut self, cap: usize) -> Result<Vec<F>> {
        let n = self.read_len(cap)?;
        (0..n).map(|_| self.read_scalar()).collect()
    }

    pub fn read_point<G: GroupElement>(&mut self) -> Result<G> {
        let bytes = self.take(G::COMPRESSED_BYTES)?;
        G::decompress(bytes).ok_or_else(|| ZkError::decode("invalid group encoding"))
    }

    pub fn read_points<G: GroupElement>(&mut self, cap: usize) -> Result<Vec<G>> {
        let n = self.read_len(cap)?;
        (0..n).map(|_| self.read_point()).collect()
    }

    pub fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    pub fn finish(&self) -> Result<()> {
        if self.remaining() != 0 {
            return Err(ZkError::decode(format!(
                "{} trailing bytes",
                self.remaining()
            )));
        }
        Ok(())
    }
}
