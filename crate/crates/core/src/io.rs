//! Little-endian primitives shared by the binary file formats.

use std::io::{ErrorKind, Read, Write};

use crate::error::{MyoError, Result};

pub(crate) struct ByteWriter<W: Write> {
    out: W,
}

impl<W: Write> ByteWriter<W> {
    pub fn new(out: W) -> Self {
        Self { out }
    }

    pub fn bytes(&mut self, b: &[u8]) -> Result<()> {
        self.out.write_all(b)?;
        Ok(())
    }

    pub fn u16(&mut self, v: u16) -> Result<()> {
        self.bytes(&v.to_le_bytes())
    }

    pub fn u32(&mut self, v: u32) -> Result<()> {
        self.bytes(&v.to_le_bytes())
    }

    pub fn u64(&mut self, v: u64) -> Result<()> {
        self.bytes(&v.to_le_bytes())
    }

    pub fn f32(&mut self, v: f32) -> Result<()> {
        self.bytes(&v.to_le_bytes())
    }

    pub fn f64(&mut self, v: f64) -> Result<()> {
        self.bytes(&v.to_le_bytes())
    }

    /// u16 byte length, then UTF-8.
    pub fn string(&mut self, s: &str) -> Result<()> {
        let len = u16::try_from(s.len())
            .map_err(|_| MyoError::Model(format!("name of {} bytes is too long", s.len())))?;
        self.u16(len)?;
        self.bytes(s.as_bytes())
    }

    pub fn finish(mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

pub(crate) struct ByteReader<R: Read> {
    input: R,
}

impl<R: Read> ByteReader<R> {
    pub fn new(input: R) -> Self {
        Self { input }
    }

    fn fill(&mut self, buf: &mut [u8], what: &str) -> Result<()> {
        self.input.read_exact(buf).map_err(|e| match e.kind() {
            ErrorKind::UnexpectedEof => MyoError::Truncated(format!("end of file while reading {what}")),
            _ => MyoError::Io(e),
        })
    }

    pub fn magic(&mut self, expected: [u8; 4]) -> Result<()> {
        let mut found = [0u8; 4];
        self.fill(&mut found, "magic")?;
        if found != expected {
            return Err(MyoError::BadMagic { expected, found });
        }
        Ok(())
    }

    pub fn u16(&mut self, what: &str) -> Result<u16> {
        let mut b = [0u8; 2];
        self.fill(&mut b, what)?;
        Ok(u16::from_le_bytes(b))
    }

    pub fn u32(&mut self, what: &str) -> Result<u32> {
        let mut b = [0u8; 4];
        self.fill(&mut b, what)?;
        Ok(u32::from_le_bytes(b))
    }

    pub fn u64(&mut self, what: &str) -> Result<u64> {
        let mut b = [0u8; 8];
        self.fill(&mut b, what)?;
        Ok(u64::from_le_bytes(b))
    }

    pub fn f32(&mut self, what: &str) -> Result<f32> {
        let mut b = [0u8; 4];
        self.fill(&mut b, what)?;
        Ok(f32::from_le_bytes(b))
    }

    pub fn f64(&mut self, what: &str) -> Result<f64> {
        let mut b = [0u8; 8];
        self.fill(&mut b, what)?;
        Ok(f64::from_le_bytes(b))
    }

    pub fn string(&mut self, what: &str) -> Result<String> {
        let len = self.u16(what)? as usize;
        let mut b = vec![0u8; len];
        self.fill(&mut b, what)?;
        String::from_utf8(b).map_err(|_| MyoError::Model(format!("{what} is not valid UTF-8")))
    }

    pub fn expect_end(&mut self) -> Result<()> {
        let mut rest = Vec::new();
        self.input.read_to_end(&mut rest)?;
        if rest.is_empty() {
            Ok(())
        } else {
            Err(MyoError::TrailingBytes(rest.len()))
        }
    }
}
