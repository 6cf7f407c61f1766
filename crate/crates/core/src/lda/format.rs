//! Binary model file: little-endian, magic `MYOM`.
//!
//! ```text
//! magic "MYOM" | version u16 | d u16 | classes u16
//! per class: id u16 | name (u16 length + UTF-8) | count u32 | mean d*f64 | cov d*d*f64
//! pooled cov d*d*f64 | ridge f64
//! ```
//! Matrices are row-major.

use std::io::{Read, Write};

use nalgebra::{DMatrix, DVector};

use crate::error::{MyoError, Result};
use crate::io::{ByteReader, ByteWriter};
use crate::label::MotionLabel;
use crate::lda::{ClassModel, PooledModel};

pub const MODEL_MAGIC: [u8; 4] = *b"MYOM";
pub const MODEL_VERSION: u16 = 1;

pub fn write_model<W: Write>(model: &PooledModel, out: W) -> Result<()> {
    let d = model.dim();
    let mut w = ByteWriter::new(out);
    w.bytes(&MODEL_MAGIC)?;
    w.u16(MODEL_VERSION)?;
    w.u16(narrow(d, "dimension")?)?;
    w.u16(narrow(model.classes().len(), "class count")?)?;
    for c in model.classes() {
        w.u16(c.label.id)?;
        w.string(&c.label.name)?;
        w.u32(u32::try_from(c.count).map_err(|_| MyoError::Model("class count overflows u32".into()))?)?;
        for v in c.mean.iter() {
            w.f64(*v)?;
        }
        write_matrix(&mut w, &c.cov)?;
    }
    write_matrix(&mut w, model.pooled_cov())?;
    w.f64(model.ridge())?;
    w.finish()
}

pub fn read_model<R: Read>(input: R) -> Result<PooledModel> {
    let mut r = ByteReader::new(input);
    r.magic(MODEL_MAGIC)?;
    let version = r.u16("version")?;
    if version != MODEL_VERSION {
        return Err(MyoError::UnsupportedVersion {
            found: version,
            supported: MODEL_VERSION,
        });
    }
    let d = r.u16("dimension")? as usize;
    let k = r.u16("class count")? as usize;
    let mut classes = Vec::with_capacity(k);
    for _ in 0..k {
        let id = r.u16("label id")?;
        let name = r.string("label name")?;
        let count = r.u32("sample count")? as usize;
        let mean = DVector::from_iterator(d, (0..d).map(|_| r.f64("mean")).collect::<Result<Vec<_>>>()?);
        let cov = read_matrix(&mut r, d, "class covariance")?;
        classes.push(ClassModel {
            label: MotionLabel::new(id, name),
            mean,
            cov,
            count,
        });
    }
    let pooled_cov = read_matrix(&mut r, d, "pooled covariance")?;
    let ridge = r.f64("ridge")?;
    r.expect_end()?;
    PooledModel::from_parts(classes, pooled_cov, ridge)
}

fn narrow(v: usize, what: &str) -> Result<u16> {
    u16::try_from(v).map_err(|_| MyoError::Model(format!("{what} {v} does not fit in u16")))
}

fn write_matrix<W: Write>(w: &mut ByteWriter<W>, m: &DMatrix<f64>) -> Result<()> {
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            w.f64(m[(i, j)])?;
        }
    }
    Ok(())
}

fn read_matrix<R: Read>(r: &mut ByteReader<R>, d: usize, what: &str) -> Result<DMatrix<f64>> {
    let mut m = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] = r.f64(what)?;
        }
    }
    Ok(m)
}
