//! Linear discriminant analysis with incremental class extension.
//!
//! All classes share one pooled covariance. Adding a class folds its
//! covariance into the pool by plain matrix addition and leaves every
//! existing class model untouched, so a model extended class by class is
//! bit-identical to one built from all classes at once (given the same
//! class order).

mod complexity;
mod format;

pub use complexity::{complexity_report, ClassifierKind, OpCounts};
pub use format::{read_model, write_model, MODEL_MAGIC, MODEL_VERSION};

use std::fmt;
use std::str::FromStr;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::error::{MyoError, Result};
use crate::features::FeatureVector;
use crate::label::MotionLabel;

/// Base ridge as a fraction of `trace / d`.
pub const RIDGE_FRACTION: f64 = 1e-6;
/// Largest ridge fraction tried before giving up.
pub const MAX_RIDGE_FRACTION: f64 = 1e-2;

impl AsRef<[f64]> for FeatureVector {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// Mean, covariance and sample count of one class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassModel {
    pub label: MotionLabel,
    pub mean: DVector<f64>,
    pub cov: DMatrix<f64>,
    pub count: usize,
}

impl ClassModel {
    pub fn dim(&self) -> usize {
        self.mean.len()
    }
}

/// Sample mean and unbiased (`n - 1`) covariance.
pub fn fit_class<V: AsRef<[f64]>>(samples: &[V], label: MotionLabel) -> Result<ClassModel> {
    if samples.len() < 2 {
        return Err(MyoError::InsufficientData(format!(
            "class {label} needs at least 2 samples, got {}",
            samples.len()
        )));
    }
    let d = samples[0].as_ref().len();
    if d == 0 {
        return Err(MyoError::Dimension {
            expected: 1,
            got: 0,
        });
    }
    if let Some(bad) = samples.iter().find(|s| s.as_ref().len() != d) {
        return Err(MyoError::Dimension {
            expected: d,
            got: bad.as_ref().len(),
        });
    }
    let n = samples.len();
    let mut mean = DVector::zeros(d);
    for s in samples {
        for (m, x) in mean.iter_mut().zip(s.as_ref()) {
            *m += x;
        }
    }
    mean /= n as f64;

    let mut cov = DMatrix::zeros(d, d);
    let mut centred = vec![0.0; d];
    for s in samples {
        for ((c, x), m) in centred.iter_mut().zip(s.as_ref()).zip(mean.iter()) {
            *c = x - m;
        }
        for i in 0..d {
            for j in i..d {
                cov[(i, j)] += centred[i] * centred[j];
            }
        }
    }
    let denom = (n - 1) as f64;
    for i in 0..d {
        for j in i..d {
            let v = cov[(i, j)] / denom;
            cov[(i, j)] = v;
            cov[(j, i)] = v;
        }
    }
    Ok(ClassModel {
        label,
        mean,
        cov,
        count: n,
    })
}

/// How per-class covariances are combined into the shared one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pooling {
    /// Plain sum of class covariances; extending adds the new covariance.
    #[default]
    Sum,
    /// Textbook within-class estimate `sum (n_k - 1) cov_k / (N - K)`.
    Weighted,
}

impl FromStr for Pooling {
    type Err = MyoError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "sum" => Ok(Pooling::Sum),
            "weighted" => Ok(Pooling::Weighted),
            other => Err(MyoError::Config(format!(
                "pooling must be `sum` or `weighted`, got `{other}`"
            ))),
        }
    }
}

impl fmt::Display for Pooling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pooling::Sum => "sum",
            Pooling::Weighted => "weighted",
        })
    }
}

/// The deployable classifier. Immutable; [`PooledModel::add_class`] returns
/// a new model.
#[derive(Debug, Clone)]
pub struct PooledModel {
    classes: Vec<ClassModel>,
    pooling: Pooling,
    cov_sum: DMatrix<f64>,
    scatter_sum: DMatrix<f64>,
    pooled_cov: DMatrix<f64>,
    ridge: f64,
    priors: Vec<f64>,
    solve: Cholesky<f64, Dyn>,
    // alpha_k(x) = weights[k] . x + offsets[k]
    weights: Vec<DVector<f64>>,
    offsets: Vec<f64>,
}

/// Sum-pooled model over at least two classes.
pub fn build_pooled(classes: Vec<ClassModel>) -> Result<PooledModel> {
    PooledModel::build(classes, Pooling::Sum)
}

impl PooledModel {
    pub fn build(classes: Vec<ClassModel>, pooling: Pooling) -> Result<Self> {
        if classes.len() < 2 {
            return Err(MyoError::Model(format!(
                "a pooled model needs at least 2 classes, got {}",
                classes.len()
            )));
        }
        let d = classes[0].dim();
        let mut cov_sum = DMatrix::zeros(d, d);
        let mut scatter_sum = DMatrix::zeros(d, d);
        for (i, c) in classes.iter().enumerate() {
            check_class(c, d)?;
            if classes[..i].iter().any(|o| o.label.id == c.label.id) {
                return Err(MyoError::Model(format!(
                    "duplicate label id {} ({})",
                    c.label.id, c.label
                )));
            }
            cov_sum += &c.cov;
            scatter_sum += &c.cov * (c.count - 1) as f64;
        }
        Self::finish(classes, pooling, cov_sum, scatter_sum, None)
    }

    /// Folds one more class into the pool. Existing class models are carried
    /// over unchanged.
    pub fn add_class(&self, new_class: ClassModel) -> Result<Self> {
        check_class(&new_class, self.dim())?;
        if self.classes.iter().any(|c| c.label.id == new_class.label.id) {
            return Err(MyoError::Model(format!(
                "label id {} ({}) is already in the model",
                new_class.label.id, new_class.label
            )));
        }
        let cov_sum = &self.cov_sum + &new_class.cov;
        let scatter_sum = &self.scatter_sum + &new_class.cov * (new_class.count - 1) as f64;
        let mut classes = self.classes.clone();
        classes.push(new_class);
        Self::finish(classes, self.pooling, cov_sum, scatter_sum, None)
    }

    /// Rebuilds a model from stored parts, checking the stored pooled
    /// covariance against the classes and reusing the stored ridge.
    pub fn from_parts(classes: Vec<ClassModel>, pooled_cov: DMatrix<f64>, ridge: f64) -> Result<Self> {
        if classes.len() < 2 {
            return Err(MyoError::Model("stored model has fewer than 2 classes".into()));
        }
        if !(ridge.is_finite() && ridge > 0.0) {
            return Err(MyoError::Model(format!("stored ridge {ridge} is not positive")));
        }
        let d = classes[0].dim();
        let mut cov_sum = DMatrix::zeros(d, d);
        let mut scatter_sum = DMatrix::zeros(d, d);
        for (i, c) in classes.iter().enumerate() {
            check_class(c, d)?;
            if classes[..i].iter().any(|o| o.label.id == c.label.id) {
                return Err(MyoError::Model(format!("duplicate label id {}", c.label.id)));
            }
            cov_sum += &c.cov;
            scatter_sum += &c.cov * (c.count - 1) as f64;
        }
        let pooling = [Pooling::Sum, Pooling::Weighted]
            .into_iter()
            .find(|&p| pooled(p, &classes, &cov_sum, &scatter_sum) == pooled_cov)
            .ok_or_else(|| {
                MyoError::Model("stored pooled covariance does not match the class covariances".into())
            })?;
        Self::finish(classes, pooling, cov_sum, scatter_sum, Some(ridge))
    }

    fn finish(
        classes: Vec<ClassModel>,
        pooling: Pooling,
        cov_sum: DMatrix<f64>,
        scatter_sum: DMatrix<f64>,
        fixed_ridge: Option<f64>,
    ) -> Result<Self> {
        let pooled_cov = pooled(pooling, &classes, &cov_sum, &scatter_sum);
        let d = pooled_cov.nrows();
        let (ridge, solve) = match fixed_ridge {
            Some(ridge) => {
                let solve = factor(&pooled_cov, ridge).ok_or(MyoError::Singular { ridge })?;
                (ridge, solve)
            }
            None => {
                let scale = pooled_cov.trace() / d as f64;
                // all-constant features: fall back to an absolute unit scale
                let scale = if scale.is_finite() && scale > 0.0 { scale } else { 1.0 };
                let mut fraction = RIDGE_FRACTION;
                loop {
                    let ridge = fraction * scale;
                    if let Some(solve) = factor(&pooled_cov, ridge) {
                        break (ridge, solve);
                    }
                    fraction *= 10.0;
                    if fraction > MAX_RIDGE_FRACTION * 1.000_001 {
                        return Err(MyoError::Singular { ridge });
                    }
                    log::warn!("pooled covariance not positive definite; raising ridge to {:e}", fraction * scale);
                }
            }
        };

        let total: usize = classes.iter().map(|c| c.count).sum();
        let priors: Vec<f64> = classes
            .iter()
            .map(|c| c.count as f64 / total as f64)
            .collect();
        let weights: Vec<DVector<f64>> = classes.iter().map(|c| solve.solve(&c.mean)).collect();
        let offsets = classes
            .iter()
            .zip(&weights)
            .zip(&priors)
            .map(|((c, w), p)| -0.5 * c.mean.dot(w) + p.ln())
            .collect();
        Ok(Self {
            classes,
            pooling,
            cov_sum,
            scatter_sum,
            pooled_cov,
            ridge,
            priors,
            solve,
            weights,
            offsets,
        })
    }

    pub fn dim(&self) -> usize {
        self.pooled_cov.nrows()
    }

    pub fn classes(&self) -> &[ClassModel] {
        &self.classes
    }

    pub fn labels(&self) -> Vec<MotionLabel> {
        self.classes.iter().map(|c| c.label.clone()).collect()
    }

    pub fn class(&self, id: u16) -> Option<&ClassModel> {
        self.classes.iter().find(|c| c.label.id == id)
    }

    pub fn pooling(&self) -> Pooling {
        self.pooling
    }

    pub fn pooled_cov(&self) -> &DMatrix<f64> {
        &self.pooled_cov
    }

    pub fn ridge(&self) -> f64 {
        self.ridge
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    /// Solves `(pooled_cov + ridge I) y = b` with the cached factorization.
    pub fn solve(&self, b: &DVector<f64>) -> DVector<f64> {
        self.solve.solve(b)
    }

    /// `alpha_k(x)` for every class, in class order.
    pub fn discriminants(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(MyoError::Dimension {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(self
            .weights
            .iter()
            .zip(&self.offsets)
            .map(|(w, c)| w.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + c)
            .collect())
    }

    /// Class with the largest discriminant; ties go to the lowest id.
    pub fn predict(&self, x: &[f64]) -> Result<&MotionLabel> {
        let scores = self.discriminants(x)?;
        let mut best = 0;
        for (k, &s) in scores.iter().enumerate().skip(1) {
            let b = scores[best];
            if s > b || (s == b && self.classes[k].label.id < self.classes[best].label.id) {
                best = k;
            }
        }
        Ok(&self.classes[best].label)
    }
}

fn check_class(c: &ClassModel, d: usize) -> Result<()> {
    if c.dim() != d || c.cov.nrows() != d || c.cov.ncols() != d {
        return Err(MyoError::Dimension {
            expected: d,
            got: c.dim(),
        });
    }
    if c.count < 2 {
        return Err(MyoError::InsufficientData(format!(
            "class {} has {} samples, need at least 2",
            c.label, c.count
        )));
    }
    Ok(())
}

fn pooled(
    pooling: Pooling,
    classes: &[ClassModel],
    cov_sum: &DMatrix<f64>,
    scatter_sum: &DMatrix<f64>,
) -> DMatrix<f64> {
    match pooling {
        Pooling::Sum => cov_sum.clone(),
        Pooling::Weighted => {
            let total: usize = classes.iter().map(|c| c.count).sum();
            scatter_sum / (total - classes.len()) as f64
        }
    }
}

fn factor(cov: &DMatrix<f64>, ridge: f64) -> Option<Cholesky<f64, Dyn>> {
    let mut m = cov.clone();
    for i in 0..m.nrows() {
        m[(i, i)] += ridge;
    }
    Cholesky::new(m)
}
