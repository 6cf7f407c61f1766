//! Per-prediction operation counts of common classifiers, as functions of the
//! feature dimension `W`, support-vector count `Q` and training-set size `S`.

use std::str::FromStr;

use serde::Serialize;

use crate::error::{MyoError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifierKind {
    Lda,
    Qda,
    SvmLinear,
    SvmQuadratic,
    Knn,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 5] = [
        ClassifierKind::Lda,
        ClassifierKind::Qda,
        ClassifierKind::SvmLinear,
        ClassifierKind::SvmQuadratic,
        ClassifierKind::Knn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassifierKind::Lda => "lda",
            ClassifierKind::Qda => "qda",
            ClassifierKind::SvmLinear => "svm-linear",
            ClassifierKind::SvmQuadratic => "svm-quadratic",
            ClassifierKind::Knn => "knn",
        }
    }
}

impl FromStr for ClassifierKind {
    type Err = MyoError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lda" => Ok(ClassifierKind::Lda),
            "qda" => Ok(ClassifierKind::Qda),
            "svm-linear" | "svm_linear" | "svm-l" | "svml" => Ok(ClassifierKind::SvmLinear),
            "svm-quadratic" | "svm_quadratic" | "svm-q" | "svmq" => Ok(ClassifierKind::SvmQuadratic),
            "knn" | "k-nn" => Ok(ClassifierKind::Knn),
            other => Err(MyoError::Config(format!("unknown classifier kind `{other}`"))),
        }
    }
}

/// Adders, multipliers, squarings and square roots per prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OpCounts {
    pub adds: i64,
    pub muls: i64,
    pub squares: i64,
    pub roots: i64,
}

pub fn complexity_report(
    kind: ClassifierKind,
    w: u32,
    q: Option<u32>,
    s: Option<u32>,
) -> Result<OpCounts> {
    if w == 0 {
        return Err(MyoError::Config("feature dimension W must be at least 1".into()));
    }
    let w = i64::from(w);
    let need = |v: Option<u32>, name: &str| {
        v.map(i64::from).ok_or_else(|| {
            MyoError::Config(format!("{} needs {name}", kind.name()))
        })
    };
    let counts = match kind {
        ClassifierKind::Lda => OpCounts { adds: w, muls: w, squares: 0, roots: 0 },
        ClassifierKind::Qda => OpCounts { adds: 2 * w, muls: 2 * w, squares: w, roots: 0 },
        ClassifierKind::SvmLinear => {
            let q = need(q, "Q (support vectors)")?;
            OpCounts { adds: (w + 1) * q - 1, muls: (w + 2) * q, squares: 0, roots: 0 }
        }
        ClassifierKind::SvmQuadratic => {
            let q = need(q, "Q (support vectors)")?;
            OpCounts { adds: (w + 2) * q - 1, muls: (w + 2) * q, squares: q, roots: 0 }
        }
        ClassifierKind::Knn => {
            let s = need(s, "S (training samples)")?;
            OpCounts { adds: 2 * s * (w + 1) - 6, muls: 0, squares: s * w, roots: s }
        }
    };
    Ok(counts)
}
