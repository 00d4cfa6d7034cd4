//! JSON file formats for algebras and metrics.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::{LieAlgebra, Metric};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Asymmetry above which a loaded metric matrix is reported as symmetrized.
pub const SYMMETRY_WARN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, f64)>,
}

/// `{"name", "dim", "brackets": [{"i", "j", "terms": [[k, c], ...]}]}` with `i < j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &LieAlgebra) -> Self {
        AlgebraFile {
            name: alg.name().to_string(),
            dim: alg.dim(),
            brackets: alg
                .brackets()
                .map(|(&(i, j), terms)| BracketEntry {
                    i,
                    j,
                    terms: terms.clone(),
                })
                .collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        LieAlgebra::new(
            self.name.clone(),
            self.dim,
            self.brackets.iter().map(|b| ((b.i, b.j), b.terms.clone())),
        )
    }
}

/// `{"matrix": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricFile {
    pub matrix: Vec<Vec<f64>>,
}

/// A metric read from a file, with the asymmetry that was averaged away.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedMetric {
    pub metric: Metric,
    pub asymmetry: f64,
}

impl LoadedMetric {
    pub fn was_symmetrized(&self) -> bool {
        self.asymmetry > SYMMETRY_WARN
    }
}

impl MetricFile {
    pub fn from_metric(m: &Metric) -> Self {
        let a = m.matrix();
        MetricFile {
            matrix: a.row_iter().map(|r| r.iter().copied().collect()).collect(),
        }
    }

    /// The square matrix, checked for shape and finiteness.
    pub fn to_matrix(&self) -> Result<DMatrix<f64>> {
        let n = self.matrix.len();
        if let Some(row) = self.matrix.iter().find(|r| r.len() != n) {
            return Err(Error::Parse(format!(
                "metric matrix is not square: {n} rows but a row of length {}",
                row.len()
            )));
        }
        if self.matrix.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Parse("metric matrix has non-finite entries".into()));
        }
        Ok(DMatrix::from_fn(n, n, |i, j| self.matrix[i][j]))
    }

    pub fn to_metric(&self, tol: &Tolerances) -> Result<LoadedMetric> {
        let a = self.to_matrix()?;
        let asymmetry = (&a - a.transpose()).amax();
        Ok(LoadedMetric {
            metric: Metric::from_matrix(&a, tol)?,
            asymmetry,
        })
    }
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_metric(text: &str) -> Result<MetricFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn algebra_to_json(alg: &LieAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(alg)).expect("serializable")
}

pub fn metric_to_json(m: &Metric) -> String {
    serde_json::to_string_pretty(&MetricFile::from_metric(m)).expect("serializable")
}
