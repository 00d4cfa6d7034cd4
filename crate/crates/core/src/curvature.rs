//! Curvature of bi-invariant metrics, driven by the operator
//! `κ(x, y) = ¼ M([x, y], [x, y])`.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::algebra::{LieAlgebra, Metric, SymmetricForm};
use crate::decompose::simple_ideals;
use crate::error::{Error, Result};
use crate::linalg;
use crate::tolerance::Tolerances;

pub const DEFAULT_SAMPLES: usize = 1000;

/// An algebra paired with a metric already checked to be bi-invariant.
#[derive(Debug, Clone)]
pub struct BiInvariantGeometry<'a> {
    alg: &'a LieAlgebra,
    metric: &'a Metric,
    gram: DMatrix<f64>,
    orthonormal: DMatrix<f64>,
}

impl<'a> BiInvariantGeometry<'a> {
    pub fn new(alg: &'a LieAlgebra, metric: &'a Metric, tol: &Tolerances) -> Result<Self> {
        if !alg.is_skew_adjoint_all(metric, tol)? {
            return Err(Error::NotBiInvariant);
        }
        Ok(BiInvariantGeometry {
            alg,
            metric,
            gram: metric.matrix(),
            orthonormal: metric.orthonormal_basis(),
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.alg
    }

    pub fn metric(&self) -> &Metric {
        self.metric
    }

    fn check(&self, v: &DVector<f64>) -> Result<()> {
        if v.len() != self.alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.alg.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.gram * y)[(0, 0)]
    }

    fn kappa_unchecked(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        let b = self.alg.bracket_unchecked(x, y);
        0.25 * self.inner(&b, &b)
    }

    pub fn kappa(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.kappa_unchecked(x, y))
    }

    fn gram_determinant(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        self.inner(x, x) * self.inner(y, y) - self.inner(x, y).powi(2)
    }

    /// `κ(x, y)` divided by the squared area of the parallelogram on `x, y`.
    pub fn sectional(&self, x: &DVector<f64>, y: &DVector<f64>, tol: &Tolerances) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        let area = self.gram_determinant(x, y);
        let scale = self.inner(x, x) * self.inner(y, y);
        if area.is_nan() || area <= tol.rank * scale {
            return Err(Error::DegeneratePlane);
        }
        Ok(self.kappa_unchecked(x, y) / area)
    }

    fn ricci_diagonal(&self, x: &DVector<f64>) -> f64 {
        self.orthonormal
            .column_iter()
            .map(|u| self.kappa_unchecked(x, &u.into_owned()))
            .sum()
    }

    /// Polarization of `Ric(x, x) = Σ_j κ(x, u_j)` over an orthonormal basis.
    pub fn ricci_form(&self) -> SymmetricForm {
        let n = self.alg.dim();
        let e = |i: usize| DVector::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 });
        let mut ric = DMatrix::zeros(n, n);
        for i in 0..n {
            ric[(i, i)] = self.ricci_diagonal(&e(i));
            for j in 0..i {
                let plus = self.ricci_diagonal(&(e(i) + e(j)));
                let minus = self.ricci_diagonal(&(e(i) - e(j)));
                ric[(i, j)] = 0.25 * (plus - minus);
                ric[(j, i)] = ric[(i, j)];
            }
        }
        SymmetricForm::from_matrix(&ric)
    }

    pub fn scalar_curvature(&self) -> f64 {
        let ric = self.ricci_form().to_matrix();
        (self.orthonormal.transpose() * ric * &self.orthonormal).trace()
    }

    /// Random `M`-orthonormal pair.
    fn random_plane(&self, rng: &mut ChaCha8Rng) -> Option<(DVector<f64>, DVector<f64>)> {
        let n = self.alg.dim();
        let g1 = DVector::from_fn(n, |_, _| StandardNormal.sample(rng));
        let g2 = DVector::from_fn(n, |_, _| StandardNormal.sample(rng));
        let x = &self.orthonormal * g1;
        let x = &x / self.inner(&x, &x).sqrt();
        let y = &self.orthonormal * g2;
        let y = &y - &x * self.inner(&x, &y);
        let norm = self.inner(&y, &y).sqrt();
        (norm > 1e-12).then(|| (x, y / norm))
    }
}

/// Curvature summary of one bi-invariant metric.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport {
    pub ricci: SymmetricForm,
    pub scalar: f64,
    /// Smallest sampled sectional curvature; `0` when no plane exists.
    pub min_sectional_sampled: f64,
    /// Sectional curvature of each sampled plane, in draw order.
    pub samples: Vec<f64>,
    /// Two independent commuting directions, when the algebra splits.
    pub zero_plane: Option<(Vec<f64>, Vec<f64>)>,
    pub einstein_constant: Option<f64>,
    pub flat: bool,
}

pub fn kappa(alg: &LieAlgebra, metric: &Metric, x: &DVector<f64>, y: &DVector<f64>, tol: &Tolerances) -> Result<f64> {
    BiInvariantGeometry::new(alg, metric, tol)?.kappa(x, y)
}

pub fn sectional(alg: &LieAlgebra, metric: &Metric, x: &DVector<f64>, y: &DVector<f64>, tol: &Tolerances) -> Result<f64> {
    BiInvariantGeometry::new(alg, metric, tol)?.sectional(x, y, tol)
}

pub fn ricci_form(alg: &LieAlgebra, metric: &Metric, tol: &Tolerances) -> Result<SymmetricForm> {
    Ok(BiInvariantGeometry::new(alg, metric, tol)?.ricci_form())
}

pub fn scalar_curvature(alg: &LieAlgebra, metric: &Metric, tol: &Tolerances) -> Result<f64> {
    Ok(BiInvariantGeometry::new(alg, metric, tol)?.scalar_curvature())
}

/// Samples `samples` random planes and collects the curvature summary.
pub fn positivity_probe(
    alg: &LieAlgebra,
    metric: &Metric,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<CurvatureReport> {
    let geo = BiInvariantGeometry::new(alg, metric, tol)?;
    let n = alg.dim();
    let ricci = geo.ricci_form();
    let ric = ricci.to_matrix();
    let scalar = (geo.orthonormal.transpose() * &ric * &geo.orthonormal).trace();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled = Vec::with_capacity(samples);
    if n >= 2 {
        while sampled.len() < samples {
            if let Some((x, y)) = geo.random_plane(&mut rng) {
                sampled.push(geo.kappa_unchecked(&x, &y) / geo.gram_determinant(&x, &y));
            }
        }
    }
    let min_sectional_sampled = sampled.iter().copied().fold(f64::INFINITY, f64::min);
    let min_sectional_sampled = if sampled.is_empty() { 0.0 } else { min_sectional_sampled };

    let zero_plane = zero_plane(&geo, seed, tol)?;

    let c = if n == 0 { 0.0 } else { scalar / n as f64 };
    let residual = linalg::max_abs(&(&ric - &geo.gram * c));
    let scale = linalg::max_abs(&ric).max(linalg::max_abs(&geo.gram) * c.abs());
    let einstein_constant = (residual <= tol.proportional * scale).then_some(c);

    Ok(CurvatureReport {
        ricci,
        scalar,
        min_sectional_sampled,
        samples: sampled,
        zero_plane,
        einstein_constant,
        flat: alg.is_abelian(),
    })
}

/// One direction from each of two commuting summands of the decomposition.
fn zero_plane(geo: &BiInvariantGeometry, seed: u64, tol: &Tolerances) -> Result<Option<(Vec<f64>, Vec<f64>)>> {
    let d = simple_ideals(geo.alg, seed, tol)?;
    let ideal = |i: usize| d.ideals[i].subspace.vector(0);
    let (x, y) = match (d.center_dim(), d.ideals.len()) {
        (_, k) if k >= 2 => (ideal(0), ideal(1)),
        (c, 1) if c >= 1 => (d.center.vector(0), ideal(0)),
        (c, _) if c >= 2 => (d.center.vector(0), d.center.vector(1)),
        _ => return Ok(None),
    };
    let scale = geo.inner(&x, &x) * geo.inner(&y, &y);
    if geo.kappa_unchecked(&x, &y) > tol.check * scale {
        return Ok(None);
    }
    Ok(Some((x.iter().copied().collect(), y.iter().copied().collect())))
}
