//! Lie algebras given by structure constants, and the linear algebra built
//! directly on top of them: brackets, adjoint maps, the Killing form, the
//! center and the derived subalgebra.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::linalg;
use crate::tolerance::Tolerances;

/// Terms `(k, c)` of a bracket `[e_i, e_j] = sum c e_k`.
pub type Terms = Vec<(usize, f64)>;

/// A real Lie algebra in a fixed basis `e_0 .. e_{n-1}`.
///
/// Only pairs `i < j` are stored; `[e_j, e_i] = -[e_i, e_j]` is applied on access.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    brackets: BTreeMap<(usize, usize), Terms>,
}

/// A basis triple on which the Jacobi identity fails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: f64,
}

impl LieAlgebra {
    /// Builds an algebra from sparse bracket entries.
    ///
    /// Entries must have `i < j < dim`, target indices `< dim`, finite
    /// coefficients and no repeated `(i, j)` pair. Repeated targets within a
    /// pair are summed and zero coefficients dropped.
    pub fn new<I>(name: impl Into<String>, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Terms)>,
    {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        let mut brackets = BTreeMap::new();
        for ((i, j), terms) in entries {
            if i >= j {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket pair ({i}, {j}) must satisfy i < j"
                )));
            }
            if j >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket pair ({i}, {j}) out of range for dimension {dim}"
                )));
            }
            let mut merged: BTreeMap<usize, f64> = BTreeMap::new();
            for (k, c) in terms {
                if k >= dim {
                    return Err(Error::InvalidAlgebra(format!(
                        "term index {k} in [e_{i}, e_{j}] out of range for dimension {dim}"
                    )));
                }
                if !c.is_finite() {
                    return Err(Error::InvalidAlgebra(format!(
                        "non-finite coefficient in [e_{i}, e_{j}]"
                    )));
                }
                *merged.entry(k).or_insert(0.0) += c;
            }
            let terms: Terms = merged.into_iter().filter(|&(_, c)| c != 0.0).collect();
            if brackets.insert((i, j), terms).is_some() {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket pair ({i}, {j}) given twice"
                )));
            }
        }
        brackets.retain(|_, t: &mut Terms| !t.is_empty());
        Ok(LieAlgebra {
            name: name.into(),
            dim,
            brackets,
        })
    }

    /// Builds an algebra from a function returning `[e_i, e_j]` for `i < j`.
    pub fn from_bracket_fn<F>(name: impl Into<String>, dim: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> DVector<f64>,
    {
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let v = f(i, j);
                let terms: Terms = v
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0.0)
                    .map(|(k, &c)| (k, c))
                    .collect();
                if !terms.is_empty() {
                    entries.push(((i, j), terms));
                }
            }
        }
        LieAlgebra::new(name, dim, entries)
    }

    /// The abelian algebra of dimension `n`.
    pub fn abelian(name: impl Into<String>, n: usize) -> Result<Self> {
        LieAlgebra::new(name, n, std::iter::empty())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stored entries `((i, j), terms)` with `i < j`.
    pub fn brackets(&self) -> impl Iterator<Item = (&(usize, usize), &Terms)> {
        self.brackets.iter()
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Largest absolute structure constant.
    pub fn structure_scale(&self) -> f64 {
        self.brackets
            .values()
            .flat_map(|t| t.iter().map(|&(_, c)| c.abs()))
            .fold(0.0, f64::max)
    }

    fn check_len(&self, v: &DVector<f64>) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        let (a, b, sign) = match i.cmp(&j) {
            std::cmp::Ordering::Less => (i, j, 1.0),
            std::cmp::Ordering::Greater => (j, i, -1.0),
            std::cmp::Ordering::Equal => return out,
        };
        if let Some(terms) = self.brackets.get(&(a, b)) {
            for &(k, c) in terms {
                out[k] += sign * c;
            }
        }
        out
    }

    /// `[x, y]` extended bilinearly from the structure constants.
    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        for (&(i, j), terms) in &self.brackets {
            let w = x[i] * y[j] - x[j] * y[i];
            if w != 0.0 {
                for &(k, c) in terms {
                    out[k] += w * c;
                }
            }
        }
        out
    }

    /// `ad(e_i)` as a dense matrix.
    pub fn ad_basis(&self, i: usize) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (&(a, b), terms) in &self.brackets {
            // ad(e_a) e_b = [e_a, e_b], ad(e_b) e_a = -[e_a, e_b]
            let (col, sign) = if a == i {
                (b, 1.0)
            } else if b == i {
                (a, -1.0)
            } else {
                continue;
            };
            for &(k, c) in terms {
                m[(k, col)] += sign * c;
            }
        }
        m
    }

    /// The adjoint map `ad(x)`; column `j` is `[x, e_j]`.
    pub fn ad_matrix(&self, x: &DVector<f64>) -> Result<LinearMap> {
        self.check_len(x)?;
        Ok(LinearMap(self.ad_unchecked(x)))
    }

    pub(crate) fn ad_unchecked(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (&(a, b), terms) in &self.brackets {
            for &(k, c) in terms {
                m[(k, b)] += x[a] * c;
                m[(k, a)] -= x[b] * c;
            }
        }
        m
    }

    /// All `ad(e_i)`.
    pub fn ad_all(&self) -> Vec<DMatrix<f64>> {
        (0..self.dim).map(|i| self.ad_basis(i)).collect()
    }

    /// Basis triples `i < j < k` whose Jacobi cyclic sum exceeds `tol` in some entry.
    pub fn validate_jacobi(&self, tol: f64) -> Vec<JacobiViolation> {
        let n = self.dim;
        let basis_brackets: Vec<Vec<DVector<f64>>> = (0..n)
            .map(|i| (0..n).map(|j| self.bracket_basis(i, j)).collect())
            .collect();
        let unit = |k: usize| {
            let mut v = DVector::zeros(n);
            v[k] = 1.0;
            v
        };
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let s = self.bracket_unchecked(&basis_brackets[i][j], &unit(k))
                        + self.bracket_unchecked(&basis_brackets[j][k], &unit(i))
                        + self.bracket_unchecked(&basis_brackets[k][i], &unit(j));
                    let r = linalg::max_abs_vec(&s);
                    if r > tol {
                        out.push(JacobiViolation {
                            triple: (i, j, k),
                            residual: r,
                        });
                    }
                }
            }
        }
        out
    }

    /// Fails with [`Error::Jacobi`] when any triple violates the identity.
    pub fn ensure_jacobi(&self, tol: f64) -> Result<()> {
        let v = self.validate_jacobi(tol);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Jacobi {
                count: v.len(),
                worst: v.iter().map(|x| x.residual).fold(0.0, f64::max),
            })
        }
    }

    /// Killing form `B(e_i, e_j) = tr(ad(e_i) ad(e_j))`.
    pub fn killing_form(&self) -> SymmetricForm {
        let ads = self.ad_all();
        let n = self.dim;
        let mut b = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = (&ads[i] * &ads[j]).trace();
                b[(i, j)] = t;
                b[(j, i)] = t;
            }
        }
        SymmetricForm::from_matrix(&b)
    }

    /// Largest residual of `ad(e_i)^T M + M ad(e_i)` over all `i`.
    pub fn skew_adjoint_residual(&self, form: &SymmetricForm) -> Result<f64> {
        if form.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: form.dim(),
            });
        }
        let m = form.to_matrix();
        let mut worst = 0.0f64;
        for ad in self.ad_all() {
            let r = ad.transpose() * &m + &m * &ad;
            worst = worst.max(linalg::max_abs(&r));
        }
        Ok(worst)
    }

    /// Whether every `ad(x)` is skew-adjoint for `metric`, i.e.
    /// `<[e_i, e_j], e_k> + <e_j, [e_i, e_k]> = 0` for all basis triples.
    pub fn is_skew_adjoint_all(&self, metric: &Metric, tol: &Tolerances) -> Result<bool> {
        let residual = self.skew_adjoint_residual(metric.form())?;
        let scale = self.structure_scale() * linalg::max_abs(&metric.matrix());
        Ok(residual <= tol.skew * scale.max(f64::MIN_POSITIVE))
    }

    /// The center `Z(g)`: nullspace of `x -> ad(x)`.
    pub fn center(&self, tol: &Tolerances) -> Subspace {
        let n = self.dim;
        let mut stacked = DMatrix::zeros(n * n, n);
        for (i, ad) in self.ad_all().into_iter().enumerate() {
            stacked.set_column(i, &DVector::from_column_slice(ad.as_slice()));
        }
        Subspace::from_orthonormal(linalg::nullspace(&stacked, tol.rank * n as f64))
    }

    /// The derived subalgebra `[g, g]`.
    pub fn derived_subalgebra(&self, tol: &Tolerances) -> Subspace {
        let n = self.dim;
        let pairs = n * n.saturating_sub(1) / 2;
        let mut m = DMatrix::zeros(n, pairs);
        let mut c = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                m.set_column(c, &self.bracket_basis(i, j));
                c += 1;
            }
        }
        Subspace::from_orthonormal(linalg::range(&m, tol.rank * n as f64))
    }

    /// The same algebra in the basis `f_a = sum_b t[(b, a)] e_b`.
    pub fn change_basis(&self, t: &DMatrix<f64>) -> Result<LieAlgebra> {
        let n = self.dim;
        if t.nrows() != n || t.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: t.nrows(),
            });
        }
        let inv = t
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidAlgebra("change of basis is singular".into()))?;
        let cols: Vec<DVector<f64>> = (0..n).map(|a| t.column(a).into_owned()).collect();
        LieAlgebra::from_bracket_fn(self.name.clone(), n, |a, b| {
            &inv * self.bracket_unchecked(&cols[a], &cols[b])
        })
    }
}

/// A linear endomorphism of the algebra in coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap(pub DMatrix<f64>);

impl LinearMap {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.0 * v
    }
}

/// A symmetric bilinear form, stored as its packed upper triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricForm {
    dim: usize,
    upper: Vec<f64>,
}

fn packed_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

impl SymmetricForm {
    pub fn zeros(dim: usize) -> Self {
        SymmetricForm {
            dim,
            upper: vec![0.0; dim * (dim + 1) / 2],
        }
    }

    /// Symmetrizes `m` (average with its transpose) and packs it.
    pub fn from_matrix(m: &DMatrix<f64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "form matrix must be square");
        let n = m.nrows();
        let mut f = SymmetricForm::zeros(n);
        for i in 0..n {
            for j in i..n {
                f.upper[packed_index(n, i, j)] = 0.5 * (m[(i, j)] + m[(j, i)]);
            }
        }
        f
    }

    /// From packed upper-triangle entries in row-major order.
    pub fn from_packed(dim: usize, upper: Vec<f64>) -> Result<Self> {
        if upper.len() != dim * (dim + 1) / 2 {
            return Err(Error::DimensionMismatch {
                expected: dim * (dim + 1) / 2,
                found: upper.len(),
            });
        }
        Ok(SymmetricForm { dim, upper })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn packed(&self) -> &[f64] {
        &self.upper
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.upper[packed_index(self.dim, i, j)]
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        let n = self.dim;
        DMatrix::from_fn(n, n, |i, j| self.get(i, j))
    }

    pub fn eval(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * self.to_matrix() * y)[(0, 0)]
    }

    pub fn scaled(&self, s: f64) -> Self {
        SymmetricForm {
            dim: self.dim,
            upper: self.upper.iter().map(|v| v * s).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.upper.iter().all(|v| v.is_finite())
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        if self.dim == 0 {
            return Vec::new();
        }
        let mut v: Vec<f64> = SymmetricEigen::new(self.to_matrix())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Restriction to a subspace, in the coordinates of its basis.
    pub fn restrict(&self, s: &Subspace) -> DMatrix<f64> {
        s.basis().transpose() * self.to_matrix() * s.basis()
    }
}

/// A positive definite symmetric form.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    form: SymmetricForm,
}

impl Metric {
    /// Accepts `form` when all eigenvalues exceed `tol.rank` times the largest one.
    pub fn new(form: SymmetricForm, tol: &Tolerances) -> Result<Self> {
        if !form.is_finite() {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: f64::NAN,
            });
        }
        let eig = form.eigenvalues();
        let min = eig.first().copied().unwrap_or(0.0);
        let max = eig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if eig.is_empty() || min <= tol.rank * max || max == 0.0 {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: min,
            });
        }
        Ok(Metric { form })
    }

    pub fn from_matrix(m: &DMatrix<f64>, tol: &Tolerances) -> Result<Self> {
        Metric::new(SymmetricForm::from_matrix(m), tol)
    }

    /// The identity metric on `n` coordinates.
    pub fn euclidean(n: usize) -> Self {
        Metric {
            form: SymmetricForm::from_matrix(&DMatrix::identity(n, n)),
        }
    }

    pub fn form(&self) -> &SymmetricForm {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.dim
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        self.form.to_matrix()
    }

    pub fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        self.form.eval(x, y)
    }

    /// Multiplies by a positive scalar.
    pub fn scaled(&self, lambda: f64) -> Metric {
        assert!(lambda > 0.0, "metric scale must be positive");
        Metric {
            form: self.form.scaled(lambda),
        }
    }

    /// Columns form an orthonormal basis for this metric.
    pub fn orthonormal_basis(&self) -> DMatrix<f64> {
        let chol = self
            .matrix()
            .cholesky()
            .expect("metric is positive definite");
        let l_t = chol.l().transpose();
        l_t.try_inverse().expect("cholesky factor is invertible")
    }
}

/// A linear subspace given by Euclidean-orthonormal basis columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: DMatrix<f64>,
}

impl Subspace {
    pub(crate) fn from_orthonormal(basis: DMatrix<f64>) -> Self {
        Subspace { basis }
    }

    /// Orthonormalizes the span of the columns of `vectors`.
    pub fn span(vectors: &DMatrix<f64>, tol: &Tolerances) -> Self {
        let n = vectors.nrows().max(1);
        Subspace {
            basis: linalg::range(vectors, tol.rank * n as f64),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            basis: DMatrix::zeros(ambient, 0),
        }
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn vector(&self, i: usize) -> DVector<f64> {
        self.basis.column(i).into_owned()
    }

    /// Largest deviation of `basis^T basis` from the identity.
    pub fn orthonormality_residual(&self) -> f64 {
        let d = self.dim();
        linalg::max_abs(&(self.basis.transpose() * &self.basis - DMatrix::identity(d, d)))
    }

    /// Dimension of the intersection with `other`.
    pub fn intersection_dim(&self, other: &Subspace, tol: &Tolerances) -> usize {
        let joined = linalg::hstack(&[&self.basis, &other.basis]);
        let n = self.ambient_dim().max(1) as f64;
        self.dim() + other.dim() - linalg::rank(&joined, tol.rank * n)
    }
}
