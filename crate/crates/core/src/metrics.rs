//! Bi-invariant metrics: the space of ad-invariant forms, canonical
//! coordinates `α_i` with respect to the per-ideal Killing forms, and the
//! isometry and conformal equivalence decisions built on them.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::algebra::{LieAlgebra, Metric, SymmetricForm};
use crate::decompose::{simple_ideals, Decomposition, Fingerprint};
use crate::error::{Error, Result};
use crate::linalg;
use crate::tolerance::Tolerances;

/// Basis of the symmetric forms `S` with `S([x, y], z) + S(y, [x, z]) = 0`.
pub fn invariant_form_space(alg: &LieAlgebra, tol: &Tolerances) -> Vec<SymmetricForm> {
    let n = alg.dim();
    let unknowns = n * (n + 1) / 2;
    let idx = |a: usize, b: usize| {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        a * n - a * (a + 1) / 2 + b
    };
    let mut system = DMatrix::zeros(n * unknowns, unknowns);
    let mut row = 0;
    for ad in alg.ad_all() {
        for j in 0..n {
            for k in j..n {
                for l in 0..n {
                    system[(row, idx(l, k))] += ad[(l, j)];
                    system[(row, idx(j, l))] += ad[(l, k)];
                }
                row += 1;
            }
        }
    }
    let null = linalg::nullspace(&system, tol.rank * n as f64);
    (0..null.ncols())
        .map(|c| {
            SymmetricForm::from_packed(n, null.column(c).iter().copied().collect())
                .expect("packed length matches")
        })
        .collect()
}

/// Membership in the space of bi-invariant metrics: every `ad(x)` is skew-adjoint.
pub fn is_biinvariant_metric(alg: &LieAlgebra, metric: &Metric, tol: &Tolerances) -> Result<bool> {
    alg.is_skew_adjoint_all(metric, tol)
}

/// `Σ α_i (-B_i) + C`, where `-B_i` is the negated Killing form composed with
/// the projection onto ideal `i` and `C` is a form on center coordinates
/// (identity when `None`). `alphas` follow the decomposition's ideal order.
pub fn compose_metric(
    alg: &LieAlgebra,
    d: &Decomposition,
    alphas: &[f64],
    center_form: Option<&DMatrix<f64>>,
    tol: &Tolerances,
) -> Result<Metric> {
    if alphas.len() != d.ideals.len() {
        return Err(Error::DimensionMismatch {
            expected: d.ideals.len(),
            found: alphas.len(),
        });
    }
    if alphas.iter().any(|a| !a.is_finite() || *a <= 0.0) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: alphas.iter().copied().fold(f64::INFINITY, f64::min),
        });
    }
    let frame = d.frame();
    if frame.nrows() != alg.dim() || frame.ncols() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: frame.ncols(),
        });
    }
    let m = d.center_dim();
    let inv = frame
        .try_inverse()
        .ok_or_else(|| Error::InvalidAlgebra("decomposition does not span the algebra".into()))?;
    let n = alg.dim();
    let mut total = DMatrix::zeros(n, n);
    if m > 0 {
        let identity = DMatrix::identity(m, m);
        let c = center_form.unwrap_or(&identity);
        if c.nrows() != m || c.ncols() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: c.nrows(),
            });
        }
        let rows = inv.rows(0, m);
        total += rows.transpose() * c * rows;
    }
    let killing = alg.killing_form().to_matrix();
    let mut at = m;
    for (ideal, alpha) in d.ideals.iter().zip(alphas) {
        let p = ideal.subspace.basis();
        let rows = inv.rows(at, p.ncols());
        let block = -(p.transpose() * &killing * p);
        total += rows.transpose() * block * rows * *alpha;
        at += p.ncols();
    }
    Metric::from_matrix(&total, tol)
}

/// A random element of the bi-invariant cone: `α_i` log-uniform in `[0.1, 10]`
/// and a random positive definite form on the center.
pub fn random_biinvariant_metric(
    alg: &LieAlgebra,
    d: &Decomposition,
    seed: u64,
    tol: &Tolerances,
) -> Result<Metric> {
    if d.ambient_dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: d.ambient_dim(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphas: Vec<f64> = (0..d.ideals.len())
        .map(|_| 10f64.powf(rng.random_range(-1.0..=1.0)))
        .collect();
    let m = d.center_dim();
    let g: DMatrix<f64> = DMatrix::from_fn(m, m, |_, _| StandardNormal.sample(&mut rng));
    let center = &g * g.transpose() / (m.max(1) as f64) + DMatrix::identity(m, m) * 0.5;
    compose_metric(alg, d, &alphas, Some(&center), tol)
}

/// The coefficients of one isomorphism class of simple ideals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassCoordinates {
    pub fingerprint: Fingerprint,
    pub alphas: Vec<f64>,
}

/// A bi-invariant metric written as `Σ α_i (-B_i)` plus a center block, with
/// the `α` grouped by isomorphism class. Only the dimension of the center is kept.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiInvariantCoordinates {
    pub classes: Vec<ClassCoordinates>,
    pub center_dim: usize,
}

impl BiInvariantCoordinates {
    pub fn ideal_count(&self) -> usize {
        self.classes.iter().map(|c| c.alphas.len()).sum()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.alphas.len()).collect()
    }

    /// All `α` concatenated in class order.
    pub fn alpha_vector(&self) -> Vec<f64> {
        self.classes.iter().flat_map(|c| c.alphas.iter().copied()).collect()
    }

    pub fn is_canonical(&self) -> bool {
        self.classes
            .iter()
            .all(|c| c.alphas.windows(2).all(|w| w[0] <= w[1]))
    }

    /// Structural match: same center dimension and the same classes with the same sizes.
    pub fn same_shape(&self, other: &BiInvariantCoordinates) -> bool {
        self.center_dim == other.center_dim
            && self.classes.len() == other.classes.len()
            && self.classes.iter().zip(&other.classes).all(|(a, b)| {
                a.fingerprint == b.fingerprint && a.alphas.len() == b.alphas.len()
            })
    }
}

/// Reads off `α` for every ideal: `M` restricted to an ideal must be a
/// multiple of `-B` restricted to it, and distinct summands must be orthogonal.
pub fn metric_coordinates(
    alg: &LieAlgebra,
    metric: &Metric,
    d: &Decomposition,
    tol: &Tolerances,
) -> Result<BiInvariantCoordinates> {
    if metric.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: metric.dim(),
        });
    }
    let m = metric.matrix();
    let killing = alg.killing_form().to_matrix();
    let scale = linalg::max_abs(&m);
    let mut alphas = Vec::with_capacity(d.ideals.len());
    for (i, ideal) in d.ideals.iter().enumerate() {
        let p = ideal.subspace.basis();
        let mi = p.transpose() * &m * p;
        let bi = -(p.transpose() * &killing * p);
        let alpha = mi[(0, 0)] / bi[(0, 0)];
        let residual = linalg::max_abs(&(&mi - &bi * alpha)) / linalg::max_abs(&mi);
        if residual > tol.proportional || alpha.is_nan() || alpha <= 0.0 {
            return Err(Error::Proportionality { ideal: i, residual });
        }
        alphas.push(alpha);
    }
    let mut blocks: Vec<&DMatrix<f64>> = vec![d.center.basis()];
    blocks.extend(d.ideals.iter().map(|i| i.subspace.basis()));
    for a in 0..blocks.len() {
        for b in (a + 1)..blocks.len() {
            let cross = linalg::max_abs(&(blocks[a].transpose() * &m * blocks[b])) / scale;
            if cross > tol.proportional {
                return Err(Error::Proportionality {
                    ideal: b - 1,
                    residual: cross,
                });
            }
        }
    }
    Ok(BiInvariantCoordinates {
        classes: d
            .classes
            .iter()
            .map(|members| ClassCoordinates {
                fingerprint: d.ideals[members[0]].fingerprint.clone(),
                alphas: members.iter().map(|&i| alphas[i]).collect(),
            })
            .collect(),
        center_dim: d.center_dim(),
    })
}

/// Sorts `α` ascending within each class: the canonical representative of the
/// orbit under permutations of isomorphic ideals.
pub fn canonicalize(c: &BiInvariantCoordinates) -> BiInvariantCoordinates {
    let mut out = c.clone();
    for class in &mut out.classes {
        class.alphas.sort_by(f64::total_cmp);
    }
    out
}

/// Full pipeline for one (algebra, metric) pair: compact-type and
/// bi-invariance checks, decomposition, canonical coordinates.
pub fn canonical_coordinates(
    alg: &LieAlgebra,
    metric: &Metric,
    seed: u64,
    tol: &Tolerances,
) -> Result<BiInvariantCoordinates> {
    let d = simple_ideals(alg, seed, tol)?;
    if !is_biinvariant_metric(alg, metric, tol)? {
        return Err(Error::NotBiInvariant);
    }
    Ok(canonicalize(&metric_coordinates(alg, metric, &d, tol)?))
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

/// Isometry of canonical coordinates: same shape and equal sorted `α` per class.
pub fn coordinates_isometric(
    a: &BiInvariantCoordinates,
    b: &BiInvariantCoordinates,
    tol: &Tolerances,
) -> bool {
    let (a, b) = (canonicalize(a), canonicalize(b));
    a.same_shape(&b)
        && a.alpha_vector()
            .iter()
            .zip(b.alpha_vector())
            .all(|(x, y)| close(*x, y, tol.equal))
}

/// Outcome of a conformal equivalence test. When equivalent, `lambda`
/// satisfies `M_1 ≅ lambda · M_2` up to isometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConformalVerdict {
    pub equivalent: bool,
    pub lambda: Option<f64>,
}

pub fn coordinates_conformal(
    a: &BiInvariantCoordinates,
    b: &BiInvariantCoordinates,
    tol: &Tolerances,
) -> ConformalVerdict {
    let no = ConformalVerdict {
        equivalent: false,
        lambda: None,
    };
    let (a, b) = (canonicalize(a), canonicalize(b));
    if !a.same_shape(&b) {
        return no;
    }
    let (va, vb) = (a.alpha_vector(), b.alpha_vector());
    if va.is_empty() {
        return ConformalVerdict {
            equivalent: true,
            lambda: Some(1.0),
        };
    }
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (na, nb) = (norm(&va), norm(&vb));
    let same = va
        .iter()
        .zip(&vb)
        .all(|(x, y)| (x / na - y / nb).abs() <= tol.equal);
    if same {
        ConformalVerdict {
            equivalent: true,
            lambda: Some(na / nb),
        }
    } else {
        no
    }
}

fn both_sides(
    first: (&LieAlgebra, &Metric),
    second: (&LieAlgebra, &Metric),
    seed: u64,
    tol: &Tolerances,
) -> Result<(BiInvariantCoordinates, BiInvariantCoordinates)> {
    let a = canonical_coordinates(first.0, first.1, seed, tol).map_err(|e| e.on_side(1))?;
    let b = canonical_coordinates(second.0, second.1, seed, tol).map_err(|e| e.on_side(2))?;
    Ok((a, b))
}

/// Whether `(g_1, M_1)` and `(g_2, M_2)` are isometric, decided by canonical
/// coordinates. Ideals are matched across algebras by fingerprint.
pub fn isometric(
    a1: &LieAlgebra,
    m1: &Metric,
    a2: &LieAlgebra,
    m2: &Metric,
    seed: u64,
    tol: &Tolerances,
) -> Result<bool> {
    let (a, b) = both_sides((a1, m1), (a2, m2), seed, tol)?;
    Ok(coordinates_isometric(&a, &b, tol))
}

/// Whether `M_1 = λ φ*(M_2)` for some isomorphism `φ` and `λ > 0`.
pub fn conformally_equivalent(
    a1: &LieAlgebra,
    m1: &Metric,
    a2: &LieAlgebra,
    m2: &Metric,
    seed: u64,
    tol: &Tolerances,
) -> Result<ConformalVerdict> {
    let (a, b) = both_sides((a1, m1), (a2, m2), seed, tol)?;
    Ok(coordinates_conformal(&a, &b, tol))
}
