//! Compact-type test and the splitting of a compact-type algebra into its
//! center and simple ideals, with isomorphism fingerprints for the ideals.
//!
//! Ideals are found as eigenspaces of a random element of the commutant of
//! the adjoint action on `[g, g]`. Every commutant element acts as a scalar
//! on each simple ideal, so a generic draw separates all of them.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::algebra::{LieAlgebra, LinearMap, Subspace};
use crate::error::{Error, Result};
use crate::linalg;
use crate::tolerance::Tolerances;

const MAX_ATTEMPTS: usize = 8;
const RANK_TRIALS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompactTypeReport {
    pub is_compact_type: bool,
    pub reason: String,
}

/// Decides whether `g = [g, g] ⊕ Z(g)` with the Killing form negative
/// definite on `[g, g]`.
pub fn compact_type_check(alg: &LieAlgebra, tol: &Tolerances) -> CompactTypeReport {
    let fail = |reason: String| CompactTypeReport {
        is_compact_type: false,
        reason,
    };
    if let Err(e) = alg.ensure_jacobi(tol.jacobi) {
        return fail(e.to_string());
    }
    let n = alg.dim();
    let center = alg.center(tol);
    let derived = alg.derived_subalgebra(tol);
    if center.dim() + derived.dim() != n {
        return fail(format!(
            "center (dim {}) and derived subalgebra (dim {}) do not span the algebra (dim {n})",
            center.dim(),
            derived.dim()
        ));
    }
    let overlap = center.intersection_dim(&derived, tol);
    if overlap != 0 {
        return fail(format!(
            "center and derived subalgebra intersect in dimension {overlap}"
        ));
    }
    if derived.dim() > 0 {
        let k = alg.killing_form().restrict(&derived);
        let eig = linalg::symmetric_eigen_sorted(&k).0;
        let max = *eig.last().unwrap();
        let scale = eig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if max > -tol.rank * scale * n as f64 || scale == 0.0 {
            return fail(format!(
                "Killing form is not negative definite on the derived subalgebra (largest eigenvalue {max:.3e})"
            ));
        }
    }
    CompactTypeReport {
        is_compact_type: true,
        reason: format!(
            "semisimple part of dimension {} plus center of dimension {}",
            derived.dim(),
            center.dim()
        ),
    }
}

/// `ad(x)` restricted to `s`, in the coordinates of its basis, for each basis vector.
fn restricted_ads(alg: &LieAlgebra, s: &Subspace, tol: &Tolerances) -> Result<Vec<DMatrix<f64>>> {
    let q = s.basis();
    let scale = alg.structure_scale().max(f64::MIN_POSITIVE);
    let outside = DMatrix::identity(alg.dim(), alg.dim()) - q * q.transpose();
    let mut out = Vec::with_capacity(s.dim());
    for i in 0..s.dim() {
        let image = alg.ad_unchecked(&s.vector(i)) * q;
        let leak = linalg::max_abs(&(&outside * &image));
        if leak > tol.check * scale {
            return Err(Error::NotBracketClosed(leak));
        }
        out.push(q.transpose() * image);
    }
    Ok(out)
}

/// Basis of the maps on `s` (in the coordinates of its basis) that commute
/// with `ad(x)|_s` for every `x` in `s`.
pub fn commutant_basis(alg: &LieAlgebra, s: &Subspace, tol: &Tolerances) -> Result<Vec<LinearMap>> {
    let d = s.dim();
    if d == 0 {
        return Ok(Vec::new());
    }
    let ads = restricted_ads(alg, s, tol)?;
    // Unknown M[p][r] sits at column p * d + r; one row per (i, p, q) of M A_i - A_i M.
    let mut system = DMatrix::zeros(d * d * d, d * d);
    for (i, a) in ads.iter().enumerate() {
        for p in 0..d {
            for q in 0..d {
                let row = (i * d + p) * d + q;
                for r in 0..d {
                    system[(row, p * d + r)] += a[(r, q)];
                    system[(row, r * d + q)] -= a[(p, r)];
                }
            }
        }
    }
    let null = linalg::nullspace(&system, tol.rank * alg.dim() as f64);
    Ok((0..null.ncols())
        .map(|c| LinearMap(DMatrix::from_row_slice(d, d, null.column(c).as_slice())))
        .collect())
}

/// Isomorphism invariant of a compact simple ideal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    /// Dimension of a Cartan subalgebra.
    pub rank: usize,
    /// Squared root lengths (both signs), normalized to minimum 1, rounded to 6 decimals, sorted.
    pub root_profile: Vec<f64>,
    pub root_count: usize,
}

impl Fingerprint {
    /// Canonical class order: dimension, then rank, then root profile.
    pub fn canonical_cmp(&self, other: &Fingerprint) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then(self.rank.cmp(&other.rank))
            .then_with(|| {
                for (a, b) in self.root_profile.iter().zip(&other.root_profile) {
                    match a.total_cmp(b) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                self.root_profile.len().cmp(&other.root_profile.len())
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ideal {
    pub subspace: Subspace,
    pub fingerprint: Fingerprint,
}

/// `g = Z(g) ⊕ a_1 ⊕ … ⊕ a_k` with ideals grouped into isomorphism classes.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub center: Subspace,
    pub ideals: Vec<Ideal>,
    /// Partition of ideal indices by fingerprint, in canonical class order.
    pub classes: Vec<Vec<usize>>,
}

impl Decomposition {
    pub fn center_dim(&self) -> usize {
        self.center.dim()
    }

    pub fn ideal_dims(&self) -> Vec<usize> {
        self.ideals.iter().map(|i| i.subspace.dim()).collect()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.center.ambient_dim()
    }

    /// Basis matrix `[center | a_1 | … | a_k]`.
    pub fn frame(&self) -> DMatrix<f64> {
        let mut blocks: Vec<&DMatrix<f64>> = vec![self.center.basis()];
        blocks.extend(self.ideals.iter().map(|i| i.subspace.basis()));
        linalg::hstack(&blocks)
    }

    /// Projections onto the center and onto each ideal along the other summands.
    /// The first entry is the center projection.
    pub fn projections(&self) -> Vec<DMatrix<f64>> {
        let frame = self.frame();
        let inv = frame.clone().try_inverse().expect("summands span the algebra");
        let mut out = Vec::new();
        let mut at = 0;
        let mut push = |s: &Subspace| {
            let d = s.dim();
            out.push(s.basis() * inv.rows(at, d));
            at += d;
        };
        push(&self.center);
        for ideal in &self.ideals {
            push(&ideal.subspace);
        }
        out
    }

    /// Checks dimensions, bracket closure, commuting of distinct ideals and
    /// trivial intersection with the center.
    pub fn verify(&self, alg: &LieAlgebra, tol: &Tolerances) -> Result<()> {
        let n = alg.dim();
        let total: usize = self.center_dim() + self.ideal_dims().iter().sum::<usize>();
        if total != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: total,
            });
        }
        let scale = alg.structure_scale().max(f64::MIN_POSITIVE);
        for (a, ideal) in self.ideals.iter().enumerate() {
            restricted_ads(alg, &ideal.subspace, tol)?;
            if ideal.subspace.intersection_dim(&self.center, tol) != 0 {
                return Err(Error::DecompositionFailed {
                    attempts: 0,
                    reason: format!("ideal {a} meets the center"),
                });
            }
            for other in &self.ideals[a + 1..] {
                for i in 0..ideal.subspace.dim() {
                    for j in 0..other.subspace.dim() {
                        let r = alg
                            .bracket_unchecked(&ideal.subspace.vector(i), &other.subspace.vector(j))
                            .norm();
                        if r > tol.check * scale {
                            return Err(Error::DecompositionFailed {
                                attempts: 0,
                                reason: format!("ideals do not commute (residual {r:.3e})"),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn normal_vector(rng: &mut ChaCha8Rng, len: usize) -> DVector<f64> {
    DVector::from_fn(len, |_, _| StandardNormal.sample(rng))
}

fn ideal_seed(seed: u64, index: usize) -> u64 {
    seed ^ ((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Splits a compact-type algebra into its center and simple ideals.
///
/// Deterministic for a given `seed`. Classes and ideal order follow the
/// canonical fingerprint order.
pub fn simple_ideals(alg: &LieAlgebra, seed: u64, tol: &Tolerances) -> Result<Decomposition> {
    let report = compact_type_check(alg, tol);
    if !report.is_compact_type {
        return Err(Error::NotCompactType(report.reason));
    }
    let center = alg.center(tol);
    let derived = alg.derived_subalgebra(tol);
    if derived.dim() == 0 {
        return Ok(Decomposition {
            center,
            ideals: Vec::new(),
            classes: Vec::new(),
        });
    }

    let commutant = commutant_basis(alg, &derived, tol)?;
    let k = commutant.len();
    let subspaces = if k == 1 {
        vec![derived.clone()]
    } else {
        split_by_commutant(alg, &center, &derived, &commutant, seed, tol)?
    };

    let mut ideals = Vec::with_capacity(subspaces.len());
    for (index, subspace) in subspaces.into_iter().enumerate() {
        let fingerprint = root_fingerprint(alg, &subspace, ideal_seed(seed, index), tol)?;
        ideals.push(Ideal {
            subspace,
            fingerprint,
        });
    }
    let decomposition = group_by_isomorphism(Decomposition {
        center,
        ideals,
        classes: Vec::new(),
    });
    decomposition.verify(alg, tol)?;
    Ok(decomposition)
}

fn split_by_commutant(
    alg: &LieAlgebra,
    center: &Subspace,
    derived: &Subspace,
    commutant: &[LinearMap],
    seed: u64,
    tol: &Tolerances,
) -> Result<Vec<Subspace>> {
    let k = commutant.len();
    let q = derived.basis();
    // Whiten with -B so that commutant elements become symmetric.
    let neg_killing = alg.killing_form().restrict(derived) * -1.0;
    let chol = neg_killing.cholesky().ok_or_else(|| {
        Error::NotCompactType("Killing form is not negative definite on [g, g]".into())
    })?;
    let l = chol.l();
    let l_inv_t = l
        .transpose()
        .try_inverse()
        .expect("cholesky factor is invertible");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_reason = String::new();
    for _ in 0..MAX_ATTEMPTS {
        let coeffs = normal_vector(&mut rng, k);
        let mut c = DMatrix::zeros(derived.dim(), derived.dim());
        for (g, m) in coeffs.iter().zip(commutant) {
            c += m.matrix() * *g;
        }
        let whitened = l.transpose() * c * &l_inv_t;
        let (values, vectors) = linalg::symmetric_eigen_sorted(&whitened);
        let clusters = linalg::cluster_sorted(&values, tol.cluster_gap);
        if clusters.len() != k {
            last_reason = format!("{} eigenvalue clusters for commutant dimension {k}", clusters.len());
            continue;
        }
        let subspaces: Vec<Subspace> = clusters
            .into_iter()
            .map(|cl| {
                let y = linalg::select_columns(&vectors, cl);
                Subspace::span(&(q * &l_inv_t * y), tol)
            })
            .collect();
        let trial = Decomposition {
            center: center.clone(),
            ideals: subspaces
                .iter()
                .map(|s| Ideal {
                    subspace: s.clone(),
                    fingerprint: Fingerprint {
                        dim: s.dim(),
                        rank: 0,
                        root_profile: Vec::new(),
                        root_count: 0,
                    },
                })
                .collect(),
            classes: Vec::new(),
        };
        match trial.verify(alg, tol) {
            Ok(()) => return Ok(subspaces),
            Err(e) => last_reason = e.to_string(),
        }
    }
    Err(Error::DecompositionFailed {
        attempts: MAX_ATTEMPTS,
        reason: last_reason,
    })
}

/// An ideal in coordinates where `-B` is the identity: the frame `r` and the
/// skew matrices of `ad(r_j)` restricted to the ideal.
struct IdealFrame {
    ads: Vec<DMatrix<f64>>,
}

impl IdealFrame {
    fn new(alg: &LieAlgebra, ideal: &Subspace) -> Result<Self> {
        let p = ideal.basis();
        let killing = alg.killing_form().to_matrix();
        let neg = -(p.transpose() * &killing * p);
        let chol = neg.cholesky().ok_or_else(|| {
            Error::NotCompactType("Killing form is not negative definite on the ideal".into())
        })?;
        let r = p * chol.l().transpose().try_inverse().expect("invertible factor");
        let ads = (0..r.ncols())
            .map(|j| {
                let ad = alg.ad_unchecked(&r.column(j).into_owned());
                -(r.transpose() * &killing * ad * &r)
            })
            .collect();
        Ok(IdealFrame { ads })
    }

    fn dim(&self) -> usize {
        self.ads.len()
    }

    fn ad(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for (c, a) in x.iter().zip(&self.ads) {
            m += a * *c;
        }
        m
    }

    /// Smallest centralizer over a few random elements; returns its basis.
    fn cartan(&self, rng: &mut ChaCha8Rng, tol: &Tolerances, n: usize) -> DMatrix<f64> {
        let mut best: Option<DMatrix<f64>> = None;
        for _ in 0..RANK_TRIALS {
            let x = normal_vector(rng, self.dim());
            let h = linalg::nullspace(&self.ad(&x), tol.rank * n as f64);
            if best.as_ref().is_none_or(|b| h.ncols() < b.ncols()) {
                best = Some(h);
            }
        }
        best.expect("at least one trial")
    }
}

/// Rank of a simple ideal: the smallest centralizer dimension of random elements.
pub fn cartan_rank(alg: &LieAlgebra, ideal: &Subspace, seed: u64, tol: &Tolerances) -> usize {
    let p = ideal.basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..RANK_TRIALS)
        .map(|_| {
            let x = p * normal_vector(&mut rng, ideal.dim());
            let centralizer = alg.ad_unchecked(&x) * p;
            linalg::nullspace(&centralizer, tol.rank * alg.dim() as f64).ncols()
        })
        .min()
        .unwrap_or(0)
}

/// Fingerprint of a compact simple ideal from its root system.
///
/// Finds a Cartan subalgebra `t`, splits the `-B`-orthogonal complement into
/// 2-planes rotated by a generic element of `t`, reads each root as the
/// rotation rates of a `-B`-orthonormal basis of `t`, and records squared
/// root lengths in the metric dual to `-B|_t`.
pub fn root_fingerprint(
    alg: &LieAlgebra,
    ideal: &Subspace,
    seed: u64,
    tol: &Tolerances,
) -> Result<Fingerprint> {
    let d = ideal.dim();
    if d == 0 {
        return Err(Error::DecompositionFailed {
            attempts: 0,
            reason: "empty ideal".into(),
        });
    }
    let frame = IdealFrame::new(alg, ideal)?;
    let n = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cartan = frame.cartan(&mut rng, tol, n);
    let rank = cartan.ncols();
    let root_count = d - rank;
    if rank == 0 || !root_count.is_multiple_of(2) {
        return Err(Error::DecompositionFailed {
            attempts: 0,
            reason: format!("centralizer of dimension {rank} in an ideal of dimension {d}"),
        });
    }
    let cartan_ads: Vec<DMatrix<f64>> = (0..rank)
        .map(|a| frame.ad(&cartan.column(a).into_owned()))
        .collect();
    let complement = linalg::nullspace(&cartan.transpose(), tol.rank * n as f64);
    let scale = frame.ads.iter().map(linalg::max_abs).fold(0.0, f64::max);

    let mut last_reason = String::new();
    'attempt: for _ in 0..MAX_ATTEMPTS {
        let g = normal_vector(&mut rng, rank);
        let mut generic = DMatrix::zeros(d, d);
        for (c, a) in g.iter().zip(&cartan_ads) {
            generic += a * *c;
        }
        let t = complement.transpose() * &generic * &complement;
        let (values, vectors) = linalg::symmetric_eigen_sorted(&(t.transpose() * &t));
        let clusters = linalg::cluster_sorted(&values, tol.cluster_gap);
        if clusters.iter().any(|c| c.len() != 2) || values.first().is_some_and(|&v| v <= tol.cluster_gap * values[values.len() - 1]) {
            last_reason = "root planes of a generic torus element did not separate".into();
            continue;
        }
        let mut lengths = Vec::with_capacity(root_count);
        for cl in clusters {
            let plane = &complement * linalg::select_columns(&vectors, cl);
            let u = plane.column(0).into_owned();
            let w = plane.column(1).into_owned();
            let rate = w.dot(&(&generic * &u));
            if rate.abs() <= tol.check * scale {
                last_reason = "degenerate root plane".into();
                continue 'attempt;
            }
            let orientation = rate.signum();
            let outside = DMatrix::identity(d, d) - &plane * plane.transpose();
            let mut squared = 0.0;
            for a in &cartan_ads {
                if linalg::max_abs(&(&outside * a * &plane)) > 1e-6 * scale {
                    last_reason = "root plane not invariant under the Cartan subalgebra".into();
                    continue 'attempt;
                }
                let alpha = orientation * w.dot(&(a * &u));
                squared += alpha * alpha;
            }
            lengths.push(squared);
            lengths.push(squared);
        }
        let min = lengths.iter().copied().fold(f64::INFINITY, f64::min);
        let mut root_profile: Vec<f64> = lengths
            .into_iter()
            .map(|l| (l / min * 1e6).round() / 1e6)
            .collect();
        root_profile.sort_by(f64::total_cmp);
        return Ok(Fingerprint {
            dim: d,
            rank,
            root_profile,
            root_count,
        });
    }
    Err(Error::DecompositionFailed {
        attempts: MAX_ATTEMPTS,
        reason: last_reason,
    })
}

/// Orders ideals canonically and partitions them into fingerprint classes.
pub fn group_by_isomorphism(mut d: Decomposition) -> Decomposition {
    d.ideals
        .sort_by(|a, b| a.fingerprint.canonical_cmp(&b.fingerprint));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, ideal) in d.ideals.iter().enumerate() {
        match classes.last_mut() {
            Some(last) if d.ideals[last[0]].fingerprint == ideal.fingerprint => last.push(i),
            _ => classes.push(vec![i]),
        }
    }
    d.classes = classes;
    d
}
