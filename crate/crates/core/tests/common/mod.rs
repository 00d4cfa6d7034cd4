#![allow(dead_code)]

use biinvariant::{LieAlgebra, Metric, Tolerances};
use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn alg(name: &str) -> LieAlgebra {
    biinvariant::builtin(name).unwrap().algebra
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| StandardNormal.sample(rng))
}

/// Haar-ish orthogonal matrix from the QR factor of a Gaussian matrix.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Structure constant c_{ij}^k read from the bracket table.
pub fn structure_constants(g: &LieAlgebra) -> Vec<Vec<Vec<f64>>> {
    let n = g.dim();
    let mut c = vec![vec![vec![0.0; n]; n]; n];
    for (&(i, j), terms) in g.brackets() {
        for &(k, v) in terms {
            c[i][j][k] += v;
            c[j][i][k] -= v;
        }
    }
    c
}

/// B_ij = Σ_{k,l} c_{ik}^l c_{jl}^k.
pub fn killing_by_constants(g: &LieAlgebra) -> DMatrix<f64> {
    let c = structure_constants(g);
    let n = g.dim();
    DMatrix::from_fn(n, n, |i, j| {
        let mut s = 0.0;
        for k in 0..n {
            for l in 0..n {
                s += c[i][k][l] * c[j][l][k];
            }
        }
        s
    })
}

fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let (ar, ac, br, bc) = (a.nrows(), a.ncols(), b.nrows(), b.ncols());
    DMatrix::from_fn(ar * br, ac * bc, |r, c| a[(r / br, c / bc)] * b[(r % br, c % bc)])
}

/// Dimension of { S symmetric : S ad_i + ad_iᵀ S = 0 ∀ i } over all n² entries,
/// with symmetry imposed by the commutation matrix.
pub fn invariant_form_dim_by_kronecker(g: &LieAlgebra) -> usize {
    let n = g.dim();
    let id = DMatrix::<f64>::identity(n, n);
    let mut blocks = Vec::new();
    for a in g.ad_all() {
        blocks.push(kron(&a.transpose(), &id) + kron(&id, &a.transpose()));
    }
    let swap = DMatrix::from_fn(n * n, n * n, |r, c| {
        let (i, j) = (r % n, r / n);
        if c == i * n + j { 1.0 } else { 0.0 }
    });
    blocks.push(swap - DMatrix::identity(n * n, n * n));
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut system = DMatrix::zeros(rows.max(n * n), n * n);
    let mut at = 0;
    for b in &blocks {
        system.view_mut((at, 0), (b.nrows(), n * n)).copy_from(b);
        at += b.nrows();
    }
    let sv = system.singular_values();
    let max = sv.max();
    let rank = sv.iter().filter(|&&s| s > 1e-9 * max.max(1.0) * (n * n) as f64).count();
    n * n - rank
}

pub fn neg_killing(g: &LieAlgebra, scale: f64) -> Metric {
    Metric::new(g.killing_form().scaled(-scale), &Tolerances::default()).unwrap()
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |a, v| a.max(v.abs()))
}

/// Compact-type catalog entries.
pub fn compact_entries() -> Vec<biinvariant::CatalogEntry> {
    biinvariant::catalog::all()
        .into_iter()
        .filter(|e| e.expected.compact_type)
        .collect()
}
