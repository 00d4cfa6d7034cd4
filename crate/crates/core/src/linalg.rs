//! Small dense helpers on top of nalgebra: nullspaces, ranges and
//! clustered symmetric eigendecompositions.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use std::ops::Range;

/// Orthonormal basis (as columns) of the nullspace of `a`.
///
/// A singular value counts as zero when it is at most `rel * sigma_max`.
pub fn nullspace(a: &DMatrix<f64>, rel: f64) -> DMatrix<f64> {
    let cols = a.ncols();
    if cols == 0 {
        return DMatrix::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return DMatrix::identity(cols, cols);
    }
    // Thin SVD drops right singular vectors when rows < cols; tall systems
    // are reduced to their square QR factor, which has the same nullspace.
    let work = if a.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (a.nrows(), cols)).copy_from(a);
        p
    } else if a.nrows() > cols {
        a.clone().qr().r()
    } else {
        a.clone()
    };
    let svd = work.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let sigma_max = svd.singular_values.max();
    let threshold = rel * sigma_max;
    let picked: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= threshold)
        .collect();
    let mut basis = DMatrix::zeros(cols, picked.len());
    for (c, &i) in picked.iter().enumerate() {
        basis.set_column(c, &v_t.row(i).transpose());
    }
    basis
}

/// Orthonormal basis (as columns) of the column space of `a`.
pub fn range(a: &DMatrix<f64>, rel: f64) -> DMatrix<f64> {
    let rows = a.nrows();
    if rows == 0 || a.ncols() == 0 {
        return DMatrix::zeros(rows, 0);
    }
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("u requested");
    let sigma_max = svd.singular_values.max();
    if sigma_max == 0.0 {
        return DMatrix::zeros(rows, 0);
    }
    let threshold = rel * sigma_max;
    let picked: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > threshold)
        .collect();
    let mut basis = DMatrix::zeros(rows, picked.len());
    for (c, &i) in picked.iter().enumerate() {
        basis.set_column(c, &u.column(i));
    }
    basis
}

/// Numerical rank of `a`.
pub fn rank(a: &DMatrix<f64>, rel: f64) -> usize {
    range(a, rel).ncols()
}

/// Eigendecomposition of a symmetric matrix with eigenvalues sorted ascending.
pub fn symmetric_eigen_sorted(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.nrows();
    if n == 0 {
        return (Vec::new(), DMatrix::zeros(0, 0));
    }
    let sym = (a + a.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (c, &i) in order.iter().enumerate() {
        vectors.set_column(c, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

/// Groups consecutive sorted values whose gap is below `rel_gap` times the
/// largest magnitude.
pub fn cluster_sorted(values: &[f64], rel_gap: f64) -> Vec<Range<usize>> {
    if values.is_empty() {
        return Vec::new();
    }
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let mut clusters = Vec::new();
    let mut start = 0;
    for i in 1..values.len() {
        if (values[i] - values[i - 1]) / scale >= rel_gap {
            clusters.push(start..i);
            start = i;
        }
    }
    clusters.push(start..values.len());
    clusters
}

/// Largest absolute entry.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

pub fn max_abs_vec(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

/// Columns of `a` selected by `cols`.
pub fn select_columns(a: &DMatrix<f64>, cols: Range<usize>) -> DMatrix<f64> {
    a.columns(cols.start, cols.len()).into_owned()
}

/// Horizontal concatenation.
pub fn hstack(blocks: &[&DMatrix<f64>]) -> DMatrix<f64> {
    let rows = blocks.first().map_or(0, |b| b.nrows());
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = DMatrix::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        out.columns_mut(at, b.ncols()).copy_from(b);
        at += b.ncols();
    }
    out
}
