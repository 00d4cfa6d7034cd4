//! Built-in algebras with known ground truth.
//!
//! su(3) and so(n) structure constants are computed from matrix bases rather
//! than typed in; the chosen bases have integer structure constants.

use nalgebra::{DMatrix, DVector};

use crate::algebra::{LieAlgebra, Terms};
use crate::error::{Error, Result};

/// Ground truth for a catalog entry. Ideal dimensions are listed in the
/// canonical class order (classes sorted by dimension, rank, root profile).
#[derive(Debug, Clone, PartialEq)]
pub struct Expected {
    pub compact_type: bool,
    pub center_dim: usize,
    pub ideal_dims: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub invariant_form_dim: usize,
    pub bi_description: String,
    pub ebi_description: String,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    pub expected: Expected,
}

/// Names accepted by [`builtin`] and shown by `catalog list`.
pub const NAMES: &[&str] = &[
    "abelian1",
    "abelian2",
    "abelian3",
    "nonbi2",
    "su2",
    "su2_lambda(0.5)",
    "su2_lambda(2)",
    "so4",
    "so4_blocks",
    "su2_k(2)",
    "su2_k(3)",
    "su2_plus_r2",
    "su3",
    "so5",
    "su2_plus_su3",
    "su2_k(2)_plus_su3",
];

/// Every entry of [`NAMES`].
pub fn all() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| builtin(n).expect("listed entry")).collect()
}

const NO_METRIC: &str = "none";

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// `ℝ⁺×…×ℝ⁺` with `count` factors, or "point".
fn half_lines(count: usize) -> String {
    if count == 0 {
        "point".into()
    } else {
        vec!["ℝ⁺"; count].join("×")
    }
}

/// Ground truth for k copies of one simple factor of dimension `d`.
fn repeated_simple(k: usize, d: usize) -> Expected {
    let bi = match k {
        1 => "ℝ⁺".to_string(),
        _ => format!("SP{}(ℝ) ≅ {}×ℝ", superscript(k), half_lines(k - 1)),
    };
    Expected {
        compact_type: true,
        center_dim: 0,
        ideal_dims: vec![d; k],
        class_sizes: vec![k],
        invariant_form_dim: k,
        bi_description: bi,
        ebi_description: half_lines(k - 1),
    }
}

fn abelian_expected(n: usize) -> Expected {
    Expected {
        compact_type: true,
        center_dim: n,
        ideal_dims: vec![],
        class_sizes: vec![],
        invariant_form_dim: n * (n + 1) / 2,
        bi_description: "point".into(),
        ebi_description: "point".into(),
    }
}

/// Looks up a catalog entry by name.
///
/// Besides the fixed [`NAMES`], the parametric forms `abelian(n)`,
/// `su2_lambda(x)` and `su2_k(k)` are accepted for any valid parameter.
pub fn builtin(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownCatalogEntry(name.to_string());
    let param = |prefix: &str| -> Option<&str> {
        name.strip_prefix(prefix)
            .and_then(|rest| rest.strip_prefix('('))
            .and_then(|rest| rest.strip_suffix(')'))
    };

    let (algebra, expected) = if let Some(n) = name
        .strip_prefix("abelian")
        .and_then(|r| r.parse::<usize>().ok())
        .or_else(|| param("abelian").and_then(|p| p.parse().ok()))
    {
        if n == 0 {
            return Err(unknown());
        }
        // Abelian: every metric is bi-invariant and both moduli spaces are a point.
        (LieAlgebra::abelian(name, n)?, abelian_expected(n))
    } else if let Some(p) = param("su2_lambda") {
        let lambda: f64 = p.parse().map_err(|_| unknown())?;
        if lambda <= 0.0 || !lambda.is_finite() {
            return Err(unknown());
        }
        // Rescaled su(2) is isomorphic to su(2).
        (su2_lambda(name, lambda)?, repeated_simple(1, 3))
    } else if name.starts_with("su2_k(") && !name.contains("_plus_") {
        let k: usize = param("su2_k").and_then(|p| p.parse().ok()).ok_or_else(unknown)?;
        if k == 0 {
            return Err(unknown());
        }
        // k isomorphic simple summands: BI = SP^k(R).
        (direct_sum(name, &vec![su2()?; k])?, repeated_simple(k, 3))
    } else {
        match name {
            "nonbi2" => (
                // [e1, e2] = e2 admits no bi-invariant metric.
                // Its invariant symmetric forms are multiples of e1* ⊗ e1*.
                LieAlgebra::new(name, 2, vec![((0, 1), vec![(1, 1.0)])])?,
                Expected {
                    compact_type: false,
                    center_dim: 0,
                    ideal_dims: vec![],
                    class_sizes: vec![],
                    invariant_form_dim: 1,
                    bi_description: NO_METRIC.into(),
                    ebi_description: NO_METRIC.into(),
                },
            ),
            // su(2): BI = R⁺, EBI a point, invariant forms unique up to scale.
            "su2" => (su2()?, repeated_simple(1, 3)),
            // so(4) ≅ su(2) ⊕ su(2): BI ≅ R⁺×R, EBI ≅ R⁺.
            "so4" => (so_n(name, 4)?, repeated_simple(2, 3)),
            "so4_blocks" => (direct_sum(name, &[su2()?, su2()?])?, repeated_simple(2, 3)),
            // Center R² plus one simple ideal: 1 + 3 invariant forms.
            "su2_plus_r2" => (
                direct_sum(name, &[su2()?, LieAlgebra::abelian("r2", 2)?])?,
                Expected {
                    center_dim: 2,
                    invariant_form_dim: 4,
                    ..repeated_simple(1, 3)
                },
            ),
            // Simple of dimension 8 and 10.
            "su3" => (su3(name)?, repeated_simple(1, 8)),
            "so5" => (so_n(name, 5)?, repeated_simple(1, 10)),
            // Two non-isomorphic simple ideals.
            "su2_plus_su3" => (
                direct_sum(name, &[su2()?, su3("su3")?])?,
                Expected {
                    compact_type: true,
                    center_dim: 0,
                    ideal_dims: vec![3, 8],
                    class_sizes: vec![1, 1],
                    invariant_form_dim: 2,
                    bi_description: "ℝ⁺×ℝ⁺".into(),
                    ebi_description: "ℝ⁺".into(),
                },
            ),
            // One repeated class and one singleton class.
            "su2_k(2)_plus_su3" => (
                direct_sum(name, &[su2()?, su2()?, su3("su3")?])?,
                Expected {
                    compact_type: true,
                    center_dim: 0,
                    ideal_dims: vec![3, 3, 8],
                    class_sizes: vec![2, 1],
                    invariant_form_dim: 3,
                    bi_description: "ℝ⁺×SP²(ℝ) ≅ ℝ⁺×ℝ⁺×ℝ".into(),
                    ebi_description: "ℝ⁺×ℝ⁺".into(),
                },
            ),
            _ => return Err(unknown()),
        }
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        algebra: algebra.with_name(name),
        expected,
    })
}

/// `[e1, e2] = e3`, `[e2, e3] = e1`, `[e3, e1] = e2`.
fn su2() -> Result<LieAlgebra> {
    su2_lambda("su2", 1.0)
}

/// `[e1, e2] = λe3`, `[e2, e3] = λe1`, `[e3, e1] = λe2`.
fn su2_lambda(name: &str, lambda: f64) -> Result<LieAlgebra> {
    LieAlgebra::new(
        name,
        3,
        vec![
            ((0, 1), vec![(2, lambda)]),
            ((1, 2), vec![(0, lambda)]),
            ((0, 2), vec![(1, -lambda)]),
        ],
    )
}

/// Direct sum with block-ordered bases.
pub fn direct_sum(name: &str, parts: &[LieAlgebra]) -> Result<LieAlgebra> {
    let dim = parts.iter().map(|p| p.dim()).sum();
    let mut entries: Vec<((usize, usize), Terms)> = Vec::new();
    let mut offset = 0;
    for p in parts {
        for (&(i, j), terms) in p.brackets() {
            let shifted = terms.iter().map(|&(k, c)| (k + offset, c)).collect();
            entries.push(((i + offset, j + offset), shifted));
        }
        offset += p.dim();
    }
    LieAlgebra::new(name, dim, entries)
}

/// A complex matrix as (real part, imaginary part).
type CMatrix = (DMatrix<f64>, DMatrix<f64>);

fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mul = |x: &CMatrix, y: &CMatrix| -> CMatrix {
        (&x.0 * &y.0 - &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0)
    };
    let ab = mul(a, b);
    let ba = mul(b, a);
    (ab.0 - ba.0, ab.1 - ba.1)
}

fn flatten(m: &CMatrix) -> DVector<f64> {
    DVector::from_iterator(
        2 * m.0.len(),
        m.0.iter().chain(m.1.iter()).copied(),
    )
}

/// Structure constants of the span of a matrix basis closed under commutators.
/// Coefficients are snapped to integers; every basis used here has integer constants.
fn from_matrix_basis(name: &str, basis: &[CMatrix]) -> Result<LieAlgebra> {
    let d = basis.len();
    let rows = 2 * basis[0].0.len();
    let mut frame = DMatrix::zeros(rows, d);
    for (c, b) in basis.iter().enumerate() {
        frame.set_column(c, &flatten(b));
    }
    let svd = frame.clone().svd(true, true);
    let mut failure = None;
    let alg = LieAlgebra::from_bracket_fn(name, d, |i, j| {
        let target = flatten(&commutator(&basis[i], &basis[j]));
        let coeffs = svd.solve(&target, 1e-12).expect("svd solve");
        let snapped = coeffs.map(|c| c.round());
        if (&frame * &snapped - &target).norm() > 1e-9 {
            failure = Some((i, j));
        }
        snapped
    })?;
    match failure {
        Some((i, j)) => Err(Error::InvalidAlgebra(format!(
            "matrix basis for {name} is not closed with integer constants at ({i}, {j})"
        ))),
        None => Ok(alg),
    }
}

fn unit(n: usize, i: usize, j: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    m[(i, j)] = 1.0;
    m
}

/// so(n) in the basis `L_ij = E_ij - E_ji`, `i < j`, lexicographic order.
fn so_n(name: &str, n: usize) -> Result<LieAlgebra> {
    let mut basis = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            basis.push((unit(n, i, j) - unit(n, j, i), DMatrix::zeros(n, n)));
        }
    }
    from_matrix_basis(name, &basis)
}

/// su(3) in the compact basis `i·diag(1,-1,0)`, `i·diag(0,1,-1)`, and for
/// each `j < k`: `E_jk - E_kj`, `i(E_jk + E_kj)`.
fn su3(name: &str) -> Result<LieAlgebra> {
    let n = 3;
    let zero = DMatrix::zeros(n, n);
    let diag = |a: f64, b: f64, c: f64| DMatrix::from_diagonal(&DVector::from_column_slice(&[a, b, c]));
    let mut basis = vec![
        (zero.clone(), diag(1.0, -1.0, 0.0)),
        (zero.clone(), diag(0.0, 1.0, -1.0)),
    ];
    for j in 0..n {
        for k in (j + 1)..n {
            basis.push((unit(n, j, k) - unit(n, k, j), zero.clone()));
            basis.push((zero.clone(), unit(n, j, k) + unit(n, k, j)));
        }
    }
    from_matrix_basis(name, &basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_satisfies_jacobi_exactly() {
        for e in all() {
            assert!(e.algebra.validate_jacobi(0.0).is_empty(), "{}", e.name);
            for (_, terms) in e.algebra.brackets() {
                for &(_, c) in terms {
                    if !e.name.starts_with("su2_lambda") {
                        assert_eq!(c, c.round(), "{}", e.name);
                    }
                }
            }
        }
    }

    #[test]
    fn dimensions() {
        let dims: Vec<(String, usize)> = all().into_iter().map(|e| (e.name, e.algebra.dim())).collect();
        let get = |n: &str| dims.iter().find(|(m, _)| m == n).unwrap().1;
        assert_eq!(get("so4"), 6);
        assert_eq!(get("su3"), 8);
        assert_eq!(get("so5"), 10);
        assert_eq!(get("su2_plus_su3"), 11);
        assert_eq!(get("su2_k(3)"), 9);
    }

    #[test]
    fn su3_has_integer_cartan_brackets() {
        let g = builtin("su3").unwrap().algebra;
        // [E01 - E10, i(E01 + E10)] = 2 i diag(1, -1, 0)
        let b = g.bracket_basis(2, 3);
        assert_eq!(b.as_slice(), &[2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn lookup() {
        assert_eq!(builtin("su2").unwrap().expected.invariant_form_dim, 1);
        assert_eq!(builtin("so4").unwrap().expected.class_sizes, vec![2]);
        assert!(!builtin("nonbi2").unwrap().expected.compact_type);
        assert_eq!(builtin("abelian(5)").unwrap().algebra.dim(), 5);
        assert_eq!(builtin("su2_k(4)").unwrap().expected.bi_description, "SP⁴(ℝ) ≅ ℝ⁺×ℝ⁺×ℝ⁺×ℝ");
        assert_eq!(builtin("su2_lambda(3)").unwrap().algebra.bracket_basis(0, 1)[2], 3.0);
        for bad in ["g2", "su2_k(0)", "su2_lambda(-1)", "abelian0", "su2_k(x)"] {
            assert!(matches!(builtin(bad), Err(Error::UnknownCatalogEntry(_))), "{bad}");
        }
    }
}
