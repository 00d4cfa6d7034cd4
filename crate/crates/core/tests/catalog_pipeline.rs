mod common;

use biinvariant::{
    catalog, compact_type_check, invariant_form_space, moduli_description, simple_ideals, Tolerances,
};
use common::*;

#[test]
fn entries_reproduce_expected_records() {
    let tol = Tolerances::default();
    for entry in catalog::all() {
        let g = &entry.algebra;
        let e = &entry.expected;
        assert!(g.validate_jacobi(0.0).is_empty(), "{}", entry.name);
        assert_eq!(compact_type_check(g, &tol).is_compact_type, e.compact_type, "{}", entry.name);
        assert_eq!(invariant_form_space(g, &tol).len(), e.invariant_form_dim, "{}", entry.name);
        if !e.compact_type {
            assert!(simple_ideals(g, 0, &tol).is_err());
            continue;
        }
        let d = simple_ideals(g, 0, &tol).unwrap();
        assert_eq!(d.center_dim(), e.center_dim, "{}", entry.name);
        assert_eq!(d.ideal_dims(), e.ideal_dims, "{}", entry.name);
        assert_eq!(d.class_sizes(), e.class_sizes, "{}", entry.name);
        let m = moduli_description(g, 0, &tol).unwrap();
        assert_eq!(m.bi.to_string(), e.bi_description, "{}", entry.name);
        assert_eq!(m.ebi.to_string(), e.ebi_description, "{}", entry.name);
    }
}

#[test]
fn killing_form_matches_structure_constant_sum() {
    for entry in catalog::all() {
        let b = entry.algebra.killing_form().to_matrix();
        let oracle = killing_by_constants(&entry.algebra);
        assert!(max_abs(&(b - oracle)) < 1e-12, "{}", entry.name);
    }
}

#[test]
fn invariant_form_dimension_matches_kronecker_oracle() {
    let tol = Tolerances::default();
    for entry in catalog::all() {
        assert_eq!(
            invariant_form_space(&entry.algebra, &tol).len(),
            invariant_form_dim_by_kronecker(&entry.algebra),
            "{}",
            entry.name
        );
    }
}

#[test]
fn so4_bases_agree() {
    let tol = Tolerances::default();
    let a = simple_ideals(&alg("so4"), 0, &tol).unwrap();
    let b = simple_ideals(&alg("so4_blocks"), 0, &tol).unwrap();
    let prints = |d: &biinvariant::Decomposition| d.ideals.iter().map(|i| i.fingerprint.clone()).collect::<Vec<_>>();
    assert_eq!(prints(&a), prints(&b));
    assert_eq!(
        moduli_description(&alg("so4"), 0, &tol).unwrap(),
        moduli_description(&alg("so4_blocks"), 0, &tol).unwrap()
    );
}

#[test]
fn rescaled_su2_shares_fingerprint() {
    let tol = Tolerances::default();
    let reference = simple_ideals(&alg("su2"), 0, &tol).unwrap().ideals[0].fingerprint.clone();
    for name in ["su2_lambda(0.5)", "su2_lambda(2)"] {
        let d = simple_ideals(&alg(name), 0, &tol).unwrap();
        assert_eq!(d.ideals[0].fingerprint, reference, "{name}");
    }
}

#[test]
fn summaries() {
    let tol = Tolerances::default();
    let s = |n: &str| moduli_description(&alg(n), 0, &tol).unwrap().summary();
    assert_eq!(s("su2"), "BI ≅ ℝ⁺; EBI = point");
    assert_eq!(s("so4"), "BI ≅ SP²(ℝ) ≅ ℝ⁺×ℝ; EBI ≅ ℝ⁺");
    assert_eq!(s("abelian3"), "BI = point; EBI = point");
}
