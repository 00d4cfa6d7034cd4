mod common;

use biinvariant::{
    bi_chart, canonicalize, catalog, compact_type_check, conformally_equivalent, invariant_form_space,
    is_biinvariant_metric, isometric, kappa, metric_coordinates, random_biinvariant_metric, ricci_form,
    simple_ideals, Metric, SymmetricForm, Tolerances,
};
use common::*;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use proptest::sample::select;

fn names() -> Vec<&'static str> {
    catalog::NAMES.to_vec()
}

fn compact_names() -> Vec<&'static str> {
    catalog::NAMES.iter().copied().filter(|n| *n != "nonbi2").collect()
}

fn semisimple_names() -> Vec<&'static str> {
    compact_names()
        .into_iter()
        .filter(|n| !n.starts_with("abelian") && *n != "su2_plus_r2")
        .collect()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn jacobi_on_random_vectors(name in select(names()), seed in any::<u64>()) {
        let g = alg(name);
        let mut r = rng(seed);
        let (x, y, z) = (gaussian(&mut r, g.dim()), gaussian(&mut r, g.dim()), gaussian(&mut r, g.dim()));
        let br = |a: &DVector<f64>, b: &DVector<f64>| g.bracket(a, b).unwrap();
        let sum = br(&x, &br(&y, &z)) + br(&y, &br(&z, &x)) + br(&z, &br(&x, &y));
        prop_assert!(sum.amax() <= 1e-9);
    }

    #[test]
    fn killing_form_is_ad_invariant(name in select(names()), seed in any::<u64>()) {
        let g = alg(name);
        let b = g.killing_form();
        let mut r = rng(seed);
        let (x, y, z) = (gaussian(&mut r, g.dim()), gaussian(&mut r, g.dim()), gaussian(&mut r, g.dim()));
        let lhs = b.eval(&g.bracket(&x, &y).unwrap(), &z) + b.eval(&y, &g.bracket(&x, &z).unwrap());
        prop_assert!(lhs.abs() <= 1e-8);
    }

    #[test]
    fn scaling_equivariance(name in select(semisimple_names()), seed in 0u64..1000, lambda in select(vec![0.5, 2.0, 10.0])) {
        let tol = Tolerances::default();
        let g = alg(name);
        let d = simple_ideals(&g, 0, &tol).unwrap();
        let m = random_biinvariant_metric(&g, &d, seed, &tol).unwrap();
        let a = metric_coordinates(&g, &m, &d, &tol).unwrap().alpha_vector();
        let b = metric_coordinates(&g, &m.scaled(lambda), &d, &tol).unwrap().alpha_vector();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((y - lambda * x).abs() <= 1e-9 * y.abs());
        }
    }

    #[test]
    fn canonical_form_ignores_permutations(seed in any::<u64>(), alphas in prop::collection::vec(0.1f64..10.0, 3)) {
        let tol = Tolerances::default();
        let g = alg("su2_k(3)");
        let d = simple_ideals(&g, 0, &tol).unwrap();
        let m = biinvariant::compose_metric(&g, &d, &alphas, None, &tol).unwrap();
        let c = metric_coordinates(&g, &m, &d, &tol).unwrap();
        let mut shuffled = c.clone();
        let mut r = rng(seed);
        use rand::seq::SliceRandom;
        shuffled.classes[0].alphas.shuffle(&mut r);
        prop_assert_eq!(canonicalize(&shuffled), canonicalize(&c));
    }

    #[test]
    fn chart_inverse_recovers_sorted_alphas(name in select(semisimple_names()), seed in 0u64..1000) {
        let tol = Tolerances::default();
        let g = alg(name);
        let d = simple_ideals(&g, 0, &tol).unwrap();
        let m = random_biinvariant_metric(&g, &d, seed, &tol).unwrap();
        let c = canonicalize(&metric_coordinates(&g, &m, &d, &tol).unwrap());
        let back = bi_chart(&c).inverse();
        for (class, recovered) in c.classes.iter().zip(&back) {
            for (a, b) in class.alphas.iter().zip(recovered) {
                prop_assert!((a - b).abs() <= 1e-10 * a.abs());
            }
        }
    }

    #[test]
    fn kappa_is_non_negative(name in select(compact_names()), seed in 0u64..10_000) {
        let tol = Tolerances::default();
        let g = alg(name);
        let d = simple_ideals(&g, 0, &tol).unwrap();
        let m = random_biinvariant_metric(&g, &d, seed, &tol).unwrap();
        let mut r = rng(seed);
        let (x, y) = (gaussian(&mut r, g.dim()), gaussian(&mut r, g.dim()));
        prop_assert!(kappa(&g, &m, &x, &y, &tol).unwrap() >= -1e-12);
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn decision_coherence(name in select(semisimple_names()), s1 in 0u64..1000, s2 in 0u64..1000, permute in any::<bool>()) {
        let tol = Tolerances::default();
        let g = alg(name);
        let d = simple_ideals(&g, 0, &tol).unwrap();
        let m1 = random_biinvariant_metric(&g, &d, s1, &tol).unwrap();
        let m2 = if permute {
            let mut a = metric_coordinates(&g, &m1, &d, &tol).unwrap().alpha_vector();
            a.reverse();
            let sizes = d.class_sizes();
            // Reversal keeps per-class multisets only when there is a single class.
            if sizes.len() == 1 {
                biinvariant::compose_metric(&g, &d, &a, None, &tol).unwrap()
            } else {
                random_biinvariant_metric(&g, &d, s2, &tol).unwrap()
            }
        } else {
            random_biinvariant_metric(&g, &d, s2, &tol).unwrap()
        };
        let iso = isometric(&g, &m1, &g, &m2, 0, &tol).unwrap();
        let conf = conformally_equivalent(&g, &m1, &g, &m2, 0, &tol).unwrap();
        if iso {
            prop_assert!(conf.equivalent);
        }
        if conf.equivalent && (conf.lambda.unwrap() - 1.0).abs() <= 1e-10 {
            prop_assert!(iso);
        }
        let scaled = conformally_equivalent(&g, &m1.scaled(3.0), &g, &m1, 0, &tol).unwrap();
        prop_assert!(scaled.equivalent);
        prop_assert!((scaled.lambda.unwrap() - 3.0).abs() <= 1e-8);
    }

    #[test]
    fn basis_independence(name in select(compact_names()), seed in any::<u64>()) {
        let tol = Tolerances::default();
        let g = alg(name);
        let q = random_orthogonal(&mut rng(seed), g.dim());
        let h = g.change_basis(&q).unwrap();
        let (a, b) = (simple_ideals(&g, 0, &tol).unwrap(), simple_ideals(&h, seed, &tol).unwrap());
        prop_assert_eq!(a.center_dim(), b.center_dim());
        prop_assert_eq!(a.ideal_dims(), b.ideal_dims());
        let prints = |d: &biinvariant::Decomposition| d.ideals.iter().map(|i| i.fingerprint.clone()).collect::<Vec<_>>();
        prop_assert_eq!(prints(&a), prints(&b));
    }

    #[test]
    fn cone_completeness(name in select(compact_names()), seed in 0u64..1000) {
        let tol = Tolerances::default();
        let g = alg(name);
        let basis = invariant_form_space(&g, &tol);
        let n = g.dim();
        let span = DMatrix::from_fn(n * (n + 1) / 2, basis.len(), |r, c| basis[c].packed()[r]);
        let d = simple_ideals(&g, 0, &tol).unwrap();
        let m = random_biinvariant_metric(&g, &d, seed, &tol).unwrap();
        let target = DVector::from_column_slice(m.form().packed());
        let coeffs = span.clone().svd(true, true).solve(&target, 1e-12).unwrap();
        let residual = (&span * &coeffs - &target).amax() / target.amax();
        prop_assert!(residual <= 1e-8);

        let mut r = rng(seed);
        let w = gaussian(&mut r, basis.len());
        let mut packed = vec![0.0; n * (n + 1) / 2];
        for (f, c) in basis.iter().zip(w.iter()) {
            for (p, v) in packed.iter_mut().zip(f.packed()) {
                *p += c * v;
            }
        }
        if let Ok(candidate) = Metric::new(SymmetricForm::from_packed(n, packed).unwrap(), &tol) {
            prop_assert!(is_biinvariant_metric(&g, &candidate, &tol).unwrap());
        }
    }

    #[test]
    fn ricci_is_minus_quarter_killing(name in select(compact_names()), seed in 0u64..1000) {
        let tol = Tolerances::default();
        let g = alg(name);
        let d = simple_ideals(&g, 0, &tol).unwrap();
        let m = random_biinvariant_metric(&g, &d, seed, &tol).unwrap();
        let ric = ricci_form(&g, &m, &tol).unwrap().to_matrix();
        let oracle = killing_by_constants(&g) * -0.25;
        prop_assert!(max_abs(&(ric - oracle)) <= 1e-9);
    }
}

#[test]
fn compact_type_splits_center_and_derived() {
    let tol = Tolerances::default();
    for entry in compact_entries() {
        let g = &entry.algebra;
        let (z, s) = (g.center(&tol), g.derived_subalgebra(&tol));
        assert_eq!(z.dim() + s.dim(), g.dim(), "{}", entry.name);
        assert_eq!(z.intersection_dim(&s, &tol), 0, "{}", entry.name);
        assert!(compact_type_check(g, &tol).is_compact_type);
        if z.dim() == 0 {
            assert!(g.is_skew_adjoint_all(&neg_killing(g, 1.0), &tol).unwrap(), "{}", entry.name);
        }
    }
}

#[test]
fn ideals_carry_their_own_killing_form() {
    let tol = Tolerances::default();
    for entry in compact_entries() {
        let g = &entry.algebra;
        let d = simple_ideals(g, 0, &tol).unwrap();
        let b = g.killing_form().to_matrix();
        for ideal in &d.ideals {
            let p = ideal.subspace.basis();
            let restricted = p.transpose() * &b * p;
            assert!(restricted.symmetric_eigenvalues().max() < 0.0, "{}", entry.name);
            // Killing form of the ideal's own bracket table in basis p.
            let k = p.ncols();
            let ads: Vec<DMatrix<f64>> = (0..k)
                .map(|i| {
                    let x = p.column(i).into_owned();
                    DMatrix::from_fn(k, k, |r, c| {
                        let y = p.column(c).into_owned();
                        p.column(r).dot(&g.bracket(&x, &y).unwrap())
                    })
                })
                .collect();
            let own = DMatrix::from_fn(k, k, |i, j| (&ads[i] * &ads[j]).trace());
            assert!(max_abs(&(own - restricted)) <= 1e-8, "{}", entry.name);
        }
    }
}

#[test]
fn commutant_dimension_counts_ideals() {
    let tol = Tolerances::default();
    for name in semisimple_names() {
        let g = alg(name);
        let d = simple_ideals(&g, 0, &tol).unwrap();
        let commutant = biinvariant::decompose::commutant_basis(&g, &g.derived_subalgebra(&tol), &tol).unwrap();
        assert_eq!(commutant.len(), d.ideals.len(), "{name}");
    }
}

#[test]
fn decomposition_is_deterministic() {
    let tol = Tolerances::default();
    for name in ["so4", "su2_k(3)", "su2_k(2)_plus_su3"] {
        let g = alg(name);
        for seed in [0, 7, 12345] {
            assert_eq!(simple_ideals(&g, seed, &tol).unwrap(), simple_ideals(&g, seed, &tol).unwrap());
        }
    }
}
