//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use biinvariant::{
    canonicalize, compose_metric, conformally_equivalent, invariant_form_space, isometric, kappa,
    metric_coordinates, moduli_description, positivity_probe, random_biinvariant_metric, ricci_form,
    simple_ideals, Decomposition, Tolerances,
};
use common::*;
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn so4_shape(d: &Decomposition) -> (usize, Vec<usize>, Vec<usize>) {
    (d.center_dim(), d.ideal_dims(), d.class_sizes())
}

fn splitting() -> Outcome {
    let tol = Tolerances::default();
    let d = simple_ideals(&alg("so4"), 0, &tol).map_err(|e| e.to_string())?;
    let shape = so4_shape(&d);
    ensure(shape == (0, vec![3, 3], vec![2]), format!("got {shape:?}"))?;
    Ok(format!("center 0, ideals {:?}, classes {:?}", shape.1, shape.2))
}

fn dimension_law() -> Outcome {
    let tol = Tolerances::default();
    let mut seen = Vec::new();
    for entry in compact_entries() {
        let g = &entry.algebra;
        let d = simple_ideals(g, 0, &tol).map_err(|e| e.to_string())?;
        let m = d.center_dim();
        let law = d.ideals.len() + m * (m + 1) / 2;
        let found = invariant_form_space(g, &tol).len();
        let oracle = invariant_form_dim_by_kronecker(g);
        ensure(
            found == law && found == oracle,
            format!("{}: solver {found}, law {law}, oracle {oracle}", entry.name),
        )?;
        seen.push(format!("{}→{found}", entry.name));
    }
    for (name, dim) in [("su2", 1), ("so4", 2), ("su2_k(3)", 3), ("su2_plus_r2", 4), ("su2_plus_su3", 2)] {
        let found = invariant_form_space(&alg(name), &tol).len();
        ensure(found == dim, format!("{name}: {found} != {dim}"))?;
    }
    Ok(seen.join(", "))
}

fn moduli() -> Outcome {
    let tol = Tolerances::default();
    let su2 = moduli_description(&alg("su2"), 0, &tol).map_err(|e| e.to_string())?;
    let so4 = moduli_description(&alg("so4"), 0, &tol).map_err(|e| e.to_string())?;
    ensure(su2.bi.to_string() == "ℝ⁺" && su2.ebi.is_point(), format!("su2: {}", su2.summary()))?;
    ensure(
        so4.bi.homeomorphism_type() == "ℝ⁺×ℝ" && so4.ebi.to_string() == "ℝ⁺",
        format!("so4: {}", so4.summary()),
    )?;
    ensure(so4.summary() == "BI ≅ SP²(ℝ) ≅ ℝ⁺×ℝ; EBI ≅ ℝ⁺", so4.summary())?;
    Ok(format!("su2: {}; so4: {}", su2.summary(), so4.summary()))
}

fn symmetric_group() -> Outcome {
    let tol = Tolerances::default();
    let g = alg("su2_k(3)");
    let d = simple_ideals(&g, 0, &tol).map_err(|e| e.to_string())?;
    let mut r = rng(4);
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut iso_checked = 0;
    for trial in 0..200 {
        let alpha: Vec<f64> = (0..3).map(|_| 10f64.powf(r.random_range(-1.0..1.0))).collect();
        let m = compose_metric(&g, &d, &alpha, None, &tol).map_err(|e| e.to_string())?;
        let c = metric_coordinates(&g, &m, &d, &tol).map_err(|e| e.to_string())?;
        let mut permuted = c.clone();
        permuted.classes[0].alphas.shuffle(&mut r);
        ensure(canonicalize(&permuted) == canonicalize(&c), format!("trial {trial}: canonical forms differ"))?;

        let beta: Vec<f64> = if trial % 2 == 0 {
            let p = perms[r.random_range(0..6)];
            p.iter().map(|&i| alpha[i]).collect()
        } else if trial % 4 == 1 {
            vec![alpha[0], alpha[1], alpha[2] * 1.5]
        } else {
            (0..3).map(|_| 10f64.powf(r.random_range(-1.0..1.0))).collect()
        };
        let m2 = compose_metric(&g, &d, &beta, None, &tol).map_err(|e| e.to_string())?;
        let verdict = isometric(&g, &m, &g, &m2, trial, &tol).map_err(|e| e.to_string())?;
        let oracle = perms.iter().any(|p| {
            p.iter()
                .zip(&beta)
                .all(|(&i, b)| (alpha[i] - b).abs() <= 1e-9 * b.abs())
        });
        ensure(verdict == oracle, format!("trial {trial}: verdict {verdict}, oracle {oracle}"))?;
        iso_checked += 1;
    }
    Ok(format!("200 canonical checks, {iso_checked} isometry verdicts match brute force"))
}

fn conformal() -> Outcome {
    let tol = Tolerances::default();
    let g = alg("so4");
    let d = simple_ideals(&g, 0, &tol).map_err(|e| e.to_string())?;
    let metric = |a: &[f64]| compose_metric(&g, &d, a, None, &tol).map_err(|e| e.to_string());
    let (m12, m24, m13) = (metric(&[1.0, 2.0])?, metric(&[2.0, 4.0])?, metric(&[1.0, 3.0])?);
    let v = conformally_equivalent(&g, &m12, &g, &m24, 0, &tol).map_err(|e| e.to_string())?;
    ensure(v.equivalent, "(1,2) vs (2,4) not equivalent")?;
    let lambda = v.lambda.ok_or("missing λ")?;
    let a1 = metric_coordinates(&g, &m12, &d, &tol).map_err(|e| e.to_string())?;
    let a2 = metric_coordinates(&g, &m24.scaled(lambda), &d, &tol).map_err(|e| e.to_string())?;
    let residual = canonicalize(&a1)
        .alpha_vector()
        .iter()
        .zip(canonicalize(&a2).alpha_vector())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    ensure(residual <= 1e-8, format!("λ residual {residual:e}"))?;
    let w = conformally_equivalent(&g, &m12, &g, &m13, 0, &tol).map_err(|e| e.to_string())?;
    ensure(!w.equivalent, "(1,2) vs (1,3) reported equivalent")?;
    Ok(format!("λ = {lambda:.6}, residual {residual:.1e}; (1,2) vs (1,3) not equivalent"))
}

fn nonnegativity() -> Outcome {
    let tol = Tolerances::default();
    let entries: Vec<_> = compact_entries()
        .into_iter()
        .map(|e| {
            let d = simple_ideals(&e.algebra, 0, &tol).unwrap();
            (e, d)
        })
        .collect();
    let mut r = rng(6);
    let mut min = f64::INFINITY;
    for draw in 0..10_000u64 {
        let (entry, d) = &entries[draw as usize % entries.len()];
        let g = &entry.algebra;
        let m = random_biinvariant_metric(g, d, draw, &tol).map_err(|e| e.to_string())?;
        let (x, y) = (gaussian(&mut r, g.dim()), gaussian(&mut r, g.dim()));
        let k = kappa(g, &m, &x, &y, &tol).map_err(|e| e.to_string())?;
        min = min.min(k);
    }
    ensure(min >= -1e-12, format!("min κ = {min:e}"))?;
    Ok(format!("10000 draws over {} algebras, min κ = {min:.3e}", entries.len()))
}

fn ricci_identity() -> Outcome {
    let tol = Tolerances::default();
    let mut worst = 0.0f64;
    for name in ["su2", "so4", "su3", "so5"] {
        let g = alg(name);
        let d = simple_ideals(&g, 0, &tol).map_err(|e| e.to_string())?;
        let quarter_b = g.killing_form().to_matrix() * 0.25;
        for seed in 0..5 {
            let m = random_biinvariant_metric(&g, &d, seed, &tol).map_err(|e| e.to_string())?;
            let ric = ricci_form(&g, &m, &tol).map_err(|e| e.to_string())?.to_matrix();
            worst = worst.max(max_abs(&(ric + &quarter_b)));
        }
    }
    ensure(worst <= 1e-9, format!("‖Ric + B/4‖ = {worst:e}"))?;
    Ok(format!("max ‖Ric + B/4‖ = {worst:.3e}"))
}

fn wallach_probe() -> Outcome {
    let tol = Tolerances::default();
    let mut found = Vec::new();
    let mut vacuous = Vec::new();
    for entry in compact_entries() {
        let g = &entry.algebra;
        let d = simple_ideals(g, 0, &tol).map_err(|e| e.to_string())?;
        let splits = d.ideals.len() >= 2 || d.center_dim() > 0;
        let m = random_biinvariant_metric(g, &d, 1, &tol).map_err(|e| e.to_string())?;
        let report = positivity_probe(g, &m, 200, 1, &tol).map_err(|e| e.to_string())?;
        if g.dim() < 2 {
            // No 2-plane exists at all.
            vacuous.push(entry.name.clone());
            continue;
        }
        ensure(
            report.zero_plane.is_some() == splits,
            format!("{}: zero plane {:?}, splits {splits}", entry.name, report.zero_plane.is_some()),
        )?;
        if splits {
            found.push(entry.name.clone());
        }
    }
    let g = alg("su2");
    let report = positivity_probe(&g, &neg_killing(&g, 1.0), 1000, 0, &tol).map_err(|e| e.to_string())?;
    ensure(report.zero_plane.is_none(), "su2 zero plane found")?;
    let min = report.min_sectional_sampled;
    ensure((min - 0.125).abs() <= 1e-9, format!("su2 min sectional {min}"))?;
    Ok(format!(
        "zero planes on {}; su2 min sectional {min:.12}; no plane exists in {}",
        found.join(", "),
        vacuous.join(", ")
    ))
}

fn basis_independence() -> Outcome {
    let tol = Tolerances::default();
    let g = alg("so4");
    let mut r = rng(9);
    let mut slowest = Duration::ZERO;
    for i in 0..20 {
        let q = random_orthogonal(&mut r, 6);
        let start = Instant::now();
        let h = g.change_basis(&q).map_err(|e| e.to_string())?;
        let d = simple_ideals(&h, i, &tol).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        let shape = so4_shape(&d);
        ensure(shape == (0, vec![3, 3], vec![2]), format!("conjugation {i}: {shape:?}"))?;
        ensure(elapsed < Duration::from_secs(1), format!("conjugation {i}: {elapsed:?}"))?;
    }
    Ok(format!("20 conjugations reproduce (0, [3, 3], [2]); slowest {slowest:.2?}"))
}

fn fingerprints() -> Outcome {
    let tol = Tolerances::default();
    let print = |name: &str| simple_ideals(&alg(name), 0, &tol).map(|d| d.ideals[0].fingerprint.clone());
    let su3 = print("su3").map_err(|e| e.to_string())?;
    let so5 = print("so5").map_err(|e| e.to_string())?;
    let su2 = print("su2").map_err(|e| e.to_string())?;
    let su2_l = print("su2_lambda(2)").map_err(|e| e.to_string())?;
    ensure(su3 != so5, "su3 and so5 share a fingerprint")?;
    ensure((su3.dim, su3.rank) == (8, 2) && su3.root_profile.iter().all(|&l| l == 1.0), format!("su3 {su3:?}"))?;
    let mut lengths = so5.root_profile.clone();
    lengths.dedup();
    ensure((so5.dim, so5.rank) == (10, 2) && lengths == vec![1.0, 2.0], format!("so5 {so5:?}"))?;
    ensure(su2 == su2_l, "su2_lambda(2) differs from su2")?;
    Ok(format!(
        "su3 lengths {:?}, so5 lengths {:?}, su2_lambda(2) = su2",
        {
            let mut l = su3.root_profile.clone();
            l.dedup();
            l
        },
        lengths
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("splitting of so4", splitting),
        ("invariant form dimension law", dimension_law),
        ("moduli descriptions", moduli),
        ("symmetric-group canonical form", symmetric_group),
        ("conformal decision", conformal),
        ("curvature non-negativity", nonnegativity),
        ("Ricci identity", ricci_identity),
        ("zero-plane probe", wallach_probe),
        ("basis independence", basis_independence),
        ("fingerprint separation", fingerprints),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{elapsed:.2?}]: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} [{elapsed:.2?}]: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
