//! Explicit charts for the moduli spaces of bi-invariant metrics up to
//! isometry (`BI`) and up to isometry and scaling (`EBI`).
//!
//! A class of `m` isomorphic ideals contributes `SP^m(ℝ)`, charted by
//! log-gaps: `(log α₍₁₎, log α₍₂₎ − log α₍₁₎, …)`, which lands in
//! `ℝ × [0, ∞)^{m−1}`. A zero gap marks the orbifold singular locus.

use std::fmt;

use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::decompose::simple_ideals;
use crate::error::Result;
use crate::metrics::{canonicalize, BiInvariantCoordinates};
use crate::tolerance::Tolerances;

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn subscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

const HALF_LINE: &str = "ℝ⁺";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BiFactor {
    /// `ℝ⁺`, one non-repeated simple ideal.
    HalfLine,
    /// `SP^m(ℝ)`, a class of `m ≥ 2` isomorphic simple ideals.
    SymmetricProduct(usize),
}

impl BiFactor {
    pub fn dim(self) -> usize {
        match self {
            BiFactor::HalfLine => 1,
            BiFactor::SymmetricProduct(m) => m,
        }
    }
}

/// `(ℝ⁺)^k × SP^{m₁}(ℝ) × ⋯ × SP^{m_l}(ℝ)`; empty means a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiSpace {
    pub factors: Vec<BiFactor>,
}

impl BiSpace {
    /// Non-repeated classes first, then one symmetric product per repeated class.
    pub fn from_class_sizes(sizes: &[usize]) -> Self {
        let singles = sizes.iter().filter(|&&m| m == 1).count();
        let mut factors = vec![BiFactor::HalfLine; singles];
        factors.extend(
            sizes
                .iter()
                .filter(|&&m| m > 1)
                .map(|&m| BiFactor::SymmetricProduct(m)),
        );
        BiSpace { factors }
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim()).sum()
    }

    pub fn is_point(&self) -> bool {
        self.factors.is_empty()
    }

    /// The product as written with symmetric products, e.g. `ℝ⁺×SP²(ℝ)`.
    pub fn model(&self) -> String {
        if self.is_point() {
            return "point".into();
        }
        self.factors
            .iter()
            .map(|f| match f {
                BiFactor::HalfLine => HALF_LINE.to_string(),
                BiFactor::SymmetricProduct(m) => format!("SP{}(ℝ)", superscript(*m)),
            })
            .collect::<Vec<_>>()
            .join("×")
    }

    /// Homeomorphism type with each `SP^m(ℝ)` unfolded into `(ℝ⁺)^{m−1}×ℝ`,
    /// the closed half-lines carrying the gap coordinates.
    pub fn homeomorphism_type(&self) -> String {
        if self.is_point() {
            return "point".into();
        }
        let mut parts = Vec::new();
        for f in &self.factors {
            match f {
                BiFactor::HalfLine => parts.push(HALF_LINE.to_string()),
                BiFactor::SymmetricProduct(m) => {
                    parts.extend(std::iter::repeat_n(HALF_LINE.to_string(), m - 1));
                    parts.push("ℝ".into());
                }
            }
        }
        parts.join("×")
    }
}

impl fmt::Display for BiSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let model = self.model();
        let homeo = self.homeomorphism_type();
        if model == homeo {
            f.write_str(&model)
        } else {
            write!(f, "{model} ≅ {homeo}")
        }
    }
}

/// `𝕊^{K−1}₊ / ∏ S_{m_i}` with `K` the total number of simple ideals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EbiSpace {
    pub class_sizes: Vec<usize>,
}

impl EbiSpace {
    pub fn ideal_count(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.ideal_count().saturating_sub(1)
    }

    pub fn is_point(&self) -> bool {
        self.dim() == 0
    }

    /// Positive sphere quotient, e.g. `𝕊¹₊/S₂`.
    pub fn model(&self) -> String {
        let k = self.ideal_count();
        if k == 0 {
            return "point".into();
        }
        let groups: Vec<String> = self
            .class_sizes
            .iter()
            .filter(|&&m| m > 1)
            .map(|&m| format!("S{}", subscript(m)))
            .collect();
        let sphere = format!("𝕊{}₊", superscript(k - 1));
        match groups.len() {
            0 => sphere,
            1 => format!("{sphere}/{}", groups[0]),
            _ => format!("{sphere}/({})", groups.join("×")),
        }
    }

    /// Homeomorphism type, `(ℝ⁺)^{K−1}` or a point.
    pub fn homeomorphism_type(&self) -> String {
        if self.is_point() {
            "point".into()
        } else {
            vec![HALF_LINE; self.dim()].join("×")
        }
    }
}

impl fmt::Display for EbiSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.homeomorphism_type())
    }
}

/// One class's factor in the `BI` chart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ChartFactor {
    /// `log α` of a non-repeated ideal.
    Scalar(f64),
    /// `log α₍₁₎` and the non-negative consecutive log-gaps of the sorted multiset.
    SymmetricProduct { base: f64, gaps: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuliChart {
    /// One factor per class, in canonical class order.
    pub factors: Vec<ChartFactor>,
    pub space: BiSpace,
}

impl ModuliChart {
    /// All chart coordinates flattened in class order.
    pub fn coordinates(&self) -> Vec<f64> {
        self.factors
            .iter()
            .flat_map(|f| match f {
                ChartFactor::Scalar(x) => vec![*x],
                ChartFactor::SymmetricProduct { base, gaps } => {
                    std::iter::once(*base).chain(gaps.iter().copied()).collect()
                }
            })
            .collect()
    }

    /// The sorted `α` multisets per class: cumulative sums, exponentiated.
    pub fn inverse(&self) -> Vec<Vec<f64>> {
        self.factors
            .iter()
            .map(|f| match f {
                ChartFactor::Scalar(x) => vec![x.exp()],
                ChartFactor::SymmetricProduct { base, gaps } => {
                    let mut acc = *base;
                    let mut out = vec![acc.exp()];
                    for g in gaps {
                        acc += g;
                        out.push(acc.exp());
                    }
                    out
                }
            })
            .collect()
    }
}

/// Log-gap chart of the isometry class of `c`.
pub fn bi_chart(c: &BiInvariantCoordinates) -> ModuliChart {
    let c = canonicalize(c);
    let factors = c
        .classes
        .iter()
        .map(|class| {
            let logs: Vec<f64> = class.alphas.iter().map(|a| a.ln()).collect();
            if logs.len() == 1 {
                ChartFactor::Scalar(logs[0])
            } else {
                ChartFactor::SymmetricProduct {
                    base: logs[0],
                    gaps: logs.windows(2).map(|w| w[1] - w[0]).collect(),
                }
            }
        })
        .collect();
    ModuliChart {
        factors,
        space: BiSpace::from_class_sizes(&c.class_sizes()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConformalChart {
    /// Canonical `α` vector divided by its Euclidean norm; empty for no ideals.
    pub unit_coordinates: Vec<f64>,
    pub space: EbiSpace,
}

/// Point of `𝕊^{K−1}₊ / ∏ S_{m_i}` representing the conformal class of `c`.
pub fn ebi_chart(c: &BiInvariantCoordinates) -> ConformalChart {
    let c = canonicalize(c);
    let v = c.alpha_vector();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    ConformalChart {
        unit_coordinates: v.iter().map(|x| x / norm).collect(),
        space: EbiSpace {
            class_sizes: c.class_sizes(),
        },
    }
}

/// Both moduli spaces of an algebra, read from its decomposition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuliDescription {
    pub bi: BiSpace,
    pub ebi: EbiSpace,
    pub contractible: bool,
    pub center_dim: usize,
}

impl ModuliDescription {
    /// One line, e.g. `BI ≅ SP²(ℝ) ≅ ℝ⁺×ℝ; EBI ≅ ℝ⁺`.
    pub fn summary(&self) -> String {
        let rel = |point: bool| if point { "=" } else { "≅" };
        format!(
            "BI {} {}; EBI {} {}",
            rel(self.bi.is_point()),
            self.bi,
            rel(self.ebi.is_point()),
            self.ebi
        )
    }
}

pub fn moduli_description(alg: &LieAlgebra, seed: u64, tol: &Tolerances) -> Result<ModuliDescription> {
    let d = simple_ideals(alg, seed, tol)?;
    let sizes = d.class_sizes();
    Ok(ModuliDescription {
        bi: BiSpace::from_class_sizes(&sizes),
        ebi: EbiSpace { class_sizes: sizes },
        contractible: true,
        center_dim: d.center_dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::Fingerprint;
    use crate::metrics::ClassCoordinates;
    use approx::assert_relative_eq;

    fn coords(classes: &[Vec<f64>]) -> BiInvariantCoordinates {
        BiInvariantCoordinates {
            classes: classes
                .iter()
                .enumerate()
                .map(|(i, a)| ClassCoordinates {
                    fingerprint: Fingerprint { dim: 3 + i, rank: 1, root_profile: vec![], root_count: 0 },
                    alphas: a.clone(),
                })
                .collect(),
            center_dim: 0,
        }
    }

    #[test]
    fn bi_charts() {
        let c = bi_chart(&coords(&[vec![5.0, 2.0]]));
        let x = c.coordinates();
        assert_relative_eq!(x[0], 2f64.ln());
        assert_relative_eq!(x[1], 5f64.ln() - 2f64.ln());
        assert_eq!(c.space.model(), "SP²(ℝ)");

        let c = bi_chart(&coords(&[vec![std::f64::consts::E]]));
        assert_relative_eq!(c.coordinates()[0], 1.0);
        assert_eq!(c.space.to_string(), "ℝ⁺");

        let c = bi_chart(&coords(&[vec![4.0, 1.0, 1.0]]));
        let x = c.coordinates();
        assert_eq!(x[..2], [0.0, 0.0]);
        assert_relative_eq!(x[2], 4f64.ln());
        let back = c.inverse();
        assert_relative_eq!(back[0][2], 4.0, max_relative = 1e-14);
    }

    #[test]
    fn ebi_charts() {
        let c = ebi_chart(&coords(&[vec![7.0]]));
        assert_eq!(c.unit_coordinates, vec![1.0]);
        assert_eq!(c.space.model(), "𝕊⁰₊");
        assert_eq!(c.space.to_string(), "point");
        let c = ebi_chart(&coords(&[vec![4.0, 3.0]]));
        assert_relative_eq!(c.unit_coordinates[0], 0.6, max_relative = 1e-15);
        assert_relative_eq!(c.unit_coordinates[1], 0.8, max_relative = 1e-15);
        assert_eq!(c.space.model(), "𝕊¹₊/S₂");
        let c = ebi_chart(&coords(&[vec![1.0, 1.0]]));
        assert_relative_eq!(c.unit_coordinates[0], 1.0 / 2f64.sqrt());
        let c = ebi_chart(&coords(&[]));
        assert!(c.unit_coordinates.is_empty());
        assert_eq!(c.space.to_string(), "point");
    }

    #[test]
    fn descriptions() {
        assert_eq!(BiSpace::from_class_sizes(&[]).to_string(), "point");
        assert_eq!(BiSpace::from_class_sizes(&[1]).to_string(), "ℝ⁺");
        assert_eq!(BiSpace::from_class_sizes(&[2]).to_string(), "SP²(ℝ) ≅ ℝ⁺×ℝ");
        assert_eq!(BiSpace::from_class_sizes(&[2, 1]).to_string(), "ℝ⁺×SP²(ℝ) ≅ ℝ⁺×ℝ⁺×ℝ");
        assert_eq!(BiSpace::from_class_sizes(&[2, 1]).dim(), 3);
        let e = EbiSpace { class_sizes: vec![2, 3] };
        assert_eq!(e.model(), "𝕊⁴₊/(S₂×S₃)");
        assert_eq!(e.dim(), 4);
    }
}
