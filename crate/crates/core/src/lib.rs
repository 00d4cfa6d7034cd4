//! Bi-invariant metrics on Lie algebras given by structure constants.
//!
//! The pipeline runs from a [`LieAlgebra`] through the compact-type test and
//! the splitting into center and simple ideals ([`decompose`]), to canonical
//! metric coordinates and equivalence decisions ([`metrics`]), explicit
//! moduli charts ([`moduli`]) and curvature ([`curvature`]).

pub mod algebra;
pub mod catalog;
pub mod curvature;
pub mod decompose;
pub mod error;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod moduli;
pub mod tolerance;

pub use algebra::{JacobiViolation, LieAlgebra, LinearMap, Metric, Subspace, SymmetricForm, Terms};
pub use catalog::{builtin, CatalogEntry, Expected};
pub use curvature::{
    kappa, positivity_probe, ricci_form, scalar_curvature, sectional, BiInvariantGeometry, CurvatureReport,
};
pub use decompose::{compact_type_check, simple_ideals, CompactTypeReport, Decomposition, Fingerprint, Ideal};
pub use error::{Error, Result};
pub use metrics::{
    canonical_coordinates, canonicalize, compose_metric, conformally_equivalent, invariant_form_space,
    is_biinvariant_metric, isometric, metric_coordinates, random_biinvariant_metric, BiInvariantCoordinates,
    ClassCoordinates, ConformalVerdict,
};
pub use moduli::{bi_chart, ebi_chart, moduli_description, BiSpace, ConformalChart, EbiSpace, ModuliChart, ModuliDescription};
pub use tolerance::Tolerances;
