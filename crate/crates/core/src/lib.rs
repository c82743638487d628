//! Module categories over pointed fusion categories `C(G, ω)`: finite groups,
//! Q/Z-valued cochains, exact coboundary solving, and the classification of
//! labels `(H, ψ)` up to equivalence.

pub mod builtin;
pub mod classify;
pub mod cochain;
pub mod cohomology;
pub mod error;
pub mod format;
pub mod group;
pub mod kac_paljutkin;
pub mod pointed;
pub mod qz;
pub mod snf;

pub use classify::{
    admissible_subgroups, classify, classify_with, enumerate_pairs, equivalent_pairs, ClassificationReport,
    ClassifyOptions, EquivalenceWitness, PairClass,
};
pub use cochain::{coboundary, combine, conjugate_cochain, is_cocycle, restrict, Cochain};
pub use cohomology::{h2_representatives, is_cohomologous, solve_coboundary, CoboundaryMatrix};
pub use error::{Error, Result};
pub use group::{subgroup_conjugacy_classes, subgroups, Group, Subgroup};
pub use kac_paljutkin::{kp_category, KPData};
pub use pointed::{alpha_g, big_omega, conjugate_pair, gamma_cochain, validate_pair, AlgebraPair, PointedCategory};
pub use qz::QZ;
