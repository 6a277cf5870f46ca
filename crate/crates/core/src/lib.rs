//! Orbit universality of linear subspaces under matrix group actions.
//!
//! A subspace V of a representation U of a group G is *universal* when
//! every G-orbit meets V. This crate provides the machinery to probe that
//! property for a catalog of concrete matrix groups: exact root and Weyl
//! data, topological obstruction numbers computed by fixed-point
//! localization, seeded numerical orbit search with certified witnesses for
//! solvable groups, and reduction of product-group questions to their
//! semisimple parts.

pub mod error;
pub mod exact;
pub mod lie;
pub mod obstruction;
pub mod rep;
pub mod subalgebra;
pub mod universality;

pub use error::{Error, Result};
pub use lie::{
    adjoint_action, exp_map, AlgebraElement, GroupElement, GroupSpec, ALGEBRAIC_TOL,
    MEMBERSHIP_TOL,
};
pub use universality::{
    normalized_orbit_distance, universality_verdict, SearchConfig, Verdict, VerdictKind,
};
