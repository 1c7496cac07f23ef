//! Exact-arithmetic toolkit for plane polynomial foliations and the
//! integer combinatorics attached to their effective integrability bounds.
//!
//! The crate is organized around five engines:
//! - [`poly`]: sparse multivariate polynomials over arbitrary-precision
//!   rationals, with the text grammar used by the CLI.
//! - [`groebner`]: a Buchberger engine sized for the bilinear coefficient
//!   systems of the invariant-curve search, plus rational back-substitution
//!   for zero-dimensional lex bases.
//! - [`foliation`]: vector fields, Lie derivatives, cofactors, extactic
//!   determinants and the rational-first-integral detector.
//! - [`darboux`]: the invariant-curve search under degree-bound profiles,
//!   assembly of Darboux first integrals / integrating factors, and exact
//!   residue-budget verification through a chart at infinity.
//! - [`cyclo`] and [`orbifold`]: exhaustive sumset verification on cyclic
//!   unit groups, and pluricanonical k_min tables from orbifold fiber data.
//!
//! The `report` module backs the `effint` command-line binary.

pub mod cyclo;
pub mod darboux;
pub mod foliation;
pub mod groebner;
pub mod linalg;
pub mod orbifold;
pub mod poly;
pub mod report;

pub use darboux::{
    assemble_first_integral, assemble_integrating_factor, degree_bound, search_invariant_curves,
    verify_residue_budget, BoundProfile, LiouvillianStructure, SearchOutcome, StructureKind,
};
pub use foliation::{
    cofactor, detect_rational_first_integral, extactic, foliation_degree, DarbouxCandidate,
    FoliationInfo, VectorField,
};
pub use poly::{parse_poly, Degree, Monomial, Poly, Rational, TermOrder};
