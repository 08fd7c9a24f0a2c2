//! Exact combinatorial Floer complexes of immersed curves on flat surfaces
//! related by Lagrangian correspondences, plus a floating-point lab for the
//! singularities of Lagrangian immersions of a surface into a product of two
//! surfaces.
//!
//! The crate has two halves that share nothing but the expression language:
//!
//! * the combinatorial half ([`flatgeom`], [`curves`], [`correspond`],
//!   [`floer`]) works over exact rationals on flat tori and cylinders,
//!   composes curves with covering-type and fold-plus-twist correspondences,
//!   counts bigons, and compares the resulting differentials;
//! * the numerical half ([`exprlang`], [`jetlab`]) parses user-supplied
//!   smooth maps, samples their jets on a grid, extracts and classifies the
//!   singular locus, and applies the explicit local perturbations.
//!
//! Everything is deterministic: randomized property suites (see [`suite`])
//! take explicit seeds.

pub mod rat;
pub mod geom;
pub mod exprlang;
pub mod flatgeom;
pub mod curves;
pub mod correspond;
pub mod floer;
pub mod jetlab;
pub mod suite;
