//! Exact cohomology invariants of compactified Jacobians of irreducible
//! nodal curves.
//!
//! A projective irreducible curve with `k` nodes and normalisation of genus
//! `g0` has a compactified Jacobian whose rational cohomology carries a
//! mixed Hodge structure isomorphic to that of `J_0 x R^k`, where `J_0` is
//! the Jacobian of the normalisation and `R` is the one-nodal rational
//! curve. Everything this crate computes — Betti numbers, weight-graded
//! dimensions, mixed Hodge numbers — follows from that product description,
//! and is computed along three independent routes so that each can check
//! the others:
//!
//! * **closed form** ([`closed_form`]): direct binomial-sum evaluators,
//!   in both the variant found in print and the variant obtained by
//!   re-deriving the Künneth convolution (the two disagree; see
//!   [`closed_form::weight_printed`]);
//! * **structural** ([`table`]): a sparse mixed-Hodge dimension table for
//!   `J_0` and `R` combined with an exact Künneth tensor product;
//! * **enumeration** ([`census`]): a brute-force walk over the Künneth
//!   basis of `H*(J_0 x R^k)` that tallies one generator at a time and
//!   never touches a binomial coefficient.
//!
//! [`homology`] adds a fourth, generic check: chain complexes over exact
//! rationals whose Betti numbers validate the Künneth law itself, and
//! [`strata`] enumerates the census of the singular stratification of the
//! compactified Jacobian.
//!
//! All multiplicities are arbitrary-precision integers and all linear
//! algebra is exact rational arithmetic; agreement between routes is
//! structural equality, never tolerance.
//!
//! The crate is `no_std`-compatible (requires `alloc`); disable the
//! default `std` feature for embedded or wasm targets. File formats and
//! the command-line surface live in the companion `jbar-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod census;
pub mod closed_form;
pub mod homology;
pub mod strata;
pub mod table;

pub use census::{kunneth_census, GeneratorChoice, DEFAULT_ENUMERATION_CAP};
pub use closed_form::CurveParams;
pub use table::{HodgePiece, MixedHodgeTable};
