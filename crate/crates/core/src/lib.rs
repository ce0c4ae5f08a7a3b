//! Octonionic slice analysis on the quadratic cone `O_s^n`.
//!
//! The crate covers octonion arithmetic and left-multiplication operators
//! ([`algebra`]), points and domains of the cone ([`cone`], [`domain`],
//! [`path`]), stem functions and representation formulas ([`slice`]),
//! numerical slice-regularity tests ([`regularity`]), star-power Taylor
//! series ([`taylor`]) and a branch-tracked square root that is weakly but
//! not strongly slice regular ([`continuation`]). The [`cli`] module drives
//! the verification suites behind the `octoslice` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod cone;
pub mod continuation;
pub mod domain;
pub mod error;
pub mod path;
pub mod regularity;
pub mod sampling;
pub mod slice;
pub mod taylor;

pub use algebra::{ImaginaryUnit, LeftMultOperator, Octonion, SBasis};
pub use cone::{SlicePoint, SlicePolydisc};
pub use domain::DomainSpec;
pub use error::{Result, SliceError};
