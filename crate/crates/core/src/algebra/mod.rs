//! Octonion algebra: elements, imaginary units, s-bases and
//! left-multiplication operators.

mod octonion;
mod operator;
mod unit;

pub use octonion::{scalar_product, BasisProduct, Octonion, FANO_TRIPLES, MULT_TABLE};
pub use operator::{
    block_inverse, block_inverse_residual, left_mult_matrix, unit_difference_inverse, verify_cjk,
    BlockOperator2, LeftMultOperator, Mat16, Mat8, OctPair, UNIT_SEPARATION_MIN,
};
pub use unit::{complete_sbasis, unit_sweep, ImaginaryUnit, SBasis, GRAM_DET_MIN, UNIT_TOL};
