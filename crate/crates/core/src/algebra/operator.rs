//! Left-multiplication operators as 8x8 real matrices.
//!
//! Composing operators is matrix multiplication, which associates. This is
//! what makes expressions like `L_J L_K` or `(L_J - L_K)^{-1} L_J`
//! unambiguous even though the octonion product is not associative.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{SMatrix, SVector};

use super::octonion::Octonion;
use super::unit::ImaginaryUnit;
use crate::error::{Result, SliceError};

pub type Mat8 = SMatrix<f64, 8, 8>;
pub type Mat16 = SMatrix<f64, 16, 16>;

/// Units closer than this are treated as equal when inverting `L_J - L_K`.
pub const UNIT_SEPARATION_MIN: f64 = 1e-12;

/// The linear map `o -> q o` on the octonions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeftMultOperator(Mat8);

impl LeftMultOperator {
    /// Column `j` is the coefficient vector of `q e_j`.
    pub fn of(q: Octonion) -> Self {
        let cols: [Octonion; 8] = std::array::from_fn(|j| q * Octonion::basis(j));
        LeftMultOperator(Mat8::from_fn(|r, c| cols[c][r]))
    }

    pub fn identity() -> Self {
        LeftMultOperator(Mat8::identity())
    }

    pub fn zero() -> Self {
        LeftMultOperator(Mat8::zeros())
    }

    pub fn from_matrix(m: Mat8) -> Self {
        LeftMultOperator(m)
    }

    pub fn matrix(&self) -> &Mat8 {
        &self.0
    }

    pub fn apply(&self, r: Octonion) -> Octonion {
        let v = self.0 * SVector::<f64, 8>::from(r.coeffs());
        Octonion::new(v.into())
    }

    pub fn scale(&self, s: f64) -> Self {
        LeftMultOperator(self.0 * s)
    }

    /// General matrix inverse; fails on singular operators.
    pub fn try_inverse(&self) -> Result<Self> {
        self.0
            .try_inverse()
            .map(LeftMultOperator)
            .ok_or(SliceError::ZeroDivisor)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.norm()
    }
}

impl Mul for LeftMultOperator {
    type Output = LeftMultOperator;
    fn mul(self, rhs: LeftMultOperator) -> LeftMultOperator {
        LeftMultOperator(self.0 * rhs.0)
    }
}

impl Add for LeftMultOperator {
    type Output = LeftMultOperator;
    fn add(self, rhs: LeftMultOperator) -> LeftMultOperator {
        LeftMultOperator(self.0 + rhs.0)
    }
}

impl Sub for LeftMultOperator {
    type Output = LeftMultOperator;
    fn sub(self, rhs: LeftMultOperator) -> LeftMultOperator {
        LeftMultOperator(self.0 - rhs.0)
    }
}

impl Neg for LeftMultOperator {
    type Output = LeftMultOperator;
    fn neg(self) -> LeftMultOperator {
        LeftMultOperator(-self.0)
    }
}

/// Convenience wrapper for [`LeftMultOperator::of`].
pub fn left_mult_matrix(q: Octonion) -> LeftMultOperator {
    LeftMultOperator::of(q)
}

/// `(L_J - L_K)^{-1}` for distinct units.
///
/// Since `L_J - L_K = L_{J-K}` and `(J-K)^2 = -|J-K|^2`, the inverse is
/// `-L_{J-K} / |J-K|^2`.
pub fn unit_difference_inverse(j: ImaginaryUnit, k: ImaginaryUnit) -> Result<LeftMultOperator> {
    let d = j.as_octonion() - k.as_octonion();
    let n2 = d.norm_sqr();
    if n2.sqrt() < UNIT_SEPARATION_MIN {
        return Err(SliceError::UnitsMustDiffer);
    }
    Ok(LeftMultOperator::of(d).scale(-1.0 / n2))
}

/// Pair of octonions forming a column in `O^{2x1}`.
pub type OctPair = (Octonion, Octonion);

/// A 2x2 grid of operators acting on `O^{2x1}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockOperator2 {
    pub blocks: [[LeftMultOperator; 2]; 2],
}

impl BlockOperator2 {
    pub fn new(blocks: [[LeftMultOperator; 2]; 2]) -> Self {
        BlockOperator2 { blocks }
    }

    /// `[[1, L_J], [1, L_K]]`.
    pub fn slice_pair(j: ImaginaryUnit, k: ImaginaryUnit) -> Self {
        let one = LeftMultOperator::identity();
        BlockOperator2::new([
            [one, LeftMultOperator::of(j.into())],
            [one, LeftMultOperator::of(k.into())],
        ])
    }

    pub fn apply(&self, v: OctPair) -> OctPair {
        let [[a, b], [c, d]] = &self.blocks;
        (a.apply(v.0) + b.apply(v.1), c.apply(v.0) + d.apply(v.1))
    }

    /// The equivalent 16x16 real matrix.
    pub fn to_matrix(&self) -> Mat16 {
        let mut m = Mat16::zeros();
        for (bi, row) in self.blocks.iter().enumerate() {
            for (bj, blk) in row.iter().enumerate() {
                m.fixed_view_mut::<8, 8>(8 * bi, 8 * bj).copy_from(blk.matrix());
            }
        }
        m
    }

    pub fn compose(&self, rhs: &BlockOperator2) -> BlockOperator2 {
        let a = &self.blocks;
        let b = &rhs.blocks;
        let blocks = std::array::from_fn(|i| {
            std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j])
        });
        BlockOperator2 { blocks }
    }
}

/// Closed-form inverse of `[[1, L_J], [1, L_K]]`:
///
/// ```text
/// [ (L_J-L_K)^{-1} L_J   (L_K-L_J)^{-1} L_K ]
/// [ (L_J-L_K)^{-1}       (L_K-L_J)^{-1}     ]
/// ```
pub fn block_inverse(j: ImaginaryUnit, k: ImaginaryUnit) -> Result<BlockOperator2> {
    let djk = unit_difference_inverse(j, k)?;
    let dkj = -djk;
    let lj = LeftMultOperator::of(j.into());
    let lk = LeftMultOperator::of(k.into());
    Ok(BlockOperator2::new([[djk * lj, dkj * lk], [djk, dkj]]))
}

/// Frobenius residual of `(L_J-L_K)^{-1} L_J + L_K (L_J-L_K)^{-1}`.
pub fn verify_cjk(j: ImaginaryUnit, k: ImaginaryUnit) -> Result<f64> {
    let d = unit_difference_inverse(j, k)?;
    let lj = LeftMultOperator::of(j.into());
    let lk = LeftMultOperator::of(k.into());
    Ok((d * lj + lk * d).frobenius_norm())
}

/// Frobenius residual of `block_inverse(J, K) * [[1, L_J], [1, L_K]] - Id`
/// (both orders, the larger is returned).
pub fn block_inverse_residual(j: ImaginaryUnit, k: ImaginaryUnit) -> Result<f64> {
    let inv = block_inverse(j, k)?.to_matrix();
    let fwd = BlockOperator2::slice_pair(j, k).to_matrix();
    let id = Mat16::identity();
    Ok((inv * fwd - id).norm().max((fwd * inv - id).norm()))
}
