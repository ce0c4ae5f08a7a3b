//! Imaginary units and s-bases.

use std::ops::Neg;

use nalgebra::SMatrix;
use serde::{Deserialize, Serialize};

use super::octonion::Octonion;
use crate::error::{Result, SliceError};

/// Tolerance used when validating that an octonion lies on the unit sphere.
pub const UNIT_TOL: f64 = 1e-10;

/// A purely imaginary octonion of norm one, so that `I^2 = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Octonion", into = "Octonion")]
pub struct ImaginaryUnit(Octonion);

impl ImaginaryUnit {
    /// Validates `q` as an element of the unit sphere.
    pub fn new(q: Octonion) -> Result<Self> {
        let norm = q.norm();
        if q.re().abs() > UNIT_TOL || (norm - 1.0).abs() > UNIT_TOL {
            return Err(SliceError::NotImaginaryUnit { re: q.re(), norm });
        }
        Ok(ImaginaryUnit(q))
    }

    /// Projects `q` onto its imaginary part and normalizes.
    pub fn normalized(q: Octonion) -> Result<Self> {
        let im = q.im();
        let n = im.norm();
        if n < 1e-300 {
            return Err(SliceError::NotImaginaryUnit { re: q.re(), norm: n });
        }
        Ok(ImaginaryUnit(im / n))
    }

    /// `e_k` for `1 <= k <= 7`.
    pub fn basis(k: usize) -> Self {
        assert!((1..8).contains(&k), "basis unit index must be in 1..=7");
        ImaginaryUnit(Octonion::basis(k))
    }

    pub fn as_octonion(&self) -> Octonion {
        self.0
    }

    pub fn dot(&self, other: &ImaginaryUnit) -> f64 {
        self.0.dot(&other.0)
    }

    /// True when the two units agree within `tol` in every coefficient norm.
    pub fn approx_eq(&self, other: &ImaginaryUnit, tol: f64) -> bool {
        self.0.dist(&other.0) <= tol
    }
}

impl Neg for ImaginaryUnit {
    type Output = ImaginaryUnit;
    fn neg(self) -> ImaginaryUnit {
        ImaginaryUnit(-self.0)
    }
}

impl From<ImaginaryUnit> for Octonion {
    fn from(u: ImaginaryUnit) -> Octonion {
        u.0
    }
}

impl TryFrom<Octonion> for ImaginaryUnit {
    type Error = SliceError;
    fn try_from(q: Octonion) -> Result<Self> {
        ImaginaryUnit::new(q)
    }
}

/// Deterministic sweep over the unit sphere.
///
/// Index `k` maps to the normalized point of a Kronecker sequence in
/// `[-1, 1]^7` built from square roots of the first seven primes.
pub fn unit_sweep(k: usize) -> ImaginaryUnit {
    const ROOTS: [f64; 7] = [
        std::f64::consts::SQRT_2,
        1.732_050_807_568_877_2,
        2.236_067_977_499_79,
        2.645_751_311_064_590_7,
        3.316_624_790_355_4,
        3.605_551_275_463_989,
        4.123_105_625_617_661,
    ];
    let mut c = [0.0; 8];
    for (slot, r) in c[1..].iter_mut().zip(ROOTS) {
        let t = ((k as f64 + 1.0) * r).fract();
        *slot = 2.0 * t - 1.0;
    }
    ImaginaryUnit::normalized(Octonion::new(c)).unwrap_or_else(|_| ImaginaryUnit::basis(1))
}

/// A triple `(I, J, K)` whose eight products
/// `1, I, J, IJ, K, IK, JK, I(JK)` form a real basis of the octonions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SBasis {
    i: ImaginaryUnit,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
}

/// Smallest admissible |det Gram| for the eight s-basis products.
pub const GRAM_DET_MIN: f64 = 1e-10;

impl SBasis {
    pub fn new(i: ImaginaryUnit, j: ImaginaryUnit, k: ImaginaryUnit) -> Result<Self> {
        let b = SBasis { i, j, k };
        if b.gram_determinant().abs() < GRAM_DET_MIN {
            return Err(SliceError::NotSBasis);
        }
        Ok(b)
    }

    pub fn i(&self) -> ImaginaryUnit {
        self.i
    }
    pub fn j(&self) -> ImaginaryUnit {
        self.j
    }
    pub fn k(&self) -> ImaginaryUnit {
        self.k
    }

    /// The eight products `[1, I, J, IJ, K, IK, JK, I(JK)]`, grouped so that
    /// consecutive pairs span `C_I`, `C_I J`, `C_I K` and `C_I (JK)`.
    pub fn products(&self) -> [Octonion; 8] {
        products_of(self.i.into(), self.j.into(), self.k.into())
    }

    pub fn gram_determinant(&self) -> f64 {
        gram_matrix(&self.products()).determinant()
    }

    /// Column matrix whose columns are [`SBasis::products`].
    pub fn basis_matrix(&self) -> SMatrix<f64, 8, 8> {
        let p = self.products();
        SMatrix::<f64, 8, 8>::from_fn(|r, c| p[c][r])
    }
}

fn products_of(i: Octonion, j: Octonion, k: Octonion) -> [Octonion; 8] {
    let jk = j * k;
    [Octonion::ONE, i, j, i * j, k, i * k, jk, i * jk]
}

fn gram_matrix(v: &[Octonion; 8]) -> SMatrix<f64, 8, 8> {
    SMatrix::<f64, 8, 8>::from_fn(|r, c| v[r].dot(&v[c]))
}

/// Completes `I` to an s-basis.
///
/// `J` is the first of `e1..e7` whose component orthogonal to `I` is
/// substantial, normalized; `K` is the first basis unit with a substantial
/// component orthogonal to `span{1, I, J, IJ}`, normalized.
pub fn complete_sbasis(i: ImaginaryUnit) -> SBasis {
    let iq = i.as_octonion();
    let j = first_orthogonal(&[Octonion::ONE, iq]);
    let ij = iq * j;
    let k = first_orthogonal(&[Octonion::ONE, iq, j, ij]);
    SBasis {
        i,
        j: ImaginaryUnit(j),
        k: ImaginaryUnit(k),
    }
}

/// First basis unit with a residual of norm > 1/2 after projecting out the
/// orthonormal family `frame`. Such a unit always exists when `frame` has at
/// most four members.
fn first_orthogonal(frame: &[Octonion]) -> Octonion {
    for idx in 1..8 {
        let mut r = Octonion::basis(idx);
        for f in frame {
            r -= *f * r.dot(f);
        }
        let n = r.norm();
        if n > 0.5 {
            // one more pass keeps the result orthogonal to rounding level
            let mut r = r / n;
            for f in frame {
                r -= *f * r.dot(f);
            }
            return r / r.norm();
        }
    }
    unreachable!("an orthonormal frame of size <= 4 cannot absorb e1..e7")
}
