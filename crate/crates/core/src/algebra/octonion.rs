//! Octonion arithmetic over the basis `e0 = 1, e1, ..., e7`.
//!
//! The product of two basis elements is generated from the seven oriented
//! triples in [`FANO_TRIPLES`]: for each triple `(i, j, k)` we have
//! `ei ej = ek` for cyclic orderings and `ei ej = -ek` for anti-cyclic ones,
//! with `ei ei = -1` for `i >= 1`. The table is built once, in integers, at
//! compile time.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SliceError};

/// Oriented triples generating the multiplication table.
pub const FANO_TRIPLES: [(usize, usize, usize); 7] = [
    (1, 2, 3),
    (1, 4, 5),
    (2, 4, 6),
    (3, 4, 7),
    (5, 3, 6),
    (6, 1, 7),
    (7, 2, 5),
];

/// Entry of the basis multiplication table: `e_i e_j = sign * e_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisProduct {
    pub sign: i8,
    pub index: usize,
}

const fn build_table() -> [[BasisProduct; 8]; 8] {
    let mut t = [[BasisProduct { sign: 0, index: 0 }; 8]; 8];
    let mut i = 0;
    while i < 8 {
        t[0][i] = BasisProduct { sign: 1, index: i };
        t[i][0] = BasisProduct { sign: 1, index: i };
        if i > 0 {
            t[i][i] = BasisProduct { sign: -1, index: 0 };
        }
        i += 1;
    }
    let mut n = 0;
    while n < FANO_TRIPLES.len() {
        let (a, b, c) = FANO_TRIPLES[n];
        let cyc = [(a, b, c), (b, c, a), (c, a, b)];
        let mut m = 0;
        while m < 3 {
            let (i, j, k) = cyc[m];
            t[i][j] = BasisProduct { sign: 1, index: k };
            t[j][i] = BasisProduct { sign: -1, index: k };
            m += 1;
        }
        n += 1;
    }
    t
}

/// `MULT_TABLE[i][j]` holds `e_i e_j`.
pub const MULT_TABLE: [[BasisProduct; 8]; 8] = build_table();

/// An element of the octonion algebra, stored as 8 real coefficients.
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Octonion {
    c: [f64; 8],
}

impl Octonion {
    pub const ZERO: Octonion = Octonion { c: [0.0; 8] };
    pub const ONE: Octonion = Octonion::basis(0);

    pub const fn new(c: [f64; 8]) -> Self {
        Octonion { c }
    }

    /// The basis element `e_i`, `0 <= i < 8`.
    pub const fn basis(i: usize) -> Self {
        let mut c = [0.0; 8];
        c[i] = 1.0;
        Octonion { c }
    }

    pub const fn real(r: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = r;
        Octonion { c }
    }

    pub fn coeffs(&self) -> [f64; 8] {
        self.c
    }

    pub fn re(&self) -> f64 {
        self.c[0]
    }

    pub fn im(&self) -> Octonion {
        let mut c = self.c;
        c[0] = 0.0;
        Octonion { c }
    }

    pub fn conj(&self) -> Octonion {
        let mut c = self.c.map(|v| -v);
        c[0] = self.c[0];
        Octonion { c }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c.iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product of the coefficient vectors.
    pub fn dot(&self, other: &Octonion) -> f64 {
        self.c.iter().zip(other.c.iter()).map(|(a, b)| a * b).sum()
    }

    /// `conj(q) / |q|^2`.
    pub fn inv(&self) -> Result<Octonion> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(SliceError::ZeroDivisor);
        }
        Ok(self.conj() / n2)
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|v| v.is_finite())
    }

    /// Distance `|self - other|`.
    pub fn dist(&self, other: &Octonion) -> f64 {
        (*self - *other).norm()
    }
}

/// Euclidean inner product `<r, s>`.
pub fn scalar_product(r: &Octonion, s: &Octonion) -> f64 {
    r.dot(s)
}

impl Index<usize> for Octonion {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.c[i]
    }
}

impl From<f64> for Octonion {
    fn from(r: f64) -> Self {
        Octonion::real(r)
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.c[0])?;
        for (i, v) in self.c.iter().enumerate().skip(1) {
            if *v != 0.0 {
                let sign = if v.is_sign_negative() { '-' } else { '+' };
                write!(f, " {sign} {}e{i}", v.abs())?;
            }
        }
        Ok(())
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        Octonion { c }
    }
}

impl AddAssign for Octonion {
    fn add_assign(&mut self, rhs: Octonion) {
        *self = *self + rhs;
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
        Octonion { c }
    }
}

impl SubAssign for Octonion {
    fn sub_assign(&mut self, rhs: Octonion) {
        *self = *self - rhs;
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion { c: self.c.map(|v| -v) }
    }
}

impl Mul<f64> for Octonion {
    type Output = Octonion;
    fn mul(self, s: f64) -> Octonion {
        Octonion { c: self.c.map(|v| v * s) }
    }
}

impl Mul<Octonion> for f64 {
    type Output = Octonion;
    fn mul(self, q: Octonion) -> Octonion {
        q * self
    }
}

impl Div<f64> for Octonion {
    type Output = Octonion;
    fn div(self, s: f64) -> Octonion {
        Octonion { c: self.c.map(|v| v / s) }
    }
}

/// The (non-associative) octonion product.
impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        let mut out = [0.0; 8];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                let p = MULT_TABLE[i][j];
                out[p.index] += f64::from(p.sign) * a * b;
            }
        }
        Octonion { c: out }
    }
}

impl std::iter::Sum for Octonion {
    fn sum<It: Iterator<Item = Octonion>>(iter: It) -> Octonion {
        iter.fold(Octonion::ZERO, |a, b| a + b)
    }
}
