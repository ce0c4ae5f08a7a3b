//! Points of the quadratic cone `O_s^n = union of the slices C_I^n`.
//!
//! A point `x + yI` is stored in canonical form: `y` is zero or
//! lexicographically positive (first nonzero entry > 0). The raw triples
//! `(x, y, I)` and `(x, -y, -I)` describe the same point; canonicalization
//! picks the one with positive `y`. Real points carry [`default_unit`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{unit_sweep, ImaginaryUnit, Octonion, UNIT_TOL};
use crate::error::{Result, SliceError};

/// Sign class of `y` in the lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Positivity {
    Positive,
    Zero,
    Negative,
}

/// Classifies `y` by its first nonzero entry, read from `y_1` onwards.
pub fn is_positive(y: &[f64]) -> Positivity {
    match y.iter().find(|v| **v != 0.0) {
        None => Positivity::Zero,
        Some(v) if *v > 0.0 => Positivity::Positive,
        Some(_) => Positivity::Negative,
    }
}

/// Unit attached to real points.
pub fn default_unit() -> ImaginaryUnit {
    ImaginaryUnit::basis(1)
}

/// A point `x + yI` of the cone in canonical form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoint")]
pub struct SlicePoint {
    x: Vec<f64>,
    y: Vec<f64>,
    #[serde(rename = "I")]
    unit: ImaginaryUnit,
}

#[derive(Deserialize)]
struct RawPoint {
    x: Vec<f64>,
    y: Vec<f64>,
    #[serde(rename = "I")]
    unit: ImaginaryUnit,
}

impl TryFrom<RawPoint> for SlicePoint {
    type Error = SliceError;
    fn try_from(r: RawPoint) -> Result<Self> {
        SlicePoint::new(r.x, r.y, r.unit)
    }
}

impl SlicePoint {
    /// Builds the canonical form of `x + yI`.
    pub fn new(x: Vec<f64>, y: Vec<f64>, unit: ImaginaryUnit) -> Result<Self> {
        if x.len() != y.len() {
            return Err(SliceError::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        if x.is_empty() {
            return Err(SliceError::InvalidArgument("dimension must be >= 1".into()));
        }
        Ok(match is_positive(&y) {
            Positivity::Positive => SlicePoint { x, y, unit },
            Positivity::Zero => SlicePoint {
                x,
                // normalizes -0.0
                y: y.iter().map(|_| 0.0).collect(),
                unit: default_unit(),
            },
            Positivity::Negative => SlicePoint {
                x,
                y: y.iter().map(|v| -v).collect(),
                unit: -unit,
            },
        })
    }

    pub fn real(x: Vec<f64>) -> Self {
        let n = x.len();
        SlicePoint::new(x, vec![0.0; n], default_unit()).expect("real point")
    }

    /// The point with planar coordinates `z` on the slice `C_unit^n`.
    pub fn from_planar(z: &[Complex64], unit: ImaginaryUnit) -> Result<Self> {
        SlicePoint::new(
            z.iter().map(|c| c.re).collect(),
            z.iter().map(|c| c.im).collect(),
            unit,
        )
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }
    pub fn x(&self) -> &[f64] {
        &self.x
    }
    pub fn y(&self) -> &[f64] {
        &self.y
    }
    pub fn unit(&self) -> ImaginaryUnit {
        self.unit
    }
    pub fn is_real(&self) -> bool {
        self.y.iter().all(|v| *v == 0.0)
    }

    /// The `l`-th coordinate `x_l + y_l I` as an octonion.
    pub fn coordinate(&self, l: usize) -> Octonion {
        Octonion::real(self.x[l]) + self.unit.as_octonion() * self.y[l]
    }

    pub fn to_octonions(&self) -> Vec<Octonion> {
        (0..self.dim()).map(|l| self.coordinate(l)).collect()
    }

    /// Planar coordinates of the point on the slice `C_unit^n`, if it lies
    /// on that slice. Real points lie on every slice.
    pub fn planar(&self, unit: &ImaginaryUnit) -> Option<Vec<Complex64>> {
        let sign = if self.is_real() || self.unit.approx_eq(unit, UNIT_TOL) {
            1.0
        } else if self.unit.approx_eq(&-*unit, UNIT_TOL) {
            -1.0
        } else {
            return None;
        };
        Some(
            self.x
                .iter()
                .zip(&self.y)
                .map(|(a, b)| Complex64::new(*a, sign * b))
                .collect(),
        )
    }

    /// The point `x + y J` sharing this point's real coordinates.
    pub fn with_unit(&self, unit: ImaginaryUnit) -> SlicePoint {
        SlicePoint::new(self.x.clone(), self.y.clone(), unit).expect("same dimension")
    }

    /// Euclidean distance in `O^n`.
    pub fn dist(&self, other: &SlicePoint) -> Result<f64> {
        check_dim(self.dim(), other.dim())?;
        Ok((0..self.dim())
            .map(|l| (self.coordinate(l) - other.coordinate(l)).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(SliceError::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Canonical form of `x + yI`; see [`SlicePoint::new`].
pub fn canonicalize(x: Vec<f64>, y: Vec<f64>, unit: ImaginaryUnit) -> Result<SlicePoint> {
    SlicePoint::new(x, y, unit)
}

/// `m` points `x + y J_k` on the sphere orbit of `q`: `q` itself followed by
/// units from [`unit_sweep`].
pub fn axial_orbit(q: &SlicePoint, m: usize) -> Vec<SlicePoint> {
    let mut out = Vec::with_capacity(m);
    if m == 0 {
        return out;
    }
    out.push(q.clone());
    out.extend((0..m - 1).map(|k| q.with_unit(unit_sweep(k))));
    out
}

/// The slice-polydisc: all `x + yJ` whose companions `x +- yI` lie in the
/// closed planar polydisc of radius `radius` around the center on `C_I^n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlicePolydisc {
    center: SlicePoint,
    radius: Vec<f64>,
}

impl SlicePolydisc {
    pub fn new(center: SlicePoint, radius: Vec<f64>) -> Result<Self> {
        check_dim(center.dim(), radius.len())?;
        if radius.iter().any(|r| !(*r > 0.0)) {
            return Err(SliceError::InvalidArgument(
                "polydisc radii must be positive".into(),
            ));
        }
        Ok(SlicePolydisc { center, radius })
    }

    pub fn center(&self) -> &SlicePoint {
        &self.center
    }
    pub fn radius(&self) -> &[f64] {
        &self.radius
    }

    fn planar_contains(&self, c: &[Complex64], w: &[Complex64]) -> bool {
        c.iter()
            .zip(w)
            .zip(&self.radius)
            .all(|((c, w), r)| (c - w).norm() <= *r)
    }

    pub fn contains(&self, q: &SlicePoint) -> Result<bool> {
        check_dim(self.center.dim(), q.dim())?;
        let i = self.center.unit();
        let c = self.center.planar(&i).expect("center lies on its own slice");
        let plus: Vec<Complex64> = q
            .x()
            .iter()
            .zip(q.y())
            .map(|(a, b)| Complex64::new(*a, *b))
            .collect();
        let minus: Vec<Complex64> = plus.iter().map(|z| z.conj()).collect();
        Ok(self.planar_contains(&c, &plus) && self.planar_contains(&c, &minus))
    }
}

/// See [`SlicePolydisc::contains`].
pub fn polydisc_contains(p: &SlicePolydisc, q: &SlicePoint) -> Result<bool> {
    p.contains(q)
}
