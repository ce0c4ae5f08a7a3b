//! Subsets of the quadratic cone built from primitive regions.
//!
//! A [`DomainSpec`] is a finite union of balls, planar tubes carried onto a
//! slice, conjugated tubes and slice-polydiscs. Membership of the union is the
//! disjunction of the primitive predicates. Domains serialize to JSON with a
//! `type` tag per primitive.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::ImaginaryUnit;
use crate::cone::{SlicePoint, SlicePolydisc};
use crate::error::{Result, SliceError};
use crate::path::PlanarPath;
use crate::sampling;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Primitive {
    /// Open Euclidean ball `{q : |q - center| < radius}` in `O^n`.
    Ball { center: SlicePoint, radius: f64 },
    /// `P_unit({z in C^n : dist(z, path) < radius})`, the path running in
    /// the first coordinate with the others zero.
    Tube {
        unit: ImaginaryUnit,
        path: PlanarPath,
        radius: f64,
    },
    /// `P_unit({z : conj(z) in tube(path, radius)})`.
    ConjTube {
        unit: ImaginaryUnit,
        path: PlanarPath,
        radius: f64,
    },
    Polydisc { polydisc: SlicePolydisc },
    Everywhere,
}

fn in_planar_tube(z: &[Complex64], path: &PlanarPath, radius: f64) -> bool {
    let extra: f64 = z[1..].iter().map(|w| w.norm_sqr()).sum();
    if extra >= radius * radius {
        return false;
    }
    path.tube_contains(z[0], extra, radius)
}

impl Primitive {
    pub fn contains(&self, q: &SlicePoint) -> bool {
        match self {
            Primitive::Ball { center, radius } => {
                center.dim() == q.dim() && q.dist(center).map(|d| d < *radius).unwrap_or(false)
            }
            Primitive::Tube { unit, path, radius } => q
                .planar(unit)
                .is_some_and(|z| in_planar_tube(&z, path, *radius)),
            Primitive::ConjTube { unit, path, radius } => q.planar(unit).is_some_and(|z| {
                let zc: Vec<Complex64> = z.iter().map(|w| w.conj()).collect();
                in_planar_tube(&zc, path, *radius)
            }),
            Primitive::Polydisc { polydisc } => polydisc.contains(q).unwrap_or(false),
            Primitive::Everywhere => true,
        }
    }

    /// A point of the primitive's slice structure near the primitive; may
    /// fall outside it (callers reject).
    fn propose<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> SlicePoint {
        match self {
            Primitive::Ball { center, radius } => {
                let unit = if center.is_real() {
                    sampling::unit(rng)
                } else {
                    center.unit()
                };
                let c = center.planar(&center.unit()).expect("own slice");
                let z: Vec<Complex64> = c.iter().map(|w| w + disc_offset(rng, *radius)).collect();
                SlicePoint::from_planar(&z, unit).expect("dimension")
            }
            Primitive::Tube { unit, path, radius } | Primitive::ConjTube { unit, path, radius } => {
                let v = path.vertices(crate::path::SAMPLES_PER_UNIT);
                let base = v[rng.random_range(0..v.len())];
                let mut z: Vec<Complex64> = (0..n).map(|_| disc_offset(rng, *radius / 2.0)).collect();
                z[0] += base;
                if matches!(self, Primitive::ConjTube { .. }) {
                    z.iter_mut().for_each(|w| *w = w.conj());
                }
                SlicePoint::from_planar(&z, *unit).expect("dimension")
            }
            Primitive::Polydisc { polydisc } => {
                let center = polydisc.center();
                let unit = if center.is_real() {
                    sampling::unit(rng)
                } else {
                    center.unit()
                };
                let c = center.planar(&center.unit()).expect("own slice");
                let z: Vec<Complex64> = c
                    .iter()
                    .zip(polydisc.radius())
                    .map(|(w, r)| w + disc_offset(rng, *r))
                    .collect();
                SlicePoint::from_planar(&z, unit).expect("dimension")
            }
            Primitive::Everywhere => {
                let unit = sampling::unit(rng);
                let x = sampling::real_vec(rng, n, -1.0, 1.0);
                let y = sampling::real_vec(rng, n, -1.0, 1.0);
                SlicePoint::new(x, y, unit).expect("dimension")
            }
        }
    }
}

fn disc_offset<R: Rng + ?Sized>(rng: &mut R, r: f64) -> Complex64 {
    let rho = r * rng.random::<f64>().sqrt();
    Complex64::from_polar(rho, rng.random_range(0.0..std::f64::consts::TAU))
}

/// A finite union of primitive regions of `O_s^n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    dim: usize,
    primitives: Vec<Primitive>,
}

impl DomainSpec {
    pub fn new(dim: usize, primitives: Vec<Primitive>) -> Result<Self> {
        if dim == 0 {
            return Err(SliceError::InvalidArgument("dimension must be >= 1".into()));
        }
        Ok(DomainSpec { dim, primitives })
    }

    /// The whole cone `O_s^n`.
    pub fn everywhere(dim: usize) -> Self {
        DomainSpec {
            dim,
            primitives: vec![Primitive::Everywhere],
        }
    }

    pub fn polydisc(p: SlicePolydisc) -> Self {
        DomainSpec {
            dim: p.center().dim(),
            primitives: vec![Primitive::Polydisc { polydisc: p }],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn primitives(&self) -> &[Primitive] {
        &self.primitives
    }

    pub fn contains(&self, q: &SlicePoint) -> bool {
        q.dim() == self.dim && self.primitives.iter().any(|p| p.contains(q))
    }

    /// Indices of all primitives containing `q`.
    pub fn containing(&self, q: &SlicePoint) -> Vec<usize> {
        if q.dim() != self.dim {
            return vec![];
        }
        (0..self.primitives.len())
            .filter(|&i| self.primitives[i].contains(q))
            .collect()
    }

    /// Draws a point of the domain by proposing near a random primitive and
    /// rejecting misses. Returns `None` after `max_tries` misses.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, max_tries: usize) -> Option<SlicePoint> {
        if self.primitives.is_empty() {
            return None;
        }
        for _ in 0..max_tries {
            let p = &self.primitives[rng.random_range(0..self.primitives.len())];
            let q = p.propose(rng, self.dim);
            if self.contains(&q) {
                return Some(q);
            }
        }
        None
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("domain serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| SliceError::InvalidArgument(e.to_string()))
    }
}

/// See [`DomainSpec::contains`].
pub fn domain_contains(domain: &DomainSpec, q: &SlicePoint) -> bool {
    domain.contains(q)
}
