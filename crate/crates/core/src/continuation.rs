//! A weak slice regular square root that is not a slice function.
//!
//! With `theta_1 = (1, 0, ..., 0)`, `alpha` the quarter arc `1 -> i` and
//! `beta` the quarter arc `i -> -1`, the domain is
//!
//! ```text
//! Omega = B(theta_1, 1/2) u B(-theta_1, 1/2) u P_J(U' u V' u V) u P_I(U)
//! ```
//!
//! where `U`, `V` are the radius-1/2 tubes around `alpha`, `beta` and the
//! primes denote complex conjugation. On `C_J` the three tubes chain into
//! one clockwise corridor `1 -> -i -> -1 -> i`, so continuing `sqrt(x_1)`
//! from the real branch reaches `i` with argument `-3 pi / 2`; on `C_I` the
//! corridor is the counter-clockwise arc `1 -> i`. The two values at `i`
//! disagree with the two-point representation formula.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{ImaginaryUnit, Octonion};
use crate::cone::SlicePoint;
use crate::domain::{DomainSpec, Primitive};
use crate::error::{Result, SliceError};
use crate::path::{nearest_on_polyline, PlanarPath, SAMPLES_PER_UNIT};
use crate::slice::{repr_two_point, ConeFunction};

/// A point together with a continuous choice of its argument.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchState {
    pub anchor: [f64; 2],
    pub theta: f64,
}

impl BranchState {
    pub fn new(anchor: Complex64, theta: f64) -> Self {
        BranchState {
            anchor: [anchor.re, anchor.im],
            theta,
        }
    }

    pub fn anchor(&self) -> Complex64 {
        Complex64::new(self.anchor[0], self.anchor[1])
    }

    /// `|anchor|^{1/2} e^{i theta / 2}`.
    pub fn sqrt(&self) -> Complex64 {
        Complex64::from_polar(self.anchor().norm().sqrt(), self.theta / 2.0)
    }

    /// The square root carried onto `C_unit`.
    pub fn sqrt_in(&self, unit: ImaginaryUnit) -> Octonion {
        complex_in(self.sqrt(), unit)
    }
}

fn complex_in(z: Complex64, unit: ImaginaryUnit) -> Octonion {
    Octonion::real(z.re) + unit.as_octonion() * z.im
}

/// Continues the argument along `path` from `theta_start` at its start.
pub fn continue_sqrt(path: &PlanarPath, theta_start: f64) -> Result<BranchState> {
    continue_sqrt_with_density(path, theta_start, SAMPLES_PER_UNIT)
}

/// [`continue_sqrt`] on a discretization with `density` samples per unit
/// length.
pub fn continue_sqrt_with_density(path: &PlanarPath, theta_start: f64, density: f64) -> Result<BranchState> {
    let v = path.vertices(density);
    let z0 = v[0];
    if z0.norm() == 0.0 {
        return Err(SliceError::BranchPointOnPath);
    }
    if (Complex64::from_polar(z0.norm(), theta_start) - z0).norm() > 1e-9 * z0.norm() {
        return Err(SliceError::InvalidArgument(
            "start angle inconsistent with the start point".into(),
        ));
    }
    let mut theta = theta_start;
    for w in v.windows(2) {
        if segment_hits_origin(w[0], w[1]) {
            return Err(SliceError::BranchPointOnPath);
        }
        theta += (w[1] / w[0]).arg();
    }
    Ok(BranchState::new(*v.last().unwrap(), theta))
}

fn segment_hits_origin(a: Complex64, b: Complex64) -> bool {
    nearest_on_polyline(&[a, b], Complex64::new(0.0, 0.0)).1 <= 1e-12 * a.norm().max(b.norm())
}

/// Principal square root of `x + yK` on `C_K`.
fn principal_sqrt(q: Octonion) -> Octonion {
    let re = q.re();
    let im = q.im();
    let y = im.norm();
    if y == 0.0 {
        return if re >= 0.0 {
            Octonion::real(re.sqrt())
        } else {
            Octonion::basis(1) * (-re).sqrt()
        };
    }
    let unit = ImaginaryUnit::normalized(im).expect("nonzero imaginary part");
    complex_in(Complex64::new(re, y).sqrt(), unit)
}

/// The counterexample configuration: dimension, units and the domain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SqrtCounterexample {
    pub n: usize,
    #[serde(rename = "I")]
    pub i: ImaginaryUnit,
    #[serde(rename = "J")]
    pub j: ImaginaryUnit,
    pub domain: DomainSpec,
    /// Discretized corridor on `C_J` with the continued argument per vertex.
    #[serde(skip)]
    track: Vec<(Complex64, f64)>,
}

pub const TUBE_RADIUS: f64 = 0.5;

/// `alpha(t) = e^{i pi t / 2}`.
pub fn alpha_path() -> PlanarPath {
    PlanarPath::arc(Complex64::new(0.0, 0.0), 1.0, 0.0, FRAC_PI_2).expect("arc")
}

/// `beta(t) = e^{i pi (t + 1) / 2}`.
pub fn beta_path() -> PlanarPath {
    PlanarPath::arc(Complex64::new(0.0, 0.0), 1.0, FRAC_PI_2, PI).expect("arc")
}

/// The clockwise corridor `1 -> -i -> -1 -> i` through `U'`, `V'`, `V`.
pub fn corridor_path() -> PlanarPath {
    alpha_path()
        .conj()
        .then(&beta_path().conj())
        .and_then(|p| p.then(&beta_path().reversed()))
        .expect("arcs join")
}

impl Default for SqrtCounterexample {
    fn default() -> Self {
        SqrtCounterexample::new(1, ImaginaryUnit::basis(1), ImaginaryUnit::basis(2)).expect("e1, e2")
    }
}

impl SqrtCounterexample {
    pub fn new(n: usize, i: ImaginaryUnit, j: ImaginaryUnit) -> Result<Self> {
        if n == 0 {
            return Err(SliceError::InvalidArgument("dimension must be >= 1".into()));
        }
        if i.approx_eq(&j, 1e-12) || i.approx_eq(&-j, 1e-12) {
            return Err(SliceError::InvalidArgument("J must differ from +-I".into()));
        }
        let mut theta1 = vec![0.0; n];
        theta1[0] = 1.0;
        let minus: Vec<f64> = theta1.iter().map(|v| -v).collect();
        let r = TUBE_RADIUS;
        let domain = DomainSpec::new(
            n,
            vec![
                Primitive::Ball {
                    center: SlicePoint::real(theta1),
                    radius: r,
                },
                Primitive::Ball {
                    center: SlicePoint::real(minus),
                    radius: r,
                },
                Primitive::ConjTube {
                    unit: j,
                    path: alpha_path(),
                    radius: r,
                },
                Primitive::ConjTube {
                    unit: j,
                    path: beta_path(),
                    radius: r,
                },
                Primitive::Tube {
                    unit: j,
                    path: beta_path(),
                    radius: r,
                },
                Primitive::Tube {
                    unit: i,
                    path: alpha_path(),
                    radius: r,
                },
            ],
        )?;
        let mut cfg = SqrtCounterexample {
            n,
            i,
            j,
            domain,
            track: vec![],
        };
        cfg.build_track()?;
        Ok(cfg)
    }

    fn build_track(&mut self) -> Result<()> {
        let v = corridor_path().vertices(SAMPLES_PER_UNIT);
        let mut theta = 0.0;
        let mut track = vec![(v[0], theta)];
        for w in v.windows(2) {
            if segment_hits_origin(w[0], w[1]) {
                return Err(SliceError::BranchPointOnPath);
            }
            theta += (w[1] / w[0]).arg();
            track.push((w[1], theta));
        }
        self.track = track;
        Ok(())
    }

    /// `theta_1 K` for a unit `K`.
    pub fn theta1_times(&self, unit: ImaginaryUnit, sign: f64) -> SlicePoint {
        let mut y = vec![0.0; self.n];
        y[0] = sign;
        SlicePoint::new(vec![0.0; self.n], y, unit).expect("dimension")
    }

    fn tracked_sqrt(&self, z: Complex64) -> Complex64 {
        let pts: Vec<Complex64> = self.track.iter().map(|(p, _)| *p).collect();
        let (k, _, _) = nearest_on_polyline(&pts, z);
        let (v, theta_v) = self.track[k];
        BranchState::new(z, theta_v + (z / v).arg()).sqrt()
    }

    /// Index of the primitive used to evaluate `q`, if any.
    fn route(&self, q: &SlicePoint) -> Option<usize> {
        self.domain.primitives().iter().position(|p| p.contains(q))
    }

    /// The weak slice regular extension of `sqrt(x_1)` at `q`.
    pub fn eval(&self, q: &SlicePoint) -> Result<Octonion> {
        if q.dim() != self.n {
            return Err(SliceError::DimensionMismatch {
                expected: self.n,
                got: q.dim(),
            });
        }
        let q1 = q.coordinate(0);
        match self.route(q) {
            Some(0) => Ok(principal_sqrt(q1)),
            // sqrt(-1) = -J on the corridor, where -1 has argument -pi
            Some(1) => Ok(principal_sqrt(-q1) * (-self.j.as_octonion())),
            Some(2..=4) => {
                let z = q.planar(&self.j).expect("tube point lies on C_J")[0];
                Ok(complex_in(self.tracked_sqrt(z), self.j))
            }
            Some(5) => {
                let z = q.planar(&self.i).expect("tube point lies on C_I")[0];
                Ok(complex_in(z.sqrt(), self.i))
            }
            _ => Err(SliceError::OutsideDomain),
        }
    }

    /// The extension as a function on its domain.
    pub fn function(&self) -> ConeFunction {
        let cfg = self.clone();
        ConeFunction::try_new(self.domain.clone(), move |q| cfg.eval(q))
    }

    /// The values at `theta_1 J`, `-theta_1 J` and `theta_1 I`.
    pub fn value_table(&self) -> Result<ValueTable> {
        Ok(ValueTable {
            theta1_j: self.eval(&self.theta1_times(self.j, 1.0))?,
            minus_theta1_j: self.eval(&self.theta1_times(self.j, -1.0))?,
            theta1_i: self.eval(&self.theta1_times(self.i, 1.0))?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueTable {
    pub theta1_j: Octonion,
    pub minus_theta1_j: Octonion,
    pub theta1_i: Octonion,
}

/// See [`SqrtCounterexample::eval`]; `domain` must be the configuration's.
pub fn eval_weak_sqrt(q: &SlicePoint, cfg: &SqrtCounterexample) -> Result<Octonion> {
    cfg.eval(q)
}

/// `|f(theta_1 I) - rhs|` where `rhs` is the two-point formula built from
/// `f(+-theta_1 J)`.
pub fn verify_not_slice(cfg: &SqrtCounterexample) -> Result<f64> {
    residual_at_theta1(&cfg.function(), cfg.n, cfg.i, cfg.j)
}

/// The same test applied to any function defined at `theta_1 I` and
/// `+-theta_1 J`.
pub fn residual_at_theta1(f: &ConeFunction, n: usize, i: ImaginaryUnit, j: ImaginaryUnit) -> Result<f64> {
    let x = vec![0.0; n];
    let mut y = vec![0.0; n];
    y[0] = 1.0;
    let lhs = f.eval_at(&x, &y, i)?;
    let rhs = repr_two_point(f, i, j, &x, &y)?;
    Ok(lhs.dist(&rhs))
}

/// `sqrt(2 + 2 <I, J>)`, the closed form of [`verify_not_slice`].
pub fn expected_residual(i: ImaginaryUnit, j: ImaginaryUnit) -> f64 {
    (2.0 + 2.0 * i.dot(&j)).max(0.0).sqrt()
}

/// `(-1 - J) / sqrt 2`.
pub fn expected_theta1_j(j: ImaginaryUnit) -> Octonion {
    (Octonion::real(-1.0) - j.as_octonion()) * FRAC_1_SQRT_2
}

/// `(1 - J) / sqrt 2`.
pub fn expected_minus_theta1_j(j: ImaginaryUnit) -> Octonion {
    (Octonion::ONE - j.as_octonion()) * FRAC_1_SQRT_2
}
