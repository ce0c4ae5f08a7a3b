//! Finite-difference regularity tests.
//!
//! Weak regularity asks that every restriction `f_I` be holomorphic for the
//! complex structure of `C_I`; strong regularity asks that the stem solve the
//! `sigma`-Cauchy-Riemann system. Both are checked with symmetric central
//! differences, so residuals of holomorphic inputs are `O(h^2)` and step
//! halving divides them by about four.

use nalgebra::{SVector, LU, U8};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{unit_sweep, ImaginaryUnit, Mat8, Octonion, SBasis};
use crate::cone::{check_dim, SlicePoint};
use crate::domain::DomainSpec;
use crate::error::{Result, SliceError};
use crate::slice::{ConeFunction, StemFunction, StemValue};

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CRReport {
    /// One residual per variable.
    pub residuals: Vec<f64>,
    pub h: f64,
    /// `max residual at h / max residual at h/2`, when both were computed.
    pub ratio: Option<f64>,
}

impl CRReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

fn check_step(h: f64) -> Result<()> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(SliceError::NonPositiveStep(h));
    }
    Ok(())
}

/// Planar coordinates of `z` on `C_I`.
fn on_slice(z: &SlicePoint, unit: ImaginaryUnit) -> Result<Vec<Complex64>> {
    z.planar(&unit)
        .ok_or_else(|| SliceError::InvalidArgument("point not on the slice".into()))
}

/// `f` on `C_I` in planar coordinates.
fn eval_planar(f: &ConeFunction, unit: ImaginaryUnit, z: &[Complex64]) -> Result<Octonion> {
    f.eval(&SlicePoint::from_planar(z, unit)?)
}

/// Central differences of `f_I` along `x_m` and `y_m`.
fn partials(
    f: &ConeFunction,
    unit: ImaginaryUnit,
    z: &[Complex64],
    m: usize,
    h: f64,
) -> Result<(Octonion, Octonion)> {
    let shifted = |d: Complex64| -> Result<Octonion> {
        let mut w = z.to_vec();
        w[m] += d;
        eval_planar(f, unit, &w)
    };
    let dx = (shifted(Complex64::new(h, 0.0))? - shifted(Complex64::new(-h, 0.0))?) / (2.0 * h);
    let dy = (shifted(Complex64::new(0.0, h))? - shifted(Complex64::new(0.0, -h))?) / (2.0 * h);
    Ok((dx, dy))
}

/// `|1/2 (d/dx_m + I d/dy_m) f_I|` at `z` for each `m`.
pub fn cr_residual_slice(
    f: &ConeFunction,
    unit: ImaginaryUnit,
    z: &SlicePoint,
    h: f64,
) -> Result<CRReport> {
    check_step(h)?;
    let zc = on_slice(z, unit)?;
    let residuals = (0..zc.len())
        .map(|m| {
            let (dx, dy) = partials(f, unit, &zc, m, h)?;
            Ok(((dx + unit.as_octonion() * dy) * 0.5).norm())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CRReport {
        residuals,
        h,
        ratio: None,
    })
}

/// [`cr_residual_slice`] at `h`, with the ratio against `h/2` filled in.
pub fn cr_convergence(
    f: &ConeFunction,
    unit: ImaginaryUnit,
    z: &SlicePoint,
    h: f64,
) -> Result<CRReport> {
    let mut coarse = cr_residual_slice(f, unit, z, h)?;
    let fine = cr_residual_slice(f, unit, z, h / 2.0)?;
    coarse.ratio = Some(coarse.max_residual() / fine.max_residual());
    Ok(coarse)
}

fn sigma(g: StemValue) -> StemValue {
    StemValue::new(-g.f2, g.f1)
}

/// `|1/2 (d/dx_m + sigma d/dy_m) F|` at `(x, y)` for each `m`, where
/// `sigma(G1, G2) = (-G2, G1)`.
pub fn stem_cr_residual(stem: &StemFunction, x: &[f64], y: &[f64], h: f64) -> Result<CRReport> {
    check_step(h)?;
    check_dim(stem.dim(), x.len())?;
    check_dim(stem.dim(), y.len())?;
    let diff = |m: usize, along_y: bool| -> Result<StemValue> {
        let (mut xp, mut yp) = (x.to_vec(), y.to_vec());
        let (mut xm, mut ym) = (x.to_vec(), y.to_vec());
        if along_y {
            yp[m] += h;
            ym[m] -= h;
        } else {
            xp[m] += h;
            xm[m] -= h;
        }
        let p = stem.eval(&xp, &yp)?;
        let q = stem.eval(&xm, &ym)?;
        Ok(StemValue::new((p.f1 - q.f1) / (2.0 * h), (p.f2 - q.f2) / (2.0 * h)))
    };
    let residuals = (0..x.len())
        .map(|m| {
            let dx = diff(m, false)?;
            let dy = sigma(diff(m, true)?);
            Ok(StemValue::new((dx.f1 + dy.f1) * 0.5, (dx.f2 + dy.f2) * 0.5).norm())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CRReport {
        residuals,
        h,
        ratio: None,
    })
}

/// The splitting `f_I = F1 + F2 J + F3 K + F4 (JK)` with `C_I`-valued parts.
#[derive(Clone, Debug)]
pub struct SplitComponents {
    basis: SBasis,
    f: ConeFunction,
    lu: LU<f64, U8, U8>,
}

impl SplitComponents {
    pub fn basis(&self) -> &SBasis {
        &self.basis
    }

    /// `[F1, F2, F3, F4]` of an octonion value, each in `C_I`.
    pub fn split_value(&self, v: Octonion) -> Result<[Octonion; 4]> {
        let c = self
            .lu
            .solve(&SVector::<f64, 8>::from(v.coeffs()))
            .ok_or(SliceError::NotSBasis)?;
        let i = self.basis.i().as_octonion();
        Ok(std::array::from_fn(|p| {
            Octonion::real(c[2 * p]) + i * c[2 * p + 1]
        }))
    }

    /// The four components of `f` at `z`, which must lie on `C_I`.
    pub fn eval(&self, z: &SlicePoint) -> Result<[Octonion; 4]> {
        let zc = on_slice(z, self.basis.i())?;
        self.split_value(eval_planar(&self.f, self.basis.i(), &zc)?)
    }

    /// `F1 + F2 J + F3 K + F4 (JK)`.
    pub fn recompose(&self, parts: &[Octonion; 4]) -> Octonion {
        let j = self.basis.j().as_octonion();
        let k = self.basis.k().as_octonion();
        parts[0] + parts[1] * j + parts[2] * k + parts[3] * (j * k)
    }

    /// `|recompose(split(f(z))) - f(z)|`.
    pub fn round_trip_residual(&self, z: &SlicePoint) -> Result<f64> {
        let v = self.f.eval(z)?;
        Ok((self.recompose(&self.eval(z)?) - v).norm())
    }
}

pub fn split_components(f: &ConeFunction, basis: SBasis) -> Result<SplitComponents> {
    let m: Mat8 = basis.basis_matrix();
    let lu = m.lu();
    if !lu.is_invertible() {
        return Err(SliceError::NotSBasis);
    }
    Ok(SplitComponents {
        basis,
        f: f.clone(),
        lu,
    })
}

/// `1/2 (d/dx_l - I d/dy_l) f_I` at `z` on `C_I`.
pub fn slice_derivative_il(
    f: &ConeFunction,
    unit: ImaginaryUnit,
    l: usize,
    z: &SlicePoint,
    h: f64,
) -> Result<Octonion> {
    check_step(h)?;
    let zc = on_slice(z, unit)?;
    check_index(l, zc.len())?;
    let (dx, dy) = partials(f, unit, &zc, l, h)?;
    Ok((dx - unit.as_octonion() * dy) * 0.5)
}

/// `d/dx_l f` at `q`, along the real direction of the `l`-th coordinate.
pub fn slice_derivative_l(f: &ConeFunction, l: usize, q: &SlicePoint, h: f64) -> Result<Octonion> {
    check_step(h)?;
    check_index(l, q.dim())?;
    let shifted = |d: f64| {
        let mut x = q.x().to_vec();
        x[l] += d;
        f.eval(&SlicePoint::new(x, q.y().to_vec(), q.unit())?)
    };
    Ok((shifted(h)? - shifted(-h)?) / (2.0 * h))
}

fn check_index(l: usize, n: usize) -> Result<()> {
    if l >= n {
        return Err(SliceError::InvalidArgument(format!(
            "variable index {l} out of range for dimension {n}"
        )));
    }
    Ok(())
}

/// One CR measurement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CRRecord {
    pub point: SlicePoint,
    pub unit: ImaginaryUnit,
    pub variable: usize,
    pub h: f64,
    pub residual: f64,
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakRegularityReport {
    pub max_residual: f64,
    pub records: Vec<CRRecord>,
    /// Sampled points whose stencil left the domain.
    pub skipped: usize,
}

/// Max CR residual over `units` sweep units and up to `probes` domain points
/// per unit. Points are drawn from `domain` and moved onto each unit; probes
/// whose stencil leaves the domain are skipped.
pub fn weak_regularity_report<R: Rng + ?Sized>(
    f: &ConeFunction,
    domain: &DomainSpec,
    units: usize,
    probes: usize,
    h: f64,
    rng: &mut R,
) -> Result<WeakRegularityReport> {
    check_step(h)?;
    let mut records = Vec::new();
    let mut skipped = 0;
    for k in 0..units {
        let unit = unit_sweep(k);
        for _ in 0..probes {
            let Some(q) = domain.sample(rng, 1000) else {
                continue;
            };
            let z = q.with_unit(unit);
            if !domain.contains(&z) {
                skipped += 1;
                continue;
            }
            match cr_residual_slice(f, unit, &z, h) {
                Ok(rep) => records.extend(rep.residuals.iter().enumerate().map(|(m, r)| {
                    CRRecord {
                        point: z.clone(),
                        unit,
                        variable: m,
                        h,
                        residual: *r,
                        ratio: None,
                    }
                })),
                Err(SliceError::OutsideDomain) => skipped += 1,
                Err(e) => return Err(e),
            }
        }
    }
    let max_residual = records.iter().map(|r| r.residual).fold(0.0, f64::max);
    Ok(WeakRegularityReport {
        max_residual,
        records,
        skipped,
    })
}
