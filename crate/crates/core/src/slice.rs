//! Stem functions, slice functions and their representation formulas.
//!
//! A stem `F = (F1, F2)` induces the slice function
//! `f(x + yI) = F1(x, y) + I F2(x, y)`. Conversely, the values of a slice
//! function on two slices `C_J`, `C_K` determine its stem through the inverse
//! of the operator matrix `[[1, L_J], [1, L_K]]`, and from there its value on
//! any third slice. The four evaluators below are equivalent forms of that
//! reconstruction; on functions that are not slice they disagree with direct
//! evaluation, which is what [`sliceness_residual`] measures.
//!
//! Octonion products in the linear forms follow the displayed bracketing:
//! every bracket is one multiplication.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{block_inverse, unit_sweep, ImaginaryUnit, Octonion, UNIT_SEPARATION_MIN};
use crate::cone::{check_dim, is_positive, Positivity, SlicePoint};
use crate::domain::DomainSpec;
use crate::error::{Result, SliceError};

/// A column `(F1, F2)^T` of `O^{2x1}`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct StemValue {
    pub f1: Octonion,
    pub f2: Octonion,
}

impl StemValue {
    pub fn new(f1: Octonion, f2: Octonion) -> Self {
        StemValue { f1, f2 }
    }

    /// `(1, I) (F1, F2)^T = F1 + I F2`.
    pub fn at_unit(&self, unit: ImaginaryUnit) -> Octonion {
        self.f1 + unit.as_octonion() * self.f2
    }

    pub fn norm(&self) -> f64 {
        (self.f1.norm_sqr() + self.f2.norm_sqr()).sqrt()
    }

    pub fn dist(&self, other: &StemValue) -> f64 {
        StemValue::new(self.f1 - other.f1, self.f2 - other.f2).norm()
    }
}

type StemFn = dyn Fn(&[f64], &[f64]) -> Result<StemValue> + Send + Sync;
type PointFn = dyn Fn(&SlicePoint) -> Result<Octonion> + Send + Sync;

/// A map `(x, y) -> (F1, F2)` on `R^{2n}`.
#[derive(Clone)]
pub struct StemFunction {
    dim: usize,
    eval: Arc<StemFn>,
}

impl fmt::Debug for StemFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StemFunction").field("dim", &self.dim).finish()
    }
}

impl StemFunction {
    pub fn new<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&[f64], &[f64]) -> StemValue + Send + Sync + 'static,
    {
        StemFunction {
            dim,
            eval: Arc::new(move |x, y| Ok(f(x, y))),
        }
    }

    /// A stem whose evaluator may fail, e.g. outside its domain.
    pub fn try_new<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&[f64], &[f64]) -> Result<StemValue> + Send + Sync + 'static,
    {
        StemFunction {
            dim,
            eval: Arc::new(f),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<StemValue> {
        check_dim(self.dim, x.len())?;
        check_dim(self.dim, y.len())?;
        (self.eval)(x, y)
    }

    /// The slice function induced by this stem, defined everywhere the stem is.
    pub fn induced(&self) -> ConeFunction {
        let stem = self.clone();
        ConeFunction::try_new(DomainSpec::everywhere(self.dim), move |q| {
            eval_from_stem(&stem, q)
        })
    }
}

/// A function on (part of) the cone, given as an evaluator plus its domain.
#[derive(Clone)]
pub struct ConeFunction {
    domain: DomainSpec,
    eval: Arc<PointFn>,
}

impl fmt::Debug for ConeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConeFunction")
            .field("dim", &self.domain.dim())
            .finish()
    }
}

impl ConeFunction {
    /// A function defined on all of `O_s^n`.
    pub fn new<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&SlicePoint) -> Octonion + Send + Sync + 'static,
    {
        ConeFunction {
            domain: DomainSpec::everywhere(dim),
            eval: Arc::new(move |q| Ok(f(q))),
        }
    }

    pub fn try_new<F>(domain: DomainSpec, f: F) -> Self
    where
        F: Fn(&SlicePoint) -> Result<Octonion> + Send + Sync + 'static,
    {
        ConeFunction {
            domain,
            eval: Arc::new(f),
        }
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn eval(&self, q: &SlicePoint) -> Result<Octonion> {
        check_dim(self.dim(), q.dim())?;
        if !self.domain.contains(q) {
            return Err(SliceError::OutsideDomain);
        }
        (self.eval)(q)
    }

    /// `f(x + yI)` for raw (not necessarily canonical) coordinates.
    pub fn eval_at(&self, x: &[f64], y: &[f64], unit: ImaginaryUnit) -> Result<Octonion> {
        self.eval(&SlicePoint::new(x.to_vec(), y.to_vec(), unit)?)
    }
}

/// `F1(x, y) + I F2(x, y)` at the canonical coordinates of `q`.
pub fn eval_from_stem(stem: &StemFunction, q: &SlicePoint) -> Result<Octonion> {
    Ok(stem.eval(q.x(), q.y())?.at_unit(q.unit()))
}

/// Recovers the stem of `f` from its values on `C_J` and `C_K`.
pub fn stem_from_two_slices(
    f: &ConeFunction,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
) -> Result<StemFunction> {
    let inv = block_inverse(j, k)?;
    let f = f.clone();
    Ok(StemFunction::try_new(f.dim(), move |x, y| {
        let fj = f.eval_at(x, y, j)?;
        let fk = f.eval_at(x, y, k)?;
        let (f1, f2) = inv.apply((fj, fk));
        Ok(StemValue::new(f1, f2))
    }))
}

fn check_distinct(j: ImaginaryUnit, k: ImaginaryUnit) -> Result<()> {
    if j.as_octonion().dist(&k.as_octonion()) < UNIT_SEPARATION_MIN {
        return Err(SliceError::UnitsMustDiffer);
    }
    Ok(())
}

/// `(J - K)^{-1}` as an octonion; `J - K` is purely imaginary so this is
/// `conj(J - K) / |J - K|^2`.
fn unit_difference_inv(j: ImaginaryUnit, k: ImaginaryUnit) -> Result<Octonion> {
    check_distinct(j, k)?;
    (j.as_octonion() - k.as_octonion()).inv()
}

/// Matrix form: `(1, L_I) [[1, L_J], [1, L_K]]^{-1} (f(x+yJ), f(x+yK))^T`.
pub fn repr_matrix(
    f: &ConeFunction,
    i: ImaginaryUnit,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
    x: &[f64],
    y: &[f64],
) -> Result<Octonion> {
    let inv = block_inverse(j, k)?;
    let fj = f.eval_at(x, y, j)?;
    let fk = f.eval_at(x, y, k)?;
    let (f1, f2) = inv.apply((fj, fk));
    Ok(StemValue::new(f1, f2).at_unit(i))
}

/// Linear form in the unit:
/// `(J-K)^{-1}[J f(x+yJ) - K f(x+yK)] + I{(J-K)^{-1}[f(x+yJ) - f(x+yK)]}`.
pub fn repr_linear_unit(
    f: &ConeFunction,
    i: ImaginaryUnit,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
    x: &[f64],
    y: &[f64],
) -> Result<Octonion> {
    let d = unit_difference_inv(j, k)?;
    let fj = f.eval_at(x, y, j)?;
    let fk = f.eval_at(x, y, k)?;
    let (jq, kq) = (j.as_octonion(), k.as_octonion());
    let first = d * (jq * fj - kq * fk);
    let second = i.as_octonion() * (d * (fj - fk));
    Ok(first + second)
}

/// Linear form in the function values:
/// `(I-K)[(J-K)^{-1} f(x+yJ)] + (I-J)[(K-J)^{-1} f(x+yK)]`.
pub fn repr_linear_function(
    f: &ConeFunction,
    i: ImaginaryUnit,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
    x: &[f64],
    y: &[f64],
) -> Result<Octonion> {
    let djk = unit_difference_inv(j, k)?;
    let dkj = -djk;
    let fj = f.eval_at(x, y, j)?;
    let fk = f.eval_at(x, y, k)?;
    let (iq, jq, kq) = (i.as_octonion(), j.as_octonion(), k.as_octonion());
    Ok((iq - kq) * (djk * fj) + (iq - jq) * (dkj * fk))
}

/// Two-point formula from `x +- yJ`:
/// `1/2 [f(x+yJ) + f(x-yJ)] - I/2 {J [f(x+yJ) - f(x-yJ)]}`.
pub fn repr_two_point(
    f: &ConeFunction,
    i: ImaginaryUnit,
    j: ImaginaryUnit,
    x: &[f64],
    y: &[f64],
) -> Result<Octonion> {
    let plus = f.eval_at(x, y, j)?;
    let minus = f.eval_at(x, y, -j)?;
    let jq = j.as_octonion();
    Ok((plus + minus) * 0.5 - (i.as_octonion() * (jq * (plus - minus))) * 0.5)
}

/// The stem built from the values of `f` on `C_I` and `C_{-I}`:
/// `F(u, v) = (1/2 [f(u+vI) + f(u-vI)], -1/2 I [f(u+vI) - f(u-vI)])`.
pub fn stem_from_function(f: &ConeFunction, i: ImaginaryUnit) -> StemFunction {
    let f = f.clone();
    StemFunction::try_new(f.dim(), move |u, v| {
        let plus = f.eval_at(u, v, i)?;
        let minus = f.eval_at(u, v, -i)?;
        Ok(StemValue::new(
            (plus + minus) * 0.5,
            (i.as_octonion() * (plus - minus)) * -0.5,
        ))
    })
}

/// Even/odd extension of a stem to all of `R^{2n}`: the stem is read on the
/// upper half-space and reflected as `(F1(x, -y), -F2(x, -y))` below it.
#[derive(Clone, Debug)]
pub struct IntrinsicStem {
    stem: StemFunction,
}

impl IntrinsicStem {
    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<StemValue> {
        match is_positive(y) {
            Positivity::Negative => {
                let neg: Vec<f64> = y.iter().map(|v| -v).collect();
                let v = self.stem.eval(x, &neg)?;
                Ok(StemValue::new(v.f1, -v.f2))
            }
            _ => self.stem.eval(x, y),
        }
    }

    /// `|G(x, -y) - (G1(x, y), -G2(x, y))|`.
    pub fn symmetry_residual(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        let neg: Vec<f64> = y.iter().map(|v| -v).collect();
        let at = self.eval(x, y)?;
        let mirrored = self.eval(x, &neg)?;
        Ok(mirrored.dist(&StemValue::new(at.f1, -at.f2)))
    }
}

pub fn stem_to_intrinsic(stem: &StemFunction) -> IntrinsicStem {
    IntrinsicStem { stem: stem.clone() }
}

/// Arguments of one representation-formula check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReprProbe {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    #[serde(rename = "I")]
    pub i: ImaginaryUnit,
    #[serde(rename = "J")]
    pub j: ImaginaryUnit,
    #[serde(rename = "K")]
    pub k: ImaginaryUnit,
}

impl ReprProbe {
    /// Seeded probe: `(x, y)` uniform in `[-half_width, half_width]^{2n}`,
    /// units drawn from the deterministic sweep with `|J - K| >= 1e-3`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize, half_width: f64) -> Self {
        let x = crate::sampling::real_vec(rng, dim, -half_width, half_width);
        let y = crate::sampling::real_vec(rng, dim, -half_width, half_width);
        let mut draw = || unit_sweep(rng.random_range(0..100_000));
        let i = draw();
        let j = draw();
        let mut k = draw();
        while j.as_octonion().dist(&k.as_octonion()) < 1e-3 {
            k = draw();
        }
        ReprProbe { x, y, i, j, k }
    }
}

/// One line of a residual report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub probe: ReprProbe,
    pub lhs: Octonion,
    pub rhs: Octonion,
    pub residual: f64,
}

/// Compares `f(x + yI)` with the matrix-form reconstruction at each probe.
pub fn sliceness_records(f: &ConeFunction, probes: &[ReprProbe]) -> Result<Vec<ResidualRecord>> {
    probes
        .iter()
        .map(|p| {
            let lhs = f.eval_at(&p.x, &p.y, p.i)?;
            let rhs = repr_matrix(f, p.i, p.j, p.k, &p.x, &p.y)?;
            Ok(ResidualRecord {
                probe: p.clone(),
                lhs,
                rhs,
                residual: lhs.dist(&rhs),
            })
        })
        .collect()
}

/// `max |f(x + yI) - repr_matrix(f, I, J, K, x, y)|` over the probes.
pub fn sliceness_residual(f: &ConeFunction, probes: &[ReprProbe]) -> Result<f64> {
    Ok(sliceness_records(f, probes)?
        .iter()
        .map(|r| r.residual)
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(i: usize) -> ImaginaryUnit {
        ImaginaryUnit::basis(i)
    }
    fn e(i: usize) -> Octonion {
        Octonion::basis(i)
    }

    fn identity_stem() -> StemFunction {
        StemFunction::new(1, |x, y| StemValue::new(x[0].into(), y[0].into()))
    }

    fn square_stem() -> StemFunction {
        StemFunction::new(1, |x, y| {
            StemValue::new((x[0] * x[0] - y[0] * y[0]).into(), (2.0 * x[0] * y[0]).into())
        })
    }

    fn conj_stem() -> StemFunction {
        StemFunction::new(1, |x, y| StemValue::new(x[0].into(), (-y[0]).into()))
    }

    fn pt(x: f64, y: f64, i: usize) -> SlicePoint {
        SlicePoint::new(vec![x], vec![y], u(i)).unwrap()
    }

    #[test]
    fn eval_from_stem_examples() {
        assert_eq!(eval_from_stem(&identity_stem(), &pt(0.0, 1.0, 3)).unwrap(), e(3));
        let q = Octonion::ONE + e(2);
        let got = eval_from_stem(&square_stem(), &pt(1.0, 1.0, 2)).unwrap();
        assert!((got - q * q).norm() < 1e-15);
        assert!((got - e(2) * 2.0).norm() < 1e-15);
        // real points: F2(x, 0) = 0 so the unit is irrelevant
        let r = eval_from_stem(&square_stem(), &SlicePoint::real(vec![3.0])).unwrap();
        assert_eq!(r, Octonion::real(9.0));
    }

    #[test]
    fn stem_dimension_checked() {
        assert!(identity_stem().eval(&[1.0, 2.0], &[0.0, 0.0]).is_err());
    }

    #[test]
    fn two_slice_reconstruction_of_identity() {
        let f = identity_stem().induced();
        let stem = stem_from_two_slices(&f, u(1), u(2)).unwrap();
        let q = pt(0.3, 0.7, 5);
        let got = eval_from_stem(&stem, &q).unwrap();
        assert!((got - (Octonion::real(0.3) + e(5) * 0.7)).norm() < 1e-12);
    }

    #[test]
    fn two_slice_reconstruction_of_constant() {
        let c = Octonion::new([1.0, -2.0, 0.5, 0.0, 3.0, 0.0, 1.0, -1.0]);
        let f = ConeFunction::new(1, move |_| c);
        let stem = stem_from_two_slices(&f, u(3), u(6)).unwrap();
        for (x, y) in [(0.0, 1.0), (2.0, 0.5), (-1.0, 3.0)] {
            let v = stem.eval(&[x], &[y]).unwrap();
            assert!((v.f1 - c).norm() < 1e-14);
            assert!(v.f2.norm() < 1e-14);
        }
    }

    #[test]
    fn two_slice_reconstruction_of_square_antipodal() {
        let f = square_stem().induced();
        let stem = stem_from_two_slices(&f, u(1), -u(1)).unwrap();
        let (x, y) = (0.8, 1.3);
        let v = stem.eval(&[x], &[y]).unwrap();
        assert!((v.f1 - Octonion::real(x * x - y * y)).norm() < 1e-12);
        assert!((v.f2 - Octonion::real(2.0 * x * y)).norm() < 1e-12);
        assert_eq!(
            stem_from_two_slices(&f, u(1), u(1)).err(),
            Some(SliceError::UnitsMustDiffer)
        );
    }

    #[test]
    fn representation_examples() {
        let id = identity_stem().induced();
        let x = [0.0];
        let y = [1.0];
        let m = repr_matrix(&id, u(3), u(1), u(2), &x, &y).unwrap();
        assert!((m - e(3)).norm() < 1e-12);
        let li = repr_linear_unit(&id, u(3), u(1), u(2), &x, &y).unwrap();
        let lf = repr_linear_function(&id, u(3), u(1), u(2), &x, &y).unwrap();
        assert!((li - m).norm() < 1e-12);
        assert!((lf - m).norm() < 1e-12);

        let conj = conj_stem().induced();
        let m = repr_matrix(&conj, u(2), u(1), -u(1), &[1.0], &[1.0]).unwrap();
        assert!((m - (Octonion::ONE - e(2))).norm() < 1e-12);
        let li = repr_linear_unit(&conj, u(2), u(1), -u(1), &[1.0], &[1.0]).unwrap();
        let lf = repr_linear_function(&conj, u(2), u(1), -u(1), &[1.0], &[1.0]).unwrap();
        assert!((li - m).norm() < 1e-12);
        assert!((lf - m).norm() < 1e-12);
    }

    #[test]
    fn real_points_reproduce_value() {
        let f = square_stem().induced();
        let want = f.eval(&SlicePoint::real(vec![1.7])).unwrap();
        for g in [repr_matrix, repr_linear_unit, repr_linear_function] {
            let got = g(&f, u(4), u(1), u(7), &[1.7], &[0.0]).unwrap();
            assert!((got - want).norm() < 1e-14);
        }
        let got = repr_two_point(&f, u(4), u(1), &[1.7], &[0.0]).unwrap();
        assert!((got - want).norm() < 1e-14);
    }

    #[test]
    fn interpolation_nodes_exact() {
        let id = identity_stem().induced();
        let (x, y) = ([0.4], [0.9]);
        let fj = id.eval_at(&x, &y, u(1)).unwrap();
        let fk = id.eval_at(&x, &y, u(2)).unwrap();
        let li = repr_linear_unit(&id, u(1), u(1), u(2), &x, &y).unwrap();
        assert!((li - fj).norm() < 1e-15);
        let lf = repr_linear_function(&id, u(1), u(1), u(2), &x, &y).unwrap();
        assert!((lf - fj).norm() < 1e-15);
        let lf = repr_linear_function(&id, u(2), u(1), u(2), &x, &y).unwrap();
        assert!((lf - fk).norm() < 1e-15);
        let tp = repr_two_point(&id, u(1), u(1), &x, &y).unwrap();
        assert!((tp - fj).norm() < 1e-15);
    }

    #[test]
    fn two_point_identity() {
        let id = identity_stem().induced();
        let got = repr_two_point(&id, u(4), u(1), &[0.0], &[1.0]).unwrap();
        assert!((got - e(4)).norm() < 1e-15);
    }

    #[test]
    fn stem_from_function_examples() {
        let id = identity_stem().induced();
        let s = stem_from_function(&id, u(1));
        let v = s.eval(&[0.4], &[1.5]).unwrap();
        assert!((v.f1 - Octonion::real(0.4)).norm() < 1e-15);
        assert!((v.f2 - Octonion::real(1.5)).norm() < 1e-15);

        let sq = square_stem().induced();
        let s = stem_from_function(&sq, u(2));
        let (a, b) = (0.7, -1.1);
        let v = s.eval(&[a], &[b]).unwrap();
        assert!((v.f1 - Octonion::real(a * a - b * b)).norm() < 1e-12);
        assert!((v.f2 - Octonion::real(2.0 * a * b)).norm() < 1e-12);
    }

    #[test]
    fn intrinsic_extension() {
        let s = stem_to_intrinsic(&identity_stem());
        let v = s.eval(&[0.5], &[-2.0]).unwrap();
        assert_eq!(v, StemValue::new(Octonion::real(0.5), Octonion::real(-2.0)));
        assert_eq!(s.symmetry_residual(&[0.5], &[2.0]).unwrap(), 0.0);
        let z = s.eval(&[0.5], &[0.0]).unwrap();
        assert_eq!(z.f2, Octonion::ZERO);
    }

    #[test]
    fn sliceness_of_constant_is_exact() {
        let c = Octonion::new([0.5, 1.0, 0.0, 0.0, -2.0, 0.0, 0.0, 0.25]);
        let f = ConeFunction::new(1, move |_| c);
        let mut rng = crate::sampling::rng(1);
        let probes: Vec<ReprProbe> = (0..50).map(|_| ReprProbe::random(&mut rng, 1, 2.0)).collect();
        assert!(sliceness_residual(&f, &probes).unwrap() < 1e-13);
    }

    #[test]
    fn outside_domain_is_an_error() {
        let disc = crate::cone::SlicePolydisc::new(SlicePoint::real(vec![0.0]), vec![1.0]).unwrap();
        let f = ConeFunction::try_new(DomainSpec::polydisc(disc), |q| Ok(q.coordinate(0)));
        assert_eq!(f.eval(&pt(3.0, 0.0, 1)).err(), Some(SliceError::OutsideDomain));
        assert!(f.eval(&pt(0.1, 0.2, 1)).is_ok());
    }
}
