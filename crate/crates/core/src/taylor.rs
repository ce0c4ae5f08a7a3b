//! Star powers, Taylor series on slice-polydiscs and the modulus bounds.
//!
//! The star power `(q - p)^{*alpha} a` is the operator polynomial
//!
//! ```text
//! sum_{0 <= beta <= alpha} binom(alpha, beta) (-1)^{|alpha - beta|} L_q^beta L_p^{alpha - beta} a
//! ```
//!
//! with `L_q^beta = L_{q_1}^{beta_1} ... L_{q_n}^{beta_n}`. Operators compose
//! right to left: the `p` factors act on `a` first, and within each block the
//! `n`-th variable acts first and the first variable last.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{ImaginaryUnit, Octonion};
use crate::cone::{check_dim, SlicePoint};
use crate::error::{Result, SliceError};
use crate::slice::ConeFunction;

/// Default step for the finite-difference Taylor coefficients. Stencils are
/// exact on polynomials up to the requested degree, so a coarse step keeps
/// rounding small without costing accuracy there.
pub const TAYLOR_STEP: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(alpha: Vec<u32>) -> Self {
        MultiIndex(alpha)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// `theta_l`: 1 in slot `l`, 0 elsewhere.
    pub fn unit(n: usize, l: usize) -> Self {
        let mut a = vec![0; n];
        a[l] = 1;
        MultiIndex(a)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&k| (1..=k).map(f64::from).product::<f64>()).product()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `prod_l binom(alpha_l, beta_l)`; zero unless `beta <= alpha`.
    pub fn binomial(&self, beta: &MultiIndex) -> f64 {
        if !beta.le(self) {
            return 0.0;
        }
        self.0
            .iter()
            .zip(&beta.0)
            .map(|(&a, &b)| binomial(a, b))
            .product()
    }

    /// All `beta` with `0 <= beta <= self`.
    pub fn below(&self) -> Vec<MultiIndex> {
        let mut out = vec![vec![]];
        for &a in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=a).map(move |b| {
                        let mut v = prefix.clone();
                        v.push(b);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }

    /// All multi-indices of dimension `n` and degree at most `d`, by degree.
    pub fn up_to(n: usize, d: u32) -> Vec<MultiIndex> {
        let mut all = MultiIndex(vec![d; n]).below();
        all.retain(|a| a.degree() <= d);
        all.sort_by_key(|a| (a.degree(), std::cmp::Reverse(a.0.clone())));
        all
    }

    fn sub(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Applies `prod_l L_{v_l}^{e_l}` to `a`, last variable first.
fn apply_powers(v: &[Octonion], e: &[u32], a: Octonion) -> Octonion {
    let mut out = a;
    for (q, &k) in v.iter().zip(e).rev() {
        for _ in 0..k {
            out = *q * out;
        }
    }
    out
}

/// `(q - p)^{*alpha} a`.
pub fn star_power_apply(
    q: &SlicePoint,
    p: &SlicePoint,
    alpha: &MultiIndex,
    a: Octonion,
) -> Result<Octonion> {
    check_dim(q.dim(), p.dim())?;
    check_dim(q.dim(), alpha.dim())?;
    let qs = q.to_octonions();
    let neg_p: Vec<Octonion> = p.to_octonions().into_iter().map(|c| -c).collect();
    Ok(alpha
        .below()
        .iter()
        .map(|beta| {
            let inner = apply_powers(&neg_p, alpha.sub(beta).entries(), a);
            apply_powers(&qs, beta.entries(), inner) * alpha.binomial(beta)
        })
        .sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorialConvention {
    /// Coefficients are derivatives and each term carries `1/alpha!`.
    #[default]
    Factorial,
    /// Coefficients are used as given.
    Plain,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub alpha: MultiIndex,
    pub octonion: Octonion,
}

/// A finite series `sum_alpha c(alpha) (q - p)^{*alpha} a_alpha`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarSeries {
    pub center: SlicePoint,
    pub convention: FactorialConvention,
    pub coeffs: Vec<SeriesTerm>,
}

impl StarSeries {
    pub fn new(center: SlicePoint, convention: FactorialConvention, coeffs: Vec<SeriesTerm>) -> Result<Self> {
        if let Some(t) = coeffs.iter().find(|t| t.alpha.dim() != center.dim()) {
            return Err(SliceError::DimensionMismatch {
                expected: center.dim(),
                got: t.alpha.dim(),
            });
        }
        Ok(StarSeries {
            center,
            convention,
            coeffs,
        })
    }

    pub fn max_degree(&self) -> u32 {
        self.coeffs.iter().map(|t| t.alpha.degree()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Option<Octonion> {
        self.coeffs.iter().find(|t| &t.alpha == alpha).map(|t| t.octonion)
    }

    /// `sum_k q^{*k} / k!` in one variable around 0, truncated at `degree`.
    pub fn exponential(degree: u32) -> Self {
        StarSeries {
            center: SlicePoint::real(vec![0.0]),
            convention: FactorialConvention::Factorial,
            coeffs: (0..=degree)
                .map(|k| SeriesTerm {
                    alpha: MultiIndex::new(vec![k]),
                    octonion: Octonion::ONE,
                })
                .collect(),
        }
    }
}

pub fn series_eval(s: &StarSeries, q: &SlicePoint) -> Result<Octonion> {
    s.coeffs
        .iter()
        .map(|t| {
            let c = match s.convention {
                FactorialConvention::Factorial => 1.0 / t.alpha.factorial(),
                FactorialConvention::Plain => 1.0,
            };
            Ok(star_power_apply(q, &s.center, &t.alpha, t.octonion)? * c)
        })
        .sum()
}

/// Finite-difference weights for the `k`-th derivative on the nodes
/// `-m, ..., m` (unit spacing), by Fornberg's recursion.
pub fn fd_weights(k: usize, m: usize) -> Vec<f64> {
    let nodes: Vec<f64> = (0..=2 * m).map(|j| j as f64 - m as f64).collect();
    let np = nodes.len();
    // c[j][d]: weight of node j for derivative d
    let mut c = vec![vec![0.0; k + 1]; np];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    for i in 1..np {
        let mut c2 = 1.0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            for d in (0..=k.min(i)).rev() {
                let prev = if d > 0 { c[j][d - 1] } else { 0.0 };
                if j == i - 1 {
                    let prev_i = if d > 0 { c[i - 1][d - 1] } else { 0.0 };
                    c[i][d] = c1 * (d as f64 * prev_i - nodes[i - 1] * c[i - 1][d]) / c2;
                }
                c[j][d] = (nodes[i] * c[j][d] - d as f64 * prev) / c3;
            }
        }
        c1 = c2;
    }
    c.into_iter().map(|w| w[k]).collect()
}

/// Estimates `f^{(alpha)}(p)` for `|alpha| <= max_degree` with tensor-product
/// central stencils along the real directions, and packages them as a
/// series with the factorial convention. Stencils have `2m + 1` nodes per
/// direction with `m = ceil(max_degree / 2) + 1`, so they are exact on
/// polynomials of degree `<= max_degree`.
pub fn taylor_coeffs(f: &ConeFunction, p: &SlicePoint, max_degree: u32, h: f64) -> Result<StarSeries> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(SliceError::NonPositiveStep(h));
    }
    let n = p.dim();
    check_dim(f.dim(), n)?;
    let d = max_degree as usize;
    let m = d.div_ceil(2) + 1;
    let width = 2 * m + 1;
    let weights: Vec<Vec<f64>> = (0..=d).map(|k| fd_weights(k, m)).collect();

    // values on the grid p.x + h * (j - m), row-major in the variables
    let total = width.pow(n as u32);
    let mut grid = Vec::with_capacity(total);
    for flat in 0..total {
        let mut x = p.x().to_vec();
        let mut rest = flat;
        for xl in x.iter_mut().rev() {
            *xl += h * ((rest % width) as f64 - m as f64);
            rest /= width;
        }
        grid.push(f.eval(&SlicePoint::new(x, p.y().to_vec(), p.unit())?)?);
    }

    let coeffs = MultiIndex::up_to(n, max_degree)
        .into_iter()
        .map(|alpha| {
            let mut acc = Octonion::ZERO;
            for (flat, value) in grid.iter().enumerate() {
                let mut w = 1.0;
                let mut rest = flat;
                for &a in alpha.entries().iter().rev() {
                    w *= weights[a as usize][rest % width];
                    rest /= width;
                }
                if w != 0.0 {
                    acc += *value * w;
                }
            }
            let octonion = acc / h.powi(alpha.degree() as i32);
            SeriesTerm { alpha, octonion }
        })
        .collect();
    StarSeries::new(p.clone(), FactorialConvention::Factorial, coeffs)
}

/// The three moduli of the sandwich `min_{K=+-I} |r+Ks| <= |r+Js| <= max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MkBound {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    /// `Re((Js) r^{-1})`, zero when `r = 0`.
    pub t_j: f64,
    pub holds: bool,
}

fn bound_tol(scale: f64) -> f64 {
    1e-12 * scale.max(1.0)
}

/// Checks `min(|r+Is|, |r-Is|) <= |r+Js| <= max(|r+Is|, |r-Is|)`, which
/// requires `r conj(s)` to lie on `C_I`.
pub fn bound_check_mk(r: Octonion, s: Octonion, i: ImaginaryUnit, j: ImaginaryUnit) -> Result<MkBound> {
    let rs = r * s.conj();
    let iq = i.as_octonion();
    let off = rs.im() - iq * rs.dot(&iq);
    if off.norm() > 1e-10 * (1.0 + r.norm() * s.norm()) {
        return Err(SliceError::NotOnSlice);
    }
    let jq = j.as_octonion();
    let a = (r + iq * s).norm();
    let b = (r - iq * s).norm();
    let value = (r + jq * s).norm();
    let t_j = if r == Octonion::ZERO {
        0.0
    } else {
        let w = (jq * s) * r.inv()?;
        debug_assert!(((Octonion::ONE + w).norm() * r.norm() - value).abs() <= 1e-9 * (1.0 + value));
        w.re()
    };
    let (lower, upper) = (a.min(b), a.max(b));
    let tol = bound_tol(upper);
    Ok(MkBound {
        lower,
        value,
        upper,
        t_j,
        holds: lower - tol <= value && value <= upper + tol,
    })
}

/// `|r + Js|` from the decomposition `sqrt(1 + C^2 + 2 t_J) |r|` with
/// `C = |s| / |r|`.
pub fn rjs_modulus(r: Octonion, s: Octonion, j: ImaginaryUnit) -> Result<f64> {
    let w = (j.as_octonion() * s) * r.inv()?;
    let c = s.norm() / r.norm();
    Ok((1.0 + c * c + 2.0 * w.re()).max(0.0).sqrt() * r.norm())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MlqBound {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub holds: bool,
}

/// Sandwiches `|(q-p)^{*alpha} a|` between the values at the companions
/// `x +- yI` of `q = x + yJ`, where `p` lies on `C_I`.
pub fn bound_check_mlq(p: &SlicePoint, q: &SlicePoint, alpha: &MultiIndex, a: Octonion) -> Result<MlqBound> {
    let i = p.unit();
    let plus = SlicePoint::new(q.x().to_vec(), q.y().to_vec(), i)?;
    let neg_y: Vec<f64> = q.y().iter().map(|v| -v).collect();
    let minus = SlicePoint::new(q.x().to_vec(), neg_y, i)?;
    let u = star_power_apply(&plus, p, alpha, a)?.norm();
    let v = star_power_apply(&minus, p, alpha, a)?.norm();
    let value = star_power_apply(q, p, alpha, a)?.norm();
    let (lower, upper) = (u.min(v), u.max(v));
    let tol = bound_tol(upper);
    Ok(MlqBound {
        lower,
        value,
        upper,
        holds: lower - tol <= value && value <= upper + tol,
    })
}
