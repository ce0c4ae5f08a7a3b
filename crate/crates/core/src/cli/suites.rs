//! Verification suites run by the command-line tool.
//!
//! Each suite folds a residual over its cases and passes when the largest
//! residual is within tolerance. NaN residuals count as failures.

use std::f64::consts::SQRT_2;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use crate::algebra::{
    block_inverse_residual, complete_sbasis, left_mult_matrix, scalar_product,
    unit_difference_inverse, unit_sweep, verify_cjk, ImaginaryUnit, LeftMultOperator, Octonion,
    SBasis, FANO_TRIPLES,
};
use crate::catalog::{
    non_slice_function, polynomial_test_functions, power_function, star_monomial,
    stem_test_functions,
};
use crate::cone::{SlicePoint, SlicePolydisc};
use crate::continuation::{
    expected_minus_theta1_j, expected_residual, expected_theta1_j, verify_not_slice,
    SqrtCounterexample,
};
use crate::domain::DomainSpec;
use crate::error::Result;
use crate::regularity::{cr_convergence, cr_residual_slice, split_components, stem_cr_residual};
use crate::sampling::{self, ProbeRng};
use crate::slice::{
    eval_from_stem, repr_linear_function, repr_linear_unit, repr_matrix, repr_two_point,
    sliceness_residual, stem_from_function, stem_from_two_slices, stem_to_intrinsic, ReprProbe,
};
use crate::taylor::{
    bound_check_mk, bound_check_mlq, series_eval, taylor_coeffs, MultiIndex, StarSeries,
    TAYLOR_STEP,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<serde_json::Value>,
}

/// Running maximum of residuals.
#[derive(Default)]
struct Tally {
    cases: usize,
    max: f64,
}

impl Tally {
    fn add(&mut self, r: f64) {
        self.cases += 1;
        self.max = if r.is_nan() { f64::INFINITY } else { self.max.max(r) };
    }

    fn report(self, suite: &str, tolerance: f64) -> SuiteReport {
        SuiteReport {
            suite: suite.into(),
            cases: self.cases,
            max_residual: self.max,
            tolerance,
            pass: self.max <= tolerance,
            values: None,
        }
    }
}

/// Probe counts and tolerance override shared by all suites.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub probes: usize,
    pub tol: Option<f64>,
    pub inject_non_slice: bool,
}

impl SuiteConfig {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn rng(&self, stream: u64) -> ProbeRng {
        sampling::rng(self.seed.wrapping_mul(0x9e37_79b9).wrapping_add(stream))
    }

    /// Count for law checks over random pairs and triples.
    fn law_cases(&self) -> usize {
        10 * self.probes
    }

    /// Count for checks over unit pairs.
    fn pair_cases(&self) -> usize {
        (self.probes / 10).max(1)
    }
}

fn rel(num: f64, den: f64) -> f64 {
    num / den.max(f64::MIN_POSITIVE)
}

pub fn algebra_suites(cfg: &SuiteConfig) -> Vec<SuiteReport> {
    let mut out = Vec::new();

    let start = Instant::now();
    let mut t = Tally::default();
    for i in 0..8 {
        for j in 0..8 {
            let mut want = if i == 0 {
                Octonion::basis(j)
            } else if j == 0 {
                Octonion::basis(i)
            } else if i == j {
                -Octonion::ONE
            } else {
                Octonion::ZERO
            };
            for &(a, b, c) in &FANO_TRIPLES {
                for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                    if (i, j) == (x, y) {
                        want = Octonion::basis(z);
                    } else if (i, j) == (y, x) {
                        want = -Octonion::basis(z);
                    }
                }
            }
            t.add((Octonion::basis(i) * Octonion::basis(j)).dist(&want));
        }
    }
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let mut r = t.report("multiplication_table", 0.0);
    r.values = Some(json!({ "elapsed_ms": elapsed }));
    out.push(r);

    let tol = cfg.tol(1e-10);
    let mut rng = cfg.rng(1);
    let (mut alt, mut norm, mut adj) = (Tally::default(), Tally::default(), Tally::default());
    for _ in 0..cfg.law_cases() {
        let x = sampling::octonion(&mut rng);
        let y = sampling::octonion(&mut rng);
        let z = sampling::octonion(&mut rng);
        let scale = x.norm_sqr() * y.norm();
        let left = ((x * x) * y).dist(&(x * (x * y)));
        let right = ((y * x) * x).dist(&(y * (x * x)));
        alt.add(rel(left.max(right), scale));
        norm.add(rel(((x * y).norm() - x.norm() * y.norm()).abs(), x.norm() * y.norm()));
        let lhs = scalar_product(&(x * y), &z);
        let rhs = scalar_product(&x, &(z * y.conj()));
        adj.add(rel((lhs - rhs).abs(), x.norm() * y.norm() * z.norm()));
    }
    out.push(alt.report("alternativity", tol));
    out.push(norm.report("norm_multiplicativity", tol));
    out.push(adj.report("adjoint_identity", tol));

    let mut rng = cfg.rng(2);
    let (mut cjk, mut blk) = (Tally::default(), Tally::default());
    for _ in 0..cfg.pair_cases() {
        let (j, k) = distinct_units(&mut rng);
        cjk.add(verify_cjk(j, k).unwrap_or(f64::INFINITY));
        blk.add(block_inverse_residual(j, k).unwrap_or(f64::INFINITY));
    }
    for idx in 1..8 {
        let i = ImaginaryUnit::basis(idx);
        let d = unit_difference_inverse(i, -i).map(|d| d * left_mult_matrix(i.into()));
        let half = LeftMultOperator::identity().scale(0.5);
        cjk.add(d.map(|d| (d - half).frobenius_norm()).unwrap_or(f64::INFINITY));
    }
    out.push(cjk.report("operator_commutation", tol));
    out.push(blk.report("block_inverse", tol));
    out
}

fn distinct_units(rng: &mut ProbeRng) -> (ImaginaryUnit, ImaginaryUnit) {
    loop {
        let j = sampling::unit(rng);
        let k = sampling::unit(rng);
        if j.as_octonion().dist(&k.as_octonion()) >= 1e-3 {
            return (j, k);
        }
    }
}

pub fn slice_suites(cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    let tol = cfg.tol(1e-9);
    let funcs = stem_test_functions();
    let mut out = Vec::new();

    let mut rng = cfg.rng(3);
    let mut forms = [
        Tally::default(),
        Tally::default(),
        Tally::default(),
        Tally::default(),
    ];
    for t in &funcs {
        let f = t.function();
        for _ in 0..cfg.probes {
            let p = ReprProbe::random(&mut rng, t.stem.dim(), 1.5);
            let direct = f.eval_at(&p.x, &p.y, p.i)?;
            let vals = [
                repr_matrix(&f, p.i, p.j, p.k, &p.x, &p.y)?,
                repr_linear_unit(&f, p.i, p.j, p.k, &p.x, &p.y)?,
                repr_linear_function(&f, p.i, p.j, p.k, &p.x, &p.y)?,
                repr_two_point(&f, p.i, p.j, &p.x, &p.y)?,
            ];
            for (tally, v) in forms.iter_mut().zip(vals) {
                tally.add(v.dist(&direct));
            }
        }
    }
    let names = ["repr_matrix", "repr_linear_unit", "repr_linear_function", "repr_two_point"];
    for (tally, name) in forms.into_iter().zip(names) {
        out.push(tally.report(name, tol));
    }

    let mut t = Tally::default();
    let mut rng = cfg.rng(4);
    let mut targets: Vec<(String, crate::slice::ConeFunction)> =
        funcs.iter().map(|t| (t.name.to_string(), t.function())).collect();
    if cfg.inject_non_slice {
        targets.push(("non_slice".into(), non_slice_function(1)));
    }
    let mut per_function = serde_json::Map::new();
    for (name, f) in &targets {
        let probes: Vec<ReprProbe> = (0..cfg.probes)
            .map(|_| ReprProbe::random(&mut rng, f.dim(), 1.5))
            .collect();
        let r = sliceness_residual(f, &probes)?;
        per_function.insert(name.clone(), json!(r));
        t.add(r);
    }
    let mut r = t.report("sliceness", tol);
    r.values = Some(serde_json::Value::Object(per_function));
    out.push(r);

    let mut t = Tally::default();
    let mut rng = cfg.rng(5);
    for (n, f) in funcs.iter().enumerate() {
        let g = f.function();
        let stem = stem_from_two_slices(&g, unit_sweep(2 * n), unit_sweep(2 * n + 1))?;
        for k in 0..20 {
            let unit = unit_sweep(10_000 + 20 * n + k);
            let x = sampling::real_vec(&mut rng, f.stem.dim(), -1.5, 1.5);
            let y = sampling::real_vec(&mut rng, f.stem.dim(), -1.5, 1.5);
            let q = SlicePoint::new(x, y, unit)?;
            t.add(eval_from_stem(&stem, &q)?.dist(&g.eval(&q)?));
        }
    }
    out.push(t.report("stem_round_trip", tol));

    let mut t = Tally::default();
    let mut rng = cfg.rng(6);
    for f in &funcs {
        let g = f.function();
        let s1 = stem_from_function(&g, ImaginaryUnit::basis(1));
        let s5 = stem_from_function(&g, ImaginaryUnit::basis(5));
        let intrinsic = stem_to_intrinsic(&s1);
        for _ in 0..(cfg.probes / 10).max(1) {
            let x = sampling::real_vec(&mut rng, f.stem.dim(), -1.5, 1.5);
            let y = sampling::real_vec(&mut rng, f.stem.dim(), -1.5, 1.5);
            let q = SlicePoint::new(x.clone(), y.clone(), sampling::unit(&mut rng))?;
            let a = eval_from_stem(&s1, &q)?;
            let b = eval_from_stem(&s5, &q)?;
            t.add(a.dist(&b).max(a.dist(&g.eval(&q)?)));
            t.add(intrinsic.symmetry_residual(&x, &y)?);
        }
    }
    out.push(t.report("stem_unit_independence", tol));

    let mut t = Tally::default();
    let mut rng = cfg.rng(7);
    let square = power_function(2, Octonion::ONE);
    for b in 0..5 {
        let basis = sbasis_for(b);
        let split = split_components(&square, basis)?;
        for _ in 0..cfg.probes {
            let x = sampling::real_vec(&mut rng, 1, -1.5, 1.5);
            let y = sampling::real_vec(&mut rng, 1, -1.5, 1.5);
            t.add(split.round_trip_residual(&SlicePoint::new(x, y, basis.i())?)?);
        }
    }
    out.push(t.report("splitting", cfg.tol(1e-12)));

    let (weak, conv) = weak_regularity(cfg)?;
    out.push(weak);
    out.push(conv);

    let mut t = Tally::default();
    let mut rng = cfg.rng(8);
    for f in funcs.iter().filter(|f| f.holomorphic) {
        for _ in 0..(cfg.probes / 10).max(1) {
            let x = sampling::real_vec(&mut rng, f.stem.dim(), -1.0, 1.0);
            let y = sampling::real_vec(&mut rng, f.stem.dim(), -1.0, 1.0);
            t.add(stem_cr_residual(&f.stem, &x, &y, 1e-4)?.max_residual());
        }
    }
    out.push(t.report("strong_regularity", cfg.tol(1e-6)));
    Ok(out)
}

/// The s-bases used by the splitting suite: completions of basis and sweep
/// units, and one with a non-orthogonal `J`.
pub fn sbasis_for(b: usize) -> SBasis {
    match b {
        0 => complete_sbasis(ImaginaryUnit::basis(1)),
        1 => complete_sbasis(ImaginaryUnit::basis(6)),
        2 | 3 => complete_sbasis(unit_sweep(b)),
        _ => {
            let i = ImaginaryUnit::basis(1);
            let j = ImaginaryUnit::normalized(Octonion::basis(2) + Octonion::basis(1) * 0.4).expect("unit");
            SBasis::new(i, j, ImaginaryUnit::basis(4)).expect("s-basis")
        }
    }
}

/// Weak-regularity residuals at `h = 1e-4` and the step-halving ratios.
fn weak_regularity(cfg: &SuiteConfig) -> Result<(SuiteReport, SuiteReport)> {
    let a = Octonion::new([0.5, 1.0, 0.0, -0.5, 0.25, 0.0, 1.0, 0.0]);
    let p = SlicePoint::new(vec![0.2], vec![0.3], ImaginaryUnit::basis(1))?;
    let cases = vec![
        ("q^2", power_function(2, Octonion::ONE), false),
        ("q^3", power_function(3, Octonion::ONE), true),
        ("star_monomial_2", star_monomial(p.clone(), MultiIndex::new(vec![2]), a), false),
        ("star_monomial_3", star_monomial(p.clone(), MultiIndex::new(vec![3]), a), true),
        ("star_monomial_4", star_monomial(p, MultiIndex::new(vec![4]), a), true),
    ];
    let mut rng = cfg.rng(9);
    let mut weak = Tally::default();
    let mut conv = Tally::default();
    let mut ratios = serde_json::Map::new();
    for (name, f, has_third_derivative) in &cases {
        let mut worst: f64 = 0.0;
        for _ in 0..(cfg.probes / 50).max(1) {
            let unit = sampling::unit(&mut rng);
            let x = sampling::real_vec(&mut rng, 1, -1.0, 1.0);
            let y = sampling::real_vec(&mut rng, 1, 0.1, 1.0);
            let z = SlicePoint::new(x, y, unit)?;
            let rep = cr_convergence(f, unit, &z, 1e-4)?;
            weak.add(rep.max_residual());
            if *has_third_derivative {
                // h = 1e-2 keeps the truncation term well above rounding
                let ratio = cr_convergence(f, unit, &z, 1e-2)?.ratio.unwrap_or(f64::NAN);
                conv.add((ratio - 4.0).abs());
                worst = worst.max((ratio - 4.0).abs());
            }
        }
        if *has_third_derivative {
            ratios.insert(name.to_string(), json!(worst));
        }
    }
    let weak = weak.report("weak_regularity", cfg.tol(1e-6));
    let mut conv = conv.report("cr_second_order", cfg.tol(0.8));
    conv.values = Some(json!({ "max_abs_ratio_minus_4": ratios }));
    Ok((weak, conv))
}

pub fn taylor_suites(cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    let tol = cfg.tol(1e-9);
    let mut out = Vec::new();
    let mut rng = cfg.rng(10);

    let square = power_function(2, Octonion::ONE);
    let s = taylor_coeffs(&square, &SlicePoint::real(vec![0.0]), 2, TAYLOR_STEP)?;
    let mut t = Tally::default();
    for _ in 0..(cfg.probes / 10).max(1) {
        let q = SlicePoint::new(
            sampling::real_vec(&mut rng, 1, -1.0, 1.0),
            sampling::real_vec(&mut rng, 1, -1.0, 1.0),
            sampling::unit(&mut rng),
        )?;
        t.add(series_eval(&s, &q)?.dist(&square.eval(&q)?));
    }
    let mut r = t.report("taylor_square", tol);
    r.values = Some(serde_json::to_value(&s).expect("series serializes"));
    out.push(r);

    let exp = StarSeries::exponential(20);
    let e1 = SlicePoint::new(vec![0.0], vec![1.0], ImaginaryUnit::basis(1))?;
    let got = series_eval(&exp, &e1)?;
    let want = Octonion::real(1f64.cos()) + Octonion::basis(1) * 1f64.sin();
    let mut t = Tally::default();
    t.add(got.dist(&want));
    let mut r = t.report("star_exponential", tol);
    r.values = Some(json!({ "value": got }));
    out.push(r);

    let mut t = Tally::default();
    for f in polynomial_test_functions() {
        let g = f.function();
        let n = f.stem.dim();
        for center in taylor_centers(n) {
            let series = taylor_coeffs(&g, &center, 4, TAYLOR_STEP)?;
            let domain = DomainSpec::polydisc(SlicePolydisc::new(center.clone(), vec![0.5; n])?);
            for _ in 0..(cfg.probes / 20).max(1) {
                let Some(q) = domain.sample(&mut rng, 100) else {
                    continue;
                };
                t.add(series_eval(&series, &q)?.dist(&g.eval(&q)?));
            }
        }
    }
    out.push(t.report("taylor_polynomials", tol));

    let mut t = Tally::default();
    let one = Octonion::ONE;
    let worked = bound_check_mk(one, one + Octonion::basis(1), ImaginaryUnit::basis(1), ImaginaryUnit::basis(2))?;
    t.add((worked.lower - 1.0).abs());
    t.add((worked.value - 3f64.sqrt()).abs());
    t.add((worked.upper - 5f64.sqrt()).abs());
    for _ in 0..cfg.law_cases() {
        let (r, s, i, j) = admissible_mk(&mut rng);
        let b = bound_check_mk(r, s, i, j)?;
        t.add(if b.holds { 0.0 } else { (b.lower - b.value).max(b.value - b.upper) });
    }
    let mut r = t.report("bound_modulus", cfg.tol(1e-12));
    r.values = Some(json!({ "worked": [worked.lower, worked.value, worked.upper] }));
    out.push(r);

    let mut t = Tally::default();
    for _ in 0..cfg.probes {
        let (p, q, alpha, a) = admissible_mlq(&mut rng)?;
        let b = bound_check_mlq(&p, &q, &alpha, a)?;
        t.add(if b.holds { 0.0 } else { (b.lower - b.value).max(b.value - b.upper) });
    }
    out.push(t.report("bound_star_power", cfg.tol(1e-12)));
    Ok(out)
}

/// A real and a non-real center in `n` variables.
pub fn taylor_centers(n: usize) -> Vec<SlicePoint> {
    let x: Vec<f64> = (0..n).map(|l| 0.1 * (l as f64 + 1.0)).collect();
    let y: Vec<f64> = (0..n).map(|l| 0.2 - 0.1 * l as f64).collect();
    vec![
        SlicePoint::real(x.clone()),
        SlicePoint::new(x, y, ImaginaryUnit::basis(3)).expect("dimension"),
    ]
}

/// `r = w1 a`, `s = w2 a` with `w1, w2` on `C_I`, so `r conj(s)` lies on `C_I`.
pub fn admissible_mk(rng: &mut ProbeRng) -> (Octonion, Octonion, ImaginaryUnit, ImaginaryUnit) {
    let i = sampling::unit(rng);
    let j = sampling::unit(rng);
    let a = sampling::octonion(rng);
    let c = sampling::real_vec(rng, 4, -2.0, 2.0);
    let w1 = Octonion::real(c[0]) + i.as_octonion() * c[1];
    let w2 = Octonion::real(c[2]) + i.as_octonion() * c[3];
    (w1 * a, w2 * a, i, j)
}

pub fn admissible_mlq(rng: &mut ProbeRng) -> Result<(SlicePoint, SlicePoint, MultiIndex, Octonion)> {
    let n = 1 + rng_index(rng, 3);
    let i = sampling::unit(rng);
    let p = SlicePoint::new(
        sampling::real_vec(rng, n, -1.0, 1.0),
        sampling::real_vec(rng, n, -1.0, 1.0),
        i,
    )?;
    let q = SlicePoint::new(
        sampling::real_vec(rng, n, -1.0, 1.0),
        sampling::real_vec(rng, n, -1.0, 1.0),
        sampling::unit(rng),
    )?;
    let mut alpha = vec![0u32; n];
    for _ in 0..rng_index(rng, 5) {
        alpha[rng_index(rng, n)] += 1;
    }
    Ok((p, q, MultiIndex::new(alpha), sampling::octonion(rng)))
}

fn rng_index(rng: &mut ProbeRng, n: usize) -> usize {
    use rand::Rng;
    rng.random_range(0..n)
}

pub fn sqrt_suites(cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    let tol = cfg.tol(1e-9);
    let sqrt = SqrtCounterexample::default();
    let mut out = Vec::new();

    let table = sqrt.value_table()?;
    let mut t = Tally::default();
    t.add(table.theta1_j.dist(&expected_theta1_j(sqrt.j)));
    t.add(table.minus_theta1_j.dist(&expected_minus_theta1_j(sqrt.j)));
    let mut r = t.report("sqrt_values", tol);
    r.values = Some(json!({
        "I": sqrt.i,
        "J": sqrt.j,
        "theta1_J": table.theta1_j,
        "minus_theta1_J": table.minus_theta1_j,
        "theta1_I": table.theta1_i,
    }));
    out.push(r);

    let res = verify_not_slice(&sqrt)?;
    let mut t = Tally::default();
    t.add((res - SQRT_2).abs());
    let mut r = t.report("non_slice_residual", tol);
    r.values = Some(json!({ "residual": res }));
    out.push(r);

    let mut t = Tally::default();
    let mut min_res = f64::INFINITY;
    let i = ImaginaryUnit::basis(1);
    for k in 0..(cfg.probes / 10).max(1) {
        let j = unit_sweep(k);
        let cfg_j = SqrtCounterexample::new(1, i, j)?;
        let res = verify_not_slice(&cfg_j)?;
        min_res = min_res.min(res);
        t.add((res - expected_residual(i, j)).abs());
    }
    let mut r = t.report("non_slice_sweep", tol);
    r.pass &= min_res > 0.5;
    r.values = Some(json!({ "min_residual": min_res }));
    out.push(r);

    let (weak, ratios) = sqrt_regularity(&sqrt)?;
    let mut t = Tally::default();
    ratios.iter().for_each(|r| t.add((r - 4.0).abs()));
    let mut r = t.report("sqrt_cr_second_order", cfg.tol(0.8));
    r.values = Some(json!({ "max_residual_h_1e-3": weak, "ratios": ratios }));
    out.push(r);
    Ok(out)
}

/// CR residuals of the square root at interior points of each region:
/// the largest residual at `h = 1e-3` and the step-halving ratios.
pub fn sqrt_regularity(cfg: &SqrtCounterexample) -> Result<(f64, Vec<f64>)> {
    let f = cfg.function();
    let (i, j) = (cfg.i, cfg.j);
    let other = ImaginaryUnit::basis(5);
    let probes = [
        (i, 0.9, 0.6),
        (i, 0.2, 1.1),
        (j, 0.8, -0.5),
        (j, -0.3, -0.9),
        (j, -0.9, -0.3),
        (j, -0.95, 0.3),
        (j, -0.4, 0.9),
        (j, 0.1, 1.05),
        (other, 1.1, 0.2),
        (other, -1.1, 0.2),
    ];
    let mut worst: f64 = 0.0;
    let mut ratios = Vec::new();
    for (unit, x, y) in probes {
        let (mut xs, mut ys) = (vec![0.0; cfg.n], vec![0.0; cfg.n]);
        xs[0] = x;
        ys[0] = y;
        let z = SlicePoint::new(xs, ys, unit)?;
        worst = worst.max(cr_residual_slice(&f, unit, &z, 1e-3)?.max_residual());
        // only the first variable carries a truncation term
        let coarse = cr_residual_slice(&f, unit, &z, 1e-2)?.residuals[0];
        let fine = cr_residual_slice(&f, unit, &z, 5e-3)?.residuals[0];
        ratios.push(coarse / fine);
    }
    Ok((worst, ratios))
}
