//! Acceptance criteria, one test per criterion. Each test writes a single
//! `PASS`/`FAIL` line to stderr (bypassing output capture) before asserting.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use octoslice::algebra::{
    block_inverse_residual, left_mult_matrix, scalar_product, unit_difference_inverse, unit_sweep,
    verify_cjk, LeftMultOperator, FANO_TRIPLES,
};
use octoslice::catalog::{polynomial_test_functions, power_function, star_monomial, stem_test_functions};
use octoslice::cli::suites::{admissible_mk, admissible_mlq, sbasis_for, taylor_centers};
use octoslice::continuation::{expected_residual, verify_not_slice, SqrtCounterexample};
use octoslice::regularity::{cr_residual_slice, split_components};
use octoslice::sampling;
use octoslice::slice::{
    eval_from_stem, repr_linear_function, repr_linear_unit, repr_matrix, repr_two_point,
    stem_from_two_slices, ReprProbe,
};
use octoslice::taylor::{
    bound_check_mk, bound_check_mlq, series_eval, taylor_coeffs, MultiIndex, StarSeries, TAYLOR_STEP,
};
use octoslice::{DomainSpec, ImaginaryUnit, Octonion, SlicePoint, SlicePolydisc};

fn verdict(n: u32, name: &str, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "[acceptance] criterion {n:>2} {tag} {name}: {detail}");
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

fn e(i: usize) -> Octonion {
    Octonion::basis(i)
}

/// Basis products read off the oriented triples, independently of the
/// library's table.
fn oracle_product(i: usize, j: usize) -> Octonion {
    if i == 0 {
        return e(j);
    }
    if j == 0 {
        return e(i);
    }
    if i == j {
        return -Octonion::ONE;
    }
    for &(a, b, c) in &FANO_TRIPLES {
        let cyc = [a, b, c];
        for s in 0..3 {
            let (x, y, z) = (cyc[s], cyc[(s + 1) % 3], cyc[(s + 2) % 3]);
            if (i, j) == (x, y) {
                return e(z);
            }
            if (i, j) == (y, x) {
                return -e(z);
            }
        }
    }
    unreachable!("every pair of distinct units lies on one triple")
}

#[test]
fn criterion_01_multiplication_table() {
    let basis: Vec<Octonion> = (0..8).map(e).collect();
    let start = Instant::now();
    let mut products = [[Octonion::ZERO; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            products[i][j] = basis[i] * basis[j];
        }
    }
    let elapsed = start.elapsed();
    let mismatches = (0..64)
        .filter(|k| products[k / 8][k % 8] != oracle_product(k / 8, k % 8))
        .count();
    verdict(
        1,
        "multiplication table",
        mismatches == 0 && elapsed < Duration::from_millis(1),
        format!("{mismatches} mismatches of 64, {:.3} ms", elapsed.as_secs_f64() * 1e3),
    );
}

#[test]
fn criterion_02_algebra_laws() {
    let mut rng = sampling::rng(2);
    let (mut alt, mut norm, mut adj) = (0f64, 0f64, 0f64);
    for _ in 0..10_000 {
        let x = sampling::octonion(&mut rng);
        let y = sampling::octonion(&mut rng);
        let z = sampling::octonion(&mut rng);
        let s = x.norm_sqr() * y.norm();
        alt = alt
            .max(((x * x) * y).dist(&(x * (x * y))) / s)
            .max(((y * x) * x).dist(&(y * (x * x))) / s);
        norm = norm.max(((x * y).norm() - x.norm() * y.norm()).abs() / (x.norm() * y.norm()));
        let d = scalar_product(&(x * y), &z) - scalar_product(&x, &(z * y.conj()));
        adj = adj.max(d.abs() / (x.norm() * y.norm() * z.norm()));
    }
    verdict(
        2,
        "alternativity, norm, adjoint identity",
        alt <= 1e-10 && norm <= 1e-10 && adj <= 1e-10,
        format!("alternativity {alt:.2e}, norm {norm:.2e}, adjoint {adj:.2e} over 1e4 samples"),
    );
}

#[test]
fn criterion_03_operator_identities() {
    let mut rng = sampling::rng(3);
    let (mut cjk, mut blk) = (0f64, 0f64);
    let mut pairs = 0;
    while pairs < 100 {
        let j = sampling::unit(&mut rng);
        let k = sampling::unit(&mut rng);
        if j.as_octonion().dist(&k.as_octonion()) < 1e-3 {
            continue;
        }
        pairs += 1;
        cjk = cjk.max(verify_cjk(j, k).unwrap());
        blk = blk.max(block_inverse_residual(j, k).unwrap());
    }
    let mut antipodal = 0f64;
    for _ in 0..100 {
        let j = sampling::unit(&mut rng);
        let d = unit_difference_inverse(j, -j).unwrap() * left_mult_matrix(j.into());
        antipodal = antipodal.max((d - LeftMultOperator::identity().scale(0.5)).matrix().abs().max());
    }
    verdict(
        3,
        "operator identities",
        cjk <= 1e-10 && blk <= 1e-10 && antipodal <= 1e-14,
        format!("commutation {cjk:.2e}, block inverse {blk:.2e}, antipodal half-identity {antipodal:.2e}"),
    );
}

#[test]
fn criterion_04_representation_equivalence() {
    let funcs = stem_test_functions();
    assert_eq!(funcs.len(), 10);
    let mut rng = sampling::rng(4);
    let mut worst = [0f64; 4];
    for t in &funcs {
        let f = t.function();
        for _ in 0..1000 {
            let p = ReprProbe::random(&mut rng, t.stem.dim(), 1.5);
            let direct = f.eval_at(&p.x, &p.y, p.i).unwrap();
            let vals = [
                repr_matrix(&f, p.i, p.j, p.k, &p.x, &p.y).unwrap(),
                repr_linear_unit(&f, p.i, p.j, p.k, &p.x, &p.y).unwrap(),
                repr_linear_function(&f, p.i, p.j, p.k, &p.x, &p.y).unwrap(),
                repr_two_point(&f, p.i, p.j, &p.x, &p.y).unwrap(),
            ];
            for (w, v) in worst.iter_mut().zip(vals) {
                *w = w.max(v.dist(&direct));
            }
        }
    }
    verdict(
        4,
        "representation formulas",
        worst.iter().all(|w| *w <= 1e-9),
        format!("max deviation per form {:.2e} {:.2e} {:.2e} {:.2e} over 10 functions x 1e3 probes", worst[0], worst[1], worst[2], worst[3]),
    );
}

#[test]
fn criterion_05_stem_reconstruction() {
    let mut rng = sampling::rng(5);
    let mut worst = 0f64;
    for (n, t) in stem_test_functions().iter().enumerate() {
        let f = t.function();
        let j = sampling::unit(&mut rng);
        let k = sampling::unit(&mut rng);
        let stem = stem_from_two_slices(&f, j, k).unwrap();
        for m in 0..20 {
            let unit = unit_sweep(5000 + 20 * n + m);
            let x = sampling::real_vec(&mut rng, t.stem.dim(), -1.5, 1.5);
            let y = sampling::real_vec(&mut rng, t.stem.dim(), -1.5, 1.5);
            let q = SlicePoint::new(x, y, unit).unwrap();
            worst = worst.max(eval_from_stem(&stem, &q).unwrap().dist(&f.eval(&q).unwrap()));
        }
    }
    verdict(
        5,
        "stem reconstruction",
        worst <= 1e-9,
        format!("max deviation {worst:.2e} at 20 unseen units per function"),
    );
}

#[test]
fn criterion_06_weak_regularity_numerics() {
    let a = Octonion::new([0.5, 1.0, 0.0, -0.5, 0.25, 0.0, 1.0, 0.0]);
    let p = SlicePoint::new(vec![0.2], vec![0.3], ImaginaryUnit::basis(1)).unwrap();
    // (name, function, has a nonzero third derivative)
    let cases = [
        ("q^2", power_function(2, Octonion::ONE), false),
        ("q^3", power_function(3, Octonion::ONE), true),
        ("(q-p)^{*2} a", star_monomial(p.clone(), MultiIndex::new(vec![2]), a), false),
        ("(q-p)^{*3} a", star_monomial(p.clone(), MultiIndex::new(vec![3]), a), true),
        ("(q-p)^{*4} a", star_monomial(p, MultiIndex::new(vec![4]), a), true),
    ];
    let mut rng = sampling::rng(6);
    let mut pass = true;
    let mut details = Vec::new();
    for (name, f, cubic_term) in &cases {
        let (mut worst, mut rmin, mut rmax) = (0f64, f64::INFINITY, 0f64);
        let mut floor = 0f64;
        for _ in 0..20 {
            let unit = sampling::unit(&mut rng);
            let x = sampling::real_vec(&mut rng, 1, -1.0, 1.0);
            let y = sampling::real_vec(&mut rng, 1, 0.1, 1.0);
            let z = SlicePoint::new(x, y, unit).unwrap();
            let coarse = cr_residual_slice(f, unit, &z, 1e-4).unwrap().max_residual();
            let fine = cr_residual_slice(f, unit, &z, 5e-5).unwrap().max_residual();
            worst = worst.max(coarse);
            floor = floor.max(fine);
            rmin = rmin.min(coarse / fine);
            rmax = rmax.max(coarse / fine);
        }
        let ok = if *cubic_term {
            worst <= 1e-6 && (3.2..=4.8).contains(&rmin) && (3.2..=4.8).contains(&rmax)
        } else {
            // central differences are exact on quadratics: only rounding is left
            worst <= 1e-10 && floor <= 1e-10
        };
        pass &= ok;
        details.push(if *cubic_term {
            format!("{name}: {worst:.1e}, ratio {rmin:.3}..{rmax:.3}")
        } else {
            format!("{name}: {worst:.1e} (rounding floor, ratio undefined)")
        });
    }
    verdict(6, "weak-regularity numerics", pass, details.join("; "));
}

#[test]
fn criterion_07_splitting() {
    let mut rng = sampling::rng(7);
    let f = stem_test_functions()
        .into_iter()
        .find(|t| t.name == "cube_times_a")
        .unwrap()
        .function();
    let mut worst = 0f64;
    for b in 0..5 {
        let basis = sbasis_for(b);
        let split = split_components(&f, basis).unwrap();
        for _ in 0..1000 {
            let x = sampling::real_vec(&mut rng, 1, -1.0, 1.0);
            let y = sampling::real_vec(&mut rng, 1, -1.0, 1.0);
            let z = SlicePoint::new(x, y, basis.i()).unwrap();
            worst = worst.max(split.round_trip_residual(&z).unwrap());
        }
    }
    verdict(
        7,
        "splitting lemma",
        worst <= 1e-12,
        format!("max recomposition residual {worst:.2e} over 5 s-bases x 1e3 probes"),
    );
}

#[test]
fn criterion_08_taylor() {
    let mut rng = sampling::rng(8);
    let mut worst = 0f64;
    let mut samples = 0;
    for t in polynomial_test_functions() {
        let f = t.function();
        let n = t.stem.dim();
        for center in taylor_centers(n) {
            let s = taylor_coeffs(&f, &center, 4, TAYLOR_STEP).unwrap();
            let dom = DomainSpec::polydisc(SlicePolydisc::new(center.clone(), vec![0.5; n]).unwrap());
            for _ in 0..100 {
                let q = dom.sample(&mut rng, 100).unwrap();
                worst = worst.max(series_eval(&s, &q).unwrap().dist(&f.eval(&q).unwrap()));
                samples += 1;
            }
        }
    }
    let got = series_eval(
        &StarSeries::exponential(20),
        &SlicePoint::new(vec![0.0], vec![1.0], ImaginaryUnit::basis(1)).unwrap(),
    )
    .unwrap();
    let exp_err = got.dist(&(Octonion::real(1f64.cos()) + e(1) * 1f64.sin()));
    verdict(
        8,
        "taylor series",
        worst <= 1e-9 && exp_err <= 1e-9,
        format!("polynomial reconstruction {worst:.2e} over {samples} samples, exponential {exp_err:.2e}"),
    );
}

#[test]
fn criterion_09_bounds() {
    let mut rng = sampling::rng(9);
    let mut mk_fail = 0;
    for _ in 0..10_000 {
        let (r, s, i, j) = admissible_mk(&mut rng);
        mk_fail += usize::from(!bound_check_mk(r, s, i, j).unwrap().holds);
    }
    let mut mlq_fail = 0;
    for _ in 0..1000 {
        let (p, q, alpha, a) = admissible_mlq(&mut rng).unwrap();
        assert!(alpha.degree() <= 4);
        mlq_fail += usize::from(!bound_check_mlq(&p, &q, &alpha, a).unwrap().holds);
    }
    let w = bound_check_mk(Octonion::ONE, Octonion::ONE + e(1), ImaginaryUnit::basis(1), ImaginaryUnit::basis(2))
        .unwrap();
    let worked = (w.lower - 1.0)
        .abs()
        .max((w.value - 3f64.sqrt()).abs())
        .max((w.upper - 5f64.sqrt()).abs());
    verdict(
        9,
        "modulus bounds",
        mk_fail == 0 && mlq_fail == 0 && worked <= 1e-12,
        format!("{mk_fail}/10000 and {mlq_fail}/1000 violations, worked instance error {worked:.1e}"),
    );
}

#[test]
fn criterion_10_sqrt_counterexample() {
    let cfg = SqrtCounterexample::default();
    let j = cfg.j.as_octonion();
    let t = cfg.value_table().unwrap();
    let at_j = t.theta1_j.dist(&((Octonion::real(-1.0) - j) * FRAC_1_SQRT_2));
    let at_minus_j = t.minus_theta1_j.dist(&((Octonion::ONE - j) * FRAC_1_SQRT_2));
    let res = verify_not_slice(&cfg).unwrap();

    let i = cfg.i;
    let mut min_res = f64::INFINITY;
    let mut closed_form = 0f64;
    let tested: Vec<ImaginaryUnit> = (2..8)
        .map(ImaginaryUnit::basis)
        .chain((0..200).map(unit_sweep))
        .collect();
    for jj in &tested {
        let r = verify_not_slice(&SqrtCounterexample::new(1, i, *jj).unwrap()).unwrap();
        min_res = min_res.min(r);
        closed_form = closed_form.max((r - expected_residual(i, *jj)).abs());
    }

    let (cr, ratios) = octoslice::cli::suites::sqrt_regularity(&cfg).unwrap();
    let ratios_ok = ratios.iter().all(|r| (3.2..=4.8).contains(r));
    verdict(
        10,
        "square-root counterexample",
        at_j <= 1e-9 && at_minus_j <= 1e-9 && (res - SQRT_2).abs() <= 1e-9 && min_res > 0.5 && ratios_ok,
        format!(
            "value errors {at_j:.1e}/{at_minus_j:.1e}, residual {res:.12}, min over {} units {min_res:.3} \
             (closed form err {closed_form:.1e}), CR {cr:.1e} with ratios in [{:.3}, {:.3}]",
            tested.len(),
            ratios.iter().copied().fold(f64::INFINITY, f64::min),
            ratios.iter().copied().fold(0.0, f64::max),
        ),
    );
}

#[test]
fn criterion_11_end_to_end() {
    let bin = env!("CARGO_BIN_EXE_octoslice");
    let start = Instant::now();
    let mut codes = Vec::new();
    for cmd in ["verify-algebra", "verify-slice", "taylor-demo", "sqrt-example"] {
        let out = Command::new(bin).arg(cmd).output().expect("binary runs");
        codes.push((cmd, out.status.code()));
        if !out.status.success() {
            break;
        }
    }
    let elapsed = start.elapsed();
    let ok = codes.len() == 4 && codes.iter().all(|(_, c)| *c == Some(0));
    verdict(
        11,
        "end-to-end CLI",
        ok && elapsed < Duration::from_secs(60),
        format!("exit codes {codes:?}, {:.1} s", elapsed.as_secs_f64()),
    );
}
