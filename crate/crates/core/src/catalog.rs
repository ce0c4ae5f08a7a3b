//! Test functions shared by the verification suites.

use num_complex::Complex64;

use crate::algebra::{ImaginaryUnit, Octonion};
use crate::cone::SlicePoint;
use crate::slice::{ConeFunction, StemFunction, StemValue};
use crate::taylor::{star_power_apply, MultiIndex};

/// Stem `(Re g, Im g) c` of a complex function `g` and an octonion `c`. It
/// induces `q -> g(q) c`, which is slice regular when `g` is holomorphic.
pub fn complex_stem<G>(dim: usize, g: G, c: Octonion) -> StemFunction
where
    G: Fn(&[Complex64]) -> Complex64 + Send + Sync + 'static,
{
    StemFunction::new(dim, move |x, y| {
        let z: Vec<Complex64> = x.iter().zip(y).map(|(a, b)| Complex64::new(*a, *b)).collect();
        let w = g(&z);
        StemValue::new(c * w.re, c * w.im)
    })
}

fn oct(c: [f64; 8]) -> Octonion {
    Octonion::new(c)
}

/// A named stem.
pub struct TestFunction {
    pub name: &'static str,
    pub stem: StemFunction,
    /// Whether the stem is holomorphic.
    pub holomorphic: bool,
}

impl TestFunction {
    pub fn function(&self) -> ConeFunction {
        self.stem.induced()
    }
}

/// Ten stems in one to three variables, holomorphic and not.
pub fn stem_test_functions() -> Vec<TestFunction> {
    let a = oct([0.5, -1.0, 0.25, 2.0, 0.0, -0.75, 1.5, 0.3]);
    let b = oct([-1.2, 0.4, 0.0, 0.9, 1.1, 0.0, -0.6, 2.0]);
    let c = oct([0.0, 0.7, -1.3, 0.2, 0.5, 1.9, 0.0, -0.4]);
    let d = oct([2.0, 0.0, 0.0, -1.0, 0.3, 0.3, 0.8, 0.0]);
    vec![
        TestFunction {
            name: "identity",
            stem: complex_stem(1, |z| z[0], Octonion::ONE),
            holomorphic: true,
        },
        TestFunction {
            name: "square",
            stem: complex_stem(1, |z| z[0] * z[0], Octonion::ONE),
            holomorphic: true,
        },
        TestFunction {
            name: "cube_times_a",
            stem: complex_stem(1, |z| z[0] * z[0] * z[0], a),
            holomorphic: true,
        },
        TestFunction {
            name: "exp_times_b",
            stem: complex_stem(1, |z| z[0].exp(), b),
            holomorphic: true,
        },
        TestFunction {
            name: "conj_pattern_times_c",
            stem: complex_stem(1, |z| z[0].conj(), c),
            holomorphic: false,
        },
        TestFunction {
            name: "constant",
            stem: StemFunction::new(1, move |_, _| StemValue::new(d, Octonion::ZERO)),
            holomorphic: true,
        },
        TestFunction {
            name: "product_2var",
            stem: complex_stem(2, |z| z[0] * z[1], a),
            holomorphic: true,
        },
        TestFunction {
            name: "mixed_2var",
            stem: complex_stem(2, |z| z[0] * z[0] + z[1] * 3.0, c),
            holomorphic: true,
        },
        TestFunction {
            name: "sin_3var",
            stem: complex_stem(3, |z| z[0].sin() * z[2] + z[1], b),
            holomorphic: true,
        },
        TestFunction {
            // F2 vanishes at y = 0 so the induced function is well defined
            name: "generic_nonholomorphic",
            stem: StemFunction::new(1, move |x, y| {
                StemValue::new(a * x[0] + b * (y[0] * y[0]), c * y[0] + d * (x[0] * y[0]))
            }),
            holomorphic: false,
        },
    ]
}

/// `f(x + yI) = q_1 + y_1 <I, e2>`, which is well defined on the cone but not
/// affine in `I`, hence not slice.
pub fn non_slice_function(dim: usize) -> ConeFunction {
    let e2 = ImaginaryUnit::basis(2);
    ConeFunction::new(dim, move |q| {
        q.coordinate(0) + Octonion::real(q.y()[0] * q.unit().dot(&e2))
    })
}

/// `q -> q^k c` in one variable, by repeated left multiplication.
pub fn power_function(k: u32, c: Octonion) -> ConeFunction {
    ConeFunction::new(1, move |q| {
        let z = q.coordinate(0);
        (0..k).fold(c, |acc, _| z * acc)
    })
}

/// `q -> (q - p)^{*alpha} a`.
pub fn star_monomial(p: SlicePoint, alpha: MultiIndex, a: Octonion) -> ConeFunction {
    ConeFunction::new(p.dim(), move |q| {
        star_power_apply(q, &p, &alpha, a).expect("dimensions checked by the domain")
    })
}

/// Polynomials of degree at most four used by the Taylor checks.
pub fn polynomial_test_functions() -> Vec<TestFunction> {
    let a = oct([0.3, 1.0, -0.5, 0.0, 0.2, 0.0, 0.9, -1.1]);
    let b = oct([1.0, 0.0, 0.4, -0.3, 0.0, 0.8, 0.0, 0.5]);
    vec![
        TestFunction {
            name: "quartic",
            stem: complex_stem(1, |z| z[0].powu(4) - z[0] * 2.0 + 0.5, a),
            holomorphic: true,
        },
        TestFunction {
            name: "cubic_2var",
            stem: complex_stem(2, |z| z[0] * z[0] * z[1] + z[1].powu(3) - z[0], b),
            holomorphic: true,
        },
        TestFunction {
            name: "quartic_2var",
            stem: complex_stem(2, |z| z[0].powu(2) * z[1].powu(2) + z[0] * 0.5, a),
            holomorphic: true,
        },
        TestFunction {
            name: "quadratic_3var",
            stem: complex_stem(3, |z| z[0] * z[2] + z[1] * z[1] - 1.0, b),
            holomorphic: true,
        },
    ]
}
