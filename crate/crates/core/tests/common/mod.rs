//! Test-only oracles, independent of the library's special functions.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Adaptive Simpson quadrature of `f` on `[a, b]`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Γ(k/2) by the half-integer recurrence from Γ(1/2) = √π and Γ(1) = 1.
pub fn gamma_half(k: u32) -> f64 {
    assert!(k >= 1);
    let (mut g, mut v) = if k.is_multiple_of(2) {
        (1.0, 1.0)
    } else {
        (PI.sqrt(), 0.5)
    };
    while v < k as f64 / 2.0 {
        g *= v;
        v += 1.0;
    }
    g
}

/// Chi-square CDF by quadrature of the density after `t = s²`.
pub fn chi_square_cdf_oracle(x: f64, k: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let norm = 2f64.powf(k as f64 / 2.0) * gamma_half(k);
    let f = |s: f64| 2.0 * s.powi(k as i32 - 1) * (-s * s / 2.0).exp() / norm;
    integrate(&f, 0.0, x.sqrt(), 1e-14)
}

/// F CDF by quadrature of the density after `x = s²`.
pub fn f_cdf_oracle(x: f64, d1: u32, d2: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let (a, b) = (d1 as f64 / 2.0, d2 as f64 / 2.0);
    let beta = gamma_half(d1) * gamma_half(d2) / gamma_half(d1 + d2);
    let r = d1 as f64 / d2 as f64;
    let norm = r.powf(a) / beta;
    let f = |s: f64| 2.0 * norm * s.powi(d1 as i32 - 1) * (1.0 + r * s * s).powf(-(a + b));
    integrate(&f, 0.0, x.sqrt(), 1e-14)
}
