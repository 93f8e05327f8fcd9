//! Fresnel cosine/sine integrals and the complex knife-edge integral F(v).
//!
//! C(x) and S(x) use their power series up to |x| = 1.6 and the continued
//! fraction for the complementary error function beyond that, so no
//! quadrature happens at runtime.

use crate::complex::ComplexValue;
use std::f64::consts::{FRAC_PI_2, PI};

const SERIES_LIMIT: f64 = 1.6;
const EPS: f64 = 1e-16;
const MAX_ITER: usize = 400;

/// Fresnel integrals `(C(x), S(x))` with the πt²/2 normalization.
pub fn fresnel_cs(x: f64) -> (f64, f64) {
    let ax = x.abs();
    let (c, s) = if ax < 1e-150 {
        (ax, 0.0)
    } else if ax <= SERIES_LIMIT {
        series(ax)
    } else {
        continued_fraction(ax)
    };
    if x < 0.0 {
        (-c, -s)
    } else {
        (c, s)
    }
}

// Alternating series; C takes the even terms, S the odd ones.
fn series(ax: f64) -> (f64, f64) {
    let fact = FRAC_PI_2 * ax * ax;
    let mut term = ax;
    let mut sumc = ax;
    let mut sums = 0.0;
    let mut sign_c = 1.0;
    let mut sign_s = 1.0;
    for k in 1..MAX_ITER {
        term *= fact / k as f64;
        let n = (2 * k + 1) as f64;
        if k % 2 == 1 {
            sums += sign_s * term / n;
            sign_s = -sign_s;
        } else {
            sign_c = -sign_c;
            sumc += sign_c * term / n;
        }
        if term < EPS * sumc.abs().max(sums.abs()) {
            break;
        }
    }
    (sumc, sums)
}

// Modified Lentz evaluation of the erfc continued fraction.
fn continued_fraction(ax: f64) -> (f64, f64) {
    let pix2 = PI * ax * ax;
    let tiny = 1e-300;
    let mut b = ComplexValue::new(1.0, -pix2);
    let mut cc = ComplexValue::new(1.0 / tiny, 0.0);
    let mut d = b.recip();
    let mut h = d;
    let mut n = -1.0_f64;
    for _ in 2..=MAX_ITER {
        n += 2.0;
        let a = -n * (n + 1.0);
        b = b + ComplexValue::new(4.0, 0.0);
        d = (d.scale(a) + b).recip();
        cc = b + cc.recip().scale(a);
        let del = cc * d;
        h = h * del;
        if (del.re - 1.0).abs() + del.im.abs() < EPS {
            break;
        }
    }
    h = h * ComplexValue::new(ax, -ax);
    let cs = ComplexValue::new(0.5, 0.5) * (ComplexValue::ONE - ComplexValue::cis(0.5 * pix2) * h);
    (cs.re, cs.im)
}

/// Complex Fresnel integral F(v) = (1+j)/2 · ∫_v^∞ exp(−jπt²/2) dt.
///
/// F(0) = 1/2, F(v) → 1 as v → −∞ and F(v) → 0 as v → +∞.
pub fn fresnel_integral_f(v: f64) -> ComplexValue {
    let (c, s) = fresnel_cs(v);
    let tail = ComplexValue::new(0.5 - c, -(0.5 - s));
    ComplexValue::new(0.5, 0.5) * tail
}

/// Complement of [`fresnel_integral_f`]: (1+j)/2 · ∫_{−∞}^v exp(−jπt²/2) dt.
pub fn fresnel_integral_f_lower(v: f64) -> ComplexValue {
    ComplexValue::ONE - fresnel_integral_f(v)
}

/// Single knife edge: 20·log10|F(v)|.
pub fn knife_edge_gain_db(v: f64) -> f64 {
    20.0 * fresnel_integral_f(v).magnitude().log10()
}
