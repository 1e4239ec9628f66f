//! Modified Bessel function of the second kind, order one.
//!
//! `K1` drives the trench-assisted coupling coefficient, so it is implemented
//! here to full double precision rather than with the usual ~1e-7 polynomial
//! fits: an ascending Temme-style series below the crossover and Steed's
//! continued fraction above it.

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Result, XtError};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const MAX_ITER: usize = 500;

/// K1(x) for x > 0.
pub fn bessel_k1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(XtError::domain("bessel_k1 requires x > 0"));
    }
    let (_, k1) = if x <= 2.0 {
        k0_k1_series(x)
    } else {
        k0_k1_steed(x)
    };
    Ok(k1)
}

/// Ascending series for K0/K1 at integer order (Temme's method with u = 0),
/// rapidly convergent for x <= 2.
fn k0_k1_series(x: f64) -> (f64, f64) {
    let log_half_x = (0.5 * x).ln();
    let quarter_x2 = 0.25 * x * x;

    // k = 0 terms
    let mut f = -(EULER_GAMMA + log_half_x);
    let mut p = 0.5;
    let mut q = 0.5;
    let mut coef = 1.0;
    let mut sum0 = f;
    let mut sum1 = p;

    for k in 1..MAX_ITER {
        let kf = k as f64;
        f = (kf * f + p + q) / (kf * kf);
        p /= kf;
        q /= kf;
        let h = p - kf * f;
        coef *= quarter_x2 / kf;
        sum0 += coef * f;
        sum1 += coef * h;
        if (coef * f).abs() < sum0.abs() * f64::EPSILON {
            break;
        }
    }

    (sum0, 2.0 * sum1 / x)
}

/// Steed's continued fraction for K0/K1 (Thompson & Barnett), used for x > 2.
fn k0_k1_steed(x: f64) -> (f64, f64) {
    let mut a = -0.25;
    let mut b = 2.0 * (x + 1.0);
    let mut d = 1.0 / b;
    let mut delta = d;
    let mut f = d;
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut q = 0.25;
    let mut c = 0.25;
    let mut s = 1.0 + q * delta;

    for k in 2..MAX_ITER {
        let kf = k as f64;
        a -= 2.0 * (kf - 1.0);
        b += 2.0;
        d = 1.0 / (a * d + b);
        delta *= b * d - 1.0;
        f += delta;

        let t = (prev - (b - 2.0) * cur) / a;
        prev = cur;
        cur = t;
        c *= -a / kf;
        q += c * t;
        s += q * delta;

        if (q * delta).abs() < s.abs() * (0.5 * f64::EPSILON) {
            break;
        }
    }

    let k0 = (core::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k1 = k0 * (0.5 + x - 0.25 * f) / x;
    (k0, k1)
}
