//! Complex log-Gamma and digamma for `Re z > 0`, plus the trigonometric
//! helpers the reflection formula needs.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::{bernoulli_f64, stirling_coefficients};

const SHIFT_RADIUS: f64 = 15.0;
const SERIES_TERMS: usize = 12;

/// Principal-branch continuous ln Γ(z) for `Re z > 0`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    debug_assert!(z.re > 0.0, "ln_gamma needs Re z > 0, got {z}");
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < SHIFT_RADIUS {
        shift += w.ln();
        w += 1.0;
    }
    let coeffs = stirling_coefficients();
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in coeffs.iter().take(SERIES_TERMS) {
        series += pow * *c;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift
}

/// ψ(z) = Γ'(z)/Γ(z) for `Re z > 0`.
pub fn digamma(z: Complex64) -> Complex64 {
    debug_assert!(z.re > 0.0, "digamma needs Re z > 0, got {z}");
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < SHIFT_RADIUS {
        shift += w.inv();
        w += 1.0;
    }
    let b = bernoulli_f64();
    let inv2 = w.inv() * w.inv();
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv2;
    for (k, bk) in b.iter().enumerate().take(SERIES_TERMS) {
        series += pow * (*bk / (2.0 * (k as f64 + 1.0)));
        pow *= inv2;
    }
    w.ln() - 0.5 * w.inv() - series - shift
}

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi_real(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    (PI * r).sin()
}

/// cos(πx) with exact zeros at the half-integers.
pub fn cos_pi_real(x: f64) -> f64 {
    sin_pi_real(x + 0.5)
}

/// sin(πz) and cos(πz) for complex z.
pub fn sin_cos_pi(z: Complex64) -> (Complex64, Complex64) {
    let (sa, ca) = (sin_pi_real(z.re), cos_pi_real(z.re));
    let b = PI * z.im;
    let (sh, ch) = (b.sinh(), b.cosh());
    (
        Complex64::new(sa * ch, ca * sh),
        Complex64::new(ca * ch, -sa * sh),
    )
}

/// A branch of ln sin(πz), usable when |Im z| is large enough that sin(πz)
/// itself would overflow. Only meaningful after exponentiation.
pub fn ln_sin_pi(z: Complex64) -> Complex64 {
    let w = z * PI;
    let i = Complex64::i();
    if w.im > 0.0 {
        let q = (2.0 * i * w).exp();
        -i * w + ((q - 1.0) / (2.0 * i)).ln()
    } else {
        let q = (-2.0 * i * w).exp();
        i * w + ((1.0 - q) / (2.0 * i)).ln()
    }
}

/// cot(πz), stable for large |Im z|.
pub fn cot_pi(z: Complex64) -> Complex64 {
    let w = z * PI;
    let i = Complex64::i();
    if w.im > 0.0 {
        let q = (2.0 * i * w).exp();
        i * (q + 1.0) / (q - 1.0)
    } else {
        let q = (-2.0 * i * w).exp();
        i * (1.0 + q) / (1.0 - q)
    }
}
