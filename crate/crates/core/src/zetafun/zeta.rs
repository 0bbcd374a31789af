//! Euler–Maclaurin evaluation of ζ(s) and ζ'(s).
//!
//! For `Re s >= -1` the expansion
//!
//! ```text
//! ζ(s) = Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!        + Σ_{j=1}^{M} B_{2j}/(2j)! · s(s+1)…(s+2j-2) · N^{-s-2j+1}
//! ```
//! is used directly and differentiated term by term for ζ'. Further left the
//! main sum cancels catastrophically in f64, so ζ(s) = χ(s) ζ(1-s) is used
//! with the same expansion on the right half-plane side.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::bernoulli::em_coefficients;
use super::gamma::{cot_pi, digamma, ln_gamma, ln_sin_pi, sin_cos_pi};
use super::PrecisionConfig;
use crate::error::{Error, Result};
use crate::sum::ComplexCompensatedSum;

/// Largest |Im s| accepted by [`zeta`] and [`zeta_prime`].
pub const MAX_IMAG: f64 = 6000.0;

/// Below this real part ζ is evaluated through the functional equation.
const REFLECT_BELOW: f64 = -1.0;
/// Above this |Im s| the reflection factor is assembled in log space.
const LOG_SPACE_ABOVE: f64 = 40.0;

const TABLE_LEN: usize = 1 << 16;

struct SmallTables {
    spf: Vec<u32>,
    ln: Vec<f64>,
}

fn tables() -> &'static SmallTables {
    static T: OnceLock<SmallTables> = OnceLock::new();
    T.get_or_init(|| {
        let mut spf = vec![0u32; TABLE_LEN];
        for i in 2..TABLE_LEN {
            if spf[i] == 0 {
                let mut j = i;
                while j < TABLE_LEN {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        let ln = (0..TABLE_LEN)
            .map(|n| if n == 0 { 0.0 } else { (n as f64).ln() })
            .collect();
        SmallTables { spf, ln }
    })
}

#[inline]
fn pow_neg(s: Complex64, ln_n: f64) -> Complex64 {
    let mag = (-s.re * ln_n).exp();
    let (sin, cos) = (-s.im * ln_n).sin_cos();
    Complex64::new(mag * cos, mag * sin)
}

/// `n^{-s}` for `n = 0..len` (entry 0 unused), built multiplicatively from the
/// prime values.
fn negative_powers(s: Complex64, len: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); len];
    if len > 1 {
        v[1] = Complex64::new(1.0, 0.0);
    }
    if len <= TABLE_LEN {
        let t = tables();
        for n in 2..len {
            let p = t.spf[n] as usize;
            v[n] = if p == n {
                pow_neg(s, t.ln[n])
            } else {
                v[p] * v[n / p]
            };
        }
    } else {
        for (n, slot) in v.iter_mut().enumerate().skip(2) {
            *slot = pow_neg(s, (n as f64).ln());
        }
    }
    v
}

#[inline]
fn ln_of(n: usize) -> f64 {
    if n < TABLE_LEN {
        tables().ln[n]
    } else {
        (n as f64).ln()
    }
}

fn check_argument(s: Complex64) -> Result<()> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {s}")));
    }
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::pole(s));
    }
    if s.im.abs() > MAX_IMAG {
        return Err(Error::Range(format!(
            "|Im s| = {} exceeds {MAX_IMAG}",
            s.im.abs()
        )));
    }
    Ok(())
}

/// Euler–Maclaurin with main-sum length `n_terms`; derivative optional.
fn euler_maclaurin(
    s: Complex64,
    n_terms: usize,
    order: usize,
    with_derivative: bool,
) -> (Complex64, Complex64) {
    let big_n = n_terms;
    let powers = negative_powers(s, big_n);
    let mut main = ComplexCompensatedSum::new();
    let mut dmain = ComplexCompensatedSum::new();
    for (n, v) in powers.iter().enumerate().skip(1) {
        main.add(*v);
        if with_derivative {
            dmain.add(*v * -ln_of(n));
        }
    }

    let ln_big = ln_of(big_n);
    let n_f = big_n as f64;
    let n_pow = pow_neg(s, ln_big);
    let sm1 = s - 1.0;
    let integral = n_pow * n_f / sm1;
    let half = n_pow * 0.5;

    let coeffs = em_coefficients();
    let inv_n2 = 1.0 / (n_f * n_f);
    // P_j = s(s+1)…(s+2j-2) and its derivative
    let mut p = s;
    let mut dp = Complex64::new(1.0, 0.0);
    let mut scale = n_pow / n_f;
    let mut corr = Complex64::new(0.0, 0.0);
    let mut dcorr = Complex64::new(0.0, 0.0);
    for (j, c) in coeffs.iter().enumerate().take(order) {
        corr += p * scale * *c;
        if with_derivative {
            dcorr += (dp - p * ln_big) * scale * *c;
        }
        let a = s + (2 * j + 1) as f64;
        let b = s + (2 * j + 2) as f64;
        dp = dp * a * b + p * (a + b);
        p = p * a * b;
        scale *= inv_n2;
    }

    let z = main.value() + integral + half + corr;
    let dz = if with_derivative {
        dmain.value() + integral * (-ln_big - sm1.inv()) - half * ln_big + dcorr
    } else {
        Complex64::new(0.0, 0.0)
    };
    (z, dz)
}

/// χ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) and χ'(s).
fn chi_and_derivative(s: Complex64) -> (Complex64, Complex64) {
    let one_minus = Complex64::new(1.0, 0.0) - s;
    let ln_two_pi = (2.0 * PI).ln();
    let psi = digamma(one_minus);
    let log_base = s * 2f64.ln() + (s - 1.0) * PI.ln() + ln_gamma(one_minus);
    if s.im.abs() < LOG_SPACE_ABOVE {
        let a = log_base.exp();
        let (sin, cos) = sin_cos_pi(s * 0.5);
        let chi = a * sin;
        let dchi = a * (sin * (ln_two_pi - psi) + cos * (PI / 2.0));
        (chi, dchi)
    } else {
        let chi = (log_base + ln_sin_pi(s * 0.5)).exp();
        let dchi = chi * (ln_two_pi - psi + cot_pi(s * 0.5) * (PI / 2.0));
        (chi, dchi)
    }
}

fn evaluate(s: Complex64, cfg: &PrecisionConfig, with_derivative: bool) -> Result<(Complex64, Complex64)> {
    check_argument(s)?;
    let order = cfg.em_bernoulli_order;
    if s.re >= REFLECT_BELOW {
        let n = cfg.em_terms.terms(s.im);
        return Ok(euler_maclaurin(s, n, order, with_derivative));
    }
    let mirror = Complex64::new(1.0, 0.0) - s;
    let n = cfg.em_terms.terms(mirror.im);
    let (zm, dzm) = euler_maclaurin(mirror, n, order, with_derivative);
    let (chi, dchi) = chi_and_derivative(s);
    let z = chi * zm;
    let dz = if with_derivative {
        dchi * zm - chi * dzm
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok((z, dz))
}

/// ζ(s) for `s != 1`, `|Im s| <= MAX_IMAG`.
pub fn zeta(s: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    evaluate(s, cfg, false).map(|(z, _)| z)
}

/// ζ'(s), by analytic differentiation of the same expansion.
pub fn zeta_prime(s: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    evaluate(s, cfg, true).map(|(_, d)| d)
}

/// `(ζ(s), ζ'(s))` from a single pass over the main sum.
pub fn zeta_and_derivative(s: Complex64, cfg: &PrecisionConfig) -> Result<(Complex64, Complex64)> {
    evaluate(s, cfg, true)
}

/// ζ'(-2n) = (-1)^n ζ(2n+1) (2n)! / (π^{2n} 2^{2n+1}), for `1 <= n <= 30`.
pub fn zeta_prime_trivial_closed(n: u32, cfg: &PrecisionConfig) -> Result<f64> {
    if !(1..=30).contains(&n) {
        return Err(Error::Range(format!("n = {n} outside 1..=30")));
    }
    let odd = zeta(Complex64::new(f64::from(2 * n + 1), 0.0), cfg)?.re;
    let mut factorial = 1.0f64;
    for k in 1..=(2 * n) {
        factorial *= f64::from(k);
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let m = f64::from(2 * n);
    Ok(sign * odd * factorial / (PI.powf(m) * 2f64.powf(m + 1.0)))
}
