use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sieve::ArithKind;
use crate::zetafun::{zeta, zeta_and_derivative, PrecisionConfig};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `F(s) = (s+1)/(2s(s-1)) - ζ(s)/s`, the Mellin transform of `{t} - 1/2`
/// on `t > 1`. The poles at 0 and 1 cancel; the limits are returned there.
pub fn mellin_kernel(s: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    if s == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(0.5 * (2.0 * PI).ln() - 1.0, 0.0));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Ok(Complex64::new(0.5 - EULER_GAMMA, 0.0));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok((s + one) / (s * (s - one) * 2.0) - zeta(s, cfg)? / s)
}

/// `F(s) u^{s+1}/(s+1)`, whose line integral over `Re s = a > 1` divided by
/// `2πi` equals `({u}² - {u})/2` for `u > 1`.
pub fn inversion_integrand(s: Complex64, u: f64, cfg: &PrecisionConfig) -> Result<Complex64> {
    let sp1 = s + 1.0;
    if sp1 == Complex64::new(0.0, 0.0) {
        return Err(Error::pole(s));
    }
    Ok(mellin_kernel(s, cfg)? * (sp1 * u.ln()).exp() / sp1)
}

/// `F(1-s) x^{s-2}/(2-s) · L(s)` with `L = ζ'/ζ(s+r-1)` for the lambda weight
/// and `L = -1/ζ(s+r-1)` for the mu weight. The sum of its residues left of
/// `Re s = c` (`1 < c < 2`) is half the weighted series.
pub fn integrand_thm1(
    s: Complex64,
    r: u32,
    x: f64,
    weight: ArithKind,
    cfg: &PrecisionConfig,
) -> Result<Complex64> {
    let two_minus = Complex64::new(2.0, 0.0) - s;
    if two_minus == Complex64::new(0.0, 0.0) {
        return Err(Error::pole(s));
    }
    let shifted = s + (f64::from(r) - 1.0);
    let l = match weight {
        ArithKind::Lambda => {
            let (z, dz) = zeta_and_derivative(shifted, cfg).map_err(|_| Error::pole(s))?;
            if z == Complex64::new(0.0, 0.0) {
                return Err(Error::pole(s));
            }
            dz / z
        }
        ArithKind::Mu => {
            let z = zeta(shifted, cfg).map_err(|_| Error::pole(s))?;
            if z == Complex64::new(0.0, 0.0) {
                return Err(Error::pole(s));
            }
            -1.0 / z
        }
    };
    let kernel = mellin_kernel(Complex64::new(1.0, 0.0) - s, cfg)?;
    let power = ((s - 2.0) * x.ln()).exp();
    Ok(kernel * power / two_minus * l)
}
