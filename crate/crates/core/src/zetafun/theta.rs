//! Riemann–Siegel theta and Hardy's Z function.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{zeta, PrecisionConfig};
use crate::error::{Error, Result};

/// Largest t accepted by [`hardy_z`]; matches the zeta height cap.
pub const MAX_T: f64 = super::MAX_IMAG;

/// Stirling expansion of θ(t), `t >= 10`:
/// (t/2) ln(t/2π) - t/2 - π/8 + 1/(48t) + 7/(5760t³) + 31/(80640t⁵) + 127/(430080t⁷).
pub fn rs_theta(t: f64) -> Result<f64> {
    if !(t >= 10.0) {
        return Err(Error::Range(format!("rs_theta needs t >= 10, got {t}")));
    }
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let corr = inv
        * (1.0 / 48.0
            + inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0 + inv2 * (127.0 / 430_080.0))));
    Ok(0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + corr)
}

/// Z(t) = e^{iθ(t)} ζ(1/2 + it) for `10 <= t <= MAX_T`.
///
/// Fails with a numerical error if the rotated value is not real to 1e-8.
pub fn hardy_z(t: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !(10.0..=MAX_T).contains(&t) {
        return Err(Error::Range(format!("hardy_z needs 10 <= t <= {MAX_T}, got {t}")));
    }
    let theta = rs_theta(t)?;
    let z = zeta(Complex64::new(0.5, t), cfg)?;
    let rotated = Complex64::from_polar(1.0, theta) * z;
    if rotated.im.abs() > 1e-8 {
        return Err(Error::Numerical(format!(
            "Z({t}) has imaginary residue {:e}",
            rotated.im
        )));
    }
    Ok(rotated.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_range() {
        assert!(rs_theta(9.99).is_err());
        let t = 20.0;
        let leading = 10.0 * (20.0 / (2.0 * PI)).ln() - 10.0 - PI / 8.0;
        assert!((rs_theta(t).unwrap() - leading).abs() < 1.0 / (48.0 * 20.0) + 1e-6);
    }

    #[test]
    fn sign_changes_bracket_first_zeros() {
        let cfg = PrecisionConfig::default();
        let z = |t| hardy_z(t, &cfg).unwrap();
        assert!(z(14.0) * z(14.2) < 0.0);
        assert!(z(17.8) * z(18.3) > 0.0);
        assert!(z(20.9) * z(21.1) < 0.0);
    }

    #[test]
    fn modulus_matches_zeta() {
        let cfg = PrecisionConfig::default();
        for t in [10.0, 33.3, 250.0, 1999.0] {
            let z = hardy_z(t, &cfg).unwrap();
            let m = zeta(Complex64::new(0.5, t), &cfg).unwrap().norm();
            assert!((z.abs() - m).abs() < 1e-9);
        }
        assert!(hardy_z(9.0, &cfg).is_err());
    }
}
