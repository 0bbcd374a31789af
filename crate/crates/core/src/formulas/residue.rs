use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sum::ComplexCompensatedSum;

/// Largest allowed gap between the residue estimates at radius `ρ` and `ρ/2`.
pub const RESIDUE_STABILITY_TOL: f64 = 1e-8;

/// `(1/2πi) ∮ f` over the circle `|s - center| = radius` by the trapezoid rule
/// with `nodes` equispaced points.
pub fn circle_trapezoid<F>(f: F, center: Complex64, radius: f64, nodes: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut acc = ComplexCompensatedSum::new();
    for j in 0..nodes {
        let phi = 2.0 * PI * j as f64 / nodes as f64;
        let e = Complex64::from_polar(radius, phi);
        acc.add(f(center + e)? * e);
    }
    Ok(acc.value() / nodes as f64)
}

/// Residue of `f` at `center`. Evaluated on two radii; a disagreement above
/// [`RESIDUE_STABILITY_TOL`] means another singularity is too close.
pub fn residue_via_circle<F>(f: F, center: Complex64, radius: f64, nodes: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if nodes < 64 {
        return Err(Error::Precondition(format!("{nodes} contour nodes, at least 64 needed")));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::Precondition(format!("contour radius {radius} must be positive")));
    }
    let full = circle_trapezoid(&f, center, radius, nodes)?;
    let half = circle_trapezoid(&f, center, 0.5 * radius, nodes)?;
    let delta = (full - half).norm();
    if delta > RESIDUE_STABILITY_TOL {
        return Err(Error::Instability {
            re: center.re,
            im: center.im,
            delta,
        });
    }
    Ok(full)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_and_double_poles() {
        let c = Complex64::new(0.3, -1.0);
        let res = residue_via_circle(|s| Ok((s * 2.0).exp() / (s - c)), c, 0.5, 128).unwrap();
        assert!((res - (c * 2.0).exp()).norm() < 1e-13);
        // d/ds e^{2s} at c
        let res = residue_via_circle(|s| Ok((s * 2.0).exp() / ((s - c) * (s - c))), c, 0.5, 128).unwrap();
        assert!((res - (c * 2.0).exp() * 2.0).norm() < 1e-12);
        let res = residue_via_circle(|s| Ok(s.sin()), c, 0.5, 64).unwrap();
        assert!(res.norm() < 1e-14);
    }

    #[test]
    fn nearby_singularity_is_flagged() {
        let f = |s: Complex64| Ok(Complex64::new(1.0, 0.0) / (s * (s - 0.4)));
        let err = residue_via_circle(f, Complex64::new(0.0, 0.0), 0.5, 128).unwrap_err();
        assert!(matches!(err, Error::Instability { .. }));
    }

    #[test]
    fn preconditions() {
        let f = |s: Complex64| Ok(s);
        assert!(residue_via_circle(f, Complex64::new(0.0, 0.0), 0.1, 32).is_err());
        assert!(residue_via_circle(f, Complex64::new(0.0, 0.0), 0.0, 128).is_err());
    }
}
