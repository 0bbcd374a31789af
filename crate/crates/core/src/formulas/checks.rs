use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::integrand::{inversion_integrand, mellin_kernel};
use crate::error::{Error, Result};
use crate::quad::GaussLegendre;
use crate::sum::{CompensatedSum, ComplexCompensatedSum};
use crate::zetafun::PrecisionConfig;

const PANELS_PER_TASK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub diff: f64,
    /// Bound on the part of the integral beyond the truncation point.
    pub tail_bound: f64,
}

/// `∫_1^∞ t^{-s-1}({t} - 1/2) dt` by Gauss rules on each `[m, m+1]`,
/// against `F(s)`.
pub fn mellin_pair_check(s: Complex64, cfg: &PrecisionConfig) -> Result<MellinCheck> {
    if !(s.re > 1.0) {
        return Err(Error::Domain(format!("Re s = {} must exceed 1", s.re)));
    }
    let t_max: usize = if s.re >= 2.0 { 100_000 } else { 1_000_000 };
    let gl = GaussLegendre::new(cfg.quadrature_nodes_per_panel);
    let exponent = -(s + 1.0);
    let starts: Vec<usize> = (1..t_max).step_by(PANELS_PER_TASK).collect();
    let partials: Vec<Complex64> = starts
        .par_iter()
        .map(|&lo| {
            let hi = (lo + PANELS_PER_TASK).min(t_max);
            let mut acc = ComplexCompensatedSum::new();
            for m in lo..hi {
                let m = m as f64;
                for (t, w) in gl.panel(m, m + 1.0) {
                    acc.add((exponent * t.ln()).exp() * (w * (t - m - 0.5)));
                }
            }
            acc.value()
        })
        .collect();
    let lhs = partials.into_iter().collect::<ComplexCompensatedSum>().value();
    let rhs = mellin_kernel(s, cfg)?;
    Ok(MellinCheck {
        lhs,
        rhs,
        diff: (lhs - rhs).norm(),
        tail_bound: (t_max as f64).powf(-s.re) / (2.0 * s.re),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionCheck {
    pub line_integral: f64,
    pub closed: f64,
    pub diff: f64,
}

/// `(1/2πi) ∫_{a-iT}^{a+iT} F(s) u^{s+1}/(s+1) ds` against `({u}² - {u})/2`.
pub fn inversion_check(u: f64, a: f64, t_max: f64, cfg: &PrecisionConfig) -> Result<InversionCheck> {
    if !(u > 1.0) {
        return Err(Error::Precondition(format!("u = {u} must exceed 1")));
    }
    if !(a > 1.0) {
        return Err(Error::Precondition(format!("a = {a} must exceed 1")));
    }
    if !(t_max > 0.0) || t_max > 1e4 {
        return Err(Error::Precondition(format!("T = {t_max} outside (0, 1e4]")));
    }
    let gl = GaussLegendre::new(cfg.quadrature_nodes_per_panel);
    let panels = t_max.ceil() as usize;
    let width = t_max / panels as f64;
    let partials: Vec<f64> = (0..panels)
        .into_par_iter()
        .map(|j| {
            let lo = j as f64 * width;
            let mut acc = CompensatedSum::new();
            for (t, w) in gl.panel(lo, lo + width) {
                acc.add(w * inversion_integrand(Complex64::new(a, t), u, cfg)?.re);
            }
            Ok(acc.value())
        })
        .collect::<Result<_>>()?;
    // the integrand is conjugate symmetric, so the full line is twice the real part
    let line_integral = partials.into_iter().collect::<CompensatedSum>().value() / PI;
    let f = u - u.floor();
    let closed = 0.5 * (f * f - f);
    Ok(InversionCheck {
        line_integral,
        closed,
        diff: (line_integral - closed).abs(),
    })
}
