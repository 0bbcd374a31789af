//! Right-hand sides exactly as printed: the `x^{-r}` term `h_r`, the sum over
//! nontrivial zeros, and the sum over trivial zeros.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{FormulaParams, Identity, PartialSum, SideBreakdown};
use crate::error::{Error, Result};
use crate::sum::{CompensatedSum, ComplexCompensatedSum};
use crate::zeros::{ZeroEntry, ZeroTable};
use crate::zetafun::{zeta, PrecisionConfig};

fn real_zeta(s: f64, cfg: &PrecisionConfig) -> Result<f64> {
    Ok(zeta(Complex64::new(s, 0.0), cfg)?.re)
}

/// `h_1(x) = (2 - log 2π)/(2x)`; for `r > 1`,
/// `h_r(x) = (r/(2(2-r)(1-r)) - ζ(1-r)/(r-1)) x^{-r}/r`.
pub fn h_r_paper(r: u32, x: f64, cfg: &PrecisionConfig) -> Result<f64> {
    h_paper_impl(r, x, cfg, false)
}

/// The printed `h_r` with `ζ(r-1)` in place of `ζ(1-r)`, the value the
/// integrand's `ζ(1-s)` factor takes at `s = 2 - r`.
pub fn h_r_paper_with_mirrored_zeta(r: u32, x: f64, cfg: &PrecisionConfig) -> Result<f64> {
    h_paper_impl(r, x, cfg, true)
}

fn h_paper_impl(r: u32, x: f64, cfg: &PrecisionConfig, mirrored: bool) -> Result<f64> {
    if r == 0 {
        return Err(Error::Validation("r must be at least 1".into()));
    }
    if r == 1 {
        return Ok((2.0 - (2.0 * PI).ln()) / (2.0 * x));
    }
    if r == 2 {
        return Err(Error::Degenerate(
            "h_r as printed divides by (2 - r) and is undefined at r = 2; use the residue oracle"
                .into(),
        ));
    }
    let rf = f64::from(r);
    let z = if mirrored {
        real_zeta(rf - 1.0, cfg)?
    } else {
        real_zeta(1.0 - rf, cfg)?
    };
    let coeff = rf / (2.0 * (2.0 - rf) * (1.0 - rf)) - z / (rf - 1.0);
    Ok(coeff * x.powf(-rf) / rf)
}

/// The printed summand for one nontrivial zero `rho` (not paired).
pub fn paper_zero_term(
    identity: Identity,
    r: u32,
    x: f64,
    rho: Complex64,
    zeta_prime_at_rho: Option<Complex64>,
    cfg: &PrecisionConfig,
) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    match identity {
        Identity::PopovEq11 => Ok(cpow(x, rho - 2.0) / (rho * (rho - one))),
        Identity::Theorem1 => {
            let rf = f64::from(r);
            let r_minus = -rho + rf;
            let coeff = (-rho + (rf + 1.0)) / ((rho + (1.0 - rf)) * (rho - rf) * 2.0)
                - zeta(r_minus, cfg)? / r_minus;
            Ok(coeff * cpow(x, rho - (rf + 1.0)) / (-rho + (rf + 1.0)))
        }
        Identity::MobiusThm21 => {
            let zp = zeta_prime_at_rho.ok_or_else(|| {
                Error::Data(format!("zeta'(rho) missing for rho = {rho}"))
            })?;
            Ok(cpow(x, rho - 2.0) / (zp * rho * (rho - one)))
        }
    }
}

/// The printed summand for the trivial zero indexed by `k >= 1`.
pub fn paper_trivial_term(
    identity: Identity,
    r: u32,
    x: f64,
    k: usize,
    cfg: &PrecisionConfig,
) -> Result<f64> {
    let kf = k as f64;
    let popov_coeff = |cfg: &PrecisionConfig| -> Result<f64> {
        let z = real_zeta(2.0 * kf + 1.0, cfg)?;
        Ok((kf + 1.0 - 2.0 * kf * z) / (2.0 * kf * (kf + 1.0) * (2.0 * kf + 1.0)))
    };
    match identity {
        Identity::PopovEq11 => Ok(popov_coeff(cfg)? * x.powf(-2.0 * kf - 2.0)),
        Identity::Theorem1 => {
            let rf = f64::from(r);
            let m = 2.0 * kf + rf;
            let coeff = (2.0 * (kf + 1.0) + rf - 1.0) / (2.0 * (1.0 - m) * m)
                + real_zeta(m, cfg)? / m;
            Ok(-coeff * x.powf(-m - 1.0) / (m + 1.0))
        }
        Identity::MobiusThm21 => {
            let z = real_zeta(2.0 * kf + 1.0, cfg)?;
            // π^{2k} 2^{2k+1} (-1)^k / ((2k)! ζ(2k+1)), assembled in log space
            let ln_mag = 2.0 * kf * PI.ln() + (2.0 * kf + 1.0) * 2f64.ln() - ln_factorial(2 * k);
            let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
            let factor = sign * ln_mag.exp() / z;
            Ok(popov_coeff(cfg)? * factor * x.powf(-2.0 * kf - 2.0))
        }
    }
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

pub(super) fn cpow(x: f64, s: Complex64) -> Complex64 {
    (s * x.ln()).exp()
}

/// Sum of conjugate-paired terms in increasing γ, with the tail estimate
/// `(log(γ_max/2π) + 1)/(2π γ_max) · x^{-r-1/2} · C`, where `C` is the largest
/// `|paired term| · |ρ|² / x^{-r-1/2}` over the last tenth of the zeros used.
pub(super) fn paired_zero_sum(
    pairs: &[(Complex64, Complex64)],
    zeros: &[ZeroEntry],
    x: f64,
    r: u32,
) -> PartialSum {
    let mut acc = ComplexCompensatedSum::new();
    for (a, b) in pairs {
        acc.add(*a + *b);
    }
    let total = acc.value();
    let n = pairs.len();
    let decay = x.powf(-f64::from(r) - 0.5);
    let tail_estimate = if n == 0 {
        f64::INFINITY
    } else {
        let start = n - (n / 10).max(1);
        let c = pairs[start..]
            .iter()
            .zip(&zeros[start..n])
            .map(|((a, b), z)| (*a + *b).norm() * z.rho().norm_sqr() / decay)
            .fold(0.0f64, f64::max);
        let g = zeros[n - 1].gamma;
        ((g / (2.0 * PI)).ln() + 1.0) / (2.0 * PI * g) * decay * c
    };
    PartialSum {
        value: total.re,
        tail_estimate,
        imag_residue: total.im.abs(),
    }
}

/// Printed zero sum over the first `p.n_zeros` zeros, each paired with its
/// conjugate.
pub fn rhs_zero_sum(p: &FormulaParams, zeros: &ZeroTable, cfg: &PrecisionConfig) -> Result<PartialSum> {
    let used = zeros_in_use(p, zeros)?;
    let pairs: Vec<(Complex64, Complex64)> = used
        .par_iter()
        .map(|e| {
            let rho = e.rho();
            let zp = e.zeta_prime;
            let a = paper_zero_term(p.identity, p.r, p.x, rho, zp, cfg)?;
            let b = paper_zero_term(p.identity, p.r, p.x, rho.conj(), zp.map(|z| z.conj()), cfg)?;
            Ok((a, b))
        })
        .collect::<Result<_>>()?;
    Ok(paired_zero_sum(&pairs, used, p.x, p.r))
}

pub(super) fn zeros_in_use<'a>(p: &FormulaParams, zeros: &'a ZeroTable) -> Result<&'a [ZeroEntry]> {
    if zeros.len() < p.n_zeros {
        return Err(Error::Data(format!(
            "zero table holds {} zeros, {} requested",
            zeros.len(),
            p.n_zeros
        )));
    }
    Ok(&zeros.entries()[..p.n_zeros])
}

/// Printed trivial-zero sum `k = 1..=K`; the tail estimate is
/// `|term_{K+1}| · x²/(x² - 1)`.
pub fn rhs_trivial_sum(p: &FormulaParams, cfg: &PrecisionConfig) -> Result<PartialSum> {
    let mut acc = CompensatedSum::new();
    for k in 1..=p.n_trivial {
        acc.add(paper_trivial_term(p.identity, p.r, p.x, k, cfg)?);
    }
    let next = paper_trivial_term(p.identity, p.r, p.x, p.n_trivial + 1, cfg)?;
    let x2 = p.x * p.x;
    Ok(PartialSum {
        value: acc.value(),
        tail_estimate: next.abs() * x2 / (x2 - 1.0),
        imag_residue: 0.0,
    })
}

pub(super) fn assemble(h: f64, zero: PartialSum, trivial: PartialSum) -> SideBreakdown {
    let value = h + zero.value + trivial.value;
    let mut components = BTreeMap::new();
    components.insert("h_r".to_string(), h);
    components.insert("zero_sum".to_string(), zero.value);
    components.insert("trivial_sum".to_string(), trivial.value);
    SideBreakdown {
        value,
        components,
        tail_estimate: zero.tail_estimate + trivial.tail_estimate,
        imag_residue: zero.imag_residue,
    }
}

/// Verbatim right-hand side of the identity selected by `p`.
pub fn rhs_paper(p: &FormulaParams, zeros: &ZeroTable, cfg: &PrecisionConfig) -> Result<SideBreakdown> {
    let h = match p.identity {
        Identity::PopovEq11 => (2.0 - (2.0 * PI).ln()) / p.x,
        Identity::Theorem1 => h_r_paper(p.r, p.x, cfg)?,
        Identity::MobiusThm21 => 0.0,
    };
    let zero = if p.n_zeros == 0 {
        PartialSum {
            tail_estimate: f64::INFINITY,
            ..PartialSum::default()
        }
    } else {
        rhs_zero_sum(p, zeros, cfg)?
    };
    let trivial = rhs_trivial_sum(p, cfg)?;
    Ok(assemble(h, zero, trivial))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    #[test]
    fn h_values() {
        let h1 = h_r_paper(1, 10.5, &cfg()).unwrap();
        assert!((h1 - (2.0 - 1.837_877_066_409_345_5) / 21.0).abs() < 1e-15);
        assert!((h1 - 0.007_720_1).abs() < 1e-7);
        // ζ(-2) = 0
        assert!((h_r_paper(3, 2.0, &cfg()).unwrap() - 0.031_25).abs() < 1e-15);
        assert!(matches!(h_r_paper(2, 2.0, &cfg()), Err(Error::Degenerate(_))));
        // ζ(2) instead of ζ(-2): (0.75 - π²/12)/24
        let m = h_r_paper_with_mirrored_zeta(3, 2.0, &cfg()).unwrap();
        assert!((m - (0.75 - PI * PI / 12.0) / 24.0).abs() < 1e-15);
    }

    #[test]
    fn popov_first_trivial_term() {
        let t = paper_trivial_term(Identity::PopovEq11, 1, 10.5, 1, &cfg()).unwrap();
        let z3 = 1.202_056_903_159_594_3;
        assert!((t - (2.0 - 2.0 * z3) / 12.0 * 10.5f64.powi(-4)).abs() < 1e-20);
        assert!((t + 2.7707e-6).abs() < 1e-9);
    }

    #[test]
    fn mobius_trivial_factor() {
        let pop = paper_trivial_term(Identity::PopovEq11, 1, 10.5, 1, &cfg()).unwrap();
        let mob = paper_trivial_term(Identity::MobiusThm21, 1, 10.5, 1, &cfg()).unwrap();
        let z3 = 1.202_056_903_159_594_3;
        let factor = -PI * PI * 8.0 / (2.0 * z3);
        assert!((mob / pop - factor).abs() < 1e-12);
        assert!((factor + 32.842_386_662_884_9).abs() < 1e-10);
    }

    #[test]
    fn theorem1_trivial_at_r1_is_half_popov() {
        for k in 1..6 {
            let a = paper_trivial_term(Identity::Theorem1, 1, 3.5, k, &cfg()).unwrap();
            let b = paper_trivial_term(Identity::PopovEq11, 1, 3.5, k, &cfg()).unwrap();
            assert!((a - 0.5 * b).abs() < 1e-15 * b.abs().max(1e-300), "k={k}");
        }
    }

    #[test]
    fn trivial_tail_dominates_geometrically() {
        let p20 = FormulaParams::popov(10.5).trivial(20);
        let p40 = FormulaParams::popov(10.5).trivial(40);
        let s20 = rhs_trivial_sum(&p20, &cfg()).unwrap();
        let s40 = rhs_trivial_sum(&p40, &cfg()).unwrap();
        assert!((s40.value - s20.value).abs() <= s20.tail_estimate);
        // successive terms shrink by roughly x²
        let t1 = paper_trivial_term(Identity::PopovEq11, 1, 10.5, 1, &cfg()).unwrap();
        let t2 = paper_trivial_term(Identity::PopovEq11, 1, 10.5, 2, &cfg()).unwrap();
        assert!((t1 / t2).abs() > 100.0);
    }

    #[test]
    fn popov_zero_term_magnitude_at_first_zero() {
        let rho = Complex64::new(0.5, 14.134_725_141_734_693);
        let t = paper_zero_term(Identity::PopovEq11, 1, 10.5, rho, None, &cfg()).unwrap();
        let pair = 2.0 * t.re;
        let envelope = 2.0 * 10.5f64.powf(-1.5) / rho.norm_sqr();
        assert!(pair.abs() <= envelope * 1.01);
        assert!(envelope > 2.8e-4 && envelope < 3.0e-4);
    }

    #[test]
    fn mobius_needs_derivatives() {
        let rho = Complex64::new(0.5, 14.13);
        assert!(matches!(
            paper_zero_term(Identity::MobiusThm21, 1, 10.5, rho, None, &cfg()),
            Err(Error::Data(_))
        ));
    }
}
