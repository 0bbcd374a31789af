//! Right-hand sides rebuilt from contour residues of [`integrand_thm1`].


use num_complex::Complex64;
use rayon::prelude::*;

use super::closed::{assemble, paired_zero_sum, zeros_in_use};
use super::integrand::integrand_thm1;
use super::lhs::lhs_series;
use super::residue::residue_via_circle;
use super::{FormulaParams, Identity, PartialSum, SideBreakdown};
use crate::error::Result;
use crate::sieve::ArithTable;
use crate::sum::CompensatedSum;
use crate::zeros::{ZeroEntry, ZeroTable};
use crate::zetafun::PrecisionConfig;

/// Trapezoid nodes on every residue circle.
pub const ORACLE_NODES: usize = 256;

/// Sign applied to every oracle residue. Fixed once by
/// [`calibrate_global_sign`] on the r = 1, x = 10.5 Popov identity.
pub const GLOBAL_RESIDUE_SIGN: f64 = 1.0;

const MAX_RADIUS: f64 = 0.25;

/// The pole of the integrand coming from `ζ'/ζ(s + r - 1)` at `s + r - 1 = 1`.
pub fn h_pole(r: u32) -> Complex64 {
    Complex64::new(2.0 - f64::from(r), 0.0)
}

pub fn zero_pole(rho: Complex64, r: u32) -> Complex64 {
    rho + (1.0 - f64::from(r))
}

pub fn trivial_pole(k: usize, r: u32) -> Complex64 {
    Complex64::new(1.0 - 2.0 * k as f64 - f64::from(r), 0.0)
}

/// `min(0.25, half the gap to the neighbouring ordinate)` for `zeros[i]`.
pub fn zero_pole_radius(zeros: &[ZeroEntry], i: usize) -> f64 {
    let g = zeros[i].gamma;
    let mut gap = f64::INFINITY;
    if i > 0 {
        gap = gap.min(g - zeros[i - 1].gamma);
    }
    if i + 1 < zeros.len() {
        gap = gap.min(zeros[i + 1].gamma - g);
    }
    // the conjugate pole sits at distance 2γ
    gap = gap.min(2.0 * g);
    (0.5 * gap).min(MAX_RADIUS)
}

/// Residues are of the integrand, whose residue sum is half the series;
/// the Popov form carries no half on its left side.
fn scale(identity: Identity) -> f64 {
    match identity {
        Identity::PopovEq11 => 2.0,
        Identity::Theorem1 | Identity::MobiusThm21 => 1.0,
    }
}

fn residue(p: &FormulaParams, center: Complex64, radius: f64, cfg: &PrecisionConfig) -> Result<Complex64> {
    let f = |s: Complex64| integrand_thm1(s, p.r, p.x, p.weight, cfg);
    Ok(residue_via_circle(f, center, radius, ORACLE_NODES)? * scale(p.identity))
}

/// Unsigned residue at the `h` pole (`s = 2 - r`).
fn raw_h(p: &FormulaParams, cfg: &PrecisionConfig) -> Result<f64> {
    Ok(residue(p, h_pole(p.r), MAX_RADIUS, cfg)?.re)
}

fn raw_trivial(p: &FormulaParams, k: usize, cfg: &PrecisionConfig) -> Result<f64> {
    Ok(residue(p, trivial_pole(k, p.r), MAX_RADIUS, cfg)?.re)
}

/// Oracle value of the `x^{-r}` term.
pub fn oracle_h(p: &FormulaParams, cfg: &PrecisionConfig) -> Result<f64> {
    Ok(GLOBAL_RESIDUE_SIGN * raw_h(p, cfg)?)
}

/// Oracle value of the term for the zero `rho`, using a circle of `radius`.
pub fn oracle_zero_term(
    p: &FormulaParams,
    rho: Complex64,
    radius: f64,
    cfg: &PrecisionConfig,
) -> Result<Complex64> {
    Ok(residue(p, zero_pole(rho, p.r), radius, cfg)? * GLOBAL_RESIDUE_SIGN)
}

/// Oracle value of the term for the trivial zero `-2k`.
pub fn oracle_trivial_term(p: &FormulaParams, k: usize, cfg: &PrecisionConfig) -> Result<f64> {
    Ok(GLOBAL_RESIDUE_SIGN * raw_trivial(p, k, cfg)?)
}

fn raw_rhs(p: &FormulaParams, zeros: &ZeroTable, cfg: &PrecisionConfig) -> Result<SideBreakdown> {
    let h = raw_h(p, cfg)?;

    let zero = if p.n_zeros == 0 {
        PartialSum {
            tail_estimate: f64::INFINITY,
            ..PartialSum::default()
        }
    } else {
        let used = zeros_in_use(p, zeros)?;
        let all = zeros.entries();
        let pairs: Vec<(Complex64, Complex64)> = (0..used.len())
            .into_par_iter()
            .map(|i| {
                let rho = all[i].rho();
                let radius = zero_pole_radius(all, i);
                let a = residue(p, zero_pole(rho, p.r), radius, cfg)?;
                let b = residue(p, zero_pole(rho.conj(), p.r), radius, cfg)?;
                Ok((a, b))
            })
            .collect::<Result<_>>()?;
        paired_zero_sum(&pairs, used, p.x, p.r)
    };

    let terms: Vec<f64> = (1..=p.n_trivial + 1)
        .into_par_iter()
        .map(|k| raw_trivial(p, k, cfg))
        .collect::<Result<_>>()?;
    let (kept, next) = terms.split_at(p.n_trivial);
    let x2 = p.x * p.x;
    let trivial = PartialSum {
        value: kept.iter().copied().collect::<CompensatedSum>().value(),
        tail_estimate: next[0].abs() * x2 / (x2 - 1.0),
        imag_residue: 0.0,
    };
    Ok(assemble(h, zero, trivial))
}

fn signed(mut side: SideBreakdown, sign: f64) -> SideBreakdown {
    side.value *= sign;
    for v in side.components.values_mut() {
        *v *= sign;
    }
    side
}

/// Right-hand side with every closed form replaced by a numerical residue.
pub fn rhs_oracle(p: &FormulaParams, zeros: &ZeroTable, cfg: &PrecisionConfig) -> Result<SideBreakdown> {
    Ok(signed(raw_rhs(p, zeros, cfg)?, GLOBAL_RESIDUE_SIGN))
}

/// Picks the sign in `{+1, -1}` that makes the oracle match the left side of
/// the Popov identity at `x = 10.5`, using as many terms and zeros as the
/// inputs allow (up to `10^7` and 1000).
pub fn calibrate_global_sign(table: &ArithTable, zeros: &ZeroTable, cfg: &PrecisionConfig) -> Result<f64> {
    let p = FormulaParams::popov(10.5)
        .terms(table.limit().min(FormulaParams::DEFAULT_TERMS))
        .zeros(zeros.len().min(FormulaParams::DEFAULT_ZEROS));
    let lhs = lhs_series(&p, table)?.value;
    let rhs = raw_rhs(&p, zeros, cfg)?.value;
    Ok(if (lhs - rhs).abs() <= (lhs + rhs).abs() { 1.0 } else { -1.0 })
}
