use std::collections::BTreeMap;
use std::time::Instant;

use super::closed::{h_r_paper, h_r_paper_with_mirrored_zeta, rhs_paper};
use super::lhs::lhs_series;
use super::oracle::rhs_oracle;
use super::{FormulaParams, Identity, SideBreakdown};
use crate::error::{Error, Result};
use crate::sieve::ArithTable;
use crate::zeros::ZeroTable;
use crate::zetafun::PrecisionConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsPath {
    Paper,
    Oracle,
}

pub fn rhs_total(
    p: &FormulaParams,
    zeros: &ZeroTable,
    path: RhsPath,
    cfg: &PrecisionConfig,
) -> Result<SideBreakdown> {
    p.validate()?;
    match path {
        RhsPath::Paper => {
            if p.identity == Identity::Theorem1 && p.r == 2 {
                return Err(Error::Degenerate(
                    "the printed h_r is undefined at r = 2; use the residue oracle".into(),
                ));
            }
            rhs_paper(p, zeros, cfg)
        }
        RhsPath::Oracle => rhs_oracle(p, zeros, cfg),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub params: FormulaParams,
    pub lhs: SideBreakdown,
    pub rhs_paper: Option<SideBreakdown>,
    pub rhs_oracle: Option<SideBreakdown>,
    pub residual_paper: Option<f64>,
    pub residual_oracle: Option<f64>,
    pub pass_bound: f64,
    pub pass: bool,
    pub runtime_ms: u64,
    /// Competing values of the `x^{-r}` term, keyed by origin.
    pub h_variants: BTreeMap<String, f64>,
    pub precision: PrecisionConfig,
}

/// Evaluates both sides of the identity in `p`. The pass decision uses the
/// oracle right side when it is requested and the printed one otherwise.
pub fn verify(
    p: &FormulaParams,
    table: &ArithTable,
    zeros: &ZeroTable,
    cfg: &PrecisionConfig,
) -> Result<VerificationReport> {
    let start = Instant::now();
    p.validate()?;
    cfg.validate()?;
    let lhs = lhs_series(p, table)?;
    let rhs_paper = if p.rhs_mode.wants_paper() {
        Some(rhs_total(p, zeros, RhsPath::Paper, cfg)?)
    } else {
        None
    };
    let rhs_oracle = if p.rhs_mode.wants_oracle() {
        Some(rhs_total(p, zeros, RhsPath::Oracle, cfg)?)
    } else {
        None
    };
    let residual_paper = rhs_paper.as_ref().map(|r| (lhs.value - r.value).abs());
    let residual_oracle = rhs_oracle.as_ref().map(|r| (lhs.value - r.value).abs());

    let (decisive, residual) = match (&rhs_oracle, residual_oracle) {
        (Some(o), Some(res)) => (o, res),
        _ => (
            rhs_paper.as_ref().expect("at least one right side"),
            residual_paper.expect("paper residual present"),
        ),
    };
    let pass_bound = lhs.tail_estimate + decisive.tail_estimate + 10.0 * cfg.target_abs_err;
    let pass = residual <= pass_bound;

    let mut h_variants = BTreeMap::new();
    if p.identity == Identity::Theorem1 && p.r != 2 {
        h_variants.insert("printed".to_string(), h_r_paper(p.r, p.x, cfg)?);
        if p.r > 2 {
            h_variants.insert(
                "printed_mirrored_zeta".to_string(),
                h_r_paper_with_mirrored_zeta(p.r, p.x, cfg)?,
            );
        }
    }
    if let Some(h) = rhs_oracle.as_ref().and_then(|o| o.component("h_r")) {
        h_variants.insert("oracle".to_string(), h);
    }

    Ok(VerificationReport {
        params: *p,
        lhs,
        rhs_paper,
        rhs_oracle,
        residual_paper,
        residual_oracle,
        pass_bound,
        pass,
        runtime_ms: start.elapsed().as_millis() as u64,
        h_variants,
        precision: *cfg,
    })
}
