//! Both sides of the fractional-part explicit formulas.
//!
//! Three identities are covered, all for `x > 1`:
//!
//! * `popov_eq11`: `Σ_{n>x} Λ(n)/n² ({n/x} - {n/x}²)`, balanced by an
//!   `x^{-1}` term, a sum over the nontrivial zeros and a sum over the
//!   trivial zeros;
//! * `theorem1`: the same with `½ Σ Λ(n)/n^{r+1}`, integer `r >= 1`;
//! * `mobius_thm21`: `½ Σ μ(n)/n² (…)`.
//!
//! Each right-hand side is computed twice: from the printed closed forms and
//! from residues of the Mellin integrand extracted by contour integration.

mod checks;
mod closed;
mod integrand;
mod lhs;
mod oracle;
mod residue;
mod verify;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sieve::ArithKind;

pub use checks::{inversion_check, mellin_pair_check, InversionCheck, MellinCheck};
pub use closed::{
    h_r_paper, h_r_paper_with_mirrored_zeta, paper_trivial_term, paper_zero_term, rhs_paper,
    rhs_trivial_sum, rhs_zero_sum,
};
pub use integrand::{integrand_thm1, inversion_integrand, mellin_kernel};
pub use lhs::{frac_weight, lhs_series};
pub use oracle::{
    calibrate_global_sign, h_pole, oracle_h, oracle_trivial_term, oracle_zero_term, rhs_oracle,
    trivial_pole, zero_pole, zero_pole_radius, GLOBAL_RESIDUE_SIGN, ORACLE_NODES,
};
pub use residue::{circle_trapezoid, residue_via_circle, RESIDUE_STABILITY_TOL};
pub use verify::{rhs_total, verify, RhsPath, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    PopovEq11,
    Theorem1,
    MobiusThm21,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::PopovEq11 => "popov_eq11",
            Identity::Theorem1 => "theorem1",
            Identity::MobiusThm21 => "mobius_thm21",
        }
    }

    /// Factor in front of the arithmetic sum on the left side.
    pub fn lhs_prefactor(self) -> f64 {
        match self {
            Identity::PopovEq11 => 1.0,
            Identity::Theorem1 | Identity::MobiusThm21 => 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RhsMode {
    PaperVerbatim,
    ResidueOracle,
    Both,
}

impl RhsMode {
    pub fn name(self) -> &'static str {
        match self {
            RhsMode::PaperVerbatim => "paper_verbatim",
            RhsMode::ResidueOracle => "residue_oracle",
            RhsMode::Both => "both",
        }
    }

    pub fn wants_paper(self) -> bool {
        matches!(self, RhsMode::PaperVerbatim | RhsMode::Both)
    }

    pub fn wants_oracle(self) -> bool {
        matches!(self, RhsMode::ResidueOracle | RhsMode::Both)
    }
}

/// Largest exponent `r` accepted.
pub const MAX_R: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormulaParams {
    pub identity: Identity,
    pub weight: ArithKind,
    pub r: u32,
    pub x: f64,
    /// Upper summation index `N_stop` of the left side.
    pub n_terms: u64,
    pub n_zeros: usize,
    pub n_trivial: usize,
    pub rhs_mode: RhsMode,
}

impl FormulaParams {
    pub const DEFAULT_X: f64 = 10.5;
    pub const DEFAULT_TERMS: u64 = 10_000_000;
    pub const DEFAULT_ZEROS: usize = 1000;
    pub const DEFAULT_TRIVIAL: usize = 40;

    fn with_defaults(identity: Identity, weight: ArithKind, r: u32, x: f64) -> Self {
        Self {
            identity,
            weight,
            r,
            x,
            n_terms: Self::DEFAULT_TERMS,
            n_zeros: Self::DEFAULT_ZEROS,
            n_trivial: Self::DEFAULT_TRIVIAL,
            rhs_mode: RhsMode::Both,
        }
    }

    pub fn popov(x: f64) -> Self {
        Self::with_defaults(Identity::PopovEq11, ArithKind::Lambda, 1, x)
    }

    pub fn theorem1(r: u32, x: f64) -> Self {
        Self::with_defaults(Identity::Theorem1, ArithKind::Lambda, r, x)
    }

    pub fn mobius(x: f64) -> Self {
        Self::with_defaults(Identity::MobiusThm21, ArithKind::Mu, 1, x)
    }

    pub fn terms(mut self, n_terms: u64) -> Self {
        self.n_terms = n_terms;
        self
    }

    pub fn zeros(mut self, n_zeros: usize) -> Self {
        self.n_zeros = n_zeros;
        self
    }

    pub fn trivial(mut self, n_trivial: usize) -> Self {
        self.n_trivial = n_trivial;
        self
    }

    pub fn mode(mut self, rhs_mode: RhsMode) -> Self {
        self.rhs_mode = rhs_mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x > 1.0) || !self.x.is_finite() {
            return Err(Error::Validation(format!("x = {} must satisfy x > 1", self.x)));
        }
        if self.r == 0 || self.r > MAX_R {
            return Err(Error::Validation(format!("r = {} outside 1..={MAX_R}", self.r)));
        }
        if self.n_terms == 0 {
            return Err(Error::Validation("n_terms must be positive".into()));
        }
        match self.identity {
            Identity::PopovEq11 => {
                if self.weight != ArithKind::Lambda || self.r != 1 {
                    return Err(Error::Validation("popov_eq11 uses the lambda weight with r = 1".into()));
                }
            }
            Identity::MobiusThm21 => {
                if self.weight != ArithKind::Mu || self.r != 1 {
                    return Err(Error::Validation("mobius_thm21 uses the mu weight with r = 1".into()));
                }
            }
            Identity::Theorem1 => {
                if self.weight != ArithKind::Lambda {
                    return Err(Error::Validation("theorem1 uses the lambda weight".into()));
                }
                if self.r == 2 && self.rhs_mode.wants_paper() {
                    return Err(Error::Degenerate(
                        "the printed h_r divides by (2 - r) and is undefined at r = 2; \
                         use the residue oracle (rhs mode `oracle`)"
                            .into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// One side of an identity: total, named parts, and truncation estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SideBreakdown {
    pub value: f64,
    pub components: BTreeMap<String, f64>,
    pub tail_estimate: f64,
    pub imag_residue: f64,
}

impl SideBreakdown {
    pub fn component(&self, name: &str) -> Option<f64> {
        self.components.get(name).copied()
    }
}

/// Sum of a zero-indexed family `Σ_ρ` with its truncation estimate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PartialSum {
    pub value: f64,
    pub tail_estimate: f64,
    pub imag_residue: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        FormulaParams::popov(10.5).validate().unwrap();
        FormulaParams::theorem1(3, 10.5).validate().unwrap();
        FormulaParams::mobius(10.5).validate().unwrap();
        assert!(FormulaParams::popov(1.0).validate().is_err());
        assert!(FormulaParams::theorem1(0, 3.0).validate().is_err());
        assert!(matches!(
            FormulaParams::theorem1(2, 3.0).validate(),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            FormulaParams::theorem1(2, 3.0).mode(RhsMode::PaperVerbatim).validate(),
            Err(Error::Degenerate(_))
        ));
        FormulaParams::theorem1(2, 3.0)
            .mode(RhsMode::ResidueOracle)
            .validate()
            .unwrap();
        let mut p = FormulaParams::mobius(10.5);
        p.r = 2;
        assert!(p.validate().is_err());
        let mut p = FormulaParams::popov(10.5);
        p.weight = ArithKind::Mu;
        assert!(p.validate().is_err());
    }
}
