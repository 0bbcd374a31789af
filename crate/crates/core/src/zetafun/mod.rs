//! Riemann zeta function, its derivative, Hardy's Z and the Riemann–Siegel
//! theta function.

mod alt;
mod bernoulli;
mod gamma;
mod theta;
mod zeta;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use alt::zeta_alt_oracle;
pub use bernoulli::bernoulli_numbers;
pub use gamma::{digamma, ln_gamma};
pub use theta::{hardy_z, rs_theta};
pub use zeta::{
    zeta, zeta_and_derivative, zeta_prime, zeta_prime_trivial_closed, MAX_IMAG,
};

/// Rule mapping `s` to the Euler–Maclaurin main-sum length:
/// `N(s) = max(min_terms, ceil(offset + per_unit_height * |Im s|))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmTermsPolicy {
    pub min_terms: usize,
    pub offset: f64,
    pub per_unit_height: f64,
}

impl Default for EmTermsPolicy {
    fn default() -> Self {
        Self {
            min_terms: 30,
            offset: 10.0,
            per_unit_height: 0.5,
        }
    }
}

impl EmTermsPolicy {
    pub fn terms(&self, im: f64) -> usize {
        let n = (self.offset + self.per_unit_height * im.abs()).ceil() as usize;
        n.max(self.min_terms)
    }
}

/// Accuracy and quadrature parameters shared by every analytic evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    /// Number of Bernoulli corrections `M` (through `B_{2M}`).
    pub em_bernoulli_order: usize,
    pub em_terms: EmTermsPolicy,
    pub target_abs_err: f64,
    pub quadrature_nodes_per_panel: usize,
    /// Height `T` at which vertical-line integrals are truncated.
    pub line_integral_cutoff: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self {
            em_bernoulli_order: 12,
            em_terms: EmTermsPolicy::default(),
            target_abs_err: 1e-10,
            quadrature_nodes_per_panel: 32,
            line_integral_cutoff: 2000.0,
        }
    }
}

impl PrecisionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.em_bernoulli_order < 4 || self.em_bernoulli_order > bernoulli::MAX_ORDER {
            return Err(Error::Validation(format!(
                "em_bernoulli_order {} outside 4..={}",
                self.em_bernoulli_order,
                bernoulli::MAX_ORDER
            )));
        }
        if !(self.target_abs_err > 0.0 && self.target_abs_err <= 1e-6) {
            return Err(Error::Validation(format!(
                "target_abs_err {} outside (0, 1e-6]",
                self.target_abs_err
            )));
        }
        let p = self.em_terms;
        if p.offset < 10.0 || p.per_unit_height < 0.5 || p.min_terms < 10 {
            return Err(Error::Validation(
                "Euler-Maclaurin policy must give N(s) >= 10 + |Im s|/2".into(),
            ));
        }
        if self.quadrature_nodes_per_panel < 2 || self.quadrature_nodes_per_panel > 128 {
            return Err(Error::Validation(format!(
                "quadrature_nodes_per_panel {} outside 2..=128",
                self.quadrature_nodes_per_panel
            )));
        }
        if !(self.line_integral_cutoff > 0.0) {
            return Err(Error::Validation("line_integral_cutoff must be positive".into()));
        }
        Ok(())
    }
}
