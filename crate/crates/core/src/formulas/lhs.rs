use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{FormulaParams, SideBreakdown};
use crate::error::{Error, Result};
use crate::sieve::{ArithKind, ArithTable};
use crate::sum::CompensatedSum;

const BLOCK: u64 = 1 << 16;

/// `{u} - {u}²`, which lies in `[0, 1/4]`.
#[inline]
pub fn frac_weight(u: f64) -> f64 {
    let f = u - u.floor();
    f - f * f
}

/// Prefactor · `Σ_{x<n<=N_stop} a(n) (\{n/x\} - \{n/x\}²) / n^{r+1}` with
/// `N_stop = p.n_terms`, summed in fixed-size blocks combined in index order.
pub fn lhs_series(p: &FormulaParams, t: &ArithTable) -> Result<SideBreakdown> {
    if t.kind() != p.weight {
        return Err(Error::Precondition(format!(
            "table holds {} but the identity needs {}",
            t.kind().name(),
            p.weight.name()
        )));
    }
    let n_stop = p.n_terms;
    if t.limit() < n_stop {
        return Err(Error::Range(format!(
            "table limit {} below the summation bound {n_stop}",
            t.limit()
        )));
    }
    let x = p.x;
    let first = (x.floor() as u64) + 1;
    let power = p.r as i32 + 1;

    let blocks: Vec<(u64, u64)> = if first > n_stop {
        Vec::new()
    } else {
        (first..=n_stop)
            .step_by(BLOCK as usize)
            .map(|lo| (lo, (lo + BLOCK - 1).min(n_stop)))
            .collect()
    };
    let partials: Vec<f64> = match p.weight {
        ArithKind::Lambda => {
            let v = t.lambda_values().expect("kind checked above");
            blocks
                .par_iter()
                .map(|&(lo, hi)| block_sum(lo, hi, x, power, |n| v[n as usize]))
                .collect()
        }
        ArithKind::Mu => {
            let v = t.mu_values().expect("kind checked above");
            blocks
                .par_iter()
                .map(|&(lo, hi)| block_sum(lo, hi, x, power, |n| f64::from(v[n as usize])))
                .collect()
        }
    };
    let sum = partials.into_iter().collect::<CompensatedSum>().value();
    let value = p.identity.lhs_prefactor() * sum;

    let nf = n_stop as f64;
    let r = f64::from(p.r);
    let tail_estimate = match p.weight {
        ArithKind::Lambda => 0.25 * (nf.ln() + 1.0) / (r * nf.powf(r)),
        ArithKind::Mu => 0.25 / (r * nf.powf(r)),
    };
    let mut components = BTreeMap::new();
    components.insert("partial_sum".to_string(), value);
    Ok(SideBreakdown {
        value,
        components,
        tail_estimate,
        imag_residue: 0.0,
    })
}

fn block_sum(lo: u64, hi: u64, x: f64, power: i32, a: impl Fn(u64) -> f64) -> f64 {
    let mut acc = CompensatedSum::new();
    for n in lo..=hi {
        let an = a(n);
        if an == 0.0 {
            continue;
        }
        let nf = n as f64;
        acc.add(an * frac_weight(nf / x) / nf.powi(power));
    }
    acc.value()
}
