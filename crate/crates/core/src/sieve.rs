//! Tables of the von Mangoldt function Λ(n) and the Möbius function μ(n),
//! with the partial sums ψ(x) and M(x).
//!
//! Tables are filled block by block over `[lo, lo + BLOCK)` using the base
//! primes up to √N. Every entry depends only on its own index, so the blocks
//! can be sieved in parallel and the result is identical for any thread count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// Largest Λ table accepted by [`ArithTable::build`] (8 bytes per entry).
pub const LAMBDA_LIMIT_CAP: u64 = 250_000_000;
/// Largest μ table accepted by [`ArithTable::build`] (1 byte per entry).
pub const MU_LIMIT_CAP: u64 = 1_000_000_000;

const BLOCK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithKind {
    Lambda,
    Mu,
}

impl ArithKind {
    pub fn cap(self) -> u64 {
        match self {
            ArithKind::Lambda => LAMBDA_LIMIT_CAP,
            ArithKind::Mu => MU_LIMIT_CAP,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ArithKind::Lambda => "lambda",
            ArithKind::Mu => "mu",
        }
    }
}

#[derive(Debug, Clone)]
enum Values {
    Lambda(Vec<f64>),
    Mu(Vec<i8>),
}

/// Immutable table of Λ(n) or μ(n) for `1 <= n <= limit`.
#[derive(Debug, Clone)]
pub struct ArithTable {
    limit: u64,
    // index 0 is a placeholder so that `values[n]` is the value at n
    values: Values,
}

impl ArithTable {
    pub fn build(kind: ArithKind, limit: u64) -> Result<Self> {
        if limit == 0 || limit > kind.cap() {
            return Err(Error::Size {
                requested: limit,
                cap: kind.cap(),
            });
        }
        let base = base_primes(isqrt(limit));
        let len = limit as usize + 1;
        let values = match kind {
            ArithKind::Lambda => {
                let mut v = vec![0.0f64; len];
                v.par_chunks_mut(BLOCK)
                    .enumerate()
                    .for_each(|(b, chunk)| sieve_lambda_block(b * BLOCK, chunk, &base));
                Values::Lambda(v)
            }
            ArithKind::Mu => {
                let mut v = vec![0i8; len];
                v.par_chunks_mut(BLOCK)
                    .enumerate()
                    .for_each(|(b, chunk)| sieve_mu_block(b * BLOCK, chunk, &base));
                Values::Mu(v)
            }
        };
        Ok(Self { limit, values })
    }

    pub fn kind(&self) -> ArithKind {
        match self.values {
            Values::Lambda(_) => ArithKind::Lambda,
            Values::Mu(_) => ArithKind::Mu,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Value at `n` as a real number. Panics if `n` is 0 or beyond the limit.
    #[inline]
    pub fn value(&self, n: u64) -> f64 {
        assert!(n >= 1 && n <= self.limit, "index {n} outside 1..={}", self.limit);
        match &self.values {
            Values::Lambda(v) => v[n as usize],
            Values::Mu(v) => f64::from(v[n as usize]),
        }
    }

    /// Λ(1..=limit), indexed from 0 at n = 0.
    pub fn lambda_values(&self) -> Option<&[f64]> {
        match &self.values {
            Values::Lambda(v) => Some(v),
            Values::Mu(_) => None,
        }
    }

    /// μ(1..=limit), indexed from 0 at n = 0.
    pub fn mu_values(&self) -> Option<&[i8]> {
        match &self.values {
            Values::Mu(v) => Some(v),
            Values::Lambda(_) => None,
        }
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

struct BasePrime {
    p: u64,
    log_p: f64,
}

fn base_primes(bound: u64) -> Vec<BasePrime> {
    let bound = bound as usize;
    let mut composite = vec![false; bound + 1];
    let mut primes = Vec::new();
    for i in 2..=bound {
        if composite[i] {
            continue;
        }
        primes.push(BasePrime {
            p: i as u64,
            log_p: (i as f64).ln(),
        });
        let mut j = i * i;
        while j <= bound {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

fn first_multiple_at_least(p: u64, lo: u64) -> u64 {
    lo.div_ceil(p) * p
}

fn sieve_lambda_block(lo: usize, out: &mut [f64], base: &[BasePrime]) {
    let lo = lo as u64;
    let hi = lo + out.len() as u64;
    let mut composite = vec![false; out.len()];
    for bp in base {
        let p = bp.p;
        let start = first_multiple_at_least(p, lo).max(p * p);
        let mut m = start;
        while m < hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
        let mut pk = p;
        while pk < hi {
            if pk >= lo {
                out[(pk - lo) as usize] = bp.log_p;
            }
            match pk.checked_mul(p) {
                Some(next) => pk = next,
                None => break,
            }
        }
    }
    for (i, slot) in out.iter_mut().enumerate() {
        let n = lo + i as u64;
        if n >= 2 && !composite[i] && *slot == 0.0 {
            // prime above the base range
            *slot = (n as f64).ln();
        }
    }
    if lo <= 1 && hi > 1 {
        out[(1 - lo) as usize] = 0.0;
    }
    if lo == 0 {
        out[0] = 0.0;
    }
}

fn sieve_mu_block(lo: usize, out: &mut [i8], base: &[BasePrime]) {
    let lo = lo as u64;
    let hi = lo + out.len() as u64;
    let mut rem: Vec<u64> = (lo..hi).collect();
    out.fill(1);
    for bp in base {
        let p = bp.p;
        let mut m = first_multiple_at_least(p, lo.max(1));
        while m < hi {
            let i = (m - lo) as usize;
            out[i] = -out[i];
            rem[i] /= p;
            m += p;
        }
        let p2 = p * p;
        let mut m = first_multiple_at_least(p2, lo.max(1));
        while m < hi {
            out[(m - lo) as usize] = 0;
            m += p2;
        }
    }
    for (i, slot) in out.iter_mut().enumerate() {
        if rem[i] > 1 {
            *slot = -*slot;
        }
    }
    if lo == 0 {
        out[0] = 0;
    }
}

fn check_range(x: f64, t: &ArithTable) -> Result<u64> {
    if !(x >= 1.0) || x > t.limit() as f64 {
        return Err(Error::Range(format!(
            "x = {x} outside [1, {}] covered by the table",
            t.limit()
        )));
    }
    Ok(x.floor() as u64)
}

/// Chebyshev's ψ(x) = Σ_{n≤x} Λ(n), summed in ascending order.
pub fn chebyshev_psi(x: f64, t: &ArithTable) -> Result<f64> {
    let v = t
        .lambda_values()
        .ok_or_else(|| Error::Precondition("chebyshev_psi needs a lambda table".into()))?;
    let n = check_range(x, t)? as usize;
    Ok(v[1..=n].iter().copied().collect::<CompensatedSum>().value())
}

/// Mertens' M(x) = Σ_{n≤x} μ(n).
pub fn mertens(x: f64, t: &ArithTable) -> Result<i64> {
    let v = t
        .mu_values()
        .ok_or_else(|| Error::Precondition("mertens needs a mu table".into()))?;
    let n = check_range(x, t)? as usize;
    Ok(v[1..=n].iter().map(|&m| i64::from(m)).sum())
}
