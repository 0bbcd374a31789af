//! Exact Bernoulli numbers and the floating-point coefficient tables
//! derived from them.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 60;

/// Exact `B_2, B_4, ..., B_{2m}` (Akiyama–Tanigawa), `m <= 60`.
pub fn bernoulli_numbers(m: usize) -> Result<Vec<BigRational>> {
    if m == 0 || m > MAX_ORDER {
        return Err(Error::Range(format!(
            "Bernoulli order {m} outside 1..={MAX_ORDER}"
        )));
    }
    let top = 2 * m;
    let mut row: Vec<BigRational> = Vec::with_capacity(top + 1);
    let mut out = Vec::with_capacity(m);
    for n in 0..=top {
        row.push(BigRational::new(BigInt::one(), BigInt::from(n + 1)));
        for j in (1..=n).rev() {
            let diff = &row[j - 1] - &row[j];
            row[j - 1] = diff * BigInt::from(j);
        }
        if n >= 2 && n % 2 == 0 {
            out.push(row[0].clone());
        }
    }
    Ok(out)
}

/// `B_{2j} / (2j)!` for `j = 1..=60`, the Euler–Maclaurin coefficients.
pub(crate) fn em_coefficients() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_numbers(MAX_ORDER).expect("order within range");
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(MAX_ORDER);
        for (j, bj) in b.iter().enumerate() {
            let k = 2 * (j + 1);
            fact *= BigInt::from(k - 1) * BigInt::from(k);
            let c = bj / BigRational::from_integer(fact.clone());
            out.push(c.to_f64().unwrap_or(0.0));
        }
        out
    })
}

/// `B_{2k} / (2k (2k - 1))` for `k = 1..=60`, the Stirling series coefficients.
pub(crate) fn stirling_coefficients() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_numbers(MAX_ORDER).expect("order within range");
        b.iter()
            .enumerate()
            .map(|(j, bj)| {
                let k = 2 * (j as i64 + 1);
                let c = bj / BigRational::from_integer(BigInt::from(k * (k - 1)));
                c.to_f64().unwrap_or(0.0)
            })
            .collect()
    })
}

/// `B_{2k}` as f64 for `k = 1..=60`.
pub(crate) fn bernoulli_f64() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        bernoulli_numbers(MAX_ORDER)
            .expect("order within range")
            .iter()
            .map(|b| b.to_f64().unwrap_or(0.0))
            .collect()
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn classical_values() {
        let b = bernoulli_numbers(6).unwrap();
        assert_eq!(b[0], q(1, 6));
        assert_eq!(b[1], q(-1, 30));
        assert_eq!(b[2], q(1, 42));
        assert_eq!(b[5], q(-691, 2730));
        assert_eq!(bernoulli_numbers(1).unwrap(), vec![q(1, 6)]);
        assert_eq!(bernoulli_numbers(2).unwrap()[1], q(-1, 30));
    }

    #[test]
    fn order_bounds() {
        assert!(bernoulli_numbers(0).is_err());
        assert!(bernoulli_numbers(61).is_err());
        let b = bernoulli_numbers(60).unwrap();
        assert_eq!(b.len(), 60);
        // signs alternate: B_{2k} has sign (-1)^{k+1}
        for (j, bj) in b.iter().enumerate() {
            let positive = bj > &BigRational::zero();
            assert_eq!(positive, j % 2 == 0, "sign of B_{}", 2 * (j + 1));
        }
    }

    #[test]
    fn coefficient_tables_match_exact_values() {
        let c = em_coefficients();
        assert!((c[0] - 1.0 / 12.0).abs() < 1e-17);
        assert!((c[1] + 1.0 / 720.0).abs() < 1e-18);
        let s = stirling_coefficients();
        assert!((s[0] - 1.0 / 12.0).abs() < 1e-17);
        assert!((s[1] + 1.0 / 360.0).abs() < 1e-18);
        assert!((bernoulli_f64()[5] + 691.0 / 2730.0).abs() < 1e-15);
    }
}
