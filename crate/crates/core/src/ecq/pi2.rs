use serde::Serialize;

use crate::arith::SpfSieve;
use crate::{Error, Result};

/// Largest `n` accepted by [`pi2_count`] and [`pi2_profile`].
pub const PI2_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pi2Row {
    pub n: u64,
    pub count: u64,
    /// `count·ln n / n`.
    pub ratio: f64,
}

fn check_limit(n: u64) -> Result<()> {
    if n > PI2_LIMIT {
        return Err(Error::BudgetExceeded(format!("pi2 sieve limited to n <= {PI2_LIMIT}, got {n}")));
    }
    Ok(())
}

/// Number of `1 ≤ k < n` of the form `p·z²` with `p` prime.
pub fn pi2_count(n: u64) -> Result<u64> {
    Ok(pi2_profile(&[n])?[0].count)
}

/// Counts for several `n` from a single sieve, in input order.
pub fn pi2_profile(ns: &[u64]) -> Result<Vec<Pi2Row>> {
    let top = ns.iter().copied().max().unwrap_or(0);
    check_limit(top)?;
    let sieve = SpfSieve::new(top.max(2) as usize);
    let mut order: Vec<usize> = (0..ns.len()).collect();
    order.sort_by_key(|&i| ns[i]);
    let mut counts = vec![0u64; ns.len()];
    let (mut k, mut acc) = (1u64, 0u64);
    for i in order {
        while k < ns[i] {
            if sieve.is_prime(sieve.squarefree_part(k as usize)) {
                acc += 1;
            }
            k += 1;
        }
        counts[i] = acc;
    }
    Ok(ns
        .iter()
        .zip(counts)
        .map(|(&n, count)| {
            let ratio = if n > 1 { count as f64 * (n as f64).ln() / n as f64 } else { 0.0 };
            Pi2Row { n, count, ratio }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `Σ_p ⌊√((n − 1)/p)⌋` over primes `p < n`.
    fn by_prime_sum(n: u64) -> u64 {
        let s = SpfSieve::new(n as usize);
        s.primes().iter().map(|&p| ((n - 1) / p as u64).isqrt()).sum()
    }

    #[test]
    fn small() {
        assert_eq!(pi2_count(20).unwrap(), 11);
        assert_eq!(pi2_count(3).unwrap(), 1);
        assert_eq!(pi2_count(2).unwrap(), 0);
        assert_eq!(pi2_count(1).unwrap(), 0);
        for n in [10, 100, 1000, 12345] {
            assert_eq!(pi2_count(n).unwrap(), by_prime_sum(n), "n = {n}");
        }
    }

    #[test]
    fn profile_and_budget() {
        let rows = pi2_profile(&[10_000, 100, 1000]).unwrap();
        assert_eq!(rows[0].count, 2459);
        assert_eq!(rows[1].count, by_prime_sum(100));
        assert!(matches!(pi2_count(PI2_LIMIT + 1), Err(Error::BudgetExceeded(_))));
    }
}
