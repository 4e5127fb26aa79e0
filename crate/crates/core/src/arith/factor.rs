use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::modular::mul_mod;
use super::prime::{
    is_prime_u64, is_probable_prime_unsigned, primes_up_to, small_primes, DEFAULT_ROUNDS,
    DEFAULT_SEED,
};

/// Effort limits for [`factor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBudget {
    pub trial_bound: u64,
    pub rho_iterations: u64,
    pub prime_rounds: u32,
    pub seed: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        Self {
            trial_bound: 10_000,
            rho_iterations: 2_000_000,
            prime_rounds: DEFAULT_ROUNDS,
            seed: DEFAULT_SEED,
        }
    }
}

/// A nonzero integer with its signed prime factorization.
///
/// When a composite part resists the budget it is kept whole in `cofactor`;
/// the listed primes are still certified (or probable primes above the
/// deterministic threshold).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInt {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
    pub cofactor: Option<BigInt>,
}

impl FactoredInt {
    pub fn one() -> Self {
        Self { sign: 1, factors: Vec::new(), cofactor: None }
    }

    pub fn complete(&self) -> bool {
        self.cofactor.is_none()
    }

    pub fn value(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        if let Some(c) = &self.cofactor {
            acc *= c;
        }
        acc
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        if let Some(c) = &self.cofactor {
            parts.push(format!("[{c}]"));
        }
        let body = if parts.is_empty() { "1".to_string() } else { parts.join(" * ") };
        if self.sign < 0 {
            write!(f, "-{body}")
        } else {
            write!(f, "{body}")
        }
    }
}

/// One way of splitting a composite. Stages run in order after trial division;
/// the first to return a nontrivial splitting wins.
pub trait FactorStage: Send + Sync {
    fn name(&self) -> &'static str;
    /// Returns pieces `(q, k)` with `Π q^k = n`, none equal to `n` itself.
    fn split(&self, n: &BigUint, budget: &FactorBudget) -> Option<Vec<(BigUint, u32)>>;
}

pub struct PerfectPower;

impl FactorStage for PerfectPower {
    fn name(&self) -> &'static str {
        "perfect-power"
    }

    /// Tries prime exponents only; a root that is itself a power is split again
    /// by the caller. Roots are assumed to exceed the trial-division bound.
    fn split(&self, n: &BigUint, budget: &FactorBudget) -> Option<Vec<(BigUint, u32)>> {
        let floor_bits = 64 - budget.trial_bound.max(2).leading_zeros() as u64;
        let max_k = (n.bits() / floor_bits.saturating_sub(1).max(1)) as u32;
        primes_up_to(u64::from(max_k)).into_iter().find_map(|k| {
            let k = k as u32;
            let r = n.nth_root(k);
            (r > BigUint::one() && num_traits::pow(r.clone(), k as usize) == *n).then(|| vec![(r, k)])
        })
    }
}

/// Pollard rho with Brent's cycle detection and batched gcds.
pub struct PollardBrent;

impl FactorStage for PollardBrent {
    fn name(&self) -> &'static str {
        "pollard-brent"
    }

    fn split(&self, n: &BigUint, budget: &FactorBudget) -> Option<Vec<(BigUint, u32)>> {
        let d = match n.to_u64() {
            Some(m) => rho_u64(m, budget.rho_iterations).map(BigUint::from),
            None => rho_big(n, budget.rho_iterations),
        }?;
        let other = n / &d;
        Some(vec![(d, 1), (other, 1)])
    }
}

pub fn default_stages() -> Vec<Box<dyn FactorStage>> {
    vec![Box::new(PerfectPower), Box::new(PollardBrent)]
}

const BATCH: u64 = 128;

fn rho_u64(n: u64, mut budget: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    for c in 1..u64::MAX {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut x, mut ys) = (y, y);
        let mut g = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += steps;
                budget = budget.checked_sub(steps)?;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

fn rho_big(n: &BigUint, mut budget: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let (mut r, mut q) = (1u64, one.clone());
        let (mut x, mut ys) = (y.clone(), y.clone());
        let mut g = one.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    q = (q * diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += steps;
                budget = budget.checked_sub(steps)?;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

fn is_prime_with(n: &BigUint, budget: &FactorBudget) -> bool {
    match n.to_u64() {
        Some(m) => is_prime_u64(m),
        None => is_probable_prime_unsigned(n, budget.prime_rounds, budget.seed),
    }
}

/// Factors `n` with the default stage list.
pub fn factor(n: &BigInt, budget: &FactorBudget) -> FactoredInt {
    factor_with(n, budget, &default_stages())
}

pub fn factor_i128(n: i128, budget: &FactorBudget) -> FactoredInt {
    factor(&BigInt::from(n), budget)
}

pub fn factor_with(n: &BigInt, budget: &FactorBudget, stages: &[Box<dyn FactorStage>]) -> FactoredInt {
    assert!(!n.is_zero(), "factor of zero");
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut rest = n.abs().to_biguint().expect("absolute value");
    let mut found: Vec<(BigUint, u32)> = Vec::new();

    let extended;
    let primes: &[u64] = if budget.trial_bound <= 1 << 16 {
        small_primes()
    } else {
        extended = primes_up_to(budget.trial_bound);
        &extended
    };
    for &p in primes.iter().take_while(|&&p| p <= budget.trial_bound) {
        if rest.is_one() {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            found.push((BigUint::from(p), e));
        }
        if BigUint::from(p) * p > rest {
            break;
        }
    }

    let mut cofactor = BigUint::one();
    let mut queue = vec![(rest, 1u32)];
    while let Some((m, k)) = queue.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime_with(&m, budget) {
            found.push((m, k));
            continue;
        }
        match stages.iter().find_map(|s| s.split(&m, budget)) {
            Some(pieces) => queue.extend(pieces.into_iter().map(|(q, j)| (q, j * k))),
            None => cofactor *= num_traits::pow(m, k as usize),
        }
    }

    found.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::with_capacity(found.len());
    for (p, e) in found {
        let p = BigInt::from(p);
        match factors.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => factors.push((p, e)),
        }
    }
    FactoredInt {
        sign,
        factors,
        cofactor: (!cofactor.is_one()).then(|| BigInt::from(cofactor)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: i64) -> FactoredInt {
        factor(&BigInt::from(n), &FactorBudget::default())
    }

    #[test]
    fn small_inputs() {
        let f = fac(8120);
        assert_eq!(f.to_string(), "2^3 * 5 * 7 * 29");
        assert!(f.complete());
        assert_eq!(fac(-60).to_string(), "-2^2 * 3 * 5");
        assert_eq!(fac(1).to_string(), "1");
        assert_eq!(fac(-1).value(), BigInt::from(-1));
    }

    #[test]
    fn rho_splits_semiprimes_beyond_trial_bound() {
        let n = BigInt::from(1_000_003u64) * BigInt::from(999_983u64);
        let f = factor(&n, &FactorBudget::default());
        assert!(f.complete());
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.value(), n);

        let big = BigInt::from(1_000_000_007u64)
            * BigInt::from(998_244_353u64)
            * BigInt::from(1_000_000_009u64);
        let f = factor(&big, &FactorBudget::default());
        assert!(f.complete());
        assert_eq!(f.factors.len(), 3);
    }

    #[test]
    fn perfect_powers_of_large_primes() {
        let p = BigInt::from(1_000_003u64);
        let n = num_traits::pow(p.clone(), 5) * 12;
        let f = factor(&n, &FactorBudget::default());
        assert_eq!(f.exponent_of(&p), 5);
        assert_eq!(f.value(), n);
    }

    #[test]
    fn exhausted_budget_keeps_cofactor() {
        let budget = FactorBudget { rho_iterations: 10, ..FactorBudget::default() };
        let n = BigInt::from(1_000_003u64) * BigInt::from(999_983u64) * 6;
        let f = factor(&n, &budget);
        assert!(!f.complete());
        assert_eq!(f.value(), n);
        assert_eq!(f.factors.len(), 2);
    }
}
