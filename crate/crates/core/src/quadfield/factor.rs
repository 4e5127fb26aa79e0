use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elem::QFieldElem;
use super::ideal::{prime_data, primes_above, PrimeKind, QIdeal, Splitting};
use crate::arith::{factor, FactorBudget};
use crate::{Error, Result};

/// `Π Pᵢ^eᵢ` over prime ideals, keyed by the rational prime below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredIdeal {
    pub disc: i64,
    pub entries: Vec<(QIdeal, i64)>,
}

impl FactoredIdeal {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm(&self) -> BigRational {
        self.entries.iter().fold(BigRational::one(), |acc, (p, e)| {
            let n = p.norm();
            if *e >= 0 {
                acc * num_traits::pow(n, *e as usize)
            } else {
                acc / num_traits::pow(n, (-e) as usize)
            }
        })
    }

    /// Exponent of `P`, zero when absent.
    pub fn exponent(&self, pp: &QIdeal) -> i64 {
        self.entries.iter().find(|(q, _)| q == pp).map(|(_, e)| *e).unwrap_or(0)
    }

    /// Multiplies the factorization out into a single ideal.
    pub fn product(&self) -> Result<QIdeal> {
        product_of_prime_powers(self.disc, &self.entries)
    }
}

impl fmt::Display for FactoredIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "(1)");
        }
        let parts: Vec<String> = self.entries.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

fn vp(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let mut n = n.abs();
    let mut e = 0;
    let p = BigInt::from(p);
    while (&n % &p).is_zero() {
        n /= &p;
        e += 1;
    }
    e
}

/// Valuation of the integral element `x + yω` at the prime `P` above `p`.
fn valuation_integral(disc: i64, x: &BigInt, y: &BigInt, pp: &QIdeal, p: u64, kind: PrimeKind) -> i64 {
    let delta = BigInt::from(disc.rem_euclid(2));
    let c = (&delta - BigInt::from(disc)) / 4;
    let norm = |x: &BigInt, y: &BigInt| x * x + &delta * x * y + &c * y * y;
    match kind {
        PrimeKind::Inert => vp(&norm(x, y), p) as i64 / 2,
        PrimeKind::Ramified => vp(&norm(x, y), p) as i64,
        PrimeKind::Split => {
            let j = vp(x, p).min(vp(y, p));
            let pj = num_traits::pow(BigInt::from(p), j as usize);
            let (x1, y1) = (x / &pj, y / &pj);
            let rest = vp(&norm(&x1, &y1), p) as i64;
            let inside = rest > 0
                && pp.contains_omega(&BigRational::from_integer(x1), &BigRational::from_integer(y1));
            j as i64 + if inside { rest } else { 0 }
        }
    }
}

/// Exact `P`-adic valuation of a nonzero element.
pub fn valuation(e: &QFieldElem, pp: &QIdeal) -> Result<i64> {
    if e.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (p, kind) = prime_data(pp).ok_or_else(|| Error::InvalidInput(format!("{pp} is not a prime ideal")))?;
    let (den, x, y) = e.integral_numerator();
    let num = valuation_integral(e.disc, &x, &y, pp, p, kind);
    let dv = vp(&den, p) as i64;
    let den_val = if kind == PrimeKind::Ramified { 2 * dv } else { dv };
    Ok(num - den_val)
}

/// Prime ideal factorization of the principal ideal `(e)`.
///
/// The norm of the integral numerator and the denominator are factored
/// separately, since cancellation in `N(e)` would hide primes.
pub fn factor_principal(e: &QFieldElem, budget: &FactorBudget) -> Result<FactoredIdeal> {
    if e.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (den, x, y) = e.integral_numerator();
    let delta = BigInt::from(e.disc.rem_euclid(2));
    let c = (&delta - BigInt::from(e.disc)) / 4;
    let n_alpha = &x * &x + &delta * &x * &y + &c * &y * &y;
    let mut primes: Vec<u64> = Vec::new();
    for n in [&n_alpha, &den] {
        let f = factor(n, budget);
        if let Some(cf) = f.cofactor {
            return Err(Error::IncompleteFactorization(cf));
        }
        for (p, _) in f.factors {
            primes.push(p.to_u64().ok_or_else(|| Error::Overflow(p.to_string()))?);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let mut entries = Vec::new();
    for p in primes {
        for pp in primes_above(e.disc, p).primes() {
            let v = valuation(e, pp)?;
            if v != 0 {
                entries.push((pp.clone(), v));
            }
        }
    }
    Ok(FactoredIdeal { disc: e.disc, entries })
}

/// `I` with `Iⁿ = Π Pᵢ^eᵢ`; every exponent must be divisible by `n`.
pub fn nth_root_ideal(f: &FactoredIdeal, n: u32) -> Result<QIdeal> {
    let mut root = Vec::with_capacity(f.entries.len());
    for (pp, e) in &f.entries {
        if e % n as i64 != 0 {
            let below = prime_data(pp).map(|(p, _)| BigInt::from(p)).unwrap_or_else(|| pp.a.clone());
            return Err(Error::ExponentNotDivisible { prime: below, exponent: *e, n });
        }
        root.push((pp.clone(), e / n as i64));
    }
    product_of_prime_powers(f.disc, &root)
}

/// Square root of `disc` modulo `2^(k+2)` congruent to `b` mod 4.
fn lift_root_two(disc: &BigInt, b: &BigInt, k: u32) -> BigInt {
    let mut x = b.clone();
    for j in 4..=k + 2 {
        let m = BigInt::one() << j;
        if !(&x * &x - disc).mod_floor(&m).is_zero() {
            x += BigInt::one() << (j - 2);
        }
    }
    x.mod_floor(&(BigInt::one() << (k + 1)))
}

/// Newton lift of a square root of `disc` from mod `p` to mod `p^k`.
fn lift_root_odd(disc: &BigInt, r: &BigInt, p: &BigInt, k: u32) -> BigInt {
    let pk = num_traits::pow(p.clone(), k as usize);
    let mut x = r.clone();
    let mut m = p.clone();
    while m < pk {
        m = (&m * &m).min(pk.clone());
        let fx = (&x * &x - disc).mod_floor(&m);
        let inv = mod_inverse(&(&x * 2), &m).expect("2x is a unit");
        x = (&x - fx * inv).mod_floor(&m);
    }
    x
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Product of prime ideal powers; conjugate pairs and ramified squares are
/// folded into the rational scale, the rest is assembled by CRT.
fn product_of_prime_powers(disc: i64, entries: &[(QIdeal, i64)]) -> Result<QIdeal> {
    let mut per_prime: BTreeMap<u64, Vec<(QIdeal, i64, PrimeKind)>> = BTreeMap::new();
    for (pp, e) in entries {
        let (p, kind) = prime_data(pp).ok_or_else(|| Error::InvalidInput(format!("{pp} is not prime")))?;
        per_prime.entry(p).or_default().push((pp.clone(), *e, kind));
    }
    let dbig = BigInt::from(disc);
    let mut scale = BigRational::one();
    // (modulus, residue) pairs for b; parity fixed by disc.
    let mut a = BigInt::one();
    let mut congruences: Vec<(BigInt, BigInt)> = Vec::new();
    let mut has_two = false;
    let pow_q = |p: u64, e: i64| -> BigRational {
        let base = BigRational::from_integer(p.into());
        if e >= 0 {
            num_traits::pow(base, e as usize)
        } else {
            num_traits::pow(base.recip(), (-e) as usize)
        }
    };
    for (p, list) in per_prime {
        let pb = BigInt::from(p);
        match list[0].2 {
            PrimeKind::Inert => {
                let e: i64 = list.iter().map(|(_, e, _)| e).sum();
                scale *= pow_q(p, e);
            }
            PrimeKind::Ramified => {
                let e: i64 = list.iter().map(|(_, e, _)| e).sum();
                let (qt, r) = (e.div_euclid(2), e.rem_euclid(2));
                scale *= pow_q(p, qt);
                if r == 1 {
                    let pp = &list[0].0;
                    a *= &pb;
                    if p == 2 {
                        has_two = true;
                        congruences.push((BigInt::from(4), pp.b.clone()));
                    } else {
                        congruences.push((pb.clone(), pp.b.clone()));
                    }
                }
            }
            PrimeKind::Split => {
                let Splitting::Split(first, second) = primes_above(disc, p) else {
                    unreachable!("split prime");
                };
                let e_of = |q: &QIdeal| list.iter().filter(|(x, _, _)| x == q).map(|(_, e, _)| e).sum::<i64>();
                let (e1, e2) = (e_of(&first), e_of(&second));
                let m = e1.min(e2);
                scale *= pow_q(p, m);
                let (pp, k) = if e1 > m { (first, e1 - m) } else { (second, e2 - m) };
                if k == 0 {
                    continue;
                }
                let k = k as u32;
                let pk = num_traits::pow(pb.clone(), k as usize);
                a *= &pk;
                if p == 2 {
                    has_two = true;
                    let root = lift_root_two(&dbig, &pp.b, k);
                    congruences.push((BigInt::one() << (k + 1), root));
                } else {
                    let root = lift_root_odd(&dbig, &pp.b.mod_floor(&pb), &pb, k);
                    congruences.push((pk, root));
                }
            }
        }
    }
    if !has_two {
        congruences.push((BigInt::from(2), dbig.mod_floor(&BigInt::from(2))));
    }
    let (mut modulus, mut b) = (BigInt::one(), BigInt::zero());
    for (m, r) in congruences {
        let inv = mod_inverse(&modulus, &m).expect("pairwise coprime moduli");
        let t = ((&r - &b).mod_floor(&m) * inv).mod_floor(&m);
        b += &modulus * t;
        modulus *= m;
    }
    Ok(QIdeal::new(disc, a, b, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::ideal::ideal_mul;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn valuations_at_small_primes() {
        let Splitting::Split(p2, p2b) = primes_above(-15, 2) else { panic!() };
        let two = QFieldElem::from_int(-15, 2);
        assert_eq!(valuation(&two, &p2), Ok(1));
        assert_eq!(valuation(&two, &p2b), Ok(1));
        let Splitting::Ramified(p3) = primes_above(-15, 3) else { panic!() };
        assert_eq!(valuation(&QFieldElem::sqrt_disc(-15), &p3), Ok(1));
        let half = QFieldElem::rational(-15, BigRational::new(1.into(), 2.into()));
        assert_eq!(valuation(&half, &p2), Ok(-1));
    }

    #[test]
    fn factor_principal_reassembles() {
        let budget = FactorBudget::default();
        assert!(factor_principal(&QFieldElem::from_int(-15, 1), &budget).unwrap().is_empty());
        let two = factor_principal(&QFieldElem::from_int(-15, 2), &budget).unwrap();
        assert_eq!(two.entries.len(), 2);
        for disc in [-15i64, -8120, -455, -3, -4] {
            for (u, v) in [(3, 1), (7, -2), (1, 5), (12, 9)] {
                let e = QFieldElem::new(disc, q(u), BigRational::new(v.into(), 3.into()));
                let f = factor_principal(&e, &budget).unwrap();
                assert_eq!(f.norm(), e.norm().abs(), "{disc} {u} {v}");
                let i = f.product().unwrap();
                assert_eq!(i.norm(), e.norm().abs());
                assert!(crate::quadfield::ideal::is_principal(&i).unwrap());
            }
        }
    }

    #[test]
    fn fifth_roots() {
        let Splitting::Split(p2, p2b) = primes_above(-15, 2) else { panic!() };
        let f = FactoredIdeal { disc: -15, entries: vec![(p2.clone(), 5), (p2b.clone(), 10)] };
        let r = nth_root_ideal(&f, 5).unwrap();
        let expect = ideal_mul(&p2, &ideal_mul(&p2b, &p2b).unwrap()).unwrap();
        assert_eq!(r, expect);
        let empty = FactoredIdeal { disc: -15, entries: vec![] };
        assert_eq!(nth_root_ideal(&empty, 5).unwrap(), QIdeal::unit(-15));
        let bad = FactoredIdeal { disc: -15, entries: vec![(p2, 3)] };
        assert!(matches!(nth_root_ideal(&bad, 5), Err(Error::ExponentNotDivisible { .. })));
    }

    #[test]
    fn prime_powers_match_repeated_products() {
        for disc in [-15i64, -8120, -23, -455] {
            for p in [2u64, 3, 5, 7, 29] {
                for pp in primes_above(disc, p).primes() {
                    let mut acc = QIdeal::unit(disc);
                    for k in 1..=6i64 {
                        acc = ideal_mul(&acc, pp).unwrap();
                        let f = FactoredIdeal { disc, entries: vec![(pp.clone(), k)] };
                        assert_eq!(f.product().unwrap(), acc, "{disc} {p} {k}");
                    }
                }
            }
        }
    }
}
