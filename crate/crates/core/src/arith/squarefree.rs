use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::factor::{factor, FactorBudget, FactoredInt};
use crate::{Error, Result};

/// Squarefree decomposition `n = d·m²` with `sign(d) = sign(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreePart {
    pub d: BigInt,
    pub m: BigInt,
    pub fd: FactoredInt,
}

pub fn squarefree_part(n: &BigInt, budget: &FactorBudget) -> Result<SquarefreePart> {
    if n.sign() == num_bigint::Sign::NoSign {
        return Err(Error::InvalidInput("squarefree part of zero".into()));
    }
    let f = factor(n, budget);
    if let Some(c) = &f.cofactor {
        return Err(Error::IncompleteFactorization(c.clone()));
    }
    Ok(squarefree_from_factored(&f))
}

pub fn squarefree_from_factored(f: &FactoredInt) -> SquarefreePart {
    debug_assert!(f.complete());
    let mut d = BigInt::from(f.sign);
    let mut m = BigInt::one();
    let mut fd = FactoredInt { sign: f.sign, factors: Vec::new(), cofactor: None };
    for (p, e) in &f.factors {
        if e % 2 == 1 {
            d *= p;
            fd.factors.push((p.clone(), 1));
        }
        m *= num_traits::pow(p.clone(), (*e / 2) as usize);
    }
    SquarefreePart { d, m, fd }
}

/// Discriminant of the maximal order of Q(√d): `d` if `d ≡ 1 mod 4`, else `4d`.
pub fn fundamental_discriminant(d: i64) -> Result<i64> {
    if d == 0 || d == 1 {
        return Err(Error::InvalidInput(format!("{d} does not define a quadratic field")));
    }
    let f = factor(&BigInt::from(d), &FactorBudget::default());
    if !f.complete() || f.factors.iter().any(|(_, e)| *e > 1) {
        return Err(Error::NotSquarefree(BigInt::from(d)));
    }
    if d.rem_euclid(4) == 1 {
        Ok(d)
    } else {
        d.checked_mul(4).ok_or_else(|| Error::Overflow(format!("4·{d}")))
    }
}

/// Inverse of [`fundamental_discriminant`]: the squarefree `d` of a
/// fundamental discriminant.
pub fn field_constant(disc: i64) -> i64 {
    if disc.rem_euclid(4) == 0 {
        disc / 4
    } else {
        disc
    }
}

pub fn to_i64(n: &BigInt) -> Result<i64> {
    n.to_i64().ok_or_else(|| Error::Overflow(n.abs().to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(n: i64) -> (BigInt, BigInt) {
        let s = squarefree_part(&BigInt::from(n), &FactorBudget::default()).unwrap();
        (s.d, s.m)
    }

    #[test]
    fn decompositions() {
        assert_eq!(sf(-60), (BigInt::from(-15), BigInt::from(2)));
        assert_eq!(sf(49), (BigInt::from(1), BigInt::from(7)));
        assert_eq!(sf(-1), (BigInt::from(-1), BigInt::from(1)));
    }

    #[test]
    fn fundamental_discriminants() {
        assert_eq!(fundamental_discriminant(-15).unwrap(), -15);
        assert_eq!(fundamental_discriminant(-2030).unwrap(), -8120);
        assert_eq!(fundamental_discriminant(-1).unwrap(), -4);
        assert_eq!(fundamental_discriminant(-12), Err(Error::NotSquarefree(BigInt::from(-12))));
        assert_eq!(field_constant(-8120), -2030);
        assert_eq!(field_constant(-455), -455);
    }
}
