use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::modular::{kronecker_prime, sqrt_mod_prime};
use crate::quadform::{compose_unreduced, reduce, ClassGroup, QuadForm};
use crate::{Error, Result};

/// Fractional ideal `scale · (aZ + ((b + √disc)/2)Z)` of the maximal order.
///
/// The bracket is a primitive integral ideal of norm `a`; `scale` is a
/// positive rational, so inert primes and integer multiples are
/// representable. `b` is normalised to `0 ≤ b < 2a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QIdeal {
    pub disc: i64,
    pub a: BigInt,
    pub b: BigInt,
    pub scale: BigRational,
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

impl QIdeal {
    pub fn new(disc: i64, a: BigInt, b: BigInt, scale: BigRational) -> Self {
        assert!(a.is_positive() && scale.is_positive(), "ideal needs a > 0, scale > 0");
        let b = b.mod_floor(&(&a * 2));
        debug_assert!((&b * &b - big(disc)).mod_floor(&(&a * 4)).is_zero(), "b² ≢ disc mod 4a");
        Self { disc, a, b, scale }
    }

    pub fn unit(disc: i64) -> Self {
        Self::new(disc, BigInt::one(), big(disc.rem_euclid(2)), BigRational::one())
    }

    /// The principal ideal generated by a positive rational.
    pub fn rational(disc: i64, r: BigRational) -> Self {
        let mut i = Self::unit(disc);
        i.scale = r.abs();
        i
    }

    pub fn norm(&self) -> BigRational {
        &self.scale * &self.scale * BigRational::from_integer(self.a.clone())
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.disc, self.a.clone(), -&self.b, self.scale.clone())
    }

    /// `I⁻¹ = Ī / N(I)`.
    pub fn inverse(&self) -> Self {
        let s = (&self.scale * BigRational::from_integer(self.a.clone())).recip();
        Self::new(self.disc, self.a.clone(), -&self.b, s)
    }

    pub fn is_integral(&self) -> bool {
        // aZ + ((b+√Δ)/2)Z is primitive, so the ideal is integral iff the
        // scale is an integer.
        self.scale.is_integer()
    }

    /// Whether the element `x + yω` lies in the ideal.
    pub fn contains_omega(&self, x: &BigRational, y: &BigRational) -> bool {
        // z = x + yω = s·(m·a + n·(b+√Δ)/2); with (b+√Δ)/2 = (b−δ)/2 + ω,
        // n = y/s and m·a = x/s − n·(b−δ)/2.
        let n = y / &self.scale;
        if !n.is_integer() {
            return false;
        }
        let delta = big(self.disc.rem_euclid(2));
        let shift = BigRational::from_integer((&self.b - delta) / 2);
        let ma = x / &self.scale - &n * shift;
        ma.is_integer() && ma.to_integer().is_multiple_of(&self.a)
    }

    /// The form `(a, −b, c)` attached to the primitive part.
    pub fn to_form(&self) -> Result<QuadForm> {
        let a = to_i128(&self.a)?;
        let b = to_i128(&self.b)?;
        QuadForm::from_ab(a, -b, self.disc as i128)
            .ok_or_else(|| Error::InvalidInput(format!("{self} is not an ideal")))
    }
}

fn to_i128(n: &BigInt) -> Result<i128> {
    n.to_i128().ok_or_else(|| Error::Overflow(n.to_string()))
}

impl fmt::Display for QIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale.is_one() {
            write!(f, "[{}, ({} + sqrt({}))/2]", self.a, self.b, self.disc)
        } else {
            write!(f, "{}*[{}, ({} + sqrt({}))/2]", self.scale, self.a, self.b, self.disc)
        }
    }
}

/// How a rational prime decomposes in the maximal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Splitting {
    Split(QIdeal, QIdeal),
    Ramified(QIdeal),
    Inert(QIdeal),
}

impl Splitting {
    pub fn primes(&self) -> Vec<&QIdeal> {
        match self {
            Splitting::Split(p, q) => vec![p, q],
            Splitting::Ramified(p) | Splitting::Inert(p) => vec![p],
        }
    }
}

/// `b ∈ [0, 2p)` with `b² ≡ disc (mod 4p)`, for `p | disc` or `(disc|p) = 1`.
fn root_mod_4p(disc: i64, p: u64) -> u64 {
    if p == 2 {
        return (0..4u64)
            .find(|b| ((b * b) as i64 - disc).rem_euclid(8) == 0)
            .expect("2 is split or ramified");
    }
    let r = sqrt_mod_prime(disc.rem_euclid(p as i64) as u64, p).expect("disc is a square mod p");
    if (r as i64 - disc).rem_euclid(2) == 0 {
        r
    } else {
        r + p
    }
}

pub fn primes_above(disc: i64, p: u64) -> Splitting {
    let one = BigRational::one();
    match kronecker_prime(disc, p) {
        -1 => Splitting::Inert(QIdeal::rational(disc, BigRational::from_integer(p.into()))),
        0 => {
            let b = root_mod_4p(disc, p);
            Splitting::Ramified(QIdeal::new(disc, p.into(), b.into(), one))
        }
        _ => {
            let b = root_mod_4p(disc, p);
            let pb = QIdeal::new(disc, p.into(), b.into(), one.clone());
            let qb = QIdeal::new(disc, p.into(), -BigInt::from(b), one);
            Splitting::Split(pb, qb)
        }
    }
}

/// Classification of a prime ideal produced by [`primes_above`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeKind {
    Split,
    Ramified,
    Inert,
}

/// The rational prime below `P` and how it splits; `None` if `P` is not of
/// the shape [`primes_above`] produces.
pub fn prime_data(pp: &QIdeal) -> Option<(u64, PrimeKind)> {
    if pp.a.is_one() {
        let p = pp.scale.to_integer().to_u64()?;
        return (pp.scale.is_integer() && kronecker_prime(pp.disc, p) == -1).then_some((p, PrimeKind::Inert));
    }
    if !pp.scale.is_one() {
        return None;
    }
    let p = pp.a.to_u64()?;
    match kronecker_prime(pp.disc, p) {
        0 => Some((p, PrimeKind::Ramified)),
        1 => Some((p, PrimeKind::Split)),
        _ => None,
    }
}

/// Product of ideals via form composition: `I(f)·I(g) = d1·I(f∘g)`.
pub fn ideal_mul(i: &QIdeal, j: &QIdeal) -> Result<QIdeal> {
    if i.disc != j.disc {
        return Err(Error::DiscriminantMismatch(i.disc, j.disc));
    }
    let (d1, f) = compose_unreduced(i.to_form()?, j.to_form()?)?;
    let scale = &i.scale * &j.scale * BigRational::from_integer(d1.into());
    Ok(QIdeal::new(i.disc, f.a.into(), (-f.b).into(), scale))
}

pub fn ideal_to_form(i: &QIdeal) -> Result<QuadForm> {
    i.to_form()
}

pub fn is_principal(i: &QIdeal) -> Result<bool> {
    Ok(reduce(i.to_form()?).is_principal())
}

pub fn class_order(i: &QIdeal, cg: &ClassGroup) -> Result<u64> {
    if i.disc != cg.disc {
        return Err(Error::DiscriminantMismatch(i.disc, cg.disc));
    }
    Ok(cg.order_of(reduce(i.to_form()?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_types() {
        assert!(matches!(primes_above(-15, 2), Splitting::Split(_, _)));
        assert!(matches!(primes_above(-15, 3), Splitting::Ramified(_)));
        assert!(matches!(primes_above(-4, 3), Splitting::Inert(_)));
        assert!(matches!(primes_above(-8120, 2), Splitting::Ramified(_)));
        for disc in [-15i64, -8120, -455, -4, -3, -23] {
            for p in [2u64, 3, 5, 7, 11, 13, 29, 101] {
                let s = primes_above(disc, p);
                let prod = s
                    .primes()
                    .iter()
                    .fold(QIdeal::unit(disc), |acc, q| ideal_mul(&acc, q).unwrap());
                let prod = match s {
                    Splitting::Ramified(ref q) => ideal_mul(&prod, q).unwrap(),
                    _ => prod,
                };
                assert_eq!(prod, QIdeal::rational(disc, BigRational::from_integer(p.into())), "{disc} {p}");
            }
        }
    }

    #[test]
    fn prime_above_two_in_minus_15() {
        let Splitting::Split(p2, _) = primes_above(-15, 2) else { panic!() };
        let cg = ClassGroup::new(-15);
        assert_eq!(class_order(&p2, &cg), Ok(2));
        assert_eq!(is_principal(&p2), Ok(false));
        assert_eq!(class_order(&QIdeal::unit(-15), &cg), Ok(1));
        let inv = ideal_mul(&p2, &p2.inverse()).unwrap();
        assert_eq!(inv, QIdeal::unit(-15));
    }
}
