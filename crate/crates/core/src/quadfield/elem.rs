use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// `u + v·√disc` with rational `u`, `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QFieldElem {
    pub disc: i64,
    pub u: BigRational,
    pub v: BigRational,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl QFieldElem {
    pub fn new(disc: i64, u: BigRational, v: BigRational) -> Self {
        Self { disc, u, v }
    }

    pub fn rational(disc: i64, u: BigRational) -> Self {
        Self::new(disc, u, BigRational::zero())
    }

    pub fn from_int(disc: i64, n: i64) -> Self {
        Self::rational(disc, q(n))
    }

    pub fn sqrt_disc(disc: i64) -> Self {
        Self::new(disc, BigRational::zero(), BigRational::one())
    }

    /// `x + y·ω` with `ω = (δ + √disc)/2`, `δ = disc mod 2`.
    pub fn from_omega_coords(disc: i64, x: BigRational, y: BigRational) -> Self {
        let delta = q(disc.rem_euclid(2));
        let half = BigRational::new(1.into(), 2.into());
        let u = &x + &y * &delta * &half;
        let v = &y * &half;
        Self::new(disc, u, v)
    }

    /// Coordinates in the basis `1, ω` of the maximal order.
    pub fn omega_coords(&self) -> (BigRational, BigRational) {
        let delta = q(self.disc.rem_euclid(2));
        (&self.u - &self.v * delta, &self.v * q(2))
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn norm(&self) -> BigRational {
        &self.u * &self.u - &self.v * &self.v * q(self.disc)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.disc, self.u.clone(), -&self.v)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Self::new(self.disc, c.u / &n, c.v / n))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::from_int(self.disc, 1), |acc, _| &acc * self)
    }

    /// Smallest positive integer `den` with `den·self ∈ Z[ω]`, and the
    /// integral coordinates of `den·self`.
    pub fn integral_numerator(&self) -> (BigInt, BigInt, BigInt) {
        let (x, y) = self.omega_coords();
        let den = x.denom().lcm(y.denom());
        let xn = (x * BigRational::from_integer(den.clone())).to_integer();
        let yn = (y * BigRational::from_integer(den.clone())).to_integer();
        (den, xn, yn)
    }

    pub fn is_integral(&self) -> bool {
        self.integral_numerator().0.is_one()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.disc, other.disc, "elements of different fields");
    }
}

impl Add for &QFieldElem {
    type Output = QFieldElem;
    fn add(self, rhs: Self) -> QFieldElem {
        self.check(rhs);
        QFieldElem::new(self.disc, &self.u + &rhs.u, &self.v + &rhs.v)
    }
}

impl Sub for &QFieldElem {
    type Output = QFieldElem;
    fn sub(self, rhs: Self) -> QFieldElem {
        self.check(rhs);
        QFieldElem::new(self.disc, &self.u - &rhs.u, &self.v - &rhs.v)
    }
}

impl Neg for &QFieldElem {
    type Output = QFieldElem;
    fn neg(self) -> QFieldElem {
        QFieldElem::new(self.disc, -&self.u, -&self.v)
    }
}

impl Mul for &QFieldElem {
    type Output = QFieldElem;
    fn mul(self, rhs: Self) -> QFieldElem {
        self.check(rhs);
        let d = q(self.disc);
        QFieldElem::new(
            self.disc,
            &self.u * &rhs.u + &self.v * &rhs.v * d,
            &self.u * &rhs.v + &self.v * &rhs.u,
        )
    }
}

impl fmt::Display for QFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})*sqrt({})", self.u, self.v, self.disc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_round_trip() {
        let e = QFieldElem::new(-15, BigRational::new(3.into(), 2.into()), BigRational::new(1.into(), 2.into()));
        let (x, y) = e.omega_coords();
        assert_eq!((x.clone(), y.clone()), (q(1), q(1)));
        assert_eq!(QFieldElem::from_omega_coords(-15, x, y), e);
        assert!(e.is_integral());
        // N(1 + ω) = 1 + 1 + 4 = 6
        assert_eq!(e.norm(), q(6));
    }

    #[test]
    fn norm_is_multiplicative() {
        let a = QFieldElem::new(-8120, q(3), BigRational::new(1.into(), 7.into()));
        let b = QFieldElem::new(-8120, q(-2), q(5));
        assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        let one = &a * &a.inv().unwrap();
        assert_eq!(one, QFieldElem::from_int(-8120, 1));
    }
}
