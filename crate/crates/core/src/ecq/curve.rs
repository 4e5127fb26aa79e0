use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::{Error, Result};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a1: BigRational,
    pub a2: BigRational,
    pub a3: BigRational,
    pub a4: BigRational,
    pub a6: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ECPoint {
    Infinity,
    Affine(BigRational, BigRational),
}

impl ECPoint {
    pub fn affine(x: i64, y: i64) -> Self {
        ECPoint::Affine(q(x), q(y))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }

    pub fn x(&self) -> Option<&BigRational> {
        match self {
            ECPoint::Affine(x, _) => Some(x),
            ECPoint::Infinity => None,
        }
    }
}

impl fmt::Display for ECPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ECPoint::Infinity => f.write_str("O"),
            ECPoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl WeierstrassCurve {
    /// Errors with `InvalidInput` on a singular model.
    pub fn new(a: [i64; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a.map(q);
        let c = Self { a1, a2, a3, a4, a6 };
        if c.discriminant().is_zero() {
            return Err(Error::InvalidInput(format!("singular curve {a:?}")));
        }
        Ok(c)
    }

    /// Short model `y² = x³ + a2·x² + a4·x + a6`.
    pub fn short(a2: i64, a4: i64, a6: i64) -> Result<Self> {
        Self::new([0, a2, 0, a4, a6])
    }

    pub fn discriminant(&self) -> BigRational {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + q(4) * a2;
        let b4 = q(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + q(4) * a6;
        let b8 = a1 * a1 * a6 + q(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        -(&b2 * &b2 * &b8) - q(8) * &b4 * &b4 * &b4 - q(27) * &b6 * &b6 + q(9) * &b2 * &b4 * &b6
    }

    pub fn contains(&self, p: &ECPoint) -> bool {
        match p {
            ECPoint::Infinity => true,
            ECPoint::Affine(x, y) => {
                let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
                let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
                lhs == rhs
            }
        }
    }

    pub fn neg(&self, p: &ECPoint) -> ECPoint {
        match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine(x, y) => ECPoint::Affine(x.clone(), -y - &self.a1 * x - &self.a3),
        }
    }

    pub fn add(&self, p: &ECPoint, r: &ECPoint) -> ECPoint {
        let (ECPoint::Affine(x1, y1), ECPoint::Affine(x2, y2)) = (p, r) else {
            return if p.is_infinity() { r.clone() } else { p.clone() };
        };
        let lambda = if x1 == x2 {
            let denom = q(2) * y1 + &self.a1 * x1 + &self.a3;
            if y1 != y2 || denom.is_zero() {
                return ECPoint::Infinity;
            }
            (q(3) * x1 * x1 + q(2) * &self.a2 * x1 + &self.a4 - &self.a1 * y1) / denom
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let nu = y1 - &lambda * x1;
        let x3 = &lambda * &lambda + &self.a1 * &lambda - &self.a2 - x1 - x2;
        let y3 = -(&lambda + &self.a1) * &x3 - &nu - &self.a3;
        ECPoint::Affine(x3, y3)
    }

    pub fn double(&self, p: &ECPoint) -> ECPoint {
        self.add(p, p)
    }

    /// `m·P` by double-and-add; negative `m` uses `−P`.
    pub fn mul(&self, m: i64, p: &ECPoint) -> ECPoint {
        let base = if m < 0 { self.neg(p) } else { p.clone() };
        let mut k = m.unsigned_abs();
        let (mut acc, mut run) = (ECPoint::Infinity, base);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &run);
            }
            run = self.double(&run);
            k >>= 1;
        }
        acc
    }

    /// Smallest `n ≤ bound` with `n·P = O`.
    pub fn torsion_order(&self, p: &ECPoint, bound: u32) -> Option<u32> {
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_infinity() {
                return Some(n);
            }
            acc = self.add(&acc, p);
        }
        None
    }
}

/// `E: y² = x³ − x² + 17x − 13`, with the point `(1, 2)`.
pub fn curve_e() -> WeierstrassCurve {
    WeierstrassCurve::short(-1, 17, -13).expect("nonsingular")
}

pub fn curve_e_point() -> ECPoint {
    ECPoint::affine(1, 2)
}

/// Naive logarithmic height of the x-coordinate.
pub fn naive_height(p: &ECPoint) -> f64 {
    match p {
        ECPoint::Infinity => 0.0,
        ECPoint::Affine(x, _) => {
            let bits = x.numer().bits().max(x.denom().bits());
            bits as f64 * std::f64::consts::LN_2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_law_on_e() {
        let e = curve_e();
        let p = curve_e_point();
        assert!(e.contains(&p));
        let p2 = e.add(&p, &p);
        assert_eq!(p2, e.mul(2, &p));
        assert!(e.contains(&p2));
        assert_eq!(e.add(&p, &ECPoint::Infinity), p);
        assert_eq!(e.add(&p, &e.neg(&p)), ECPoint::Infinity);
        let p5 = e.mul(5, &p);
        assert_eq!(e.add(&e.mul(2, &p), &e.mul(3, &p)), p5);
        assert!(e.contains(&p5));
        assert_eq!(e.mul(-3, &p), e.neg(&e.mul(3, &p)));
        assert!(e.discriminant() != BigRational::zero());
        assert!(WeierstrassCurve::short(0, 0, 0).is_err());
    }
}
