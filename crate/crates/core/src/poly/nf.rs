use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::upoly::UPolyQ;
use crate::{Error, Result};

/// Element of Q[x]/(m) for a monic integral `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NFElem {
    minpoly: Arc<UPolyQ>,
    rep: UPolyQ,
}

impl NFElem {
    /// Panics unless `minpoly` is monic with integer coefficients.
    pub fn new(minpoly: &Arc<UPolyQ>, rep: UPolyQ) -> Self {
        assert!(
            minpoly.lead().is_one() && minpoly.coeffs().iter().all(|c| c.is_integer()),
            "minimal polynomial must be monic and integral"
        );
        Self { minpoly: Arc::clone(minpoly), rep: rep.rem(minpoly) }
    }

    pub fn from_coords(minpoly: &Arc<UPolyQ>, coords: &[BigRational]) -> Self {
        Self::new(minpoly, UPolyQ::new(coords.to_vec()))
    }

    pub fn rational(minpoly: &Arc<UPolyQ>, c: BigRational) -> Self {
        Self::new(minpoly, UPolyQ::constant(c))
    }

    /// The class of x, i.e. the root α.
    pub fn generator(minpoly: &Arc<UPolyQ>) -> Self {
        Self::new(minpoly, UPolyQ::x())
    }

    pub fn minpoly(&self) -> &Arc<UPolyQ> {
        &self.minpoly
    }

    /// Coordinates in the power basis 1, α, …, α^(n-1).
    pub fn coords(&self) -> Vec<BigRational> {
        let n = self.minpoly.degree().unwrap_or(0);
        (0..n).map(|i| self.rep.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.rep.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(self.rep.coeff(0)),
            _ => None,
        }
    }

    fn same_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.minpoly, &other.minpoly) || self.minpoly == other.minpoly,
            "elements of different number fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        Self { minpoly: Arc::clone(&self.minpoly), rep: &self.rep + &other.rep }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_field(other);
        Self { minpoly: Arc::clone(&self.minpoly), rep: &self.rep - &other.rep }
    }

    pub fn neg(&self) -> Self {
        Self { minpoly: Arc::clone(&self.minpoly), rep: -&self.rep }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        Self { minpoly: Arc::clone(&self.minpoly), rep: (&self.rep * &other.rep).rem(&self.minpoly) }
    }

    /// Inverse via the extended Euclidean algorithm. Fails on zero, and on
    /// zero divisors when the modulus is reducible.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.rep.ext_gcd(&self.minpoly);
        if g.degree() != Some(0) {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(&self.minpoly, s))
    }
}

impl fmt::Display for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.rep.to_string().replace('x', "a");
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NfOp {
    Add,
    Sub,
    Mul,
    Inv,
}

pub fn nf_arith(a: &NFElem, b: &NFElem, op: NfOp) -> Result<NFElem> {
    Ok(match op {
        NfOp::Add => a.add(b),
        NfOp::Sub => a.sub(b),
        NfOp::Mul => a.mul(b),
        NfOp::Inv => a.inv()?,
    })
}

/// Univariate polynomial with coefficients in a number field, lowest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPolyNF {
    coeffs: Vec<NFElem>,
}

impl UPolyNF {
    pub fn new(mut coeffs: Vec<NFElem>) -> Self {
        while coeffs.last().is_some_and(NFElem::is_zero) {
            coeffs.pop();
        }
        if let Some(first) = coeffs.first() {
            for c in &coeffs {
                first.same_field(c);
            }
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[NFElem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `Some` when every coefficient lies in Q.
    pub fn to_rational(&self) -> Option<UPolyQ> {
        self.coeffs
            .iter()
            .map(NFElem::as_rational)
            .collect::<Option<Vec<_>>>()
            .map(UPolyQ::new)
    }
}

pub fn upoly_mul(f: &UPolyNF, g: &UPolyNF) -> UPolyNF {
    if f.coeffs.is_empty() || g.coeffs.is_empty() {
        return UPolyNF { coeffs: Vec::new() };
    }
    let m = Arc::clone(f.coeffs[0].minpoly());
    let mut out = vec![NFElem::rational(&m, BigRational::zero()); f.coeffs.len() + g.coeffs.len() - 1];
    for (i, a) in f.coeffs.iter().enumerate() {
        for (j, b) in g.coeffs.iter().enumerate() {
            out[i + j] = out[i + j].add(&a.mul(b));
        }
    }
    UPolyNF::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> Arc<UPolyQ> {
        Arc::new(UPolyQ::from_ints(&[2, 2, -1, 1]))
    }

    fn el(m: &Arc<UPolyQ>, c: &[i64]) -> NFElem {
        NFElem::new(m, UPolyQ::from_ints(c))
    }

    #[test]
    fn cube_of_generator_reduces() {
        let m = field();
        let a = NFElem::generator(&m);
        let a2 = a.mul(&a);
        // α³ = α² − 2α − 2
        assert_eq!(a.mul(&a2), el(&m, &[-2, -2, 1]));
    }

    #[test]
    fn inverse_and_sum() {
        let m = field();
        let x = el(&m, &[2, -1, 1]);
        let y = el(&m, &[-1, 1, -1]);
        assert_eq!(x.add(&y), el(&m, &[1]));
        let xi = x.inv().unwrap();
        assert_eq!(x.mul(&xi), el(&m, &[1]));
        assert_eq!(el(&m, &[]).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn difference_of_squares() {
        let m = field();
        let a = NFElem::generator(&m);
        let one = el(&m, &[1]);
        let f = UPolyNF::new(vec![a.clone(), one.clone()]);
        let g = UPolyNF::new(vec![a.neg(), one.clone()]);
        let p = upoly_mul(&f, &g);
        assert_eq!(p.coeffs()[0], a.mul(&a).neg());
        assert!(p.coeffs()[1].is_zero());
    }
}
