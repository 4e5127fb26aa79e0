use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{squarefree_part, FactorBudget};
use crate::Result;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `f16(x) = x(x² + 1)(x² + 2x − 1)`.
pub fn f16_eval(t: &BigRational) -> BigRational {
    let t2 = t * t;
    t * (&t2 + q(1)) * (&t2 + t * q(2) - q(1))
}

/// `h16(r, s) = rs(r² + s²)(r² + 2rs − s²)`, equal to `s⁶·f16(r/s)`.
pub fn h16_homogeneous(r: &BigInt, s: &BigInt) -> BigInt {
    let (r2, s2) = (r * r, s * s);
    r * s * (&r2 + &s2) * (&r2 + r * s * 2 - &s2)
}

/// Whether `x` lies outside Y1(16): a root of
/// `x(x−1)(x+1)(x²+1)(x²−2x−1)(x²+2x−1)`. The quadratic factors have no
/// rational roots, so only `0, ±1` qualify.
pub fn is_cusp(t: &BigRational) -> bool {
    t.is_zero() || t.abs().is_one()
}

/// A point `(t, ±√f16(t))` with `f16(t) = d·m²`, `d` squarefree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct X16Point {
    #[serde(serialize_with = "crate::x16::ser_rational")]
    pub t: BigRational,
    #[serde(serialize_with = "crate::x16::ser_rational")]
    pub fval: BigRational,
    #[serde(serialize_with = "crate::x16::ser_bigint")]
    pub d: BigInt,
    #[serde(serialize_with = "crate::x16::ser_rational")]
    pub m: BigRational,
    pub cusp: bool,
}

pub fn point_from_t(t: &BigRational) -> Result<X16Point> {
    point_from_t_with(t, &FactorBudget::default())
}

pub fn point_from_t_with(t: &BigRational, budget: &FactorBudget) -> Result<X16Point> {
    let fval = f16_eval(t);
    let cusp = is_cusp(t);
    if fval.is_zero() {
        return Ok(X16Point { t: t.clone(), fval, d: BigInt::zero(), m: BigRational::zero(), cusp });
    }
    // f = N/D = N·D / D², so the squarefree class is that of N·D.
    let (n, den) = (fval.numer(), fval.denom());
    let sf = squarefree_part(&(n * den), budget)?;
    let m = BigRational::new(sf.m, den.clone());
    Ok(X16Point { t: t.clone(), fval, d: sf.d, m, cusp })
}
