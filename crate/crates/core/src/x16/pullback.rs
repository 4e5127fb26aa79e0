use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::curve::X16Point;
use crate::arith::{fundamental_discriminant, FactorBudget};
use crate::quadfield::{factor_principal, ideal_to_form, nth_root_ideal, QFieldElem};
use crate::quadform::{class_number, pow, reduce, two_rank_genus, QuadForm};
use crate::{Error, Result};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn horner(coeffs_high_first: &[i64], x: &BigRational) -> BigRational {
    coeffs_high_first.iter().fold(BigRational::zero(), |acc, &c| acc * x + q(c))
}

/// Numerator coefficients of `g = (A(x)·y + B(x)) / (x − 1)⁵`.
pub const G_A: [i64; 3] = [-6, -4, 2];
pub const G_B: [i64; 6] = [1, 13, -2, 10, -7, 1];

/// `g(x, y)` with `y = σ·√f16(x)` written in Q(√disc).
pub fn g_eval(p: &X16Point) -> Result<QFieldElem> {
    g_eval_signed(p, 1)
}

pub fn g_eval_signed(p: &X16Point, sign: i8) -> Result<QFieldElem> {
    if p.t.is_one() {
        return Err(Error::SupportCollision);
    }
    if p.cusp {
        return Err(Error::Cusp);
    }
    let d = crate::arith::squarefree::to_i64(&p.d)?;
    if d >= 0 {
        return Err(Error::NotImaginary(d));
    }
    let disc = fundamental_discriminant(d)?;
    // y = m√d; √d = √disc when disc = d, and √disc / 2 when disc = 4d.
    let mut v = if disc == d { p.m.clone() } else { &p.m / q(2) };
    if sign < 0 {
        v = -v;
    }
    let y = QFieldElem::new(disc, BigRational::zero(), v);
    let x = &p.t;
    let a = QFieldElem::rational(disc, horner(&G_A, x));
    let b = QFieldElem::rational(disc, horner(&G_B, x));
    let den = num_traits::pow(x - q(1), 5);
    let num = &(&a * &y) + &b;
    Ok(QFieldElem::new(disc, num.u / &den, num.v / den))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PullbackResult {
    #[serde(serialize_with = "crate::x16::ser_rational")]
    pub t: BigRational,
    pub disc: i64,
    pub ideal_class_form: QuadForm,
    pub order: u64,
    /// Exponents of the prime factorization of `(g(P))`.
    pub exponents: Vec<i64>,
}

/// The class of the fifth root of `(g(P))`, with its order (1 or 5).
pub fn cl5_pullback(p: &X16Point) -> Result<PullbackResult> {
    cl5_pullback_with(p, 1, &FactorBudget::default())
}

pub fn cl5_pullback_with(p: &X16Point, sign: i8, budget: &FactorBudget) -> Result<PullbackResult> {
    let e = g_eval_signed(p, sign)?;
    let disc = e.disc;
    let fact = factor_principal(&e, budget)?;
    let root = nth_root_ideal(&fact, 5)?;
    let form = reduce(ideal_to_form(&root)?);
    let order = if form.is_principal() {
        1
    } else if pow(form, 5).is_principal() {
        5
    } else {
        let mut k = 2u64;
        let mut g = pow(form, 2);
        while !g.is_principal() && k < 1_000_000 {
            g = crate::quadform::compose(g, form)?;
            k += 1;
        }
        return Err(Error::UnexpectedOrder { order: k, expected: 5 });
    };
    Ok(PullbackResult {
        t: p.t.clone(),
        disc,
        ideal_class_form: form,
        order,
        exponents: fact.entries.iter().map(|(_, e)| *e).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    #[serde(serialize_with = "crate::x16::ser_rational")]
    pub t: BigRational,
    pub d: i64,
    pub disc: i64,
    pub h: u64,
    pub two_rank: u32,
    pub five_order: u64,
    pub div10: bool,
}

pub fn divisibility_check(p: &X16Point) -> Result<CensusRecord> {
    divisibility_check_with(p, &FactorBudget::default(), &|disc| class_number(disc) as u64)
}

pub fn divisibility_check_with(
    p: &X16Point,
    budget: &FactorBudget,
    h_of: &(dyn Fn(i64) -> u64 + Sync),
) -> Result<CensusRecord> {
    let pb = cl5_pullback_with(p, 1, budget)?;
    let d = crate::arith::squarefree::to_i64(&p.d)?;
    let h = h_of(pb.disc);
    Ok(CensusRecord {
        t: p.t.clone(),
        d,
        disc: pb.disc,
        h,
        two_rank: two_rank_genus(d)?,
        five_order: pb.order,
        div10: h.is_multiple_of(10),
    })
}

/// Sanity check used by tests: `g(x, y)·g(x, −y) = 1` at a point.
pub fn g_norm(p: &X16Point) -> Result<BigRational> {
    Ok(g_eval(p)?.norm())
}

/// `t = r/s` in lowest terms with `s > 0`.
pub fn rational(r: i64, s: i64) -> BigRational {
    BigRational::new(BigInt::from(r), BigInt::from(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::x16::curve::point_from_t;

    #[test]
    fn known_orders() {
        for (t, order) in [(rational(-3, 1), 1), (rational(-242, 29), 1), (rational(-5, 1), 5)] {
            let p = point_from_t(&t).unwrap();
            let r = cl5_pullback(&p).unwrap();
            assert_eq!(r.order, order, "t = {t}");
            assert!(r.exponents.iter().all(|e| e % 5 == 0));
        }
    }

    #[test]
    fn norm_of_g_is_one() {
        for t in [rational(-3, 1), rational(-5, 1), rational(1, 3), rational(1, 4), rational(-7, 2)] {
            let p = point_from_t(&t).unwrap();
            assert_eq!(g_norm(&p).unwrap(), q(1));
        }
    }

    #[test]
    fn errors() {
        let p = point_from_t(&q(1)).unwrap();
        assert_eq!(g_eval(&p), Err(Error::SupportCollision));
        let p = point_from_t(&q(2)).unwrap();
        assert!(matches!(g_eval(&p), Err(Error::NotImaginary(_))));
        let p = point_from_t(&q(0)).unwrap();
        assert_eq!(g_eval(&p), Err(Error::Cusp));
    }

    #[test]
    fn records() {
        let r = divisibility_check(&point_from_t(&q(-3)).unwrap()).unwrap();
        assert_eq!((r.d, r.h, r.div10), (-15, 2, false));
        let r = divisibility_check(&point_from_t(&rational(-242, 29)).unwrap()).unwrap();
        assert_eq!((r.h, r.div10, r.five_order), (40, true, 1));
        let r = divisibility_check(&point_from_t(&q(-5)).unwrap()).unwrap();
        assert_eq!((r.d, r.disc, r.h, r.div10, r.five_order), (-455, -455, 20, true, 5));
        assert!(r.two_rank >= 1);
    }
}
