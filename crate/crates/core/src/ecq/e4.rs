use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::curve::{ECPoint, WeierstrassCurve};
use crate::poly::{parse_expr, MPolyQ};
use crate::{Error, Result};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Weierstrass model `y² = x³ − 2x² + 2x` of the quartic `y² = 2(u⁴ + 2u²v² − v⁴)`.
pub fn e4_weierstrass() -> WeierstrassCurve {
    WeierstrassCurve::short(-2, 2, 0).expect("nonsingular")
}

/// Generator of the free part.
pub fn e4_generator() -> ECPoint {
    ECPoint::affine(1, 1)
}

/// The rational 2-torsion point.
pub fn e4_torsion() -> ECPoint {
    ECPoint::affine(0, 0)
}

/// `(u : y : v)` in weighted projective space P(1, 2, 1), `gcd(u, v) = 1`,
/// normalised with `v > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuarticPoint {
    pub u: BigInt,
    pub y: BigInt,
    pub v: BigInt,
}

impl QuarticPoint {
    pub fn new(u: i64, y: i64, v: i64) -> Self {
        Self { u: u.into(), y: y.into(), v: v.into() }
    }

    pub fn on_e4(&self) -> bool {
        let (u2, v2) = (&self.u * &self.u, &self.v * &self.v);
        &self.y * &self.y == (&u2 * &u2 + &u2 * &v2 * 2 - &v2 * &v2) * 2
    }

    pub fn is_primitive(&self) -> bool {
        self.u.gcd(&self.v).is_one()
    }

    /// `2(u⁴ + v⁴)`, the quantity tested for the shape `p·z²`.
    pub fn h1_value(&self) -> BigInt {
        let (u2, v2) = (&self.u * &self.u, &self.v * &self.v);
        (&u2 * &u2 + &v2 * &v2) * 2
    }

    fn from_affine(x: &BigRational, y: &BigRational) -> Result<Self> {
        let (u, v) = (x.numer().clone(), x.denom().clone());
        let yy = y * BigRational::from_integer(&v * &v);
        if !yy.is_integer() {
            return Err(Error::NotOnCurve);
        }
        let p = Self { u, y: yy.to_integer(), v };
        if p.on_e4() {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }
}

impl fmt::Display for QuarticPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.u, self.y, self.v)
    }
}

/// Weierstrass point to affine quartic point `(x, y)`, `x = u/v`, `y = Y/v²`.
///
/// The formula is undefined at `O` and at `(2, 2)`; their images are
/// `(1, 2)` and `(−3, 14)`, the limits along the curve.
pub fn to_quartic(p: &ECPoint) -> Result<(BigRational, BigRational)> {
    let ECPoint::Affine(x1, y1) = p else {
        return Ok((q(1), q(2)));
    };
    if *x1 == q(2) && *y1 == q(2) {
        return Ok((q(-3), q(14)));
    }
    let big_x = q(4) * x1 - q(8);
    let big_y = q(8) * y1 - q(16) * x1 + q(16);
    if big_y.is_zero() {
        return Err(Error::MapUndefined);
    }
    let w = q(4) * &big_x / &big_y;
    let v = q(-2) + &w * (&w * &big_x - q(16)) / q(4);
    Ok((q(1) + w, v))
}

/// Inverse of [`to_quartic`]; `(1, 2) ↦ O` and `(1, −2) ↦ (2, −2)`.
pub fn from_quartic(x: &BigRational, y: &BigRational) -> Result<ECPoint> {
    let w = x - q(1);
    if w.is_zero() {
        return match y {
            y if *y == q(2) => Ok(ECPoint::Infinity),
            y if *y == q(-2) => Ok(ECPoint::affine(2, -2)),
            _ => Err(Error::NotOnCurve),
        };
    }
    let yp2 = y + q(2);
    let big_x = (q(4) * &yp2 + q(16) * &w) / (&w * &w);
    let big_y = (q(16) * &yp2 + q(64) * &w) / (&w * &w * &w);
    let x1 = (&big_x + q(8)) / q(4);
    let y1 = (big_y + q(4) * big_x + q(16)) / q(8);
    Ok(ECPoint::Affine(x1, y1))
}

pub fn to_quartic_point(p: &ECPoint) -> Result<QuarticPoint> {
    let (x, y) = to_quartic(p)?;
    QuarticPoint::from_affine(&x, &y)
}

/// `m·G` on the quartic model.
pub fn quartic_transport(m: i64) -> Result<QuarticPoint> {
    let e = e4_weierstrass();
    to_quartic_point(&e.mul(m, &e4_generator()))
}

/// Replace `y²` by `f` throughout `p`.
fn reduce_mod_square(p: &MPolyQ, y: &str, f: &MPolyQ) -> MPolyQ {
    let ys = MPolyQ::var(y);
    p.coefficients_in(y).iter().enumerate().fold(MPolyQ::zero(), |acc, (i, c)| {
        let odd = if i % 2 == 1 { ys.clone() } else { MPolyQ::one() };
        &acc + &(&(c * &f.pow(i as u32 / 2)) * &odd)
    })
}

const MAP_DEFS: &[(&str, &str)] = &[
    ("CUBIC", "(+ (^ x1 3) (* -2 (^ x1 2)) (* 2 x1))"),
    ("X", "(- (* 4 x1) 8)"),
    ("Y", "(+ (* 8 y1) (* -16 x1) 16)"),
    ("NX", "(+ Y (* 4 X))"),
    ("NY", "(+ (* -2 (^ Y 2)) (* 4 (^ X 3)) (* -16 X Y))"),
    ("FWD", "(- (^ NY 2) (* 2 (+ (^ NX 4) (* 2 (^ NX 2) (^ Y 2)) (- (^ Y 4)))))"),
    ("QUARTIC", "(* 2 (+ (^ x 4) (* 2 (^ x 2)) -1))"),
    ("W", "(- x 1)"),
    ("A", "(+ (* 4 (+ y 2)) (* 16 W) (* 8 (^ W 2)))"),
    ("B", "(+ (* 16 (+ y 2)) (* 64 W) (* 16 W (+ y 2)) (* 64 (^ W 2)) (* 16 (^ W 3)))"),
    ("INV", "(+ (^ B 2) (- (^ A 3)) (* 8 (^ A 2) (^ W 2)) (* -32 A (^ W 4)))"),
];

/// Symbolic check that both maps land on the target curve.
///
/// Numerators of `y² − rhs(x)` are reduced modulo the source equation; both
/// must vanish identically.
pub fn verify_maps_symbolic() -> bool {
    let mut env = HashMap::new();
    for (name, body) in MAP_DEFS {
        let p = parse_expr(body, &env).expect("pinned map definitions parse");
        env.insert(name.to_string(), p);
    }
    reduce_mod_square(&env["FWD"], "y1", &env["CUBIC"]).is_zero()
        && reduce_mod_square(&env["INV"], "y", &env["QUARTIC"]).is_zero()
}

/// Round trip `from_quartic ∘ to_quartic` on `m·G + t·T` for `|m| ≤ bound`.
pub fn verify_round_trip(bound: i64) -> bool {
    let e = e4_weierstrass();
    let (g, t) = (e4_generator(), e4_torsion());
    (-bound..=bound).all(|m| {
        [ECPoint::Infinity, t.clone()].iter().all(|tt| {
            let p = e.add(&e.mul(m, &g), tt);
            to_quartic(&p)
                .and_then(|(x, y)| from_quartic(&x, &y))
                .is_ok_and(|back| back == p)
        })
    })
}

/// Digits of `max(|u|, |v|)` along `m·G`, for height-growth checks.
pub fn digit_growth(ms: impl IntoIterator<Item = i64>) -> Result<Vec<(i64, usize)>> {
    ms.into_iter()
        .map(|m| {
            let p = quartic_transport(m)?;
            Ok((m, p.u.abs().max(p.v.abs()).to_string().len()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_points() {
        assert_eq!(quartic_transport(0).unwrap(), QuarticPoint::new(1, 2, 1));
        assert_eq!(quartic_transport(1).unwrap(), QuarticPoint::new(-1, 2, 1));
        assert_eq!(to_quartic_point(&e4_torsion()).unwrap(), QuarticPoint::new(-1, -2, 1));
        assert_eq!(to_quartic_point(&ECPoint::affine(2, 2)).unwrap(), QuarticPoint::new(-3, 14, 1));
        for m in -6..=6 {
            let p = quartic_transport(m).unwrap();
            assert!(p.on_e4() && p.is_primitive() && p.v.is_positive(), "m = {m}: {p}");
        }
    }

    #[test]
    fn maps() {
        assert!(verify_maps_symbolic());
        assert!(verify_round_trip(6));
        let e = e4_weierstrass();
        assert!(e.contains(&e4_generator()) && e.contains(&e4_torsion()));
        assert_eq!(e.torsion_order(&e4_torsion(), 10), Some(2));
        assert_eq!(e.torsion_order(&e4_generator(), 20), None);
    }

    #[test]
    fn growth() {
        let g = digit_growth([4, 8, 12, 16]).unwrap();
        assert!(g.windows(2).all(|w| w[0].1 < w[1].1), "{g:?}");
        assert_eq!(g[3].1, 46);
    }
}
