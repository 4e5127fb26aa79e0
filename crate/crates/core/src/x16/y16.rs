use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::curve::{f16_eval, is_cusp};
use crate::arith::fundamental_discriminant;
use crate::poly::UPolyQ;
use crate::quadform::class_number;
use crate::{Error, Result};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `F(z) = z⁶ + z⁵ − 5z³ + z + 1`, lowest degree first.
fn y16_rhs() -> UPolyQ {
    UPolyQ::from_ints(&[1, 1, 0, -5, 0, 1, 1])
}

// h(z, y) + 1 = (A(z)·y + B(z)) / D(z)
fn map_a() -> UPolyQ {
    UPolyQ::from_ints(&[2, -6, 2])
}

fn map_b() -> UPolyQ {
    UPolyQ::from_ints(&[-2, -10, 10])
}

fn map_d() -> UPolyQ {
    UPolyQ::from_ints(&[-3, -5, 5, 5, -5, 1])
}

/// A rational point of the smooth model of `y² = F(z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Y16Point {
    Affine { z: BigRational, y: BigRational },
    /// The point `(1 : sign : 0)` with `y/z³ → sign`.
    Infinity { sign: i8 },
}

impl Y16Point {
    pub fn affine(z: BigRational, y: BigRational) -> Self {
        Y16Point::Affine { z, y }
    }
}

impl fmt::Display for Y16Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Y16Point::Affine { z, y } => write!(f, "({z}, {y})"),
            Y16Point::Infinity { sign } => write!(f, "(1 : {sign} : 0)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum XImage {
    Finite(#[serde(serialize_with = "crate::x16::ser_rational")] BigRational),
    Infinity,
}

impl fmt::Display for XImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XImage::Finite(x) => write!(f, "{x}"),
            XImage::Infinity => write!(f, "inf"),
        }
    }
}

pub fn y16_membership(z: &BigRational, y: &BigRational) -> bool {
    y * y == y16_rhs().eval(z)
}

pub fn y16_x_image(z: &BigRational, y: &BigRational) -> Result<XImage> {
    if !y16_membership(z, y) {
        return Err(Error::NotOnCurve);
    }
    let (a, b, d) = (map_a(), map_b(), map_d());
    let num = a.eval(z) * y + b.eval(z);
    let den = d.eval(z);
    if !den.is_zero() {
        return Ok(XImage::Finite(num / den - q(1)));
    }
    if !num.is_zero() {
        return Ok(XImage::Infinity);
    }
    // 0/0: (Ay + B)/D = (A²F − B²) / (D·(Ay − B)) on the curve; cancel the
    // common factor of A²F − B² and D before evaluating.
    let p = &(&(&a * &a) * &y16_rhs()) - &(&b * &b);
    let g = p.gcd(&d);
    let (p1, _) = p.divrem(&g);
    let (d1, _) = d.divrem(&g);
    let top = p1.eval(z);
    let bottom = d1.eval(z) * (a.eval(z) * y - b.eval(z));
    match (top.is_zero(), bottom.is_zero()) {
        (_, false) => Ok(XImage::Finite(top / bottom - q(1))),
        (false, true) => Ok(XImage::Infinity),
        (true, true) => Err(Error::MapUndefined),
    }
}

pub fn y16_x_image_point(p: &Y16Point) -> Result<XImage> {
    match p {
        Y16Point::Affine { z, y } => y16_x_image(z, y),
        Y16Point::Infinity { sign } => {
            // deg D = deg A + 3 and y ~ sign·z³, so only leading terms survive.
            let v = map_a().lead() * q(*sign as i64) / map_d().lead();
            Ok(XImage::Finite(v - q(1)))
        }
    }
}

/// The eight known rational points: six affine and two at infinity.
pub fn known_points() -> Vec<Y16Point> {
    let aff = |z: BigRational, y: BigRational| Y16Point::affine(z, y);
    vec![
        Y16Point::Infinity { sign: 1 },
        aff(q(0), q(1)),
        aff(q(3), q(29)),
        aff(r(1, 3), r(29, 27)),
        Y16Point::Infinity { sign: -1 },
        aff(q(0), q(-1)),
        aff(q(3), q(-29)),
        aff(r(1, 3), r(-29, 27)),
    ]
}

pub fn verify_known_points() -> bool {
    known_points().iter().all(|p| match p {
        Y16Point::Affine { z, y } => y16_membership(z, y),
        Y16Point::Infinity { .. } => y16_rhs().lead().is_one(),
    })
}

/// One row of the pinned table: a point, its image `x`, and `y = ±c·√d`
/// on `y² = f16(x)` with `d` squarefree (`d = 1` for Q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub point: Y16Point,
    pub image: XImage,
    pub y_coeff: Option<BigRational>,
    pub d: i64,
    pub class_number: u64,
}

pub fn table1() -> Vec<Table1Row> {
    let pts = known_points();
    let row = |i: usize, image: XImage, c: Option<BigRational>, d: i64, h: u64| Table1Row {
        point: pts[i].clone(),
        image,
        y_coeff: c,
        d,
        class_number: h,
    };
    use XImage::{Finite as F, Infinity as Inf};
    vec![
        row(0, F(q(1)), Some(q(2)), 1, 1),
        row(1, F(q(-1)), Some(q(2)), 1, 1),
        row(2, Inf, None, 1, 1),
        row(3, F(q(0)), Some(q(0)), 1, 1),
        row(4, F(q(-3)), Some(q(2)), -15, 2),
        row(5, F(r(1, 3)), Some(r(2, 27)), -15, 2),
        row(6, F(r(-242, 29)), Some(r(94721, 24389)), -2030, 40),
        row(7, F(r(29, 242)), Some(r(8611, 1288408)), -2030, 40),
    ]
}

/// Outcome of recomputing one row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Check {
    pub point: String,
    pub image: XImage,
    pub image_ok: bool,
    pub y_ok: bool,
    pub h: u64,
    pub h_ok: bool,
    pub cusp: bool,
}

impl Table1Check {
    pub fn ok(&self) -> bool {
        self.image_ok && self.y_ok && self.h_ok
    }
}

pub fn verify_table1() -> Result<Vec<Table1Check>> {
    table1()
        .into_iter()
        .map(|row| {
            let image = y16_x_image_point(&row.point)?;
            let (y_ok, cusp) = match (&image, &row.y_coeff) {
                (XImage::Finite(x), Some(c)) => (f16_eval(x) == c * c * q(row.d), is_cusp(x)),
                (XImage::Infinity, None) => (true, true),
                _ => (false, false),
            };
            let h = if row.d == 1 { 1 } else { class_number(fundamental_discriminant(row.d)?) as u64 };
            Ok(Table1Check {
                point: row.point.to_string(),
                image_ok: image == row.image,
                image,
                y_ok,
                h,
                h_ok: h == row.class_number,
                cusp,
            })
        })
        .collect()
}

/// The `d` values whose fields are checked for `5 ∤ h`.
pub const COROLLARY_D: [i64; 8] = [-7161, -6711, -6503, -6095, -6005, -4847, -3503, -3199];

/// `(d, disc, h)` for each entry of [`COROLLARY_D`].
pub fn corollary15_class_numbers() -> Result<Vec<(i64, i64, u64)>> {
    COROLLARY_D
        .iter()
        .map(|&d| {
            let disc = fundamental_discriminant(d)?;
            Ok((d, disc, class_number(disc) as u64))
        })
        .collect()
}

pub fn corollary15_check() -> Result<bool> {
    Ok(corollary15_class_numbers()?.iter().all(|&(_, _, h)| h % 5 != 0 && h > 0))
}

/// Whether `p` is a point of `y² = F(z)` or one of the two points at infinity.
pub fn on_y16(p: &Y16Point) -> bool {
    match p {
        Y16Point::Affine { z, y } => y16_membership(z, y),
        Y16Point::Infinity { sign } => sign.abs() == 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn images() {
        let got: Vec<XImage> = known_points().iter().map(|p| y16_x_image_point(p).unwrap()).collect();
        let want: Vec<XImage> = table1().into_iter().map(|r| r.image).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn table_rows() {
        let checks = verify_table1().unwrap();
        assert!(checks.iter().all(Table1Check::ok), "{checks:?}");
        assert_eq!(checks.iter().filter(|c| c.cusp).count(), 4);
    }

    #[test]
    fn off_curve() {
        assert_eq!(y16_x_image(&q(2), &q(1)), Err(Error::NotOnCurve));
        assert!(verify_known_points());
    }

    #[test]
    fn corollary_fields() {
        let hs: Vec<u64> = corollary15_class_numbers().unwrap().iter().map(|t| t.2).collect();
        assert_eq!(hs, vec![48, 74, 82, 84, 104, 74, 52, 32]);
        assert!(corollary15_check().unwrap());
    }
}
