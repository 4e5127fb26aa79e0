//! The modular curve X1(16), the function `g` whose divisor is five times a
//! cusp difference, and the class group pullback it induces on imaginary
//! quadratic points.
//!
//! Points are `(t, y)` on `y² = f16(t) = t(t² + 1)(t² + 2t − 1)`. For
//! `f16(t) < 0` the point is defined over an imaginary quadratic field, and
//! `(g(P))` is the fifth power of an ideal whose class has order 1 or 5.
//!
//! [`y16`] handles the auxiliary curve `y² = z⁶ + z⁵ − 5z³ + z + 1` and its
//! map to the `x`-line.

pub mod census;
pub mod curve;
pub mod pullback;
pub mod y16;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serializer;

pub use census::{census, imaginary_parameters, CensusItem, CensusSummary};
pub use curve::{f16_eval, h16_homogeneous, is_cusp, point_from_t, point_from_t_with, X16Point};
pub use pullback::{
    cl5_pullback, cl5_pullback_with, divisibility_check, divisibility_check_with, g_eval,
    g_eval_signed, g_norm, CensusRecord, PullbackResult,
};
pub use y16::{
    corollary15_check, corollary15_class_numbers, known_points, table1, verify_known_points,
    verify_table1, y16_membership, y16_x_image, y16_x_image_point, Table1Check, Table1Row,
    XImage, Y16Point, COROLLARY_D,
};

const JSON_SAFE: i64 = 1 << 53;

pub(crate) fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub(crate) fn ser_rationals<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

/// Integers beyond ±2⁵³ are written as strings so JSON readers keep them exact.
pub fn ser_bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(v) if v.abs() <= JSON_SAFE => s.serialize_i64(v),
        _ => s.collect_str(n),
    }
}
