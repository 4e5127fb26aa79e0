use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::modular::ext_gcd;
use crate::{Error, Result};

/// Positive definite binary quadratic form `a x² + b xy + c y²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl QuadForm {
    pub fn new(a: i128, b: i128, c: i128) -> Self {
        Self { a, b, c }
    }

    /// The form of discriminant `disc` with given `a`, `b`; `None` when
    /// `4a ∤ b² − disc`.
    pub fn from_ab(a: i128, b: i128, disc: i128) -> Option<Self> {
        let num = b * b - disc;
        (a > 0 && num % (4 * a) == 0).then(|| Self::new(a, b, num / (4 * a)))
    }

    pub fn disc(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// The identity class: `(1, δ, (δ − disc)/4)` with `δ = disc mod 2`.
    pub fn principal(disc: i128) -> Self {
        let b = disc.rem_euclid(2);
        Self::new(1, b, (b - disc) / 4)
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn is_principal(&self) -> bool {
        reduce(*self) == Self::principal(self.disc())
    }

    /// Evaluates the form at `(x, y)`.
    pub fn eval(&self, x: i128, y: i128) -> i128 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Moves `b` into `(−a, a]` by `x ↦ x + k y`.
fn normalize(f: QuadForm) -> QuadForm {
    let QuadForm { a, b, c } = f;
    if -a < b && b <= a {
        return f;
    }
    let k = Integer::div_floor(&(a - b), &(2 * a));
    QuadForm::new(a, b + 2 * a * k, a * k * k + b * k + c)
}

/// Gauss reduction to the unique reduced form in the proper class.
pub fn reduce(f: QuadForm) -> QuadForm {
    assert!(f.a > 0 && f.disc() < 0, "reduce expects a positive definite form, got {f}");
    let mut g = normalize(f);
    while g.a > g.c {
        g = normalize(QuadForm::new(g.c, -g.b, g.a));
    }
    if g.a == g.c && g.b < 0 {
        g.b = -g.b;
    }
    g
}

/// Dirichlet composition without the final reduction.
///
/// Returns `(d1, f3)`; as ideals, `I(f1)·I(f2) = d1 · I(f3)`, so `d1 = 1`
/// whenever both inputs are primitive with coprime `a`.
pub fn compose_unreduced(f1: QuadForm, f2: QuadForm) -> Result<(i128, QuadForm)> {
    let (d1x, d2x) = (f1.disc(), f2.disc());
    if d1x != d2x {
        return Err(Error::DiscriminantMismatch(
            i64::try_from(d1x).unwrap_or(i64::MIN),
            i64::try_from(d2x).unwrap_or(i64::MIN),
        ));
    }
    let (f1, f2) = if f1.a > f2.a { (f2, f1) } else { (f1, f2) };
    let s = (f1.b + f2.b) / 2;
    let n = f2.b - s;
    let (d, u, _) = ext_gcd(f2.a, f1.a);
    let y1 = u;
    let (d1, x2, y2) = if s % d == 0 {
        (d, 0, -1)
    } else {
        let (d1, u2, v2) = ext_gcd(s, d);
        (d1, u2, -v2)
    };
    let v1 = f1.a / d1;
    let v2 = f2.a / d1;
    let r = (y1 * y2 * n - x2 * f2.c).rem_euclid(v1);
    let b3 = f2.b + 2 * v2 * r;
    let a3 = v1 * v2;
    let c3 = (f2.c * d1 + r * (f2.b + v2 * r)) / v1;
    Ok((d1, QuadForm::new(a3, b3, c3)))
}

pub fn compose(f1: QuadForm, f2: QuadForm) -> Result<QuadForm> {
    compose_unreduced(f1, f2).map(|(_, f)| reduce(f))
}

pub fn inverse(f: QuadForm) -> QuadForm {
    reduce(QuadForm::new(f.a, -f.b, f.c))
}

pub fn pow(f: QuadForm, mut n: u64) -> QuadForm {
    let mut acc = QuadForm::principal(f.disc());
    let mut base = reduce(f);
    while n > 0 {
        if n & 1 == 1 {
            acc = compose(acc, base).expect("same discriminant");
        }
        n >>= 1;
        if n > 0 {
            base = compose(base, base).expect("same discriminant");
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions() {
        assert_eq!(reduce(QuadForm::new(1, 0, 1)), QuadForm::new(1, 0, 1));
        assert_eq!(reduce(QuadForm::new(4, 2, 1)), QuadForm::new(1, 0, 3));
        assert_eq!(reduce(QuadForm::new(2, 1, 2)), QuadForm::new(2, 1, 2));
        assert_eq!(reduce(QuadForm::new(2, -1, 2)), QuadForm::new(2, 1, 2));
        assert_eq!(reduce(QuadForm::new(3, -3, 5)), QuadForm::new(3, 3, 5));
    }

    #[test]
    fn composition_at_minus_15() {
        let f = QuadForm::new(2, 1, 2);
        assert_eq!(compose(f, f).unwrap(), QuadForm::new(1, 1, 4));
        assert_eq!(compose(QuadForm::principal(-15), f).unwrap(), f);
        assert_eq!(compose(f, inverse(f)).unwrap(), QuadForm::principal(-15));
    }

    #[test]
    fn mismatch_is_an_error() {
        let r = compose(QuadForm::new(1, 1, 4), QuadForm::new(1, 0, 1));
        assert_eq!(r, Err(Error::DiscriminantMismatch(-15, -4)));
    }

    #[test]
    fn powers_cycle() {
        // disc -47 has h = 5
        let f = QuadForm::new(2, 1, 6);
        assert_ne!(pow(f, 1), QuadForm::principal(-47));
        assert_eq!(pow(f, 5), QuadForm::principal(-47));
    }
}
