use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient ring of an [`MPoly`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Signed
    + Send
    + Sync
{
}

impl<T> Coeff for T where
    T: Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = T> + Signed + Send + Sync
{
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial. Variables are kept sorted and only those
/// that actually occur are retained, so structural equality is polynomial
/// equality.
#[derive(Debug, Clone, PartialEq)]
pub struct MPoly<C> {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, C>,
}

pub type MPolyZ = MPoly<BigInt>;
pub type MPolyQ = MPoly<BigRational>;

impl<C: Coeff> MPoly<C> {
    pub fn zero() -> Self {
        Self { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        Self { vars: Vec::new(), terms }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), C::one());
        Self { vars: vec![name.to_string()], terms }
    }

    /// Builds from `(coefficient, [(var, exp)])` pairs.
    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (C, Vec<(&'a str, u32)>)>) -> Self {
        let mut acc = Self::zero();
        for (c, powers) in terms {
            let mut t = Self::constant(c);
            for (v, e) in powers {
                t = &t * &Self::var(v).pow(e);
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Leading coefficient in the graded-lex order.
    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.values().next_back()
    }

    pub fn constant_term(&self) -> C {
        self.terms
            .iter()
            .find(|(m, _)| m.degree() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    fn from_parts(vars: Vec<String>, terms: BTreeMap<Monomial, C>) -> Self {
        let mut p = Self { vars, terms };
        p.compact();
        p
    }

    /// Drops zero coefficients and variables that no longer occur.
    fn compact(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return;
        }
        let vars = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(m, c)| {
                let e = m.0.iter().zip(&used).filter(|(_, &u)| u).map(|(e, _)| *e).collect();
                (Monomial(e), c)
            })
            .collect();
        self.vars = vars;
        self.terms = terms;
    }

    fn reindexed(&self, vars: &[String]) -> BTreeMap<Monomial, C> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("variable present in union"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; vars.len()];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect()
    }

    fn union_vars(&self, other: &Self) -> Vec<String> {
        let mut vars: Vec<String> = self.vars.iter().chain(&other.vars).cloned().collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn scale(&self, c: &C) -> Self {
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect();
        Self::from_parts(self.vars.clone(), terms)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect();
        MPoly::from_parts(self.vars.clone(), terms)
    }

    /// Replaces each bound variable by a polynomial; unbound variables stay.
    pub fn substitute(&self, bindings: &HashMap<String, MPoly<C>>) -> Self {
        let images: Vec<MPoly<C>> = self
            .vars
            .iter()
            .map(|v| bindings.get(v).cloned().unwrap_or_else(|| Self::var(v)))
            .collect();
        let mut cache: HashMap<(usize, u32), MPoly<C>> = HashMap::new();
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let p = cache.entry((i, e)).or_insert_with(|| images[i].pow(e));
                    t = &t * p;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Coefficients with respect to `var`, lowest power first.
    pub fn coefficients_in(&self, var: &str) -> Vec<Self> {
        let Some(i) = self.vars.iter().position(|v| v == var) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(var) as usize;
        let mut parts: Vec<BTreeMap<Monomial, C>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::take(&mut e[i]) as usize;
            parts[k].insert(Monomial(e), c.clone());
        }
        parts.into_iter().map(|t| Self::from_parts(self.vars.clone(), t)).collect()
    }
}

impl MPolyZ {
    pub fn int(n: i64) -> Self {
        Self::constant(BigInt::from(n))
    }

    pub fn to_q(&self) -> MPolyQ {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

impl MPolyQ {
    pub fn rational(r: BigRational) -> Self {
        Self::constant(r)
    }

    /// Evaluates with every variable bound; `None` if a variable is missing.
    pub fn eval(&self, point: &HashMap<String, BigRational>) -> Option<BigRational> {
        let vals: Vec<&BigRational> = self.vars.iter().map(|v| point.get(v)).collect::<Option<_>>()?;
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                t *= num_traits::pow(vals[i].clone(), e as usize);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Splits `self = content · primitive` with `primitive` integral, its
    /// coefficients coprime and its leading coefficient positive.
    pub fn primitive(&self) -> (MPolyZ, BigRational) {
        if self.is_zero() {
            return (MPolyZ::zero(), BigRational::zero());
        }
        let den = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if self.leading_coeff().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let terms = self
            .terms
            .keys()
            .cloned()
            .zip(ints.into_iter().map(|c| c / &g))
            .collect();
        (MPoly::from_parts(self.vars.clone(), terms), BigRational::new(g, den))
    }

    pub fn to_z(&self) -> Option<MPolyZ> {
        self.terms
            .values()
            .all(|c| c.is_integer())
            .then(|| self.map_coeffs(|c| c.to_integer()))
    }
}

impl<C: Coeff> Add for &MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: Self) -> MPoly<C> {
        let vars = self.union_vars(rhs);
        let mut terms = self.reindexed(&vars);
        for (m, c) in rhs.reindexed(&vars) {
            match terms.get_mut(&m) {
                Some(x) => *x = x.clone() + c,
                None => {
                    terms.insert(m, c);
                }
            }
        }
        MPoly::from_parts(vars, terms)
    }
}

impl<C: Coeff> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Coeff> Sub for &MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: Self) -> MPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Coeff> Mul for &MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: Self) -> MPoly<C> {
        let vars = self.union_vars(rhs);
        let a = self.reindexed(&vars);
        let b = rhs.reindexed(&vars);
        let mut terms: BTreeMap<Monomial, C> = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let e = Monomial(ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect());
                let prod = ca.clone() * cb.clone();
                match terms.get_mut(&e) {
                    Some(x) => *x = x.clone() + prod,
                    None => {
                        terms.insert(e, prod);
                    }
                }
            }
        }
        MPoly::from_parts(vars, terms)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl<C: Coeff> $tr for MPoly<C> {
            type Output = MPoly<C>;
            fn $f(self, rhs: Self) -> MPoly<C> {
                (&self).$f(&rhs)
            }
        }
        impl<C: Coeff> $tr<&MPoly<C>> for MPoly<C> {
            type Output = MPoly<C>;
            fn $f(self, rhs: &MPoly<C>) -> MPoly<C> {
                (&self).$f(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<C: Coeff> Neg for MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let powers: Vec<String> = m
                .0
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if powers.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", powers.join("*"))?;
            } else {
                write!(f, "{mag}*{}", powers.join("*"))?;
            }
        }
        Ok(())
    }
}

pub fn mp_arith<C: Coeff>(lhs: &MPoly<C>, rhs: &MPoly<C>, op: ArithOp) -> MPoly<C> {
    match op {
        ArithOp::Add => lhs + rhs,
        ArithOp::Sub => lhs - rhs,
        ArithOp::Mul => lhs * rhs,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Substitutes over Q and returns `(primitive part, content)`.
pub fn mp_substitute(p: &MPolyZ, bindings: &HashMap<String, MPolyQ>) -> (MPolyZ, BigRational) {
    p.to_q().substitute(bindings).primitive()
}

pub fn verify_identity<C: Coeff>(lhs: &MPoly<C>, rhs: &MPoly<C>) -> bool {
    (lhs - rhs).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(name: &str) -> MPolyZ {
        MPolyZ::var(name)
    }

    #[test]
    fn cancellation_drops_variables() {
        let x = z("x");
        let p = &(&x + &MPolyZ::int(1)) - &(&x + &MPolyZ::int(1));
        assert!(p.is_zero());
        assert_eq!(p, MPolyZ::zero());
        let q = &(&x + &MPolyZ::int(3)) - &x;
        assert_eq!(q, MPolyZ::int(3));
        assert!(q.vars().is_empty());
    }

    #[test]
    fn coprimality_identity() {
        let (r, s) = (z("r"), z("s"));
        let h1 = &r * &r + &s * &s;
        let h2 = &(&r * &r + &(&MPolyZ::int(2) * &(&r * &s))) - &(&s * &s);
        let lhs = MPolyZ::int(4) * r.pow(3);
        let rhs = &(&(&MPolyZ::int(3) * &r) - &s) * &h1 + &(&r - &s) * &h2;
        assert!(verify_identity(&lhs, &rhs));
        assert!(!verify_identity(&r.pow(2), &s.pow(2)));
    }

    #[test]
    fn display_and_order() {
        let (r, s) = (z("r"), z("s"));
        let p = &(&r.pow(2) - &(&MPolyZ::int(3) * &s)) + &MPolyZ::int(-1);
        assert_eq!(p.to_string(), "r^2 - 3*s - 1");
    }

    #[test]
    fn substitution_returns_content() {
        let v = MPolyQ::var("v");
        let mut b = HashMap::new();
        b.insert("x".to_string(), v.scale(&BigRational::new(1.into(), 2.into())));
        let p = &(&z("x").pow(2) * &MPolyZ::int(-8)) + &MPolyZ::int(4);
        let (prim, content) = mp_substitute(&p, &b);
        // -2v² + 4 = -2·(v² - 2)
        assert_eq!(prim.to_string(), "v^2 - 2");
        assert_eq!(content, BigRational::from_integer((-2).into()));
    }

    #[test]
    fn coefficient_extraction() {
        let (x, y) = (z("x"), z("y"));
        let p = &(&x.pow(2) * &y) + &(&MPolyZ::int(3) * &y.pow(3));
        let cs = p.coefficients_in("y");
        assert_eq!(cs.len(), 4);
        assert_eq!(cs[1], x.pow(2));
        assert_eq!(cs[3], MPolyZ::int(3));
    }
}
