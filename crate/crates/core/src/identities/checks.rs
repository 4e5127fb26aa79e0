use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{ClaimKind, Outcome};
use crate::poly::{upoly_mul, verify_identity, MPolyQ, NFElem, UPolyNF, UPolyQ};

/// One verifiable statement of the registry.
pub trait ClaimCheck: Send + Sync {
    fn id(&self) -> &str;
    fn kind(&self) -> ClaimKind;
    fn check(&self) -> Outcome;
}

pub struct IdentityClaim {
    pub id: String,
    pub lhs: MPolyQ,
    pub rhs: MPolyQ,
}

impl ClaimCheck for IdentityClaim {
    fn id(&self) -> &str {
        &self.id
    }
    fn kind(&self) -> ClaimKind {
        ClaimKind::Identity
    }
    fn check(&self) -> Outcome {
        if verify_identity(&self.lhs, &self.rhs) {
            Outcome::pass("lhs - rhs = 0")
        } else {
            Outcome::fail(format!("lhs - rhs = {}", &self.lhs - &self.rhs))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignSpec {
    Plus,
    Minus,
    Either,
}

pub struct SubstitutionClaim {
    pub id: String,
    pub expr: MPolyQ,
    pub stages: Vec<HashMap<String, MPolyQ>>,
    pub root: MPolyQ,
    pub sign: SignSpec,
    pub target: MPolyQ,
}

impl SubstitutionClaim {
    pub fn expand(&self) -> MPolyQ {
        self.stages.iter().fold(self.expr.clone(), |e, b| e.substitute(b))
    }
}

impl ClaimCheck for SubstitutionClaim {
    fn id(&self) -> &str {
        &self.id
    }
    fn kind(&self) -> ClaimKind {
        ClaimKind::Substitution
    }
    fn check(&self) -> Outcome {
        let got = self.expand();
        let want = &(&self.root * &self.root) * &self.target;
        let plus = got == want;
        let minus = got == -&want;
        let ok = match self.sign {
            SignSpec::Plus => plus,
            SignSpec::Minus => minus,
            SignSpec::Either => plus || minus,
        };
        let (_, content) = got.primitive();
        let branch = if plus { "+" } else if minus { "-" } else { "none" };
        let msg = format!("branch {branch}, root ({}), content {content}", self.root);
        if ok {
            Outcome::pass(msg)
        } else {
            Outcome::fail(format!("{msg}; expansion {got}"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Restriction {
    All,
    /// At least one of the named variables odd, i.e. `2 ∤ gcd`. Applies to
    /// a side only when the side ranges over all of them.
    NotAllEven(Vec<String>),
}

impl Restriction {
    fn admits(&self, vars: &[String], vals: &[u64]) -> bool {
        match self {
            Restriction::All => true,
            Restriction::NotAllEven(names) => {
                let picked: Option<Vec<u64>> =
                    names.iter().map(|n| vars.iter().position(|v| v == n).map(|i| vals[i])).collect();
                picked.is_none_or(|p| p.iter().any(|v| v % 2 == 1))
            }
        }
    }
}

pub struct Side {
    pub expr: MPolyQ,
    pub vars: Vec<String>,
    pub expected: Option<BTreeSet<u64>>,
}

pub struct CongruenceClaim {
    pub id: String,
    pub modulus: u64,
    pub restriction: Restriction,
    pub lhs: Side,
    pub rhs: Option<Side>,
    pub avoid: BTreeSet<u64>,
}

/// Residues of `expr` mod `modulus` over all assignments of `vars` in Z/modulus.
pub fn residue_set(expr: &MPolyQ, vars: &[String], modulus: u64, restriction: &Restriction) -> BTreeSet<u64> {
    let m = BigInt::from(modulus);
    let total = (modulus as usize).pow(vars.len() as u32);
    let mut out = BTreeSet::new();
    for idx in 0..total {
        let mut rest = idx;
        let vals: Vec<u64> = (0..vars.len())
            .map(|_| {
                let v = rest % modulus as usize;
                rest /= modulus as usize;
                v as u64
            })
            .collect();
        if !restriction.admits(vars, &vals) {
            continue;
        }
        let point = vars
            .iter()
            .zip(&vals)
            .map(|(k, &v)| (k.clone(), BigRational::from_integer(v.into())))
            .collect();
        let Some(val) = expr.eval(&point) else { continue };
        if !val.is_integer() {
            continue;
        }
        let r = val.to_integer().mod_floor(&m);
        out.insert(r.try_into().expect("residue below modulus"));
    }
    out
}

fn fmt_set(s: &BTreeSet<u64>) -> String {
    let v: Vec<String> = s.iter().map(u64::to_string).collect();
    format!("{{{}}}", v.join(","))
}

impl ClaimCheck for CongruenceClaim {
    fn id(&self) -> &str {
        &self.id
    }
    fn kind(&self) -> ClaimKind {
        ClaimKind::Congruence
    }
    fn check(&self) -> Outcome {
        let lhs = residue_set(&self.lhs.expr, &self.lhs.vars, self.modulus, &self.restriction);
        let mut problems = Vec::new();
        if self.lhs.expected.as_ref().is_some_and(|e| e != &lhs) {
            problems.push(format!("lhs residues {}", fmt_set(&lhs)));
        }
        let mut msg = format!("mod {}: lhs {}", self.modulus, fmt_set(&lhs));
        if let Some(side) = &self.rhs {
            let rhs = residue_set(&side.expr, &side.vars, self.modulus, &self.restriction);
            msg.push_str(&format!(", rhs {}", fmt_set(&rhs)));
            if side.expected.as_ref().is_some_and(|e| e != &rhs) {
                problems.push(format!("rhs residues {}", fmt_set(&rhs)));
            }
            if !lhs.is_disjoint(&rhs) {
                problems.push(format!("overlap {}", fmt_set(&lhs.intersection(&rhs).copied().collect())));
            }
        }
        if !lhs.is_disjoint(&self.avoid) {
            problems.push(format!("hits {}", fmt_set(&self.avoid)));
        }
        if problems.is_empty() {
            Outcome::pass(msg)
        } else {
            Outcome::fail(format!("{msg}; {}", problems.join("; ")))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurvePoint {
    Affine(HashMap<String, BigRational>),
    /// Points at infinity of `y² = rhs(var)`.
    Infinity,
}

pub struct MembershipClaim {
    pub id: String,
    pub lhs: MPolyQ,
    pub rhs: MPolyQ,
    pub var: Option<String>,
    pub points: Vec<CurvePoint>,
}

fn is_rational_square(q: &BigRational) -> bool {
    if q.is_negative() {
        return false;
    }
    let sq = |n: &BigInt| n.sqrt().pow(2) == *n;
    sq(q.numer()) && sq(q.denom())
}

impl MembershipClaim {
    fn holds(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Affine(vals) => {
                let diff = &self.lhs - &self.rhs;
                diff.eval(vals).is_some_and(|d| d.is_zero())
            }
            CurvePoint::Infinity => {
                // The smooth model has a rational point at infinity when the
                // degree is odd or the leading coefficient is a square.
                let Some(var) = &self.var else { return false };
                let deg = self.rhs.degree_in(var);
                let lead = self.rhs.coefficients_in(var).pop().and_then(|c| c.eval(&HashMap::new()));
                deg % 2 == 1 || lead.is_some_and(|c| is_rational_square(&c))
            }
        }
    }
}

impl ClaimCheck for MembershipClaim {
    fn id(&self) -> &str {
        &self.id
    }
    fn kind(&self) -> ClaimKind {
        ClaimKind::Membership
    }
    fn check(&self) -> Outcome {
        let bad: Vec<usize> = (0..self.points.len()).filter(|&i| !self.holds(&self.points[i])).collect();
        if bad.is_empty() {
            Outcome::pass(format!("{} points on curve", self.points.len()))
        } else {
            Outcome::fail(format!("points {bad:?} not on curve"))
        }
    }
}

pub struct NfProductClaim {
    pub id: String,
    pub minpoly: UPolyQ,
    pub gen: String,
    pub var: String,
    pub factors: Vec<MPolyQ>,
    pub target: MPolyQ,
}

impl NfProductClaim {
    fn to_nf(&self, p: &MPolyQ, m: &Arc<UPolyQ>) -> Option<UPolyNF> {
        let coeffs = p
            .coefficients_in(&self.var)
            .iter()
            .map(|c| UPolyQ::from_mpoly(c, &self.gen).map(|u| NFElem::new(m, u)))
            .collect::<Option<Vec<_>>>()?;
        Some(UPolyNF::new(coeffs))
    }

    pub fn product(&self) -> Option<UPolyQ> {
        let m = Arc::new(self.minpoly.clone());
        let mut acc = UPolyNF::new(vec![NFElem::rational(&m, BigRational::from_integer(1.into()))]);
        for f in &self.factors {
            acc = upoly_mul(&acc, &self.to_nf(f, &m)?);
        }
        acc.to_rational()
    }
}

impl ClaimCheck for NfProductClaim {
    fn id(&self) -> &str {
        &self.id
    }
    fn kind(&self) -> ClaimKind {
        ClaimKind::NfProduct
    }
    fn check(&self) -> Outcome {
        let want = UPolyQ::from_mpoly(&self.target, &self.var);
        match (self.product(), want) {
            (Some(got), Some(want)) if got == want => Outcome::pass(format!("product = {got}")),
            (Some(got), _) => Outcome::fail(format!("product = {got}")),
            (None, _) => Outcome::fail("product has irrational coefficients"),
        }
    }
}

pub struct ExternalClaim {
    pub id: String,
    pub reference: String,
}

impl ClaimCheck for ExternalClaim {
    fn id(&self) -> &str {
        &self.id
    }
    fn kind(&self) -> ClaimKind {
        ClaimKind::External
    }
    fn check(&self) -> Outcome {
        Outcome::external(self.reference.clone())
    }
}

/// `y²` residues mod `m`; used to cross-check congruence payloads.
pub fn squares_mod(m: u64) -> BTreeSet<u64> {
    (0..m).map(|y| y * y % m).collect()
}
