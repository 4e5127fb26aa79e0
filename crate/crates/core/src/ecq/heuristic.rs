use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::e4::{quartic_transport, QuarticPoint};
use crate::arith::{factor, is_probable_prime, squarefree_part, FactorBudget, DETERMINISTIC_LIMIT};
use crate::{Error, Result};

/// `Some((p, z))` with `n = p·z²` and `p` prime, or `None` when the
/// squarefree part of `n` is not prime.
pub fn pz2_test(n: &BigInt, budget: &FactorBudget) -> Result<Option<(BigInt, BigInt)>> {
    if !n.is_positive() {
        return Err(Error::InvalidInput(format!("pz2_test needs n > 0, got {n}")));
    }
    let sf = squarefree_part(n, budget)?;
    let is_prime = sf.fd.factors.len() == 1 && sf.fd.factors[0].1 == 1;
    Ok(is_prime.then_some((sf.d, sf.m)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum PzStatus {
    Hit {
        #[serde(serialize_with = "crate::x16::ser_bigint")]
        p: BigInt,
        #[serde(serialize_with = "crate::x16::ser_bigint")]
        z: BigInt,
        certified: bool,
    },
    NonHit,
    Untested { reason: String },
}

/// Classify `n` for the shape `p·z²` under a bounded factoring budget.
///
/// Values below `10¹²` always factor completely with the default budget. A
/// composite cofactor left over by the budget keeps the answer open unless the
/// known part already has an odd-exponent prime, in which case the cofactor
/// contributes a second one.
pub fn classify(n: &BigInt, budget: &FactorBudget) -> PzStatus {
    let f = factor(n, budget);
    let odd: Vec<&BigInt> = f.factors.iter().filter(|(_, e)| e % 2 == 1).map(|(p, _)| p).collect();
    let cof = f.cofactor.clone().unwrap_or_else(BigInt::one);
    if f.primes().any(|p| !cof.gcd(p).is_one()) {
        return PzStatus::Untested { reason: "cofactor shares a known prime".into() };
    }
    let cof_square = {
        let r = cof.sqrt();
        &r * &r == cof
    };
    if !cof_square {
        // The cofactor adds at least one odd-exponent prime of its own.
        return if odd.is_empty() {
            PzStatus::Untested { reason: format!("unfactored cofactor of {} digits", cof.to_string().len()) }
        } else {
            PzStatus::NonHit
        };
    }
    match odd.as_slice() {
        [p] => {
            let p = (*p).clone();
            let z = (n / &p).sqrt();
            let certified = p.to_u128().is_some_and(|q| q < DETERMINISTIC_LIMIT);
            PzStatus::Hit { p, z, certified }
        }
        _ => PzStatus::NonHit,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeuristicRecord {
    pub m: i64,
    pub u_digits: usize,
    pub v_digits: usize,
    pub value_digits: usize,
    #[serde(skip)]
    pub ln_value: LnValue,
    #[serde(flatten)]
    pub status: PzStatus,
}

/// `ln 2(u⁴ + v⁴)`, kept as bits to stay `Eq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LnValue(u64);

impl LnValue {
    fn of(n: &BigInt) -> Self {
        Self(ln_big(n).to_bits())
    }
    pub fn get(self) -> f64 {
        f64::from_bits(self.0)
    }
}

/// The hit line emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HitLine {
    pub m: i64,
    pub u_digits: usize,
    pub v_digits: usize,
    pub p_digits: usize,
    pub certified: bool,
}

impl HeuristicRecord {
    pub fn hit_line(&self) -> Option<HitLine> {
        match &self.status {
            PzStatus::Hit { p, certified, .. } => Some(HitLine {
                m: self.m,
                u_digits: self.u_digits,
                v_digits: self.v_digits,
                p_digits: p.to_string().len(),
                certified: *certified,
            }),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeuristicSummary {
    pub m_max: i64,
    pub tested: usize,
    pub hits: usize,
    pub certified: usize,
    pub probable: usize,
    pub untested: usize,
    /// `Σ 1/ln 2(u⁴ + v⁴)` over the searched `m`.
    pub predicted_mass: f64,
    /// Least-squares `c′` in `ln 2(u⁴ + v⁴) ≈ c′·m²`.
    pub fit_c: f64,
}

pub fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().map_or(f64::NAN, f64::ln) + shift as f64 * std::f64::consts::LN_2
}

fn record(m: i64, budget: &FactorBudget) -> Result<HeuristicRecord> {
    let p: QuarticPoint = quartic_transport(m)?;
    let n = p.h1_value();
    Ok(HeuristicRecord {
        m,
        u_digits: p.u.abs().to_string().len(),
        v_digits: p.v.to_string().len(),
        value_digits: n.to_string().len(),
        ln_value: LnValue::of(&n),
        status: classify(&n, budget),
    })
}

/// Tests `2(u⁴ + v⁴)` at `m·G` for `0 < |m| ≤ m_max`, ordered by `|m|` then `m`.
pub fn heuristic_search(m_max: i64, budget: &FactorBudget) -> Result<Vec<HeuristicRecord>> {
    let mut ms: Vec<i64> = (1..=m_max).flat_map(|m| [-m, m]).collect();
    ms.sort_by_key(|&m| (m.abs(), m));
    ms.par_iter().map(|&m| record(m, budget)).collect()
}

pub fn summarize(m_max: i64, records: &[HeuristicRecord]) -> HeuristicSummary {
    let count = |f: &dyn Fn(&PzStatus) -> bool| records.iter().filter(|r| f(&r.status)).count();
    let (mut num, mut den) = (0.0, 0.0);
    for r in records {
        let m2 = (r.m * r.m) as f64;
        num += m2 * r.ln_value.get();
        den += m2 * m2;
    }
    HeuristicSummary {
        m_max,
        tested: count(&|s| !matches!(s, PzStatus::Untested { .. })),
        hits: count(&|s| matches!(s, PzStatus::Hit { .. })),
        certified: count(&|s| matches!(s, PzStatus::Hit { certified: true, .. })),
        probable: count(&|s| matches!(s, PzStatus::Hit { certified: false, .. })),
        untested: count(&|s| matches!(s, PzStatus::Untested { .. })),
        predicted_mass: records.iter().map(|r| 1.0 / r.ln_value.get()).sum(),
        fit_c: if den > 0.0 { num / den } else { 0.0 },
    }
}

pub const EXAMPLE_U: &str = "1383308224231610113228232741369733180270315041";
pub const EXAMPLE_V: &str = "702229330665242264680897734882798122886724801";
/// `y / 2`, as printed.
pub const EXAMPLE_Y_HALF: &str = "1628757614642892188787231591748989191976556352157331289618343575391414712185591538941481919";
pub const EXAMPLE_Z: u32 = 2;
pub const EXAMPLE_P: &str = "1952407452317071515053844295033846348228960199811829529340588607801293099985989432086816250319968926645060130131776690437026712646211875708730116921012383862556104424064435799212481";
/// `(u : y : v) = ±16·G` up to the sign of `u` and `y`.
pub const EXAMPLE_MULTIPLE: i64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub gcd_one: bool,
    pub on_e4: bool,
    pub pz2_shape: bool,
    pub p_matches_printed: bool,
    pub p_digits: usize,
    pub p_probable_prime: bool,
    pub h16_relation: bool,
    pub transport_matches: bool,
}

impl ExampleReport {
    pub fn ok(&self) -> bool {
        self.gcd_one
            && self.on_e4
            && self.pz2_shape
            && self.p_matches_printed
            && self.p_digits == 181
            && self.p_probable_prime
            && self.h16_relation
            && self.transport_matches
    }
}

fn big(s: &str) -> BigInt {
    s.parse().expect("pinned decimal literal")
}

/// Checks the pinned example for the given `u`, `v` and the printed `y`, `z`, `p`.
pub fn check_example(u: &BigInt, v: &BigInt, rounds: u32) -> ExampleReport {
    let y: BigInt = big(EXAMPLE_Y_HALF) * 2;
    let z = BigInt::from(EXAMPLE_Z);
    let (r, s) = (u * u, v * v);
    let h1 = &r * &r + &s * &s;
    let p: BigInt = &h1 / 2;
    let h16 = &r * &s * &h1 * (&r * &r + &r * &s * 2 - &s * &s);
    let pt = QuarticPoint { u: u.clone(), y: y.clone(), v: v.clone() };
    let transport_matches = quartic_transport(EXAMPLE_MULTIPLE)
        .is_ok_and(|q| q.u.abs() == u.abs() && q.v == *v && q.y.abs() == y);
    ExampleReport {
        gcd_one: u.gcd(v).is_one(),
        on_e4: pt.on_e4(),
        pz2_shape: h1.is_even() && pt.h1_value() == &p * &z * &z,
        p_matches_printed: p == big(EXAMPLE_P),
        p_digits: p.to_string().len(),
        p_probable_prime: is_probable_prime(&p, rounds),
        h16_relation: &p * (&y * u * v).pow(2) == h16,
        transport_matches,
    }
}

pub fn verify_section6_example() -> ExampleReport {
    check_example(&big(EXAMPLE_U), &big(EXAMPLE_V), 40)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn pz2_small() {
        let fb = FactorBudget::default();
        assert_eq!(pz2_test(&b(8), &fb).unwrap(), Some((b(2), b(2))));
        assert_eq!(pz2_test(&b(70), &fb).unwrap(), None);
        assert_eq!(pz2_test(&b(4), &fb).unwrap(), None);
        assert_eq!(pz2_test(&b(1), &fb).unwrap(), None);
        assert_eq!(pz2_test(&b(12), &fb).unwrap(), Some((b(3), b(2))));
    }

    #[test]
    fn classify_without_full_factorization() {
        let fb = FactorBudget { trial_bound: 100, rho_iterations: 0, ..Default::default() };
        let n = b(2 * 1_000_003);
        assert_eq!(classify(&n, &fb), PzStatus::NonHit);
        let n = b(4 * 1_000_003);
        assert!(matches!(classify(&n, &fb), PzStatus::Hit { .. }));
        let n = b(4) * b(1_000_003) * b(1_000_033);
        assert!(matches!(classify(&n, &fb), PzStatus::Untested { .. }));
        let n = b(4) * b(1_000_003).pow(2) * 41;
        assert!(matches!(classify(&n, &fb), PzStatus::Hit { .. }));
    }

    #[test]
    fn first_hits() {
        let recs = heuristic_search(6, &FactorBudget::default()).unwrap();
        let hits: Vec<(i64, BigInt)> = recs
            .iter()
            .filter_map(|r| match &r.status {
                PzStatus::Hit { p, .. } => Some((r.m, p.clone())),
                _ => None,
            })
            .collect();
        let want = [(-1, 41), (-2, 49081), (2, 41), (-3, 1476087601), (3, 49081), (4, 1476087601)];
        assert_eq!(hits, want.map(|(m, p)| (m, b(p))).to_vec());
        let one = recs.iter().find(|r| r.m == 1).unwrap();
        assert_eq!(one.status, PzStatus::NonHit);
        let s = summarize(6, &recs);
        assert_eq!((s.hits, s.certified, s.untested), (6, 6, 0));
        assert!(s.fit_c > 0.0 && s.predicted_mass > 0.0);
    }

    #[test]
    fn mass_is_bounded() {
        let fb = FactorBudget { rho_iterations: 1000, ..Default::default() };
        let recs = heuristic_search(30, &fb).unwrap();
        let partial = |k: i64| summarize(k, &recs.iter().filter(|r| r.m.abs() <= k).cloned().collect::<Vec<_>>());
        let (m10, m30) = (partial(10).predicted_mass, partial(30).predicted_mass);
        assert!(m30 - m10 < 0.1, "{m10} {m30}");
        let c = partial(30).fit_c;
        assert!((c - 1.7322).abs() < 1e-3, "{c}");
    }

    #[test]
    fn pinned_example() {
        let r = verify_section6_example();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.p_digits, 181);
        let bad_u = big(EXAMPLE_U) + 1;
        assert!(!check_example(&bad_u, &big(EXAMPLE_V), 40).ok());
    }
}
