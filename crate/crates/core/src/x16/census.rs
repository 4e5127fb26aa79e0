use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use super::curve::{f16_eval, point_from_t_with, X16Point};
use super::pullback::{divisibility_check_with, CensusRecord};
use crate::arith::{fundamental_discriminant, FactorBudget};
use crate::quadform::class_number;
use crate::Error;

/// `t = r/s`, reduced, `s > 0`, `max(|r|, s) ≤ height`, with `f16(t) < 0`.
pub fn imaginary_parameters(height: u64) -> Vec<(i64, i64)> {
    let h = height as i64;
    let mut out: Vec<(i64, i64)> = (1..=h)
        .flat_map(|s| (-h..=h).map(move |r| (r, s)))
        .filter(|&(r, s)| r.gcd(&s) == 1)
        .filter(|&(r, s)| f16_eval(&BigRational::new(r.into(), s.into())).is_negative())
        .collect();
    out.sort_by_key(|&(r, s)| (r.abs() + s, r, s));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CensusItem {
    Record(CensusRecord),
    Failure {
        #[serde(serialize_with = "crate::x16::ser_rational")]
        t: BigRational,
        error: String,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub height: u64,
    pub records: usize,
    pub distinct_discs: usize,
    pub max_abs_disc: u64,
    /// Parameters with `10 ∤ h`.
    #[serde(serialize_with = "crate::x16::ser_rationals")]
    pub exceptions: Vec<BigRational>,
    /// Records breaking `2 | h`, `10 | h` away from Q(√−15), or `5 | h` when the class has order 5.
    #[serde(serialize_with = "crate::x16::ser_rationals")]
    pub violations: Vec<BigRational>,
    /// Parameters whose pulled-back class is trivial.
    #[serde(serialize_with = "crate::x16::ser_rationals")]
    pub order_one: Vec<BigRational>,
    pub failures: usize,
}

impl CensusSummary {
    pub fn complete(&self) -> bool {
        self.failures == 0
    }
}

fn violates(r: &CensusRecord) -> bool {
    !r.h.is_multiple_of(2) || (!r.div10 && r.d != -15) || (r.five_order == 5 && !r.h.is_multiple_of(5))
}

/// Run the height-bounded census. Items reach `sink` in `(|r|+s, r, s)` order.
pub fn census(height: u64, budget: &FactorBudget, mut sink: impl FnMut(&CensusItem)) -> CensusSummary {
    let params = imaginary_parameters(height);
    let points: Vec<Result<X16Point, Error>> = params
        .par_iter()
        .map(|&(r, s)| point_from_t_with(&BigRational::new(r.into(), s.into()), budget))
        .collect();

    let discs: BTreeSet<i64> = points
        .iter()
        .filter_map(|p| p.as_ref().ok())
        .filter_map(|p| crate::arith::squarefree::to_i64(&p.d).ok())
        .filter_map(|d| fundamental_discriminant(d).ok())
        .collect();
    let hs: HashMap<i64, u64> = discs.par_iter().map(|&d| (d, class_number(d) as u64)).collect();
    let h_of = |d: i64| hs.get(&d).copied().unwrap_or_else(|| class_number(d) as u64);

    let items: Vec<CensusItem> = params
        .par_iter()
        .zip(points.par_iter())
        .map(|(&(r, s), p)| {
            let t = BigRational::new(r.into(), s.into());
            match p.as_ref().map_err(Clone::clone).and_then(|p| divisibility_check_with(p, budget, &h_of)) {
                Ok(rec) => CensusItem::Record(rec),
                Err(e) => CensusItem::Failure { t, error: e.to_string() },
            }
        })
        .collect();

    let mut summary = CensusSummary { height, ..Default::default() };
    let mut seen = BTreeSet::new();
    for item in &items {
        sink(item);
        match item {
            CensusItem::Record(rec) => {
                summary.records += 1;
                seen.insert(rec.disc);
                summary.max_abs_disc = summary.max_abs_disc.max(rec.disc.unsigned_abs());
                if !rec.div10 {
                    summary.exceptions.push(rec.t.clone());
                }
                if violates(rec) {
                    summary.violations.push(rec.t.clone());
                }
                if rec.five_order == 1 {
                    summary.order_one.push(rec.t.clone());
                }
            }
            CensusItem::Failure { .. } => summary.failures += 1,
        }
    }
    summary.distinct_discs = seen.len();
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_census() {
        let mut n = 0;
        let s = census(10, &FactorBudget::default(), |_| n += 1);
        assert!(s.complete());
        assert_eq!(n, s.records);
        assert!(s.violations.is_empty());
        let ex: Vec<String> = s.exceptions.iter().map(|t| t.to_string()).collect();
        assert_eq!(ex, vec!["-3", "1/3"]);
    }

    #[test]
    fn ordering() {
        let p = imaginary_parameters(5);
        assert!(p.windows(2).all(|w| (w[0].0.abs() + w[0].1, w[0]) < (w[1].0.abs() + w[1].1, w[1])));
        assert!(p.iter().all(|&(r, s)| r.abs() <= 5 && s <= 5));
    }
}
