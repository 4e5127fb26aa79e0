use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::enumerate::enumerate_reduced;
use super::form::{compose, pow, QuadForm};
use crate::arith::{factor, FactorBudget, SpfSieve};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct ClassGroup {
    pub disc: i64,
    pub reduced_forms: Vec<QuadForm>,
    pub h: u64,
    pub elementary_divisors: Vec<u64>,
}

fn prime_factors(n: u64) -> Vec<(u64, u32)> {
    if n < 2 {
        return Vec::new();
    }
    SpfSieve::new(n as usize).factor(n as usize)
}

impl ClassGroup {
    pub fn new(disc: i64) -> Self {
        let reduced_forms = enumerate_reduced(disc);
        let h = reduced_forms.len() as u64;
        let mut cg = Self { disc, reduced_forms, h, elementary_divisors: Vec::new() };
        cg.elementary_divisors = group_structure(&cg);
        cg
    }

    pub fn principal(&self) -> QuadForm {
        QuadForm::principal(self.disc as i128)
    }

    /// Order of the class of `f`, which must have this discriminant.
    pub fn order_of(&self, f: QuadForm) -> u64 {
        element_order(f, self.h)
    }

    pub fn two_rank(&self) -> u32 {
        self.elementary_divisors.iter().filter(|d| *d % 2 == 0).count() as u32
    }

    pub fn p_rank(&self, p: u64) -> u32 {
        self.elementary_divisors.iter().filter(|d| *d % p == 0).count() as u32
    }
}

fn element_order(f: QuadForm, h: u64) -> u64 {
    let id = QuadForm::principal(f.disc());
    let mut ord = h;
    for (p, _) in prime_factors(h) {
        while ord.is_multiple_of(p) && pow(f, ord / p) == id {
            ord /= p;
        }
    }
    ord
}

/// Invariant factors `d1 | d2 | …` of the class group, trivial ones omitted.
///
/// For each prime `p | h` the counts `#{x : x^(p^k) = 1}` determine the
/// partition of the Sylow `p`-subgroup; the partitions are then merged.
pub fn group_structure(cg: &ClassGroup) -> Vec<u64> {
    let orders: Vec<u64> = cg.reduced_forms.iter().map(|&f| element_order(f, cg.h)).collect();
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for (p, e) in prime_factors(cg.h) {
        // parts[k] = number of cyclic factors of order ≥ p^(k+1)
        let mut counts = Vec::new();
        let mut pk = 1u64;
        for _ in 0..=e {
            counts.push(orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64);
            pk *= p;
        }
        let mut sizes: Vec<u64> = Vec::new();
        for k in 0..e as usize {
            let mut ratio = counts[k + 1] / counts[k];
            let mut rank = 0;
            while ratio > 1 {
                ratio /= p;
                rank += 1;
            }
            for slot in 0..rank {
                if slot < sizes.len() {
                    sizes[slot] *= p;
                } else {
                    sizes.push(p);
                }
            }
        }
        columns.push(sizes);
    }
    let width = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut divisors: Vec<u64> = (0..width)
        .map(|i| columns.iter().map(|c| c.get(i).copied().unwrap_or(1)).product())
        .collect();
    divisors.sort_unstable();
    divisors
}

pub fn class_group(disc: i64) -> ClassGroup {
    ClassGroup::new(disc)
}

/// Genus count of the 2-rank for squarefree `d < 0`: one less than the number
/// of distinct primes dividing the discriminant of Q(√d).
pub fn two_rank_genus(d: i64) -> Result<u32> {
    let primes = discriminant_primes(d)?;
    Ok(primes.saturating_sub(1))
}

fn discriminant_primes(d: i64) -> Result<u32> {
    if d >= 0 {
        return Err(Error::InvalidInput(format!("{d} is not negative")));
    }
    let f = factor(&BigInt::from(d), &FactorBudget::default());
    if let Some(c) = f.cofactor {
        return Err(Error::IncompleteFactorization(c));
    }
    if f.factors.iter().any(|(_, e)| *e > 1) {
        return Err(Error::NotSquarefree(BigInt::from(d)));
    }
    let extra_two = u32::from(d.rem_euclid(4) == 3);
    Ok(f.factors.len() as u32 + extra_two)
}

/// The count `n − 1` with `n` the number of primes dividing `d` itself.
/// Differs from [`two_rank_genus`] exactly when `d ≡ 3 mod 4`.
pub fn two_rank_from_d(d: i64) -> Result<u32> {
    let f = factor(&BigInt::from(d), &FactorBudget::default());
    if let Some(c) = f.cofactor {
        return Err(Error::IncompleteFactorization(c));
    }
    Ok((f.factors.len() as u32).saturating_sub(1))
}

/// Table from each reduced form to its index, for repeated lookups.
pub fn form_index(cg: &ClassGroup) -> HashMap<QuadForm, usize> {
    cg.reduced_forms.iter().enumerate().map(|(i, f)| (*f, i)).collect()
}

/// Composition closed over the enumerated forms; `None` if some product
/// falls outside the list.
pub fn multiplication_table(cg: &ClassGroup) -> Option<Vec<Vec<usize>>> {
    let idx = form_index(cg);
    cg.reduced_forms
        .iter()
        .map(|&f| {
            cg.reduced_forms
                .iter()
                .map(|&g| compose(f, g).ok().and_then(|p| idx.get(&p).copied()))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structures() {
        assert_eq!(ClassGroup::new(-15).elementary_divisors, vec![2]);
        assert!(ClassGroup::new(-4).elementary_divisors.is_empty());
        let g = ClassGroup::new(-8120);
        assert_eq!(g.h, 40);
        assert_eq!(g.elementary_divisors.iter().product::<u64>(), 40);
        assert_eq!(g.p_rank(5), 1);
        assert_eq!(g.two_rank(), 3);
        assert_eq!(ClassGroup::new(-455).elementary_divisors, vec![2, 10]);
    }

    #[test]
    fn genus_counts() {
        assert_eq!(two_rank_genus(-15), Ok(1));
        assert_eq!(two_rank_genus(-7), Ok(0));
        assert_eq!(two_rank_genus(-2030), Ok(3));
        assert_eq!(two_rank_genus(-5), Ok(1));
        assert_eq!(two_rank_from_d(-5), Ok(0));
        assert!(two_rank_genus(-12).is_err());
    }

    #[test]
    fn table_is_closed() {
        let g = ClassGroup::new(-8120);
        let t = multiplication_table(&g).expect("closed");
        assert_eq!(t.len(), 40);
    }
}
