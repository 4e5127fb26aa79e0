use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use x116::arith::{factor, fundamental_discriminant, is_prime_u64, squarefree_part, FactorBudget};
use x116::ecq::{curve_e, curve_e_point, pi2_count, pz2_test, ECPoint};
use x116::quadfield::{factor_principal, ideal_mul, primes_above, QFieldElem, Splitting};
use x116::quadform::{class_group, class_number, compose, enumerate_reduced_naive, inverse, QuadForm};

const SEED: u64 = 0x0016_0005;

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

/// A fundamental discriminant in `[-4000, -3]`.
fn fund_disc() -> impl Strategy<Value = i64> {
    (1i64..=1000).prop_filter_map("not squarefree", |d| {
        let f = fundamental_discriminant(-d).ok()?;
        (f >= -4000).then_some(f)
    })
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn class_group_axioms(disc in fund_disc(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let cg = class_group(disc);
        let forms = &cg.reduced_forms;
        let (f, g, h) = (forms[i.index(forms.len())], forms[j.index(forms.len())], forms[k.index(forms.len())]);
        let e = QuadForm::principal(disc as i128);
        prop_assert_eq!(compose(f, e).unwrap(), f);
        prop_assert_eq!(compose(f, inverse(f)).unwrap(), e);
        prop_assert_eq!(compose(f, g).unwrap(), compose(g, f).unwrap());
        let lhs = compose(compose(f, g).unwrap(), h).unwrap();
        let rhs = compose(f, compose(g, h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(forms.contains(&lhs));
    }

    #[test]
    fn norm_is_multiplicative(disc in fund_disc(), a in -50i64..50, b in -50i64..50, c in -50i64..50, d in 1i64..50) {
        let x = QFieldElem::new(disc, rat(a, 1), rat(b, 1));
        let y = QFieldElem::new(disc, rat(c, d), rat(d, 7));
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.conj().norm(), x.norm());
    }

    #[test]
    fn ideal_norm_is_multiplicative(disc in fund_disc(), i in 0usize..8, j in 0usize..8) {
        let small = [2u64, 3, 5, 7, 11, 13, 17, 19];
        let p = primes_above(disc, small[i]);
        let q = primes_above(disc, small[j]);
        let (pp, qq) = (p.primes()[0], q.primes()[0]);
        let prod = ideal_mul(pp, qq).unwrap();
        prop_assert_eq!(prod.norm(), pp.norm() * qq.norm());
        let ns = p.primes().iter().map(|p| p.norm()).fold(BigRational::one(), |a, b| a * b);
        let expected = match p {
            Splitting::Ramified(_) => rat(small[i] as i64, 1),
            _ => rat(small[i] as i64 * small[i] as i64, 1),
        };
        prop_assert_eq!(ns, expected);
    }

    #[test]
    fn principal_factorization_has_element_norm(disc in fund_disc(), a in -40i64..40, b in 1i64..40) {
        let x = QFieldElem::from_omega_coords(disc, rat(a, 1), rat(b, 1));
        let f = factor_principal(&x, &FactorBudget::default()).unwrap();
        prop_assert_eq!(f.norm(), x.norm().abs());
        prop_assert_eq!(f.product().unwrap().norm(), x.norm().abs());
    }

    #[test]
    fn factor_reassembles(n in any::<i64>().prop_filter("nonzero", |n| *n != 0), k in 1u32..4) {
        let n = BigInt::from(n).pow(k) * 3;
        let f = factor(&n, &FactorBudget::default());
        prop_assert!(f.complete());
        prop_assert_eq!(f.value(), n);
        for (p, _) in &f.factors {
            prop_assert!(p.bits() > 64 || is_prime_u64(p.try_into().unwrap()));
        }
    }

    #[test]
    fn ec_group_law_is_associative(a in -8i64..8, b in -8i64..8, c in -8i64..8) {
        let e = curve_e();
        let p = curve_e_point();
        let pts: Vec<ECPoint> = [a, b, c].iter().map(|&m| e.mul(m, &p)).collect();
        let lhs = e.add(&e.add(&pts[0], &pts[1]), &pts[2]);
        let rhs = e.add(&pts[0], &e.add(&pts[1], &pts[2]));
        prop_assert!(e.contains(&lhs));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs, e.mul(a + b + c, &p));
    }

    #[test]
    fn miller_rabin_matches_trial_division(n in 0u64..2_000_000) {
        let trial = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(is_prime_u64(n), trial);
    }

    #[test]
    fn pz2_reassembles(n in 1i64..1_000_000) {
        let fb = FactorBudget::default();
        let n = BigInt::from(n);
        let sf = squarefree_part(&n, &fb).unwrap();
        let d_prime = is_prime_u64(u64::try_from(&sf.d).unwrap());
        match pz2_test(&n, &fb).unwrap() {
            Some((p, z)) => {
                prop_assert!(d_prime);
                prop_assert_eq!(&p * &z * &z, n);
            }
            None => prop_assert!(!d_prime),
        }
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn pi2_is_monotone_and_dominates_primes(n in 2u64..5000) {
        let (a, b) = (pi2_count(n).unwrap(), pi2_count(n + 1).unwrap());
        prop_assert!(a <= b);
        let primes = (2..n).filter(|&k| is_prime_u64(k)).count() as u64;
        prop_assert!(a >= primes);
    }
}

#[test]
fn class_number_matches_naive_enumeration() {
    for d in 3..=3000i64 {
        let Ok(disc) = fundamental_discriminant(-d) else { continue };
        if disc < -3000 {
            continue;
        }
        assert_eq!(class_number(disc), enumerate_reduced_naive(disc).len(), "disc {disc}");
    }
}
