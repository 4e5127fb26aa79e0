use num_bigint::BigInt;
use num_rational::BigRational;

use x116::arith::FactorBudget;
use x116::x16::{census, imaginary_parameters, CensusItem};

fn t(r: i64, s: i64) -> BigRational {
    BigRational::new(BigInt::from(r), BigInt::from(s))
}

#[test]
fn height_ten_exceptions_are_the_sqrt_minus_15_points() {
    let mut items = Vec::new();
    let s = census(10, &FactorBudget::default(), |i| items.push(i.clone()));
    assert_eq!(s.exceptions, vec![t(-3, 1), t(1, 3)]);
    assert!(s.violations.is_empty());
    assert_eq!(s.failures, 0);
    assert_eq!(items.len(), s.records);
    for item in &items {
        let CensusItem::Record(r) = item else { panic!("{item:?}") };
        assert_eq!(r.h % 2, 0);
        assert!(r.div10 || r.d == -15, "{r:?}");
    }
}

#[test]
fn sink_order_matches_parameter_order() {
    let params = imaginary_parameters(12);
    let mut seen = Vec::new();
    census(12, &FactorBudget::default(), |i| {
        if let CensusItem::Record(r) = i {
            seen.push(r.t.clone());
        }
    });
    let want: Vec<BigRational> = params.iter().map(|&(r, s)| t(r, s)).collect();
    assert_eq!(seen, want);
}
