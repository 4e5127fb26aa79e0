//! Elements and ideals of the maximal order of an imaginary quadratic field.
//!
//! Ideals are carried as a rational scale times a primitive ideal
//! `aZ + ((b + √Δ)/2)Z`, which matches the form `(a, −b, c)`; products go
//! through form composition.

pub mod elem;
pub mod factor;
pub mod ideal;

pub use elem::QFieldElem;
pub use factor::{factor_principal, nth_root_ideal, valuation, FactoredIdeal};
pub use ideal::{
    class_order, ideal_mul, ideal_to_form, is_principal, prime_data, primes_above, PrimeKind,
    QIdeal, Splitting,
};
