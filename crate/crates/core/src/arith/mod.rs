//! Integer arithmetic: factorization, primality, squarefree parts, sieves.

pub mod factor;
pub mod modular;
pub mod prime;
pub mod sieve;
pub mod squarefree;

pub use factor::{factor, factor_i128, factor_with, FactorBudget, FactorStage, FactoredInt};
pub use prime::{is_prime_u64, is_probable_prime, is_probable_prime_seeded, DETERMINISTIC_LIMIT};
pub use sieve::SpfSieve;
pub use squarefree::{
    field_constant, fundamental_discriminant, squarefree_from_factored, squarefree_part,
    SquarefreePart,
};
