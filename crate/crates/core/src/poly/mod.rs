//! Exact polynomial arithmetic: sparse multivariate polynomials over Z and Q,
//! dense univariate polynomials over Q, and arithmetic in Q[x]/(m).

pub mod mpoly;
pub mod nf;
pub mod parse;
pub mod upoly;

pub use mpoly::{mp_arith, mp_substitute, verify_identity, ArithOp, Coeff, MPoly, MPolyQ, MPolyZ, Monomial};
pub use nf::{nf_arith, upoly_mul, NFElem, NfOp, UPolyNF};
pub use parse::parse_expr;
pub use upoly::UPolyQ;
