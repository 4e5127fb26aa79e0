//! Class groups of imaginary quadratic fields, the order-5 divisor class on
//! the modular curve X1(16), and exact verification tooling around them.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: factorization, primality, squarefree parts.
//! * [`poly`]: sparse multivariate polynomials over Z/Q, a prefix expression
//!   parser, and arithmetic in Q(α).
//! * [`quadform`]: positive definite binary quadratic forms and class groups.
//! * [`quadfield`]: elements and ideals of imaginary quadratic maximal orders.
//! * [`x16`]: the curve X1(16), the fifth-root pullback class and the census.
//! * [`identities`]: the registry of exactly checkable algebraic claims.
//! * [`ecq`]: elliptic curves over Q, the quartic E4 and the pz² heuristic.

pub mod arith;
pub mod ecq;
pub mod error;
pub mod identities;
pub mod poly;
pub mod quadfield;
pub mod quadform;
pub mod x16;

pub use error::{Error, Result};
