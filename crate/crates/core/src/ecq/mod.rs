//! Elliptic curves over Q and the pz² heuristic on E4.
//!
//! E4 is the quartic `y² = 2(u⁴ + 2u²v² − v⁴)`. It is handled through the
//! Weierstrass model `y² = x³ − 2x² + 2x` with generator `(1, 1)`; the
//! birational maps between the two are re-verified symbolically by
//! [`e4::verify_maps_symbolic`].

pub mod curve;
pub mod e4;
pub mod heuristic;
pub mod pi2;

pub use curve::{curve_e, curve_e_point, naive_height, ECPoint, WeierstrassCurve};
pub use e4::{
    e4_generator, e4_torsion, e4_weierstrass, from_quartic, quartic_transport, to_quartic,
    to_quartic_point, verify_maps_symbolic, QuarticPoint,
};
pub use heuristic::{
    classify, heuristic_search, pz2_test, summarize, verify_section6_example, HeuristicRecord,
    HeuristicSummary, HitLine, PzStatus, ExampleReport,
};
pub use pi2::{pi2_count, pi2_profile, Pi2Row, PI2_LIMIT};
