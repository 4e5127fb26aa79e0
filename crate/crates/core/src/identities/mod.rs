//! Registry of algebraic claims, each re-proved by exact arithmetic.
//!
//! The registry text (`claims.txt`) pins every polynomial verbatim; a claim
//! kind is a [`ClaimCheck`] implementation. Statements that rest on rank or
//! Chabauty computations are registered as `external` and never reported as
//! passing.

pub mod checks;
pub mod registry;

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

pub use checks::{residue_set, ClaimCheck, CurvePoint, Restriction, SignSpec};
pub use registry::{Registry, CLAIMS_TXT};

use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimKind {
    Identity,
    Substitution,
    Congruence,
    Membership,
    NfProduct,
    External,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    External,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::External => "external",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub status: Status,
    pub detail: String,
}

impl Outcome {
    pub fn pass(detail: impl Into<String>) -> Self {
        Self { status: Status::Pass, detail: detail.into() }
    }
    pub fn fail(detail: impl Into<String>) -> Self {
        Self { status: Status::Fail, detail: detail.into() }
    }
    pub fn external(detail: impl Into<String>) -> Self {
        Self { status: Status::External, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub id: String,
    pub kind: ClaimKind,
    pub status: Status,
    pub detail: String,
    #[serde(serialize_with = "ser_ms")]
    pub elapsed: Duration,
}

fn ser_ms<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

pub fn run_check(c: &dyn ClaimCheck) -> ClaimReport {
    let start = Instant::now();
    let out = c.check();
    ClaimReport {
        id: c.id().to_string(),
        kind: c.kind(),
        status: out.status,
        detail: out.detail,
        elapsed: start.elapsed(),
    }
}

/// Verify one builtin claim by id.
pub fn verify_claim(id: &str) -> Result<ClaimReport> {
    Ok(run_check(Registry::builtin().get(id)?))
}

/// Verify every claim of `reg` (or only `only`), in registry order.
pub fn verify_registry(reg: &Registry, only: Option<&[String]>) -> Result<Vec<ClaimReport>> {
    let selected: Vec<&dyn ClaimCheck> = match only {
        Some(ids) => ids.iter().map(|id| reg.get(id)).collect::<Result<_>>()?,
        None => reg.claims().collect(),
    };
    Ok(selected.par_iter().map(|c| run_check(*c)).collect())
}

pub fn verify_all() -> Vec<ClaimReport> {
    verify_registry(&Registry::builtin(), None).expect("no id filter")
}

fn verify_kind(kind: ClaimKind) -> Vec<ClaimReport> {
    let reg = Registry::builtin();
    let sel: Vec<&dyn ClaimCheck> = reg.claims().filter(|c| c.kind() == kind).collect();
    sel.par_iter().map(|c| run_check(*c)).collect()
}

pub fn verify_congruence_claims() -> Vec<ClaimReport> {
    verify_kind(ClaimKind::Congruence)
}

/// Substitution claims together with the factorization over the cubic field.
pub fn verify_substitution_claims() -> Vec<ClaimReport> {
    let mut out = verify_kind(ClaimKind::Substitution);
    out.extend(verify_kind(ClaimKind::NfProduct));
    out
}

pub fn verify_point_memberships() -> Vec<ClaimReport> {
    verify_kind(ClaimKind::Membership)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_registry_passes() {
        let reports = verify_all();
        let failed: Vec<_> = reports.iter().filter(|r| r.status == Status::Fail).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(reports.iter().any(|r| r.status == Status::External));
        assert!(reports.iter().filter(|r| r.kind == ClaimKind::External).all(|r| r.status == Status::External));
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(verify_claim("nope"), Err(crate::Error::UnknownClaim(_))));
    }

    #[test]
    fn substitution_branches() {
        let r = verify_claim("descent.c17.from_case_2bii").unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(r.detail.starts_with("branch +"), "{}", r.detail);
        let r = verify_claim("descent.c13.from_case_2aii_a").unwrap();
        assert!(r.detail.starts_with("branch -"), "{}", r.detail);
    }

    #[test]
    fn negative_controls() {
        let mod8 = CLAIMS_TXT
            .lines()
            .filter(|l| l.starts_with("def ") || l.contains("descent.e6.mod16"))
            .map(|l| l.replace("mod: 16", "mod: 8"))
            .collect::<Vec<_>>()
            .join("\n");
        let reg = Registry::parse(&mod8).unwrap();
        let r = run_check(reg.get("descent.e6.mod16").unwrap());
        assert_eq!(r.status, Status::Fail, "{}", r.detail);

        let bad = "def C9 := (+ (^ v 8) 1)\nmembership c9.bad | lhs: (^ y 2) | rhs: C9 | at: v=0, y=3";
        let reg = Registry::parse(bad).unwrap();
        assert_eq!(run_check(reg.get("c9.bad").unwrap()).status, Status::Fail);
    }

    #[test]
    fn transcription_error_is_caught() {
        let src = CLAIMS_TXT.replace("(* 136 (^ v 3))", "(* 137 (^ v 3))");
        let reg = Registry::parse(&src).unwrap();
        assert_eq!(run_check(reg.get("descent.c15.from_case_2bi").unwrap()).status, Status::Fail);
        assert_eq!(run_check(reg.get("descent.c15.points").unwrap()).status, Status::Fail);
    }
}
