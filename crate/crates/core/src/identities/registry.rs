use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;

use super::checks::{
    ClaimCheck, CongruenceClaim, CurvePoint, ExternalClaim, IdentityClaim, MembershipClaim,
    NfProductClaim, Restriction, Side, SignSpec, SubstitutionClaim,
};
use crate::poly::{parse_expr, MPolyQ, UPolyQ};
use crate::{Error, Result};

/// The pinned registry text.
pub const CLAIMS_TXT: &str = include_str!("claims.txt");

/// Claims in file order, addressable by id.
pub struct Registry {
    claims: Vec<Box<dyn ClaimCheck>>,
    index: HashMap<String, usize>,
}

impl Registry {
    pub fn parse(src: &str) -> Result<Self> {
        let mut env: HashMap<String, MPolyQ> = HashMap::new();
        let mut claims: Vec<Box<dyn ClaimCheck>> = Vec::new();
        let mut index = HashMap::new();
        for (lineno, raw) in src.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let ctx = |e: Error| Error::Parse(format!("line {}: {e}", lineno + 1));
            let (kind, rest) = line.split_once(' ').ok_or_else(|| ctx(Error::Parse("missing id".into())))?;
            if kind == "def" {
                let (name, body) = rest
                    .split_once(":=")
                    .ok_or_else(|| ctx(Error::Parse("def needs ':='".into())))?;
                let p = parse_expr(body.trim(), &env).map_err(ctx)?;
                env.insert(name.trim().to_string(), p);
                continue;
            }
            let claim = parse_claim(kind, rest, &env).map_err(ctx)?;
            if index.insert(claim.id().to_string(), claims.len()).is_some() {
                return Err(ctx(Error::Parse(format!("duplicate id {}", claim.id()))));
            }
            claims.push(claim);
        }
        Ok(Self { claims, index })
    }

    pub fn builtin() -> Self {
        Self::parse(CLAIMS_TXT).expect("builtin registry parses")
    }

    pub fn get(&self, id: &str) -> Result<&dyn ClaimCheck> {
        self.index
            .get(id)
            .map(|&i| self.claims[i].as_ref())
            .ok_or_else(|| Error::UnknownClaim(id.to_string()))
    }

    pub fn claims(&self) -> impl Iterator<Item = &dyn ClaimCheck> {
        self.claims.iter().map(|c| c.as_ref())
    }

    pub fn ids(&self) -> Vec<&str> {
        self.claims.iter().map(|c| c.id()).collect()
    }

    pub fn len(&self) -> usize {
        self.claims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.claims.is_empty()
    }
}

struct Fields<'a> {
    items: Vec<(&'a str, &'a str)>,
}

impl<'a> Fields<'a> {
    fn split(rest: &'a str) -> Result<(&'a str, Self)> {
        let mut parts = rest.split('|').map(str::trim);
        let id = parts.next().filter(|s| !s.is_empty()).ok_or_else(|| Error::Parse("missing id".into()))?;
        let items = parts
            .map(|p| p.split_once(':').map(|(k, v)| (k.trim(), v.trim())))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse(format!("field without ':' in claim {id}")))?;
        Ok((id, Self { items }))
    }

    fn one(&self, key: &str) -> Result<&'a str> {
        self.opt(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
    }

    fn opt(&self, key: &str) -> Option<&'a str> {
        self.items.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }

    fn all(&self, key: &str) -> Vec<&'a str> {
        self.items.iter().filter(|(k, _)| *k == key).map(|(_, v)| *v).collect()
    }
}

/// Splits at `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(s[start..i].trim());
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.retain(|p| !p.is_empty());
    out
}

fn parse_assignments(s: &str, env: &HashMap<String, MPolyQ>) -> Result<Vec<(String, MPolyQ)>> {
    split_top(s, ',')
        .into_iter()
        .map(|a| {
            let (k, v) = a.split_once('=').ok_or_else(|| Error::Parse(format!("bad binding {a:?}")))?;
            Ok((k.trim().to_string(), parse_expr(v.trim(), env)?))
        })
        .collect()
}

fn rational_point(s: &str) -> Result<HashMap<String, BigRational>> {
    parse_assignments(s, &HashMap::new())?
        .into_iter()
        .map(|(k, p)| {
            if p.total_degree().unwrap_or(0) > 0 {
                return Err(Error::Parse(format!("{k} is not a number")));
            }
            Ok((k, p.constant_term()))
        })
        .collect()
}

fn residues(s: &str) -> Result<BTreeSet<u64>> {
    s.split(',')
        .map(|r| r.trim().parse().map_err(|_| Error::Parse(format!("bad residue {r:?}"))))
        .collect()
}

fn side(s: &str, env: &HashMap<String, MPolyQ>, expected: Option<&str>) -> Result<Side> {
    let (expr, vars) = s.rsplit_once(" over ").ok_or_else(|| Error::Parse(format!("{s:?} needs 'over'")))?;
    Ok(Side {
        expr: parse_expr(expr.trim(), env)?,
        vars: vars.split(',').map(|v| v.trim().to_string()).collect(),
        expected: expected.map(residues).transpose()?,
    })
}

fn parse_claim(kind: &str, rest: &str, env: &HashMap<String, MPolyQ>) -> Result<Box<dyn ClaimCheck>> {
    let (id, f) = Fields::split(rest)?;
    let id = id.to_string();
    let expr = |key: &str| -> Result<MPolyQ> { parse_expr(f.one(key)?, env) };
    Ok(match kind {
        "identity" => Box::new(IdentityClaim { id, lhs: expr("lhs")?, rhs: expr("rhs")? }),
        "substitution" => {
            let stages = split_top(f.one("bind")?, ';')
                .into_iter()
                .map(|st| Ok(parse_assignments(st, env)?.into_iter().collect()))
                .collect::<Result<Vec<_>>>()?;
            let sign = match f.one("sign")? {
                "+" => SignSpec::Plus,
                "-" => SignSpec::Minus,
                "±" | "+-" => SignSpec::Either,
                s => return Err(Error::Parse(format!("bad sign {s:?}"))),
            };
            Box::new(SubstitutionClaim {
                id,
                expr: expr("expr")?,
                stages,
                root: expr("root")?,
                sign,
                target: expr("target")?,
            })
        }
        "congruence" => {
            let modulus = f.one("mod")?.parse().map_err(|_| Error::Parse("bad modulus".into()))?;
            let restriction = match f.opt("when").unwrap_or("all") {
                "all" => Restriction::All,
                w => match w.strip_prefix("not_all_even(").and_then(|w| w.strip_suffix(')')) {
                    Some(vs) => Restriction::NotAllEven(vs.split(',').map(|v| v.trim().to_string()).collect()),
                    None => return Err(Error::Parse(format!("bad restriction {w:?}"))),
                },
            };
            Box::new(CongruenceClaim {
                id,
                modulus,
                restriction,
                lhs: side(f.one("lhs")?, env, f.opt("lhs_res"))?,
                rhs: f.opt("rhs").map(|s| side(s, env, f.opt("rhs_res"))).transpose()?,
                avoid: f.opt("avoid").map(residues).transpose()?.unwrap_or_default(),
            })
        }
        "membership" => {
            let points = f
                .all("at")
                .into_iter()
                .map(|p| if p == "inf" { Ok(CurvePoint::Infinity) } else { rational_point(p).map(CurvePoint::Affine) })
                .collect::<Result<Vec<_>>>()?;
            Box::new(MembershipClaim {
                id,
                lhs: expr("lhs")?,
                rhs: expr("rhs")?,
                var: f.opt("var").map(str::to_string),
                points,
            })
        }
        "nfproduct" => {
            let gen = f.one("gen")?.to_string();
            let minpoly = UPolyQ::from_mpoly(&expr("minpoly")?, &gen)
                .ok_or_else(|| Error::Parse("minpoly must be univariate in gen".into()))?;
            let factors = split_top(f.one("factors")?, ';')
                .into_iter()
                .map(|s| parse_expr(s, env))
                .collect::<Result<Vec<_>>>()?;
            Box::new(NfProductClaim {
                id,
                minpoly,
                gen,
                var: f.one("var")?.to_string(),
                factors,
                target: expr("target")?,
            })
        }
        "external" => Box::new(ExternalClaim { id, reference: f.one("ref")?.to_string() }),
        k => return Err(Error::Parse(format!("unknown claim kind {k:?}"))),
    })
}
