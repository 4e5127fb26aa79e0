//! Minimal prefix syntax for polynomials.
//!
//! ```text
//! expr := integer | integer/integer | symbol | ( op expr* )
//! op   := + | * | - | ^
//! ```
//!
//! `(- a)` negates, `(- a b c)` is `a - b - c`, `(^ e n)` takes a
//! nonnegative integer power. Symbols found in the environment expand to
//! their definitions; all others become variables.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::mpoly::MPolyQ;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

fn tokenize(src: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, out: &mut Vec<Tok>| {
        if !cur.is_empty() {
            out.push(Tok::Atom(std::mem::take(cur)));
        }
    };
    for ch in src.chars() {
        match ch {
            '(' | ')' => {
                flush(&mut cur, &mut out);
                out.push(if ch == '(' { Tok::Open } else { Tok::Close });
            }
            c if c.is_whitespace() => flush(&mut cur, &mut out),
            c => cur.push(c),
        }
    }
    flush(&mut cur, &mut out);
    out
}

pub fn parse_expr(src: &str, env: &HashMap<String, MPolyQ>) -> Result<MPolyQ> {
    let toks = tokenize(src);
    let mut pos = 0;
    let e = parse_at(&toks, &mut pos, env)?;
    if pos != toks.len() {
        return Err(Error::Parse(format!("trailing input in {src:?}")));
    }
    Ok(e)
}

fn parse_at(toks: &[Tok], pos: &mut usize, env: &HashMap<String, MPolyQ>) -> Result<MPolyQ> {
    let tok = toks.get(*pos).ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
    *pos += 1;
    match tok {
        Tok::Close => Err(Error::Parse("unexpected ')'".into())),
        Tok::Atom(a) => atom(a, env),
        Tok::Open => {
            let Some(Tok::Atom(op)) = toks.get(*pos) else {
                return Err(Error::Parse("expected operator after '('".into()));
            };
            *pos += 1;
            let mut args = Vec::new();
            while toks.get(*pos) != Some(&Tok::Close) {
                if *pos >= toks.len() {
                    return Err(Error::Parse("missing ')'".into()));
                }
                if op == "^" && args.len() == 1 {
                    let Some(Tok::Atom(n)) = toks.get(*pos) else {
                        return Err(Error::Parse("exponent must be an integer".into()));
                    };
                    let n: u32 = n.parse().map_err(|_| Error::Parse(format!("bad exponent {n:?}")))?;
                    *pos += 1;
                    args.push(MPolyQ::rational(BigRational::from_integer(n.into())));
                    continue;
                }
                args.push(parse_at(toks, pos, env)?);
            }
            *pos += 1;
            apply(op, args)
        }
    }
}

fn apply(op: &str, args: Vec<MPolyQ>) -> Result<MPolyQ> {
    match (op, args.len()) {
        ("+", _) => Ok(args.iter().fold(MPolyQ::zero(), |a, b| &a + b)),
        ("*", _) => Ok(args.iter().fold(MPolyQ::one(), |a, b| &a * b)),
        ("-", 1) => Ok(-&args[0]),
        ("-", n) if n > 1 => Ok(args[1..].iter().fold(args[0].clone(), |a, b| &a - b)),
        ("^", 2) => {
            let n = args[1].constant_term().to_integer();
            let n: u32 = n.try_into().map_err(|_| Error::Parse("exponent out of range".into()))?;
            Ok(args[0].pow(n))
        }
        _ => Err(Error::Parse(format!("bad operator application ({op} ... {} args)", args.len()))),
    }
}

fn atom(a: &str, env: &HashMap<String, MPolyQ>) -> Result<MPolyQ> {
    if let Some(p) = env.get(a) {
        return Ok(p.clone());
    }
    let first = a.chars().next().unwrap_or(' ');
    if first.is_ascii_digit() || (first == '-' && a.len() > 1) {
        let r = match a.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad number {a:?}")))?;
                let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad number {a:?}")))?;
                if d == BigInt::from(0) {
                    return Err(Error::DivisionByZero);
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(
                a.parse().map_err(|_| Error::Parse(format!("bad number {a:?}")))?,
            ),
        };
        return Ok(MPolyQ::rational(r));
    }
    if a.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
        Ok(MPolyQ::var(a))
    } else {
        Err(Error::Parse(format!("bad symbol {a:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str) -> MPolyQ {
        parse_expr(src, &HashMap::new()).unwrap()
    }

    #[test]
    fn basic_forms() {
        assert_eq!(p("(+ (^ r 2) (^ s 2))").to_string(), "r^2 + s^2");
        assert_eq!(p("(- x)").to_string(), "-x");
        assert_eq!(p("(- x 1 2)").to_string(), "x - 3");
        assert_eq!(p("(* 1/2 x)").to_string(), "1/2*x");
        assert_eq!(p("-7").to_string(), "-7");
    }

    #[test]
    fn definitions_expand() {
        let mut env = HashMap::new();
        env.insert("h1".to_string(), p("(+ (^ r 2) (^ s 2))"));
        let e = parse_expr("(* 2 h1)", &env).unwrap();
        assert_eq!(e.to_string(), "2*r^2 + 2*s^2");
    }

    #[test]
    fn errors() {
        let env = HashMap::new();
        assert!(parse_expr("(+ x", &env).is_err());
        assert!(parse_expr("(^ x y)", &env).is_err());
        assert!(parse_expr("x y", &env).is_err());
        assert!(parse_expr("(% x)", &env).is_err());
    }
}
