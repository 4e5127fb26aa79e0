use num_integer::Integer;

use super::form::QuadForm;
use crate::arith::modular::{hensel_lift_odd, inv_mod, sqrt_mod_pow2, sqrt_mod_prime};
use crate::arith::SpfSieve;

/// Square roots of `a` modulo `p^k` for an odd prime `p`.
fn sqrt_mod_odd_prime_power(a: i128, p: u64, k: u32) -> Vec<u64> {
    let pk = (p as i128).pow(k);
    let ar = a.rem_euclid(pk);
    if ar % p as i128 != 0 {
        let Some(r) = sqrt_mod_prime(ar.rem_euclid(p as i128) as u64, p) else {
            return Vec::new();
        };
        let x = hensel_lift_odd(r, a, p, k);
        let y = (pk as u64 - x) % pk as u64;
        return if x == y { vec![x] } else { vec![x, y] };
    }
    // p | a: lift digit by digit, which handles every valuation of a.
    let mut sols: Vec<u64> = vec![0];
    let mut m: i128 = 1;
    for _ in 0..k {
        let next = m * p as i128;
        let target = a.rem_euclid(next);
        sols = sols
            .iter()
            .flat_map(|&x| (0..p).map(move |j| x as i128 + j as i128 * m))
            .filter(|&c| (c * c).rem_euclid(next) == target)
            .map(|c| c as u64)
            .collect();
        m = next;
        if sols.is_empty() {
            break;
        }
    }
    sols
}

/// All `x mod 4a` with `x² ≡ disc (mod 4a)`, via CRT over the prime powers.
fn sqrt_mod_4a(disc: i128, a: u64, sieve: &SpfSieve) -> Vec<i128> {
    let mut e2 = 2u32;
    let mut odd = a;
    while odd.is_multiple_of(2) {
        odd /= 2;
        e2 += 1;
    }
    let mut residues: Vec<i128> = sqrt_mod_pow2(disc, e2).into_iter().map(|x| x as i128).collect();
    let mut modulus: i128 = 1 << e2;
    for (p, k) in sieve.factor(odd as usize) {
        if residues.is_empty() {
            break;
        }
        let roots = sqrt_mod_odd_prime_power(disc, p, k);
        let pk = (p as i128).pow(k);
        let inv = inv_mod(modulus, pk).expect("coprime moduli");
        let mut next = Vec::with_capacity(residues.len() * roots.len());
        for &x in &residues {
            for &r in &roots {
                let t = ((r as i128 - x).rem_euclid(pk) * inv).rem_euclid(pk);
                next.push(x + modulus * t);
            }
        }
        residues = next;
        modulus *= pk;
    }
    residues
}

/// Every reduced primitive form of discriminant `disc < 0`.
///
/// Loops `a ≤ √(|disc|/3)` and solves `b² ≡ disc (mod 4a)` for `b ∈ (−a, a]`.
pub fn enumerate_reduced(disc: i64) -> Vec<QuadForm> {
    assert!(disc < 0 && disc.rem_euclid(4) <= 1, "negative discriminant ≡ 0, 1 mod 4 required");
    let d = disc as i128;
    let amax = ((-d / 3) as f64).sqrt() as u64 + 1;
    let sieve = SpfSieve::new(amax as usize + 1);
    let mut out = Vec::new();
    for a in 1..=amax {
        let ai = a as i128;
        if 3 * ai * ai > -d {
            break;
        }
        let mut bs: Vec<i128> = sqrt_mod_4a(d, a, &sieve)
            .into_iter()
            .map(|x| {
                let b = x.rem_euclid(2 * ai);
                if b > ai {
                    b - 2 * ai
                } else {
                    b
                }
            })
            .collect();
        bs.sort_unstable();
        bs.dedup();
        for b in bs {
            let f = QuadForm::from_ab(ai, b, d).expect("root of disc mod 4a");
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
    }
    out.sort();
    out
}

pub fn class_number(disc: i64) -> usize {
    enumerate_reduced(disc).len()
}

/// Reference enumeration by direct search over `(a, b)`; quadratic in
/// `√|disc|`, for tests and cross-checks only.
pub fn enumerate_reduced_naive(disc: i64) -> Vec<QuadForm> {
    let d = disc as i128;
    let mut out = Vec::new();
    let mut a = 1i128;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            if let Some(f) = QuadForm::from_ab(a, b, d) {
                if f.is_reduced() && f.a.gcd(&f.b).gcd(&f.c) == 1 {
                    out.push(f);
                }
            }
        }
        a += 1;
    }
    out.sort();
    out
}
