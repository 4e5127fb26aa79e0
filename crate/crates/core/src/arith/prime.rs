//! Miller–Rabin primality.
//!
//! Below [`DETERMINISTIC_LIMIT`] the first thirteen primes form a complete
//! witness set, so the answer is exact. Above it, `rounds` bases are drawn
//! from a ChaCha stream keyed by the seed and the input, so repeated runs with
//! the same configuration test the same bases.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modular::{mul_mod, pow_mod};

/// Every composite below this bound fails a strong test for some base in
/// `2, 3, 5, ..., 41`.
pub const DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;
pub const DEFAULT_ROUNDS: u32 = 40;
pub const DEFAULT_SEED: u64 = 0x5eed_0016;

const WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    'outer: for &a in &WITNESSES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn is_probable_prime(n: &BigInt, rounds: u32) -> bool {
    is_probable_prime_seeded(n, rounds, DEFAULT_SEED)
}

pub fn is_probable_prime_seeded(n: &BigInt, rounds: u32, seed: u64) -> bool {
    match n.to_biguint() {
        Some(m) => is_probable_prime_unsigned(&m, rounds, seed),
        None => false,
    }
}

pub(crate) fn is_probable_prime_unsigned(n: &BigUint, rounds: u32, seed: u64) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in small_primes().iter().take(200) {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let strong_probable = |a: &BigUint| -> bool {
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                return true;
            }
        }
        false
    };

    if n.to_u128().is_some_and(|v| v < DETERMINISTIC_LIMIT) {
        return WITNESSES.iter().all(|&a| strong_probable(&BigUint::from(a)));
    }
    if !strong_probable(&BigUint::from(2u32)) {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n.iter_u64_digits().next().unwrap_or(0));
    let span = n - 3u32;
    let mut buf = vec![0u8; (n.bits() as usize).div_ceil(8) + 8];
    for _ in 0..rounds {
        rng.fill_bytes(&mut buf);
        let a = BigUint::from_bytes_le(&buf).mod_floor(&span) + 2u32;
        if !strong_probable(&a) {
            return false;
        }
    }
    true
}

/// Primes below 2^16, computed once.
pub fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(1 << 16))
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}
