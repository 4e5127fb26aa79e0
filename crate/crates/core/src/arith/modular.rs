//! Word-sized modular arithmetic used by the enumeration and ideal code.

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn inv_mod(a: i128, m: i128) -> Option<i128> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

/// Kronecker symbol (a | p) for a prime p, including p = 2.
pub fn kronecker_prime(a: i64, p: u64) -> i32 {
    if p == 2 {
        return match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let r = (a as i128).rem_euclid(p as i128) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Square root of `a` modulo an odd prime `p` (Tonelli–Shanks).
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if p == 2 || a == 0 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Solutions of x² ≡ a (mod p^k) for an odd prime p not dividing a,
/// lifted from a root modulo p.
pub fn hensel_lift_odd(root: u64, a: i128, p: u64, k: u32) -> u64 {
    let mut x = root as i128;
    let mut modulus = p as i128;
    for _ in 1..k {
        modulus *= p as i128;
        let fx = (x * x - a).rem_euclid(modulus);
        let inv = inv_mod(2 * x, modulus).expect("2x invertible for p odd, p ∤ a");
        x = (x - fx * inv).rem_euclid(modulus);
    }
    x as u64
}

/// All x mod 2^e with x² ≡ a (mod 2^e), built one bit at a time.
pub fn sqrt_mod_pow2(a: i128, e: u32) -> Vec<u64> {
    let mut sols: Vec<u64> = vec![0];
    for j in 0..e {
        let next_mod = 1i128 << (j + 1);
        let target = a.rem_euclid(next_mod);
        let mut next = Vec::with_capacity(sols.len() * 2);
        for &x in &sols {
            for cand in [x, x + (1u64 << j)] {
                if ((cand as i128) * (cand as i128)).rem_euclid(next_mod) == target {
                    next.push(cand);
                }
            }
        }
        sols = next;
        if sols.is_empty() {
            break;
        }
    }
    sols
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tonelli_shanks_matches_brute_force() {
        for p in [3u64, 5, 7, 13, 17, 41, 73, 97, 257, 65537] {
            for a in 0..p.min(300) {
                let brute = (0..p).any(|x| x * x % p == a);
                match sqrt_mod_prime(a, p) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a),
                    None => assert!(!brute, "missed root of {a} mod {p}"),
                }
            }
        }
    }

    #[test]
    fn kronecker_at_two() {
        assert_eq!(kronecker_prime(-15, 2), 1);
        assert_eq!(kronecker_prime(-3, 2), -1);
        assert_eq!(kronecker_prime(-4, 2), 0);
    }

    #[test]
    fn pow2_roots() {
        // x² ≡ -15 ≡ 1 (mod 16): x ∈ {1, 7, 9, 15}
        assert_eq!(sqrt_mod_pow2(-15, 4), vec![1, 9, 7, 15]);
        assert!(sqrt_mod_pow2(-3, 3).is_empty());
    }

    #[test]
    fn hensel_lift_is_a_root() {
        let a = -455i128;
        let r = sqrt_mod_prime(a.rem_euclid(3) as u64, 3).unwrap();
        let x = hensel_lift_odd(r, a, 3, 5) as i128;
        assert_eq!((x * x - a).rem_euclid(243), 0);
    }
}
