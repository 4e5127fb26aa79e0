/// Smallest-prime-factor table on `0..=limit`, built by a linear sieve.
pub struct SpfSieve {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SpfSieve {
    pub fn new(limit: usize) -> Self {
        assert!(limit < u32::MAX as usize, "sieve limit exceeds u32");
        let mut spf = vec![0u32; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let j = i * p as usize;
                if p > si || j > limit {
                    break;
                }
                spf[j] = p;
            }
        }
        Self { spf, primes }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && self.spf[n] as usize == n
    }

    pub fn factor(&self, mut n: usize) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        out
    }

    /// Squarefree kernel of odd-exponent primes: `n / (largest square divisor)`.
    pub fn squarefree_part(&self, mut n: usize) -> usize {
        let mut d = 1usize;
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut odd = false;
            while n.is_multiple_of(p) {
                n /= p;
                odd = !odd;
            }
            if odd {
                d *= p;
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_match_trial_division() {
        let s = SpfSieve::new(10_000);
        for n in 2..=10_000usize {
            let mut prod = 1usize;
            for (p, e) in s.factor(n) {
                prod *= (p as usize).pow(e);
                assert!((2..p as usize).all(|q| !(p as usize).is_multiple_of(q)));
            }
            assert_eq!(prod, n);
        }
        assert_eq!(s.squarefree_part(8120), 2030);
        assert_eq!(s.squarefree_part(72), 2);
        assert_eq!(s.primes().len(), 1229);
    }
}
