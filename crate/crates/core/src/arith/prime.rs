// SPDX-License-Identifier: Apache-2.0

//! Deterministic primality for `u64` and a segmented prime iterator.
//!
//! Primality uses Miller-Rabin in Montgomery form with the seven-base
//! witness set of Jim Sinclair, which has no pseudoprimes below 2^64.

/// Witnesses that make Miller-Rabin exact on the full `u64` range.
const MR_BASES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// Montgomery arithmetic modulo an odd `n`, with R = 2^64.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Montgomery {
    n: u64,
    /// n^{-1} mod 2^64
    n_inv: u64,
    /// R^2 mod n
    r2: u64,
}

impl Montgomery {
    pub(crate) fn new(n: u64) -> Self {
        debug_assert!(n % 2 == 1 && n > 1);
        let mut inv = n;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(inv)));
        }
        let r = (u64::MAX % n + 1) as u128 % n as u128;
        let r2 = (r * r % n as u128) as u64;
        Self { n, n_inv: inv, r2 }
    }

    #[inline]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.n_inv);
        let mn_hi = ((m as u128 * self.n as u128) >> 64) as u64;
        let t_hi = (t >> 64) as u64;
        if t_hi >= mn_hi {
            t_hi - mn_hi
        } else {
            t_hi.wrapping_sub(mn_hi).wrapping_add(self.n)
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline]
    pub(crate) fn to_mont(&self, x: u64) -> u64 {
        self.mul(x % self.n, self.r2)
    }

    #[inline]
    pub(crate) fn from_mont(&self, x: u64) -> u64 {
        self.reduce(x as u128)
    }

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let (s, carry) = a.overflowing_add(b);
        if carry || s >= self.n {
            s.wrapping_sub(self.n)
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn one(&self) -> u64 {
        self.to_mont(1)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// Small primes used for quick rejection before Miller-Rabin.
const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    miller_rabin(n)
}

fn miller_rabin(n: u64) -> bool {
    let mont = Montgomery::new(n);
    let d_shift = (n - 1).trailing_zeros();
    let d = (n - 1) >> d_shift;
    let one = mont.one();
    let minus_one = mont.to_mont(n - 1);

    'witness: for &base in &MR_BASES {
        let b = base % n;
        if b == 0 {
            continue;
        }
        let mut x = mont.pow(mont.to_mont(b), d);
        if x == one || x == minus_one {
            continue;
        }
        for _ in 1..d_shift {
            x = mont.mul(x, x);
            if x == minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Returns a nontrivial factor of the odd composite `n` using Brent's
/// variant of Pollard's rho.
pub(crate) fn pollard_brent(n: u64) -> u64 {
    use num_integer::Integer;

    const BATCH: u64 = 128;
    let mont = Montgomery::new(n);
    let mut c_seed = 1u64;
    loop {
        let c = mont.to_mont(c_seed);
        let f = |x: u64| mont.add(mont.mul(x, x), c);
        let mut y = mont.to_mont(2);
        let mut x = y;
        let mut ys = y;
        let mut q = mont.one();
        let mut g = 1u64;
        let mut r = 1u64;

        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mont.mul(q, x.abs_diff(y));
                }
                g = mont.from_mont(q).gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // the batch overshot; replay one step at a time
            loop {
                ys = f(ys);
                g = mont.from_mont(x.abs_diff(ys)).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c_seed += 1;
    }
}

/// Sieve of Eratosthenes up to and including `limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    PrimeIter::new(limit).collect()
}

/// Segmented sieve yielding primes `2 ≤ p ≤ limit` in increasing order.
///
/// Memory is `O(sqrt(limit) + SEGMENT)` regardless of `limit`.
pub struct PrimeIter {
    limit: u64,
    base: Vec<u64>,
    segment: Vec<bool>,
    seg_lo: u64,
    pos: usize,
}

const SEGMENT: u64 = 1 << 15;

impl PrimeIter {
    pub fn new(limit: u64) -> Self {
        let root = limit.isqrt();
        let mut small = vec![true; root as usize + 1];
        let mut base = Vec::new();
        for i in 2..=root as usize {
            if small[i] {
                base.push(i as u64);
                let mut j = i * i;
                while j <= root as usize {
                    small[j] = false;
                    j += i;
                }
            }
        }
        let mut it = Self { limit, base, segment: Vec::new(), seg_lo: 0, pos: 0 };
        it.fill(2);
        it
    }

    fn fill(&mut self, lo: u64) {
        self.seg_lo = lo;
        self.pos = 0;
        if lo > self.limit {
            self.segment.clear();
            return;
        }
        let hi = (lo + SEGMENT - 1).min(self.limit);
        let len = (hi - lo + 1) as usize;
        self.segment.clear();
        self.segment.resize(len, true);
        for &p in &self.base {
            if p * p > hi {
                break;
            }
            let mut start = (lo.div_ceil(p) * p).max(p * p);
            while start <= hi {
                self.segment[(start - lo) as usize] = false;
                start += p;
            }
        }
    }
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if self.segment.is_empty() {
                return None;
            }
            while self.pos < self.segment.len() {
                let i = self.pos;
                self.pos += 1;
                if self.segment[i] {
                    return Some(self.seg_lo + i as u64);
                }
            }
            let next_lo = self.seg_lo + self.segment.len() as u64;
            self.fill(next_lo);
        }
    }
}
