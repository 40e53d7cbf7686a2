// SPDX-License-Identifier: Apache-2.0

use std::sync::OnceLock;

use super::prime::{is_prime, pollard_brent};
use crate::error::{Error, Result};

/// Primes below this bound are removed by trial division; the cofactor
/// goes to Miller-Rabin and Pollard-Brent.
pub const TRIAL_BOUND: u64 = 1 << 10;

/// A positive integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    /// Builds from explicit prime powers, checking every invariant.
    pub fn from_factors(mut factors: Vec<(u64, u32)>) -> Result<Self> {
        factors.sort_unstable();
        let mut value = 1u64;
        for (i, &(p, e)) in factors.iter().enumerate() {
            if e == 0 || !is_prime(p) || (i > 0 && factors[i - 1].0 == p) {
                return Err(Error::InvalidInput(format!("bad prime power {p}^{e}")));
            }
            let pe = p.checked_pow(e).ok_or(Error::Overflow("prime power"))?;
            value = value.checked_mul(pe).ok_or(Error::Overflow("factored value"))?;
        }
        Ok(Self { value, factors })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs sorted by prime.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct prime divisors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Primes p with p ‖ n.
    pub fn exact_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().filter(|&&(_, e)| e == 1).map(|&(p, _)| p)
    }

    pub fn reconstruct(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }
}

struct TrialPrime {
    p: u64,
    /// p^{-1} mod 2^64
    inv: u64,
    /// floor((2^64 - 1) / p)
    limit: u64,
}

fn trial_primes() -> &'static [TrialPrime] {
    static TABLE: OnceLock<Vec<TrialPrime>> = OnceLock::new();
    TABLE.get_or_init(|| {
        super::prime::primes_up_to(TRIAL_BOUND - 1)
            .into_iter()
            .filter(|&p| p != 2)
            .map(|p| {
                let mut inv = p;
                for _ in 0..5 {
                    inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
                }
                TrialPrime { p, inv, limit: u64::MAX / p }
            })
            .collect()
    })
}

/// Factors `|n|`. Zero is rejected; callers handle it upstream.
pub fn factorize(n: i128) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let m = u64::try_from(n.unsigned_abs()).map_err(|_| Error::Overflow("factorize input"))?;
    Ok(factorize_u64(m))
}

pub fn factorize_u64(n: u64) -> FactoredInteger {
    assert!(n != 0, "factorize_u64(0)");
    let value = n;
    let mut factors = Vec::new();
    let mut rest = n;

    let twos = rest.trailing_zeros();
    if twos > 0 {
        factors.push((2, twos));
        rest >>= twos;
    }

    for tp in trial_primes() {
        if tp.p * tp.p > rest {
            break;
        }
        // divisibility by odd p: rest * p^{-1} mod 2^64 <= floor(MAX / p)
        if rest.wrapping_mul(tp.inv) <= tp.limit {
            let mut e = 0;
            while rest.wrapping_mul(tp.inv) <= tp.limit {
                rest = rest.wrapping_mul(tp.inv);
                e += 1;
            }
            factors.push((tp.p, e));
        }
    }

    if rest > 1 {
        let mut large = Vec::new();
        split_large(rest, &mut large);
        large.sort_unstable();
        for p in large {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
    }

    FactoredInteger { value, factors }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if n < TRIAL_BOUND * TRIAL_BOUND || is_prime(n) {
        out.push(n);
        return;
    }
    let r = n.isqrt();
    if r * r == n {
        split_large(r, out);
        split_large(r, out);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hand_examples() {
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(-12).unwrap().value(), 12);
        assert_eq!(factorize(1_000_000_007).unwrap().factors(), &[(1_000_000_007, 1)]);
        assert_eq!(factorize(0), Err(Error::ZeroInput));
    }

    #[test]
    fn hard_cases() {
        // square of a prime above the trial bound
        let p = 1_000_003u64;
        assert_eq!(factorize_u64(p * p).factors(), &[(p, 2)]);
        // cube of a prime above the trial bound
        let q = 2_097_143u64;
        assert_eq!(factorize_u64(q * q * q).factors(), &[(q, 3)]);
        assert_eq!(factorize_u64(4_294_967_291 * 4_294_967_279).factors(), &[(4_294_967_279, 1), (4_294_967_291, 1)]);
        assert_eq!(factorize_u64(1 << 63).factors(), &[(2, 63)]);
        assert_eq!(factorize(i128::from(u64::MAX) + 1), Err(Error::Overflow("factorize input")));
    }

    #[test]
    fn from_factors_rejects_composites() {
        assert!(FactoredInteger::from_factors(vec![(4, 1)]).is_err());
        assert!(FactoredInteger::from_factors(vec![(3, 0)]).is_err());
        assert_eq!(FactoredInteger::from_factors(vec![(3, 2), (2, 1)]).unwrap().value(), 18);
    }

    proptest! {
        #[test]
        fn round_trip(n in 1u64..u64::MAX) {
            let f = factorize_u64(n);
            prop_assert_eq!(f.reconstruct(), Some(n));
            for w in f.factors().windows(2) {
                prop_assert!(w[0].0 < w[1].0);
            }
            for &(p, e) in f.factors() {
                prop_assert!(e >= 1 && is_prime(p));
            }
        }
    }
}
