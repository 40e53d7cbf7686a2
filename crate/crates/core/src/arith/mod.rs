// SPDX-License-Identifier: Apache-2.0

//! Exact integer arithmetic: primality, factorization, quadratic symbols
//! and the multiplicative sieve weights.

mod factor;
mod prime;
mod symbol;
mod weight;

pub use factor::{factorize, factorize_u64, FactoredInteger, TRIAL_BOUND};
pub use prime::{is_prime, primes_up_to, PrimeIter};
pub use symbol::{hilbert_symbol, jacobi, legendre, locally_isotropic, relevant_places, Place};
pub use weight::{theta, theta_of, varpi, varpi_of};

/// Exact square root of a nonnegative integer, if it is a perfect square.
#[inline]
pub fn exact_sqrt(n: u64) -> Option<u64> {
    // squares occupy 12 of the 64 residues mod 64
    const SQ_MOD64: u64 = 0x0202_0212_0203_0213;
    if (SQ_MOD64 >> (n & 63)) & 1 == 0 {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_sqrt_matches_definition() {
        for n in 0u64..100_000 {
            let r = n.isqrt();
            assert_eq!(exact_sqrt(n), (r * r == n).then_some(r), "{n}");
        }
        assert_eq!(exact_sqrt(u32::MAX as u64 * u32::MAX as u64), Some(u32::MAX as u64));
        assert_eq!(exact_sqrt(u64::MAX), None);
    }
}
