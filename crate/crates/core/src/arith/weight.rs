// SPDX-License-Identifier: Apache-2.0

//! The sieve weights ϑ and ϖ = 2^ω ϑ.
//!
//! ϑ(n) is the product over primes p ‖ n of (1 + (a/p)) / 2, with the
//! convention (a/2) = 0. Both functions are multiplicative. ϖ is always an
//! integer: each p ‖ n contributes 1 + (a/p) ∈ {0, 1, 2}, and each p with
//! p² | n contributes 2.

use num_rational::Ratio;

use super::factor::{factorize_u64, FactoredInteger};
use super::symbol::legendre;

pub fn theta(n: &FactoredInteger, a: i64) -> Ratio<u64> {
    let mut den = 1u64;
    for p in n.exact_primes() {
        match legendre(a as i128, p) {
            -1 => return Ratio::from_integer(0),
            0 => den *= 2,
            _ => {}
        }
    }
    Ratio::new(1, den)
}

/// ϖ(n) = 2^ω(n) ϑ(n), returned as the integer it always is.
pub fn varpi(n: &FactoredInteger, a: i64) -> u64 {
    let mut w = 1u64;
    for &(p, e) in n.factors() {
        if e >= 2 {
            w *= 2;
        } else {
            match legendre(a as i128, p) {
                -1 => return 0,
                0 => {}
                _ => w *= 2,
            }
        }
    }
    w
}

/// ϖ(|n|) with the convention ϖ(0) = 0.
pub fn varpi_of(n: i128, a: i64) -> u64 {
    if n == 0 {
        return 0;
    }
    let m = u64::try_from(n.unsigned_abs()).expect("varpi argument exceeds u64");
    varpi(&factorize_u64(m), a)
}

/// ϑ(|n|); requires n ≠ 0.
pub fn theta_of(n: i128, a: i64) -> Ratio<u64> {
    let m = u64::try_from(n.unsigned_abs()).expect("theta argument exceeds u64");
    theta(&factorize_u64(m), a)
}
