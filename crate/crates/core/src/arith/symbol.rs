// SPDX-License-Identifier: Apache-2.0

use super::factor::factorize;
use crate::error::{Error, Result};

/// Jacobi symbol (a/n) for odd positive `n`.
pub fn jacobi(a: i128, n: i128) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::InvalidModulus(n));
    }
    let n = u128::try_from(n).expect("positive");
    Ok(jacobi_u128(a.rem_euclid(n as i128) as u128, n))
}

/// Jacobi symbol with `0 ≤ a < n`, `n` odd.
pub(crate) fn jacobi_u128(mut a: u128, mut n: u128) -> i8 {
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        // (2/n) = -1 iff n ≡ ±3 mod 8
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        // reciprocity: flip iff both ≡ 3 mod 4
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol (a/p) for a prime `p`, extended by (a/2) = 0.
pub fn legendre(a: i128, p: u64) -> i8 {
    if p == 2 {
        return 0;
    }
    jacobi_u128(a.rem_euclid(p as i128) as u128, p as u128)
}

/// A place of Q: a finite prime or the real place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

/// Splits `x = p^v * u` with `p ∤ u`.
fn split_valuation(mut x: i128, p: u64) -> (u32, i128) {
    let p = p as i128;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    (v, x)
}

/// Hilbert symbol (a, b)_v: 1 iff z² = a x² + b y² has a nontrivial
/// solution over the completion of Q at `place`.
pub fn hilbert_symbol(a: i128, b: i128, place: Place) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidInput("hilbert symbol of zero".into()));
    }
    let p = match place {
        Place::Infinity => return Ok(if a < 0 && b < 0 { -1 } else { 1 }),
        Place::Prime(p) => p,
    };
    let (alpha, u) = split_valuation(a, p);
    let (beta, v) = split_valuation(b, p);
    if p == 2 {
        let eps = |x: i128| (x.rem_euclid(4) == 3) as u32;
        let omega = |x: i128| matches!(x.rem_euclid(8), 3 | 5) as u32;
        let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        Ok(if e % 2 == 0 { 1 } else { -1 })
    } else {
        let mut s: i8 = if (alpha * beta) % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
        if beta % 2 == 1 {
            s *= legendre(u, p);
        }
        if alpha % 2 == 1 {
            s *= legendre(v, p);
        }
        Ok(s)
    }
}

/// Places where (a, b)_v can differ from 1: primes dividing 2ab, and infinity.
pub fn relevant_places(a: i128, b: i128) -> Result<Vec<Place>> {
    let mut primes: Vec<u64> = vec![2];
    for x in [a, b] {
        primes.extend(factorize(x)?.factors().iter().map(|&(p, _)| p));
    }
    primes.sort_unstable();
    primes.dedup();
    let mut places: Vec<Place> = primes.into_iter().map(Place::Prime).collect();
    places.push(Place::Infinity);
    Ok(places)
}

/// True iff (a, b)_v = 1 at every place.
pub fn locally_isotropic(a: i128, b: i128) -> Result<bool> {
    for place in relevant_places(a, b)? {
        if hilbert_symbol(a, b, place)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}
