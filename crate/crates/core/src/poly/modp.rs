// SPDX-License-Identifier: Apache-2.0

use super::IntPolynomial;

/// Below this prime the roots are counted by direct evaluation.
const DIRECT_LIMIT: u64 = 64;

/// Number of residues `x mod p` with `f(x) ≡ 0`, counted without
/// multiplicity. If `p` divides every coefficient this is `p`.
pub fn count_roots_mod_p(f: &IntPolynomial, p: u64) -> u64 {
    let reduced = reduce(f, p);
    let Some(deg) = degree(&reduced) else {
        return p;
    };
    if deg == 0 {
        return 0;
    }
    if p < DIRECT_LIMIT {
        return (0..p).filter(|&x| eval_mod(&reduced, x, p) == 0).count() as u64;
    }
    // deg gcd(f, x^p - x) counts distinct roots in F_p
    let f = &reduced[..=deg];
    let mut xp = powmod_x(p, f, p);
    // subtract x
    if xp.len() < 2 {
        xp.resize(2, 0);
    }
    xp[1] = (xp[1] + p - 1) % p;
    trim(&mut xp);
    let g = gcd(f.to_vec(), xp, p);
    degree(&g).unwrap_or(deg) as u64
}

/// Coefficients mod p, lowest degree first (length 5).
fn reduce(f: &IntPolynomial, p: u64) -> Vec<u64> {
    (0..5).map(|k| (f.coeff(k) as i128).rem_euclid(p as i128) as u64).collect()
}

fn degree(c: &[u64]) -> Option<usize> {
    c.iter().rposition(|&x| x != 0)
}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

fn eval_mod(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0u64, |acc, &a| ((acc as u128 * x as u128 + a as u128) % p as u128) as u64)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime: a^(p-2)
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Remainder of `a` modulo monic-able `m` over F_p.
fn rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    trim(&mut a);
    let dm = m.len() - 1;
    let inv_lead = inv_mod(m[dm], p);
    while a.len() > dm {
        let k = a.len() - 1 - dm;
        let c = mulmod(*a.last().unwrap(), inv_lead, p);
        for (j, &mc) in m.iter().enumerate() {
            a[k + j] = (a[k + j] + p - mulmod(c, mc, p)) % p;
        }
        trim(&mut a);
    }
    a
}

fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    rem(out, m, p)
}

/// x^e mod (m, p).
fn powmod_x(mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(vec![1], m, p);
    let mut base = rem(vec![0, 1], m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &base, m, p);
        }
        base = mul_rem(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;

    fn brute(f: &IntPolynomial, p: u64) -> u64 {
        (0..p).filter(|&x| f.eval(x as i128).unwrap().rem_euclid(p as i128) == 0).count() as u64
    }

    #[test]
    fn examples() {
        let f = IntPolynomial::new([0, 0, 1, 0, 1]);
        assert_eq!(count_roots_mod_p(&f, 5), 2);
        assert_eq!(count_roots_mod_p(&f, 3), 0);
        assert_eq!(count_roots_mod_p(&f, 2), 1);
        let g = IntPolynomial::new([0, 0, 1, 0, 2]);
        assert_eq!(count_roots_mod_p(&g, 3), 2);
        assert_eq!(count_roots_mod_p(&IntPolynomial::new([0, 0, 3, 0, 3]), 3), 3);
    }

    #[test]
    fn algebraic_route_matches_direct_loop() {
        // a fixed corpus of 50 polynomials, including repeated factors mod p
        let mut corpus = Vec::new();
        let mut seed = 0x2545_f491_4f6c_dd1du64;
        for _ in 0..44 {
            let mut c = [0i64; 5];
            for x in c.iter_mut() {
                seed ^= seed << 13;
                seed ^= seed >> 7;
                seed ^= seed << 17;
                *x = (seed % 41) as i64 - 20;
            }
            corpus.push(IntPolynomial::new(c));
        }
        corpus.extend([
            IntPolynomial::new([1, 0, 0, 0, 1]),
            IntPolynomial::new([1, 0, -1, 0, 0]),
            IntPolynomial::new([1, 0, 3, 0, 2]),
            IntPolynomial::new([0, 1, 0, 1, 0]),
            IntPolynomial::new([1, 4, 6, 4, 1]),
            IntPolynomial::new([0, 0, 0, 7, 1]),
        ]);
        for f in &corpus {
            for p in primes_up_to(400) {
                assert_eq!(count_roots_mod_p(f, p), brute(f, p), "{f} mod {p}");
            }
        }
    }
}
