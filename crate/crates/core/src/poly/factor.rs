// SPDX-License-Identifier: Apache-2.0

//! Factorization over Q for degree ≤ 4: strip rational roots, then look for
//! a split of a rootless quartic into two integer quadratics.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntPolynomial, RatPoly};
use crate::arith::factorize_u64;
use crate::error::{Error, Result};

/// `f = content · ∏ factorᵢ^multiplicityᵢ` with monic irreducible factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationQ {
    pub content: BigRational,
    pub factors: Vec<(RatPoly, u32)>,
}

impl FactorizationQ {
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, m)| m == 1)
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Multiplies the factorization back out.
    pub fn expand(&self) -> RatPoly {
        let mut acc = RatPoly::new(vec![self.content.clone()]);
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }
}

impl fmt::Display for FactorizationQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.content.is_one() {
            write!(f, "{} · ", self.content)?;
        }
        for (i, (g, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" · ")?;
            }
            write!(f, "({g})")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

pub fn factor_over_q(f: &IntPolynomial) -> Result<FactorizationQ> {
    factor_rat_poly(&RatPoly::from(f))
}

pub fn factor_rat_poly(g: &RatPoly) -> Result<FactorizationQ> {
    let d = g.degree().ok_or_else(|| Error::InvalidInput("cannot factor 0".into()))?;
    if d > 4 {
        return Err(Error::InvalidInput(format!("degree {d} exceeds 4")));
    }
    let content = g.leading();
    let (_, mut prim) = g.primitive_part();
    let mut pieces: Vec<Vec<BigInt>> = Vec::new();

    'roots: while prim.len() > 1 {
        for root in candidate_roots(&prim)? {
            if eval_scaled(&prim, &root).is_zero() {
                let lin = vec![-root.numer().clone(), root.denom().clone()];
                prim = exact_quotient(&prim, &lin);
                pieces.push(lin);
                continue 'roots;
            }
        }
        break;
    }

    match prim.len() - 1 {
        0 => {}
        4 => match quadratic_split(&prim)? {
            Some((p, q)) => {
                pieces.push(p);
                pieces.push(q);
            }
            None => pieces.push(prim),
        },
        _ => pieces.push(prim),
    }

    let mut factors: Vec<(RatPoly, u32)> = Vec::new();
    for piece in pieces {
        let monic = RatPoly::new(piece.into_iter().map(BigRational::from_integer).collect()).monic();
        match factors.iter_mut().find(|(h, _)| *h == monic) {
            Some((_, m)) => *m += 1,
            None => factors.push((monic, 1)),
        }
    }
    factors.sort_by_key(|(h, _)| h.degree());
    Ok(FactorizationQ { content, factors })
}

pub fn rational_roots(f: &IntPolynomial) -> Result<Vec<BigRational>> {
    RatPoly::from(f).rational_roots()
}

pub(crate) fn rational_roots_big(prim: &[BigInt]) -> Result<Vec<BigRational>> {
    if prim.len() < 2 {
        return Ok(Vec::new());
    }
    let mut roots: Vec<BigRational> =
        candidate_roots(prim)?.into_iter().filter(|r| eval_scaled(prim, r).is_zero()).collect();
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Candidates ±d/e with d | constant, e | leading (0 if the constant vanishes).
fn candidate_roots(prim: &[BigInt]) -> Result<Vec<BigRational>> {
    if let Some(k) = prim.iter().position(|c| !c.is_zero()).filter(|&k| k > 0) {
        let mut out = candidate_roots(&prim[k..])?;
        out.push(BigRational::zero());
        return Ok(out);
    }
    let nums = divisors(&prim[0])?;
    let dens = divisors(prim.last().unwrap())?;
    let mut out = Vec::with_capacity(2 * nums.len() * dens.len());
    for d in &nums {
        for e in &dens {
            if d.gcd(e).is_one() {
                out.push(BigRational::new(d.clone(), e.clone()));
                out.push(BigRational::new(-d.clone(), e.clone()));
            }
        }
    }
    Ok(out)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let m = u64::try_from(n.abs()).map_err(|_| Error::Overflow("divisor enumeration"))?;
    let mut divs = vec![1u64];
    for &(p, e) in factorize_u64(m).factors() {
        let cur = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..cur {
                divs.push(divs[i] * pk);
            }
        }
    }
    Ok(divs.into_iter().map(BigInt::from).collect())
}

/// e^n · g(d/e), zero iff d/e is a root.
fn eval_scaled(prim: &[BigInt], r: &BigRational) -> BigInt {
    let n = prim.len() - 1;
    let (d, e) = (r.numer(), r.denom());
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    let mut epow: Vec<BigInt> = vec![BigInt::one(); n + 1];
    for k in 1..=n {
        epow[k] = &epow[k - 1] * e;
    }
    for (k, c) in prim.iter().enumerate() {
        acc += c * &dpow * &epow[n - k];
        dpow *= d;
    }
    acc
}

fn to_rat(c: &[BigInt]) -> RatPoly {
    RatPoly::new(c.iter().cloned().map(BigRational::from_integer).collect())
}

fn exact_quotient(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (quo, rem) = to_rat(a).div_rem(&to_rat(b));
    debug_assert!(rem.is_zero());
    quo.primitive_part().1
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Splits a primitive rootless quartic `h` as (a1x²+b1x+c1)(a2x²+b2x+c2)
/// over Z, if possible. `a1 a2 = h4` and `c1 c2 = h0` range over divisor
/// pairs; for each pair the x³ and x coefficients give a linear system in
/// (b1, b2), and when that system is singular the x² coefficient gives a
/// quadratic in b1.
fn quadratic_split(h: &[BigInt]) -> Result<Option<(Vec<BigInt>, Vec<BigInt>)>> {
    let (h0, h1, h2, h3, h4) = (&h[0], &h[1], &h[2], &h[3], &h[4]);
    let lead_divs = divisors(h4)?;
    let const_divs = divisors(h0)?;
    for a1 in &lead_divs {
        let a2 = h4 / a1;
        for c1_abs in &const_divs {
            for c1 in [c1_abs.clone(), -c1_abs.clone()] {
                let c2 = h0 / &c1;
                let det = &a2 * &c1 - a1 * &c2;
                let mut candidates: Vec<(BigInt, BigInt)> = Vec::new();
                if !det.is_zero() {
                    let n1 = h3 * &c1 - a1 * h1;
                    let n2 = &a2 * h1 - h3 * &c2;
                    if (&n1 % &det).is_zero() && (&n2 % &det).is_zero() {
                        candidates.push((n1 / &det, n2 / &det));
                    }
                } else {
                    // a2 b1² − h3 b1 + a1 (h2 − a1 c2 − a2 c1) = 0
                    let k = a1 * (h2 - a1 * &c2 - &a2 * &c1);
                    let disc = h3 * h3 - BigInt::from(4) * &a2 * &k;
                    if !disc.is_negative() {
                        let s = disc.sqrt();
                        if &s * &s == disc {
                            for num in [h3 + &s, h3 - &s] {
                                let den = BigInt::from(2) * &a2;
                                if (&num % &den).is_zero() {
                                    let b1 = num / &den;
                                    let rest = h3 - &a2 * &b1;
                                    if (&rest % a1).is_zero() {
                                        candidates.push((b1, rest / a1));
                                    }
                                }
                            }
                        }
                    }
                }
                for (b1, b2) in candidates {
                    let p = vec![c1.clone(), b1, a1.clone()];
                    let q = vec![c2.clone(), b2, a2.clone()];
                    if poly_mul(&p, &q) == h {
                        return Ok(Some((p, q)));
                    }
                }
            }
        }
    }
    Ok(None)
}
