// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic in Q(√a) and the decision procedure for √a ∈ Q[x]/(g).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_prime, legendre, PrimeIter};
use crate::error::{Error, Result};
use crate::poly::{count_roots_mod_p, discriminant, factor_rat_poly, resolvent_cubic, RatPoly};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Whether `n` is a perfect square in Z (false for negatives).
pub fn is_square_integer(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

/// Rational square root, if `x` is the square of a rational.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// `p + q√a` with rational p, q and a fixed nonsquare integer a.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadFieldElement {
    pub p: BigRational,
    pub q: BigRational,
    a: i64,
}

impl QuadFieldElement {
    pub fn new(p: BigRational, q: BigRational, a: i64) -> Result<Self> {
        if is_square_integer(&BigInt::from(a)) {
            return Err(Error::InvalidInput(format!("{a} is a square; Q(√{a}) = Q")));
        }
        Ok(Self { p, q, a })
    }

    pub fn from_ints(p: i64, q: i64, a: i64) -> Result<Self> {
        Self::new(rat(p), rat(q), a)
    }

    pub fn rational(p: BigRational, a: i64) -> Result<Self> {
        Self::new(p, BigRational::zero(), a)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// N(p + q√a) = p² − a q².
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - rat(self.a) * &self.q * &self.q
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// A square root in Q(√a), if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        let a = rat(self.a);
        let witness = |s: BigRational, t: BigRational| Self { p: s, q: t, a: self.a };
        if self.q.is_zero() {
            // (s + t√a)² rational forces st = 0
            if let Some(s) = rational_sqrt(&self.p) {
                return Some(witness(s, BigRational::zero()));
            }
            return rational_sqrt(&(&self.p / &a)).map(|t| witness(BigRational::zero(), t));
        }
        let r = rational_sqrt(&self.norm())?;
        let two = rat(2);
        for cand in [(&self.p + &r) / &two, (&self.p - &r) / &two] {
            if let Some(s) = rational_sqrt(&cand) {
                if s.is_zero() {
                    continue;
                }
                let t = &self.q / (&two * &s);
                return Some(witness(s, t));
            }
        }
        None
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(self.a, other.a, "mixing Q(√{}) and Q(√{})", self.a, other.a);
    }
}

impl Add for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn add(self, o: Self) -> QuadFieldElement {
        self.check_same_field(o);
        QuadFieldElement { p: &self.p + &o.p, q: &self.q + &o.q, a: self.a }
    }
}

impl Sub for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn sub(self, o: Self) -> QuadFieldElement {
        self.check_same_field(o);
        QuadFieldElement { p: &self.p - &o.p, q: &self.q - &o.q, a: self.a }
    }
}

impl Mul for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn mul(self, o: Self) -> QuadFieldElement {
        self.check_same_field(o);
        QuadFieldElement {
            p: &self.p * &o.p + rat(self.a) * &self.q * &o.q,
            q: &self.p * &o.q + &self.q * &o.p,
            a: self.a,
        }
    }
}

impl Neg for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn neg(self) -> QuadFieldElement {
        QuadFieldElement { p: -&self.p, q: -&self.q, a: self.a }
    }
}

impl fmt::Display for QuadFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{}", self.p, self.q, self.a)
    }
}

/// Whether `x` is a square in Q(√a), with a square root as witness.
pub fn is_square_in_qsqrt(x: &QuadFieldElement) -> Option<QuadFieldElement> {
    x.sqrt()
}

/// Roots of a rational polynomial of degree ≤ 3 that lie in Q(√a).
fn roots_in_qsqrt(g: &RatPoly, a: i64) -> Result<Vec<QuadFieldElement>> {
    let mut out = Vec::new();
    for (h, _) in factor_rat_poly(g)?.factors {
        match h.degree() {
            Some(1) => out.push(QuadFieldElement::rational(-h.coeff(0), a)?),
            Some(2) => {
                // z² + u z + v, roots (−u ± √(u² − 4v)) / 2
                let (u, v) = (h.coeff(1), h.coeff(0));
                let d = &u * &u - rat(4) * &v;
                if let Some(w) = rational_sqrt(&(&d / rat(a))) {
                    let half = rat(2);
                    for sign in [1, -1] {
                        out.push(QuadFieldElement::new(-&u / &half, &w * rat(sign) / &half, a)?);
                    }
                }
            }
            // an irreducible cubic has no root in a quadratic field
            _ => {}
        }
    }
    Ok(out)
}

/// Whether √a lies in the stem field Q[x]/(g) of an irreducible `g`.
pub fn sqrt_a_in_qf(g: &RatPoly, a: i64) -> Result<bool> {
    if is_square_integer(&BigInt::from(a)) {
        return Err(Error::InvalidInput(format!("a = {a} is a square")));
    }
    let deg = g.degree().ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    if !(1..=4).contains(&deg) {
        return Err(Error::InvalidInput(format!("degree {deg} outside 1..=4")));
    }
    if !factor_rat_poly(g)?.is_irreducible() {
        return Err(Error::Reducible(g.to_string()));
    }
    match deg {
        // odd degree cannot contain a quadratic subfield
        1 | 3 => Ok(false),
        2 => {
            let m = g.monic();
            let (b, c) = (m.coeff(1), m.coeff(0));
            let disc = &b * &b - rat(4) * &c;
            Ok(rational_sqrt(&(disc * rat(a))).is_some())
        }
        _ => quartic_splits_over_qsqrt(g, a),
    }
}

/// For an irreducible quartic, √a ∈ Q[x]/(g) iff g factors over Q(√a).
/// No root of g lies in a quadratic field, so a factorization pairs two
/// quadratics (x² + s x + t)(x² − s x + t') of the depressed quartic
/// x⁴ + p x² + q x + r; then θ = t + t' is a resolvent root, s² = θ − p and
/// t, t' are the roots of w² − θ w + r.
fn quartic_splits_over_qsqrt(g: &RatPoly, a: i64) -> Result<bool> {
    let h = crate::poly::rational::depress_quartic(g);
    let p = QuadFieldElement::rational(h.coeff(2), a)?;
    let r = QuadFieldElement::rational(h.coeff(0), a)?;
    let four = QuadFieldElement::rational(rat(4), a)?;
    let resolvent = resolvent_cubic(&h)?;
    for theta in roots_in_qsqrt(&resolvent, a)? {
        let s2 = &theta - &p;
        let splits = if !s2.is_zero() {
            // t' − t = q / s is then forced and t t' = r holds automatically
            s2.is_square()
        } else {
            // s = 0 forces q = 0, so h = (x² + t)(x² + t') with t + t' = p
            (&p.square() - &(&four * &r)).is_square()
        };
        if splits {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// A prime `p` with a root of g mod p and (a/p) = −1: √a ∉ Q[x]/(g).
    CertifiedNonmember { witness: u64 },
    /// No witness below the bound.
    ConsistentWithMember,
}

pub const DEFAULT_PROBE_BOUND: u64 = 10_000;

/// Scans primes `p ≤ bound`, `p ∤ 2a·disc(g)·lead(g)`, for a degree-one prime
/// of Q[x]/(g) above p that is inert in Q(√a).
pub fn chebotarev_probe(g: &RatPoly, a: i64, bound: u64) -> Result<ProbeVerdict> {
    let int = g.to_int_polynomial()?;
    let deg = int.degree().ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    let disc = if deg >= 2 { discriminant(&int)? } else { BigInt::one() };
    let bad = BigInt::from(2) * BigInt::from(a) * disc * BigInt::from(int.leading());
    for p in PrimeIter::new(bound) {
        debug_assert!(is_prime(p));
        if (&bad % BigInt::from(p)).is_zero() {
            continue;
        }
        if legendre(a as i128, p) == -1 && count_roots_mod_p(&int, p) >= 1 {
            return Ok(ProbeVerdict::CertifiedNonmember { witness: p });
        }
    }
    Ok(ProbeVerdict::ConsistentWithMember)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qf(p: i64, q: i64, a: i64) -> QuadFieldElement {
        QuadFieldElement::from_ints(p, q, a).unwrap()
    }

    fn g(asc: &[i64]) -> RatPoly {
        RatPoly::from_ints(asc)
    }

    #[test]
    fn square_examples() {
        let w = is_square_in_qsqrt(&qf(0, 2, -1)).unwrap();
        assert_eq!(w.square(), qf(0, 2, -1));
        assert!(w == qf(1, 1, -1) || w == qf(-1, -1, -1));
        assert!(is_square_in_qsqrt(&qf(3, 0, -1)).is_none());
        assert!(is_square_in_qsqrt(&qf(0, 1, -1)).is_none());
        // −4 = (2√−1)²
        assert_eq!(is_square_in_qsqrt(&qf(-4, 0, -1)).unwrap().square(), qf(-4, 0, -1));
        // 3 + 2√2 = (1 + √2)²
        assert_eq!(is_square_in_qsqrt(&qf(3, 2, 2)).unwrap().square(), qf(3, 2, 2));
        assert!(QuadFieldElement::from_ints(1, 1, 9).is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(sqrt_a_in_qf(&g(&[1, 0, 1]), -1).unwrap());
        assert!(!sqrt_a_in_qf(&g(&[2, 0, 1]), -1).unwrap());
        assert!(sqrt_a_in_qf(&g(&[1, 0, 0, 0, 1]), 2).unwrap());
        assert!(!sqrt_a_in_qf(&g(&[1, 0, 0, 0, 1]), 3).unwrap());
        // x² + 4 defines Q(i)
        assert!(sqrt_a_in_qf(&g(&[4, 0, 1]), -1).unwrap());
        assert!(matches!(sqrt_a_in_qf(&g(&[2, 3, 1]), -1), Err(Error::Reducible(_))));
        assert!(!sqrt_a_in_qf(&g(&[-1, 1]), -1).unwrap());
        assert!(!sqrt_a_in_qf(&g(&[-2, 0, 0, 1]), -3).unwrap());
    }

    #[test]
    fn cyclotomic_eighth_subfields() {
        let phi8 = g(&[1, 0, 0, 0, 1]);
        for (a, expect) in [(-1, true), (2, true), (-2, true), (3, false), (-3, false), (5, false)] {
            assert_eq!(sqrt_a_in_qf(&phi8, a).unwrap(), expect, "a = {a}");
        }
        // square classes: −4 ~ −1, 8 ~ 2, −18 ~ −2
        for a in [-4, 8, -18] {
            assert!(sqrt_a_in_qf(&phi8, a).unwrap(), "a = {a}");
        }
    }

    #[test]
    fn quartic_fields_with_known_quadratic_subfields() {
        // Q(√2, √3): x⁴ − 10x² + 1 contains √2, √3, √6 only
        let biq = g(&[1, 0, -10, 0, 1]);
        for (a, e) in [(2, true), (3, true), (6, true), (-1, false), (5, false), (-6, false)] {
            assert_eq!(sqrt_a_in_qf(&biq, a).unwrap(), e, "a = {a}");
        }
        // Q(ζ5): quadratic subfield Q(√5)
        let phi5 = g(&[1, 1, 1, 1, 1]);
        for (a, e) in [(5, true), (-5, false), (-1, false), (20, true)] {
            assert_eq!(sqrt_a_in_qf(&phi5, a).unwrap(), e, "a = {a}");
        }
        // x⁴ − 2: quadratic subfield Q(√2) only
        let pure = g(&[-2, 0, 0, 0, 1]);
        for (a, e) in [(2, true), (-2, false), (-1, false), (8, true)] {
            assert_eq!(sqrt_a_in_qf(&pure, a).unwrap(), e, "a = {a}");
        }
        // x⁴ + x + 1 has Galois group S4: no quadratic subfield of its stem field
        let s4 = g(&[1, 1, 0, 0, 1]);
        for a in [-1, 2, -2, 3, -3, 229, -229] {
            assert!(!sqrt_a_in_qf(&s4, a).unwrap(), "a = {a}");
        }
        // x⁴ − 2x² − 1 : roots ±√(1 ± √2); contains √2, not √−1
        let d4 = g(&[-1, 0, -2, 0, 1]);
        assert!(sqrt_a_in_qf(&d4, 2).unwrap());
        assert!(!sqrt_a_in_qf(&d4, -1).unwrap());
        // cyclic quartic x⁴ − 4x² + 2 (roots ±√(2 ± √2)): contains √2
        let c4 = g(&[2, 0, -4, 0, 1]);
        assert!(sqrt_a_in_qf(&c4, 2).unwrap());
        assert!(!sqrt_a_in_qf(&c4, -2).unwrap());
    }

    #[test]
    fn probe_examples() {
        assert_eq!(chebotarev_probe(&g(&[2, 0, 1]), -1, 100).unwrap(), ProbeVerdict::CertifiedNonmember { witness: 3 });
        assert_eq!(chebotarev_probe(&g(&[1, 0, 1]), -1, 10_000).unwrap(), ProbeVerdict::ConsistentWithMember);
        assert!(matches!(chebotarev_probe(&g(&[-1, 1]), -1, 100).unwrap(), ProbeVerdict::CertifiedNonmember { .. }));
        assert!(matches!(
            chebotarev_probe(&g(&[1, 0, 0, 0, 1]), 3, 10_000).unwrap(),
            ProbeVerdict::CertifiedNonmember { .. }
        ));
    }

    /// The deterministic test and the probe on a corpus of ≥ 30 pairs.
    #[test]
    fn deterministic_and_probe_agree() {
        let polys: Vec<Vec<i64>> = vec![
            vec![1, 0, 1],
            vec![2, 0, 1],
            vec![3, 0, 1],
            vec![-2, 0, 1],
            vec![1, 1, 1],
            vec![-1, 1, 1],
            vec![5, 0, 2],
            vec![1, 0, 0, 0, 1],
            vec![1, 0, -10, 0, 1],
            vec![1, 1, 1, 1, 1],
            vec![-2, 0, 0, 0, 1],
            vec![1, 1, 0, 0, 1],
            vec![2, 0, -4, 0, 1],
            vec![-2, 0, 0, 1],
            vec![1, -1, 0, 1],
        ];
        let avals = [-1i64, 2, -2, 3, -3, 5, -7];
        let mut checked = 0;
        for asc in &polys {
            let gp = g(asc);
            let deg = gp.degree().unwrap();
            for &a in &avals {
                let member = sqrt_a_in_qf(&gp, a).unwrap();
                let probe = chebotarev_probe(&gp, a, DEFAULT_PROBE_BOUND).unwrap();
                if member {
                    assert_eq!(probe, ProbeVerdict::ConsistentWithMember, "{gp}, a={a}");
                } else {
                    assert!(matches!(probe, ProbeVerdict::CertifiedNonmember { .. }), "{gp}, a={a}");
                }
                if deg == 2 {
                    let m = gp.monic();
                    let disc = m.coeff(1) * m.coeff(1) - rat(4) * m.coeff(0);
                    assert_eq!(member, rational_sqrt(&(disc * rat(a))).is_some());
                }
                if deg % 2 == 1 {
                    assert!(!member);
                }
                checked += 1;
            }
        }
        assert!(checked >= 30);
    }

    proptest! {
        #[test]
        fn sqrt_witness_squares_back(p in -60i64..60, q in -60i64..60, a in prop::sample::select(vec![-1i64, -2, -3, 2, 3, 5, -7, 6])) {
            let x = qf(p, q, a);
            let sq = x.square();
            let w = is_square_in_qsqrt(&sq);
            prop_assert!(w.is_some());
            prop_assert_eq!(w.unwrap().square(), sq.clone());
            if let Some(w) = is_square_in_qsqrt(&qf(p, q, a)) {
                prop_assert_eq!(w.square(), qf(p, q, a));
            }
        }

        #[test]
        fn membership_invariant_under_scaling_and_shift(
            idx in 0usize..6,
            a in prop::sample::select(vec![-1i64, 2, -2, 3, 5, 6]),
            num in 1i64..9, den in 1i64..9, shift_n in -7i64..7, shift_d in 1i64..5,
        ) {
            let base = [
                vec![1i64, 0, 1], vec![2, 0, 1], vec![1, 0, 0, 0, 1],
                vec![1, 0, -10, 0, 1], vec![1, 1, 1, 1, 1], vec![-2, 0, 0, 0, 1],
            ];
            let gp = g(&base[idx]);
            let k = BigRational::new(num.into(), den.into());
            let c = BigRational::new(shift_n.into(), shift_d.into());
            let moved = gp.shift(&c).scale(&k);
            prop_assert_eq!(sqrt_a_in_qf(&gp, a).unwrap(), sqrt_a_in_qf(&moved, a).unwrap());
        }
    }
}
