// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntPolynomial;
use crate::error::{Error, Result};

/// Polynomial over Q, coefficients lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// From integer coefficients, lowest degree first.
    pub fn from_ints(asc: &[i64]) -> Self {
        Self::new(asc.iter().map(|&c| q(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn monic(&self) -> Self {
        let lead = self.leading();
        if lead.is_zero() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quo[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quo), Self::new(rem))
    }

    /// `g(x + c)`, same splitting field and same stem field as `g`.
    pub fn shift(&self, c: &BigRational) -> Self {
        // Horner in the ring Q[x]: g(x + c) = (...(a_n (x+c) + a_{n-1})(x+c) ...)
        let lin = Self::new(vec![c.clone(), BigRational::one()]);
        self.coeffs.iter().rev().fold(Self::new(Vec::new()), |acc, a| {
            let mut next = acc.mul(&lin);
            if next.coeffs.is_empty() {
                next.coeffs.push(a.clone());
            } else {
                next.coeffs[0] += a;
            }
            Self::new(next.coeffs)
        })
    }

    /// Primitive integer multiple with positive leading coefficient, and the
    /// rational content `c` with `self = c * primitive`.
    pub fn primitive_part(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::zero(), Vec::new());
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (BigRational::new(g, lcm), prim)
    }

    /// Primitive integer polynomial, if it fits the fixed-width type.
    pub fn to_int_polynomial(&self) -> Result<IntPolynomial> {
        let (_, prim) = self.primitive_part();
        IntPolynomial::from_bigint_asc(&prim)
    }

    /// Roots in Q, without multiplicity.
    pub fn rational_roots(&self) -> Result<Vec<BigRational>> {
        let (_, prim) = self.primitive_part();
        super::factor::rational_roots_big(&prim)
    }
}

impl From<&IntPolynomial> for RatPoly {
    fn from(f: &IntPolynomial) -> Self {
        Self::new((0..5).map(|k| q(f.coeff(k))).collect())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_poly(f, &self.coeffs, "x")
    }
}

/// Resolvent cubic `z³ − p z² − 4r z + (4pr − q²)` of the depressed quartic
/// `x⁴ + p x² + q x + r`. Its roots are `α₁α₂ + α₃α₄` and the two other
/// pairings of the quartic's roots.
pub fn resolvent_cubic(g: &RatPoly) -> Result<RatPoly> {
    if g.degree() != Some(4) || !g.leading().is_one() || !g.coeff(3).is_zero() {
        return Err(Error::InvalidInput(format!("resolvent needs a monic depressed quartic, got {g}")));
    }
    let (p, qq, r) = (g.coeff(2), g.coeff(1), g.coeff(0));
    let four = q(4);
    Ok(RatPoly::new(vec![&four * &p * &r - &qq * &qq, -(&four * &r), -p, BigRational::one()]))
}

/// Monic, depressed form `x⁴ + p x² + q x + r` of a quartic via x → x − b/4.
pub(crate) fn depress_quartic(g: &RatPoly) -> RatPoly {
    let m = g.monic();
    let shift = -(m.coeff(3) / q(4));
    m.shift(&shift)
}
