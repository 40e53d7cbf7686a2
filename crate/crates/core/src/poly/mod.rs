// SPDX-License-Identifier: Apache-2.0

//! Integer and rational polynomials of degree at most four.
//!
//! [`IntPolynomial`] stores `f(x) = c0 x⁴ + c1 x³ + c2 x² + c3 x + c4` as the
//! array `[c0, c1, c2, c3, c4]`, highest degree first. [`RatPoly`] is the
//! working type for field computations and stores coefficients lowest degree
//! first.

mod factor;
mod modp;
pub(crate) mod rational;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use factor::{factor_over_q, factor_rat_poly, rational_roots, FactorizationQ};
pub use modp::count_roots_mod_p;
pub use rational::{resolvent_cubic, RatPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: [i64; 5],
}

impl IntPolynomial {
    /// `coeffs = [c0, c1, c2, c3, c4]`, highest degree first.
    pub const fn new(coeffs: [i64; 5]) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> [i64; 5] {
        self.coeffs
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs[4 - k]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0).map(|i| 4 - i)
    }

    pub fn leading(&self) -> i64 {
        self.degree().map_or(0, |d| self.coeff(d))
    }

    pub fn eval(&self, x: i128) -> Result<i128> {
        self.coeffs.iter().try_fold(0i128, |acc, &c| {
            acc.checked_mul(x).and_then(|v| v.checked_add(c as i128)).ok_or(Error::Overflow("polynomial evaluation"))
        })
    }

    /// Coefficients lowest degree first, trimmed to the true degree.
    pub(crate) fn to_bigint_asc(&self) -> Vec<BigInt> {
        let d = self.degree().unwrap_or(0);
        (0..=d).map(|k| BigInt::from(self.coeff(k))).collect()
    }

    /// Builds from lowest-degree-first integer coefficients (degree ≤ 4).
    pub(crate) fn from_bigint_asc(c: &[BigInt]) -> Result<Self> {
        if c.len() > 5 {
            return Err(Error::InvalidInput(format!("degree {} exceeds 4", c.len() - 1)));
        }
        let mut coeffs = [0i64; 5];
        for (k, v) in c.iter().enumerate() {
            coeffs[4 - k] = i64::try_from(v).map_err(|_| Error::Overflow("coefficient"))?;
        }
        Ok(Self { coeffs })
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let asc: Vec<BigInt> = (0..5).map(|k| BigInt::from(self.coeff(k))).collect();
        write_poly(f, &asc, "x")
    }
}

pub(crate) fn write_poly<T: fmt::Display + Signed + Zero + One + PartialEq>(
    f: &mut fmt::Formatter<'_>,
    asc: &[T],
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for k in (0..asc.len()).rev() {
        let c = &asc[k];
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let unit = mag.is_one();
        match (k, unit) {
            (0, _) => write!(f, "{mag}")?,
            (1, true) => write!(f, "{var}")?,
            (1, false) => write!(f, "{mag}{var}")?,
            (_, true) => write!(f, "{var}^{k}")?,
            (_, false) => write!(f, "{mag}{var}^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Polynomial discriminant, `(-1)^(n(n-1)/2) Res(f, f') / lead(f)`.
///
/// Zero iff `f` has a repeated root over an algebraic closure.
pub fn discriminant(f: &IntPolynomial) -> Result<BigInt> {
    let d = f.degree().unwrap_or(0);
    if d < 2 {
        return Err(Error::InvalidInput(format!("discriminant needs degree ≥ 2, got {d}")));
    }
    Ok(discriminant_big(&f.to_bigint_asc()))
}

/// Discriminant of a polynomial given lowest degree first; degree ≥ 1.
/// A linear polynomial has discriminant 1.
pub(crate) fn discriminant_big(asc: &[BigInt]) -> BigInt {
    let n = asc.len() - 1;
    if n == 1 {
        return BigInt::one();
    }
    let deriv: Vec<BigInt> = (1..=n).map(|k| &asc[k] * BigInt::from(k)).collect();
    let res = resultant(asc, &deriv);
    let lead = &asc[n];
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    debug_assert!((&res % lead).is_zero());
    res / lead * sign
}

/// Resultant via the Sylvester determinant, computed with fraction-free
/// Bareiss elimination. Inputs lowest degree first.
fn resultant(p: &[BigInt], q: &[BigInt]) -> BigInt {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in p.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in q.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// The binary form `F(u, v) = v⁴ f(u / v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    /// `F = c0 u⁴ + c1 u³v + c2 u²v² + c3 uv³ + c4 v⁴`
    coeffs: [i64; 5],
}

pub fn homogenize(f: &IntPolynomial) -> BinaryForm {
    BinaryForm { coeffs: f.coeffs }
}

impl BinaryForm {
    pub fn coeffs(&self) -> [i64; 5] {
        self.coeffs
    }

    /// `F(u, 1)` as a polynomial.
    pub fn dehomogenize(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs)
    }

    pub fn eval(&self, u: i64, v: i64) -> Result<i128> {
        let (u, v) = (u as i128, v as i128);
        let mut upow = [1i128; 5];
        let mut vpow = [1i128; 5];
        for k in 1..5 {
            upow[k] = upow[k - 1].checked_mul(u).ok_or(Error::Overflow("form evaluation"))?;
            vpow[k] = vpow[k - 1].checked_mul(v).ok_or(Error::Overflow("form evaluation"))?;
        }
        let mut acc = 0i128;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let term = (c as i128)
                .checked_mul(upow[4 - i])
                .and_then(|t| t.checked_mul(vpow[i]))
                .ok_or(Error::Overflow("form evaluation"))?;
            acc = acc.checked_add(term).ok_or(Error::Overflow("form evaluation"))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (du, dv) = (4 - i, i);
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            if c.unsigned_abs() != 1 {
                write!(f, "{}", c.unsigned_abs())?;
            }
            for (var, d) in [("u", du), ("v", dv)] {
                match d {
                    0 => {}
                    1 => f.write_str(var)?,
                    _ => write!(f, "{var}^{d}")?,
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `F(u, v)` for a form given directly by its coefficients.
pub fn eval_form(form: &BinaryForm, u: i64, v: i64) -> Result<i128> {
    form.eval(u, v)
}
