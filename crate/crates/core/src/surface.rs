// SPDX-License-Identifier: Apache-2.0

//! The validated Châtelet surface `y² − a z² = f(x)`, its anticanonical
//! model in P⁴ and its Picard rank.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{discriminant, factor_over_q, homogenize, BinaryForm, FactorizationQ, IntPolynomial, RatPoly};
use crate::quadfield::{chebotarev_probe, is_square_integer, sqrt_a_in_qf, ProbeVerdict, DEFAULT_PROBE_BOUND};

/// A violated surface hypothesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    /// a = 0
    ZeroA,
    /// a is a perfect square
    SquareA(i64),
    /// deg f ∉ {3, 4}
    Degree(Option<usize>),
    /// disc f = 0
    RepeatedRoot,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::ZeroA => f.write_str("a must be nonzero"),
            Hypothesis::SquareA(a) => write!(f, "a = {a} is a perfect square"),
            Hypothesis::Degree(d) => match d {
                Some(d) => write!(f, "deg f = {d}, expected 3 or 4"),
                None => f.write_str("f is the zero polynomial"),
            },
            Hypothesis::RepeatedRoot => f.write_str("f has a repeated root (disc f = 0)"),
        }
    }
}

/// The raw `(a, f)` record accepted by [`ChateletSurface::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub a: i64,
    /// `[c0, c1, c2, c3, c4]` with `f = c0 x⁴ + … + c4`.
    pub f: [i64; 5],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// The quadric pair cutting out the anticanonical model in P⁴:
/// `x0 x2 = x1²` and `x3² − a x4² = Q(x0, x1, x2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DelPezzoModel {
    pub a: i64,
    /// Coefficients of `x0², x0x1, x0x2, x1², x1x2, x2²` in Q.
    pub q: [i64; 6],
}

impl DelPezzoModel {
    pub fn from_polynomial(a: i64, f: &IntPolynomial) -> Self {
        let [c0, c1, c2, c3, c4] = f.coeffs();
        Self { a, q: [c4, c3, c2, 0, c1, c0] }
    }

    pub fn eval_q(&self, x0: i128, x1: i128, x2: i128) -> Option<i128> {
        let mono = [x0 * x0, x0 * x1, x0 * x2, x1 * x1, x1 * x2, x2 * x2];
        self.q.iter().zip(mono).try_fold(0i128, |acc, (&c, m)| acc.checked_add((c as i128).checked_mul(m)?))
    }

    /// Whether the integer vector satisfies both equations.
    pub fn contains(&self, x: [i128; 5]) -> Option<bool> {
        let conic = x[0].checked_mul(x[2])? == x[1].checked_mul(x[1])?;
        let lhs = x[3].checked_mul(x[3])?.checked_sub((self.a as i128).checked_mul(x[4].checked_mul(x[4])?)?)?;
        Some(conic && lhs == self.eval_q(x[0], x[1], x[2])?)
    }

    /// Coefficients of `Q(v², uv, u²)` as a binary quartic, `[u⁴, u³v, …, v⁴]`.
    pub fn pullback(&self) -> [i64; 5] {
        let [q00, q01, q02, q11, q12, q22] = self.q;
        // x0 = v², x1 = uv, x2 = u²
        [q22, q12, q02 + q11, q01, q00]
    }
}

impl fmt::Display for DelPezzoModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x0^2", "x0x1", "x0x2", "x1^2", "x1x2", "x2^2"];
        write!(f, "x0x2 = x1^2, x3^2 ")?;
        f.write_str(if self.a < 0 { "+ " } else { "- " })?;
        if self.a.unsigned_abs() != 1 {
            write!(f, "{}", self.a.unsigned_abs())?;
        }
        f.write_str("x4^2")?;
        f.write_str(" = ")?;
        let mut first = true;
        for (c, m) in self.q.iter().zip(names) {
            if *c == 0 {
                continue;
            }
            if !first {
                f.write_str(if *c < 0 { " - " } else { " + " })?;
            } else if *c < 0 {
                f.write_str("-")?;
            }
            first = false;
            if c.unsigned_abs() != 1 {
                write!(f, "{}", c.unsigned_abs())?;
            }
            f.write_str(m)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Per-factor verdict behind the Picard rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorVerdict {
    pub factor: RatPoly,
    pub multiplicity: u32,
    pub contains_sqrt_a: bool,
    pub probe: ProbeVerdict,
}

#[derive(Debug, Clone)]
pub struct ChateletSurface {
    a: i64,
    f: IntPolynomial,
    form: BinaryForm,
    delpezzo: DelPezzoModel,
    disc: BigInt,
    factorization: FactorizationQ,
    rho: u32,
    label: Option<String>,
}

impl ChateletSurface {
    pub fn validate(a: i64, coeffs: [i64; 5]) -> Result<Self> {
        if a == 0 {
            return Err(Error::Hypothesis(Hypothesis::ZeroA));
        }
        if is_square_integer(&BigInt::from(a)) {
            return Err(Error::Hypothesis(Hypothesis::SquareA(a)));
        }
        let f = IntPolynomial::new(coeffs);
        match f.degree() {
            Some(3 | 4) => {}
            d => return Err(Error::Hypothesis(Hypothesis::Degree(d))),
        }
        let disc = discriminant(&f)?;
        if disc.is_zero() {
            return Err(Error::Hypothesis(Hypothesis::RepeatedRoot));
        }
        let form = homogenize(&f);
        let delpezzo = DelPezzoModel::from_polynomial(a, &f);
        if delpezzo.pullback() != form.coeffs() {
            return Err(Error::InvalidInput("Q(v², uv, u²) ≠ F(u, v)".into()));
        }
        let factorization = factor_over_q(&f)?;
        let mut rho = 2;
        for (g, _) in &factorization.factors {
            if sqrt_a_in_qf(g, a)? {
                rho += 1;
            }
        }
        Ok(Self { a, f, form, delpezzo, disc, factorization, rho, label: None })
    }

    pub fn from_spec(spec: &SurfaceSpec) -> Result<Self> {
        let mut s = Self::validate(spec.a, spec.f)?;
        s.label = spec.label.clone();
        Ok(s)
    }

    pub fn spec(&self) -> SurfaceSpec {
        SurfaceSpec { a: self.a, f: self.f.coeffs(), label: self.label.clone() }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn f(&self) -> &IntPolynomial {
        &self.f
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    pub fn delpezzo_model(&self) -> &DelPezzoModel {
        &self.delpezzo
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn degree(&self) -> usize {
        self.f.degree().expect("validated")
    }

    pub fn factorization(&self) -> &FactorizationQ {
        &self.factorization
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// 2 plus the number of irreducible factors fᵢ of f with √a ∈ Q[x]/(fᵢ).
    pub fn picard_rank(&self) -> u32 {
        self.rho
    }

    /// Factor table with membership verdicts and the prime-scan cross-check.
    pub fn rank_breakdown(&self) -> Result<Vec<FactorVerdict>> {
        self.factorization
            .factors
            .iter()
            .map(|(g, m)| {
                Ok(FactorVerdict {
                    factor: g.clone(),
                    multiplicity: *m,
                    contains_sqrt_a: sqrt_a_in_qf(g, self.a)?,
                    probe: chebotarev_probe(g, self.a, DEFAULT_PROBE_BOUND)?,
                })
            })
            .collect()
    }

    pub(crate) fn require_negative_a(&self) -> Result<()> {
        if self.a < 0 {
            Ok(())
        } else {
            Err(Error::UnsupportedRegime(self.a))
        }
    }
}

impl fmt::Display for ChateletSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.a < 0 { "y^2 + " } else { "y^2 - " })?;
        if self.a.unsigned_abs() != 1 {
            write!(f, "{}", self.a.unsigned_abs())?;
        }
        write!(f, "z^2 = {}", self.f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display() {
        assert_eq!(ChateletSurface::validate(-1, [0, 1, 0, 1, 0]).unwrap().to_string(), "y^2 + z^2 = x^3 + x");
        assert_eq!(ChateletSurface::validate(3, [1, 0, 0, 0, 1]).unwrap().to_string(), "y^2 - 3z^2 = x^4 + 1");
    }

    #[test]
    fn validate_examples() {
        let s = ChateletSurface::validate(-1, [0, 1, 0, 1, 0]).unwrap();
        assert_eq!(s.discriminant(), &BigInt::from(-4));
        assert_eq!(
            ChateletSurface::validate(4, [1, 0, 0, 0, 1]).unwrap_err(),
            Error::Hypothesis(Hypothesis::SquareA(4))
        );
        assert_eq!(
            ChateletSurface::validate(-1, [0, 1, -1, 0, 0]).unwrap_err(),
            Error::Hypothesis(Hypothesis::RepeatedRoot)
        );
        assert_eq!(ChateletSurface::validate(0, [1, 0, 0, 0, 1]).unwrap_err(), Error::Hypothesis(Hypothesis::ZeroA));
        assert_eq!(
            ChateletSurface::validate(-1, [0, 0, 1, 0, 1]).unwrap_err(),
            Error::Hypothesis(Hypothesis::Degree(Some(2)))
        );
        // positive nonsquare a validates; only counting requires a < 0
        assert!(ChateletSurface::validate(2, [1, 0, 0, 0, 1]).is_ok());
    }

    #[test]
    fn picard_rank_examples() {
        let rank = |a, c| ChateletSurface::validate(a, c).unwrap().picard_rank();
        assert_eq!(rank(-1, [0, 1, 0, -1, 0]), 2);
        assert_eq!(rank(-1, [1, 0, 3, 0, 2]), 3);
        assert_eq!(rank(-1, [1, 0, 5, 0, 4]), 4);
        assert_eq!(rank(2, [1, 0, 0, 0, 1]), 3);
        assert_eq!(rank(3, [1, 0, 0, 0, 1]), 2);
        assert_eq!(rank(-1, [0, 1, 0, 1, 0]), 3);
    }

    #[test]
    fn delpezzo_examples() {
        let s = ChateletSurface::validate(-1, [0, 1, 0, 1, 0]).unwrap();
        let y = s.delpezzo_model();
        assert_eq!(y.to_string(), "x0x2 = x1^2, x3^2 + x4^2 = x0x1 + x1x2");
        assert_eq!(y.eval_q(1, 1, 1), Some(2));
        assert_eq!(y.contains([1, 1, 1, 1, 1]), Some(true));
        assert_eq!(y.contains([1, 1, 1, 1, 0]), Some(false));
    }

    #[test]
    fn rank_breakdown_agrees_with_probe() {
        let s = ChateletSurface::validate(-1, [1, 0, 3, 0, 2]).unwrap();
        let rows = s.rank_breakdown().unwrap();
        assert_eq!(rows.len(), 2);
        for r in rows {
            assert_eq!(r.contains_sqrt_a, r.probe == ProbeVerdict::ConsistentWithMember);
        }
    }

    proptest! {
        #[test]
        fn pullback_is_the_form(c in prop::array::uniform5(-50i64..50), a in -20i64..-1) {
            let f = IntPolynomial::new(c);
            let y = DelPezzoModel::from_polynomial(a, &f);
            prop_assert_eq!(y.pullback(), homogenize(&f).coeffs());
        }

        #[test]
        fn rank_in_range_and_square_class_invariant(
            c in prop::array::uniform5(-6i64..6), a in -12i64..-1, k in 1i64..5,
        ) {
            if let Ok(s) = ChateletSurface::validate(a, c) {
                let rho = s.picard_rank();
                prop_assert!((2..=4).contains(&rho));
                if s.factorization().factors.iter().all(|(g, _)| g.degree().unwrap() % 2 == 1) {
                    prop_assert_eq!(rho, 2);
                }
                let scaled = ChateletSurface::validate(a * k * k, c).unwrap();
                prop_assert_eq!(scaled.picard_rank(), rho);
            }
        }
    }
}
