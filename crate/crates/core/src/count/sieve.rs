// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::fiber::{fiber_count, FiberKey, HeightMode};
use crate::arith::{factorize, legendre, locally_isotropic, theta, varpi, PrimeIter};
use crate::error::{Error, Result};
use crate::poly::{count_roots_mod_p, discriminant, IntPolynomial, RatPoly};
use crate::surface::ChateletSurface;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IsotropyVerdict {
    #[serde(serialize_with = "ser_ratio")]
    pub theta: Ratio<u64>,
    pub locally_solvable: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// ϑ(|F(u, v)|) and local solvability of `y² − a z² = F(u, v) t²`.
pub fn isotropy_filter(s: &ChateletSurface, u: i64, v: i64) -> Result<IsotropyVerdict> {
    let fuv = s.form().eval(u, v)?;
    if fuv == 0 {
        return Err(Error::DegenerateFiber(u, v));
    }
    Ok(IsotropyVerdict {
        theta: theta(&factorize(fuv)?, s.a()),
        locally_solvable: locally_isotropic(s.a() as i128, fuv)?,
    })
}

fn varpi_at(s: &ChateletSurface, u: i64, v: i64) -> Result<u64> {
    let fuv = s.form().eval(u, v)?;
    if fuv == 0 {
        return Ok(0);
    }
    Ok(varpi(&factorize(fuv)?, s.a()))
}

/// `S(U, V)`: the sum of ϖ(|F(u, v)|) over the full box, with ϖ(0) = 0.
pub fn sum_s(s: &ChateletSurface, big_u: u64, big_v: u64) -> Result<u128> {
    let (bu, bv) = (to_i64(big_u)?, to_i64(big_v)?);
    let rows: Vec<u128> = (-bv..=bv)
        .into_par_iter()
        .map(|v| (-bu..=bu).try_fold(0u128, |acc, u| Ok(acc + varpi_at(s, u, v)? as u128)))
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().sum())
}

/// `S(V, V)` for every `V` in `0..=v_max`, from one pass over the box.
pub fn sum_s_diagonal(s: &ChateletSurface, v_max: u64) -> Result<Vec<u128>> {
    let r = to_i64(v_max)?;
    // F(−u, −v) = F(u, v): rows v > 0, plus the half row v = 0, u ≥ 0
    let rows: Vec<Vec<u128>> = (0..=r)
        .into_par_iter()
        .map(|v| {
            let mut shells = vec![0u128; r as usize + 1];
            let lo = if v == 0 { 0 } else { -r };
            for u in lo..=r {
                let w = varpi_at(s, u, v)? as u128;
                let mult = if u == 0 && v == 0 { 1 } else { 2 };
                shells[u.unsigned_abs().max(v as u64) as usize] += mult * w;
            }
            Ok(shells)
        })
        .collect::<Result<_>>()?;
    let mut shells = vec![0u128; r as usize + 1];
    for row in rows {
        for (acc, x) in shells.iter_mut().zip(row) {
            *acc += x;
        }
    }
    let mut running = 0;
    Ok(shells
        .into_iter()
        .map(|x| {
            running += x;
            running
        })
        .collect())
}

fn to_i64(x: u64) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow("box bound"))
}

/// `∏ (1 + ρ_g(p) (a/p) / p)` over primes `p ≤ U` not dividing `2a·disc(g)·lead(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerProduct {
    pub bound: u64,
    /// `(p, ρ_g(p) (a/p))` for the primes whose factor differs from 1.
    pub terms: Vec<(u64, i64)>,
}

impl EulerProduct {
    pub fn is_zero(&self) -> bool {
        self.terms.iter().any(|&(p, c)| c == -(p as i64))
    }

    /// Floating value from the sum of logarithms.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        self.terms.iter().map(|&(p, c)| (c as f64 / p as f64).ln_1p()).sum::<f64>().exp()
    }

    /// Exact value; the numerator and denominator grow with the number of terms.
    pub fn exact(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let num = product_tree(self.terms.iter().map(|&(p, c)| BigInt::from(p as i64 + c)).collect());
        let den = product_tree(self.terms.iter().map(|&(p, _)| BigInt::from(p)).collect());
        BigRational::new(num, den)
    }
}

fn product_tree(mut xs: Vec<BigInt>) -> BigInt {
    if xs.is_empty() {
        return BigInt::one();
    }
    while xs.len() > 1 {
        xs = xs.chunks(2).map(|c| if c.len() == 2 { &c[0] * &c[1] } else { c[0].clone() }).collect();
    }
    xs.pop().unwrap()
}

/// The Euler product `E_g(U)` for a polynomial of degree 1 to 4.
pub fn euler_product(g: &IntPolynomial, a: i64, big_u: u64) -> Result<EulerProduct> {
    let deg = g.degree().filter(|&d| d >= 1).ok_or_else(|| Error::InvalidInput("constant polynomial".into()))?;
    let disc = if deg >= 2 { discriminant(g)? } else { BigInt::one() };
    let bad = BigInt::from(2) * a * disc * g.leading();
    let mut terms = Vec::new();
    for p in PrimeIter::new(big_u) {
        if (&bad % p).is_zero() {
            continue;
        }
        let c = count_roots_mod_p(g, p) as i64 * legendre(a as i128, p) as i64;
        if c != 0 {
            terms.push((p, c));
        }
    }
    Ok(EulerProduct { bound: big_u, terms })
}

/// `E_{g_i}(U)` for each irreducible factor `g_i` of `f`, made integral.
pub fn euler_product_by_factor(s: &ChateletSurface, big_u: u64) -> Result<Vec<(RatPoly, EulerProduct)>> {
    s.factorization()
        .factors
        .iter()
        .map(|(g, _)| {
            let (_, prim) = g.primitive_part();
            let int = RatPoly::new(prim.into_iter().map(BigRational::from_integer).collect()).to_int_polynomial()?;
            Ok((g.clone(), euler_product(&int, s.a(), big_u)?))
        })
        .collect()
}

fn restricted_fibers(s: &ChateletSurface, b: u64) -> Result<Vec<FiberKey>> {
    let r = to_i64(b.isqrt())?;
    let mut out = Vec::new();
    for v in -r..=r {
        for u in -v.abs()..=v.abs() {
            if u.gcd(&v) == 1 {
                let key = FiberKey { u, v };
                if key.in_restricted_set(s, b)? {
                    out.push(key);
                }
            }
        }
    }
    Ok(out)
}

/// How the isotropy filter acts on the restricted fibers at height `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FilterStats {
    pub bound: u64,
    pub fibers: u64,
    pub theta_zero: u64,
    pub locally_unsolvable: u64,
    /// Fibers with ϑ = 0 that are nonetheless locally solvable; always 0.
    pub inclusion_violations: u64,
}

impl FilterStats {
    pub fn theta_zero_fraction(&self) -> f64 {
        self.theta_zero as f64 / self.fibers.max(1) as f64
    }

    pub fn unsolvable_fraction(&self) -> f64 {
        self.locally_unsolvable as f64 / self.fibers.max(1) as f64
    }
}

pub fn filter_stats(s: &ChateletSurface, b: u64) -> Result<FilterStats> {
    let mut st = FilterStats { bound: b, fibers: 0, theta_zero: 0, locally_unsolvable: 0, inclusion_violations: 0 };
    for key in restricted_fibers(s, b)? {
        let iso = isotropy_filter(s, key.u, key.v)?;
        st.fibers += 1;
        let killed = iso.theta.is_zero();
        st.theta_zero += killed as u64;
        st.locally_unsolvable += !iso.locally_solvable as u64;
        st.inclusion_violations += (killed && iso.locally_solvable) as u64;
    }
    Ok(st)
}

/// The largest `M_{u,v}(B) v² / (B 2^ω(|F|))` over the restricted fibers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberBoundStat {
    pub bound: u64,
    pub max_ratio: f64,
    pub argmax: Option<(i64, i64)>,
}

pub fn fiber_bound_constant(s: &ChateletSurface, b: u64) -> Result<FiberBoundStat> {
    let keys = restricted_fibers(s, b)?;
    let ratios: Vec<(f64, (i64, i64))> = keys
        .par_iter()
        .map(|k| {
            let m = fiber_count(s, k.u, k.v, b, HeightMode::FiberBox)?;
            let omega = factorize(s.form().eval(k.u, k.v)?)?.omega();
            let v2 = (k.v as f64).powi(2);
            Ok((m as f64 * v2 / (b as f64 * 2f64.powi(omega as i32)), (k.u, k.v)))
        })
        .collect::<Result<_>>()?;
    let best = ratios.into_iter().fold(None::<(f64, (i64, i64))>, |best, x| match best {
        Some(b) if b.0 >= x.0 => Some(b),
        _ => Some(x),
    });
    Ok(FiberBoundStat { bound: b, max_ratio: best.map_or(0.0, |b| b.0), argmax: best.map(|b| b.1) })
}

/// One dyadic block `2^i < |u| ≤ 2^(i+1)`, `2^j < |v| ≤ 2^(j+1)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DyadicBlock {
    pub i: i32,
    pub j: u32,
    /// Σ ϖ(|F(u, v)|) / v² over the block.
    pub block_sum: f64,
    /// `S(2^(i+1), 2^(j+1)) / 2^(2j)`, which dominates `block_sum`.
    pub s_bound: f64,
}

/// Blocks `−1 ≤ i < j ≤ ⌊log₂ B / 2⌋` covering `1 ≤ |u| < |v| ≤ √B`.
pub fn dyadic_blocks(s: &ChateletSurface, b: u64) -> Result<Vec<DyadicBlock>> {
    let top = (63 - b.max(1).leading_zeros()) / 2;
    let mut out = Vec::new();
    for j in 0..=top {
        let (v_lo, v_hi) = ((1i64 << j) + 1, 1i64 << (j + 1));
        for i in -1..j as i32 {
            let (u_lo, u_hi) = if i < 0 { (1, 1) } else { ((1i64 << i) + 1, 1i64 << (i + 1)) };
            let mut sum = BigRational::zero();
            for v in v_lo..=v_hi {
                let mut row = 0u128;
                for u in u_lo..=u_hi {
                    for (su, sv) in [(u, v), (-u, v), (u, -v), (-u, -v)] {
                        row += varpi_at(s, su, sv)? as u128;
                    }
                }
                sum += BigRational::new(BigInt::from(row), BigInt::from(v * v));
            }
            let s_box = sum_s(s, u_hi as u64, v_hi as u64)?;
            out.push(DyadicBlock { i, j, block_sum: ratio_to_f64(&sum), s_bound: s_box as f64 / 4f64.powi(j as i32) });
        }
    }
    Ok(out)
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Renders a rational as `n/d`, or as its size once it gets long.
pub fn render_rational(r: &BigRational, max_digits: usize) -> String {
    let (n, d) = (r.numer().to_string(), r.denom().to_string());
    if n.len() + d.len() <= max_digits {
        if r.is_integer() {
            n
        } else {
            format!("{n}/{d}")
        }
    } else {
        format!("<{}-digit numerator>/<{}-digit denominator>", n.trim_start_matches('-').len(), d.len())
    }
}
