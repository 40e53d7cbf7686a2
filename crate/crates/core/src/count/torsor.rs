// SPDX-License-Identifier: Apache-2.0

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fiber::{scan_fiber, FiberKey, HeightMode, TorsorPoint};
use crate::error::{Error, Result};
use crate::surface::ChateletSurface;

/// Default cap on the work estimate of a single enumeration.
pub const DEFAULT_BUDGET: u128 = 40_000_000_000;

/// Rough operation count for enumerating up to `b`.
pub fn work_estimate(b: u64) -> u128 {
    let b = b as u128;
    b * b * (1 + (128 - b.leading_zeros()) as u128)
}

fn check_budget(b: u64, budget: u128) -> Result<()> {
    let estimate = work_estimate(b);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    Ok(())
}

/// `T(B)` together with `N(B) = T(B) / 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsorCount {
    pub bound: u64,
    pub torsor: u64,
    pub rational: u64,
}

impl TorsorCount {
    fn new(bound: u64, torsor: u64) -> Self {
        assert_eq!(torsor % 4, 0, "torsor count {torsor} not divisible by 4");
        Self { bound, torsor, rational: torsor / 4 }
    }
}

/// Representatives of the primitive `(u, v)` up to sign with `max(|u|, |v|) ≤ r`:
/// `(1, 0)` and every `(u, v)` with `v > 0`, grouped by `v`.
fn rows(r: u64) -> impl ParallelIterator<Item = Vec<(i64, i64)>> {
    let r = r as i64;
    (0..=r).into_par_iter().map(move |v| {
        if v == 0 {
            return if r >= 1 { vec![(1, 0)] } else { Vec::new() };
        }
        (-r..=r).filter(|u| u.gcd(&v) == 1).map(|u| (u, v)).collect()
    })
}

/// Visits every torsor point of sup height at most `b_max` with `y, z ≥ 0`,
/// `t > 0` and `(u, v)` up to sign, passing its height and multiplicity.
fn for_each_point<A, V>(s: &ChateletSurface, b_max: u64, init: A, visit: V) -> Result<Vec<A>>
where
    A: Send,
    V: Fn(&mut A, u64, u64) + Sync,
    A: Clone + Sync,
{
    s.require_negative_a()?;
    let abs_a = s.a().unsigned_abs();
    rows(b_max.isqrt())
        .map(|row| {
            let mut acc = init.clone();
            for (u, v) in row {
                let fuv = s.form().eval(u, v)?;
                let w = HeightMode::SupNorm.t_weight(u, v);
                scan_fiber(abs_a, fuv, w, b_max, |y, z, t, m| {
                    let h = (w * t).max(y).max(z);
                    // ±(u, v)
                    visit(&mut acc, h, 2 * m);
                })?;
            }
            Ok(acc)
        })
        .collect()
}

/// Exact `T(B)` and `N(B)` for the sup-norm height.
pub fn torsor_count(s: &ChateletSurface, b: u64) -> Result<TorsorCount> {
    torsor_count_with_budget(s, b, DEFAULT_BUDGET)
}

pub fn torsor_count_with_budget(s: &ChateletSurface, b: u64, budget: u128) -> Result<TorsorCount> {
    check_budget(b, budget)?;
    let parts = for_each_point(s, b, 0u64, |acc, _, m| *acc += m)?;
    Ok(TorsorCount::new(b, parts.into_iter().sum()))
}

/// `T(B)` for every bound of an increasing grid, from one enumeration.
pub fn torsor_counts_on_grid(s: &ChateletSurface, grid: &[u64], budget: u128) -> Result<Vec<TorsorCount>> {
    if grid.is_empty() {
        return Ok(Vec::new());
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("grid must be strictly increasing".into()));
    }
    let b_max = *grid.last().unwrap();
    check_budget(b_max, budget)?;
    let parts = for_each_point(s, b_max, vec![0u64; grid.len()], |acc, h, m| {
        acc[grid.partition_point(|&g| g < h)] += m;
    })?;
    let mut buckets = vec![0u64; grid.len()];
    for part in parts {
        for (b, x) in buckets.iter_mut().zip(part) {
            *b += x;
        }
    }
    let mut running = 0;
    Ok(grid
        .iter()
        .zip(buckets)
        .map(|(&g, x)| {
            running += x;
            TorsorCount::new(g, running)
        })
        .collect())
}

/// Points of sup height at most `b` on each fiber, listing one of `±(u, v)`
/// per fiber that has any. The counts sum to `T(b) / 2`.
pub fn fiber_counts(s: &ChateletSurface, b: u64) -> Result<Vec<(FiberKey, u64)>> {
    s.require_negative_a()?;
    check_budget(b, DEFAULT_BUDGET)?;
    let abs_a = s.a().unsigned_abs();
    let per_row: Vec<Vec<(FiberKey, u64)>> = rows(b.isqrt())
        .map(|row| {
            let mut out = Vec::new();
            for (u, v) in row {
                let mut n = 0;
                let w = HeightMode::SupNorm.t_weight(u, v);
                scan_fiber(abs_a, s.form().eval(u, v)?, w, b, |_, _, _, m| n += m)?;
                if n > 0 {
                    out.push((FiberKey { u, v }, n));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_row.into_iter().flatten().collect())
}

/// Every torsor point of sup height at most `b`, all signs included.
pub fn torsor_points(s: &ChateletSurface, b: u64) -> Result<Vec<TorsorPoint>> {
    s.require_negative_a()?;
    check_budget(b, 1 << 30)?;
    let abs_a = s.a().unsigned_abs();
    let r = b.isqrt() as i64;
    let mut out = Vec::new();
    for v in -r..=r {
        for u in -r..=r {
            if u.gcd(&v) != 1 {
                continue;
            }
            let fuv = s.form().eval(u, v)?;
            scan_fiber(abs_a, fuv, HeightMode::SupNorm.t_weight(u, v), b, |y, z, t, _| {
                let (y, z, t) = (y as i64, z as i64, t as i64);
                for sy in if y == 0 { vec![0] } else { vec![y, -y] } {
                    for sz in if z == 0 { vec![0] } else { vec![z, -z] } {
                        for st in [t, -t] {
                            out.push(TorsorPoint { y: sy, z: sz, t: st, u, v });
                        }
                    }
                }
            })?;
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// One row of a growth table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub bound: u64,
    pub rational: u64,
    pub torsor: u64,
    /// `N(B) / (B (ln B)^(ρ−1))`.
    pub ratio: f64,
    /// `Δ ln N / Δ ln B` against the previous row.
    pub beta_secant: Option<f64>,
}

/// Counts on `grid` with normalized ratios and secant exponents.
pub fn growth_report(s: &ChateletSurface, grid: &[u64], budget: u128) -> Result<Vec<GrowthRow>> {
    if grid.first() == Some(&0) || grid.first() == Some(&1) {
        return Err(Error::InvalidInput("grid bounds must exceed 1".into()));
    }
    let counts = torsor_counts_on_grid(s, grid, budget)?;
    let rho = s.picard_rank() as i32;
    let mut rows: Vec<GrowthRow> = Vec::with_capacity(counts.len());
    for c in counts {
        let lb = (c.bound as f64).ln();
        let ratio = c.rational as f64 / (c.bound as f64 * lb.powi(rho - 1));
        let beta_secant = rows.last().and_then(|prev| {
            (prev.rational > 0 && c.rational > 0)
                .then(|| ((c.rational as f64).ln() - (prev.rational as f64).ln()) / (lb - (prev.bound as f64).ln()))
        });
        rows.push(GrowthRow { bound: c.bound, rational: c.rational, torsor: c.torsor, ratio, beta_secant });
    }
    Ok(rows)
}

/// Parses `"16,32,64"` or a dyadic range `"2^4..2^12"`.
pub fn parse_grid(spec: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidInput(format!("cannot parse grid {spec:?}"));
    let term = |t: &str| -> Result<u64> {
        let t = t.trim();
        match t.split_once('^') {
            Some(("2", e)) => {
                let e: u32 = e.trim().parse().map_err(|_| bad())?;
                1u64.checked_shl(e).filter(|_| e < 64).ok_or_else(bad)
            }
            Some(_) => Err(bad()),
            None => t.parse().map_err(|_| bad()),
        }
    };
    let grid: Vec<u64> = if let Some((lo, hi)) = spec.split_once("..") {
        let (lo, hi) = (term(lo)?, term(hi)?);
        if !lo.is_power_of_two() || !hi.is_power_of_two() || lo > hi {
            return Err(bad());
        }
        (lo.trailing_zeros()..=hi.trailing_zeros()).map(|e| 1 << e).collect()
    } else {
        spec.split(',').map(term).collect::<Result<_>>()?
    };
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad());
    }
    Ok(grid)
}
