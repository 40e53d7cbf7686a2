// SPDX-License-Identifier: Apache-2.0

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::surface::ChateletSurface;

/// Default cap on `(2B + 1)³`.
pub const DEFAULT_ORACLE_BUDGET: u128 = 2_000_000_000;

/// Half the number of primitive `x ∈ Z⁵` with `‖x‖ ≤ B` on both del Pezzo
/// equations, by nested search over the P⁴ coordinates.
pub fn oracle_count(s: &ChateletSurface, b: u64) -> Result<u64> {
    oracle_count_with_budget(s, b, DEFAULT_ORACLE_BUDGET)
}

pub fn oracle_count_with_budget(s: &ChateletSurface, b: u64, budget: u128) -> Result<u64> {
    s.require_negative_a()?;
    if b == 0 {
        return Ok(0);
    }
    let estimate = (2 * b as u128 + 1).pow(3);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let b = i64::try_from(b).map_err(|_| Error::Overflow("oracle bound"))?;
    let model = s.delpezzo_model();
    let a = s.a() as i128;

    let mut count = 0u64;
    for x0 in -b..=b {
        for x1 in -b..=b {
            let x2_range = if x0 != 0 {
                let sq = x1 * x1;
                if sq % x0 != 0 || (sq / x0).abs() > b {
                    continue;
                }
                (sq / x0)..=(sq / x0)
            } else if x1 == 0 {
                -b..=b
            } else {
                continue;
            };
            for x2 in x2_range {
                let q = model.eval_q(x0 as i128, x1 as i128, x2 as i128).ok_or(Error::Overflow("oracle Q"))?;
                let g012 = x0.gcd(&x1).gcd(&x2);
                for x4 in -b..=b {
                    // x3² = Q + a x4² shrinks as |x4| grows since a < 0
                    let rhs = q + a * (x4 * x4) as i128;
                    if rhs < 0 {
                        continue;
                    }
                    let g = g012.gcd(&x4);
                    for x3 in 0..=b {
                        if (x3 * x3) as i128 == rhs && g.gcd(&x3) == 1 {
                            count += if x3 == 0 { 1 } else { 2 };
                        }
                    }
                }
            }
        }
    }
    assert_eq!(count % 2, 0, "oracle count {count} is odd");
    Ok(count / 2)
}
