// SPDX-License-Identifier: Apache-2.0

use num_integer::Integer;

use crate::arith::exact_sqrt;
use crate::error::{Error, Result};
use crate::surface::ChateletSurface;

/// Height condition applied to `(y, z, t)` on the fiber over `[u, v]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeightMode {
    /// `max(v²|t|, |uvt|, u²|t|, |y|, |z|) ≤ B`, the sup norm of the image in P⁴.
    SupNorm,
    /// `max(v²|t|, |y|, |z|) ≤ B`, the box used for the per-fiber bound.
    FiberBox,
}

impl HeightMode {
    /// Multiplier `w` such that the t-part of the height is `w |t|`.
    pub(crate) fn t_weight(self, u: i64, v: i64) -> u64 {
        let (u2, v2) = (u.unsigned_abs().pow(2), v.unsigned_abs().pow(2));
        match self {
            HeightMode::SupNorm => u2.max(v2),
            HeightMode::FiberBox => v2,
        }
    }
}

/// A point `(y, z, t; u, v)` of the universal torsor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsorPoint {
    pub y: i64,
    pub z: i64,
    pub t: i64,
    pub u: i64,
    pub v: i64,
}

impl TorsorPoint {
    /// Image `(v²t, uvt, u²t, y, z)` in P⁴.
    pub fn image(&self) -> [i128; 5] {
        let (y, z, t, u, v) = (self.y as i128, self.z as i128, self.t as i128, self.u as i128, self.v as i128);
        [v * v * t, u * v * t, u * u * t, y, z]
    }

    pub fn sup_height(&self) -> u64 {
        self.image().iter().map(|c| c.unsigned_abs() as u64).max().unwrap()
    }

    /// Checks the equation, both primitivity conditions and t ≠ 0.
    pub fn is_valid(&self, s: &ChateletSurface) -> bool {
        let Ok(fuv) = s.form().eval(self.u, self.v) else {
            return false;
        };
        let (y, z, t) = (self.y as i128, self.z as i128, self.t as i128);
        let lhs = y * y - s.a() as i128 * z * z;
        self.t != 0
            && self.u.gcd(&self.v) == 1
            && self.y.gcd(&self.z).gcd(&self.t) == 1
            && Some(lhs) == t.checked_mul(t).and_then(|tt| tt.checked_mul(fuv))
    }
}

/// A primitive pair `(u, v)` indexing a fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberKey {
    pub u: i64,
    pub v: i64,
}

impl FiberKey {
    pub fn new(u: i64, v: i64) -> Result<Self> {
        if u.gcd(&v) != 1 {
            return Err(Error::NotPrimitive(u, v));
        }
        Ok(Self { u, v })
    }

    /// Membership in the restricted set: `|u| ≤ |v| ≤ √B` and `F(u, v) ≠ 0`.
    pub fn in_restricted_set(&self, s: &ChateletSurface, b: u64) -> Result<bool> {
        let (au, av) = (self.u.unsigned_abs(), self.v.unsigned_abs());
        Ok(au <= av && av * av <= b && s.form().eval(self.u, self.v)? != 0)
    }
}

/// Enumerates the primitive solutions of `y² + |a| z² = t² F` with
/// `y, z ≥ 0`, `t > 0`, `w t ≤ B`, `y, z ≤ B`, calling
/// `visit(y, z, t, m)` where `m` counts the sign variants `(±y, ±z, ±t)`.
///
/// `F < 0` has no solutions. `F = 0` has exactly `(0, 0, ±1)`.
pub(crate) fn scan_fiber<V>(abs_a: u64, fuv: i128, weight: u64, bound: u64, mut visit: V) -> Result<()>
where
    V: FnMut(u64, u64, u64, u64),
{
    if fuv < 0 || bound == 0 {
        return Ok(());
    }
    if fuv == 0 {
        if weight <= bound {
            visit(0, 0, 1, 2);
        }
        return Ok(());
    }
    let f = u64::try_from(fuv).map_err(|_| Error::Overflow("fiber value"))?;
    let b2 = bound.checked_mul(bound).ok_or(Error::Overflow("height bound squared"))?;
    // y² + |a| z² ≤ (1 + |a|) B²
    let cap = (abs_a as u128 + 1) * b2 as u128;
    let cap = u64::try_from(cap).map_err(|_| Error::Overflow("fiber cap"))?;
    let mut t_max = (cap / f).isqrt();
    if weight > 0 {
        t_max = t_max.min(bound / weight);
    }

    for t in 1..=t_max {
        // t² F ≤ cap fits u64
        let m = t * t * f;
        let z_hi = (m / abs_a).isqrt().min(bound);
        let z_lo = if m <= b2 {
            0
        } else {
            let need = (m - b2).div_ceil(abs_a);
            let r = need.isqrt();
            if r * r == need {
                r
            } else {
                r + 1
            }
        };
        if z_lo > z_hi {
            continue;
        }
        let mut az2 = abs_a * z_lo * z_lo;
        for z in z_lo..=z_hi {
            let y2 = m - az2;
            if let Some(y) = exact_sqrt(y2) {
                if y.gcd(&z).gcd(&t) == 1 {
                    let mult = 2 * if y > 0 { 2 } else { 1 } * if z > 0 { 2 } else { 1 };
                    visit(y, z, t, mult);
                }
            }
            az2 += abs_a * (2 * z + 1);
        }
    }
    Ok(())
}

fn fiber_setup(s: &ChateletSurface, u: i64, v: i64) -> Result<(u64, i128)> {
    s.require_negative_a()?;
    FiberKey::new(u, v)?;
    Ok((s.a().unsigned_abs(), s.form().eval(u, v)?))
}

/// Exact number of primitive `(y, z, t)` on the fiber over `[u, v]`
/// satisfying the height condition of `mode`.
pub fn fiber_count(s: &ChateletSurface, u: i64, v: i64, bound: u64, mode: HeightMode) -> Result<u64> {
    let (abs_a, fuv) = fiber_setup(s, u, v)?;
    let mut total = 0u64;
    scan_fiber(abs_a, fuv, mode.t_weight(u, v), bound, |_, _, _, m| total += m)?;
    Ok(total)
}

/// The points counted by [`fiber_count`], every sign variant listed.
pub fn fiber_points(s: &ChateletSurface, u: i64, v: i64, bound: u64, mode: HeightMode) -> Result<Vec<TorsorPoint>> {
    let (abs_a, fuv) = fiber_setup(s, u, v)?;
    let mut out = Vec::new();
    scan_fiber(abs_a, fuv, mode.t_weight(u, v), bound, |y, z, t, _| {
        let (y, z, t) = (y as i64, z as i64, t as i64);
        for sy in signs(y) {
            for sz in signs(z) {
                for st in [1, -1] {
                    out.push(TorsorPoint { y: sy * y, z: sz * z, t: st * t, u, v });
                }
            }
        }
    })?;
    out.sort_unstable();
    Ok(out)
}

fn signs(x: i64) -> &'static [i64] {
    if x == 0 {
        &[1]
    } else {
        &[1, -1]
    }
}
