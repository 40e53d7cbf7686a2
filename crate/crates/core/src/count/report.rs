// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::torsor::{growth_report, GrowthRow};
use crate::error::Result;
use crate::surface::{ChateletSurface, SurfaceSpec};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A growth table with the metadata needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub surface: SurfaceSpec,
    pub rho: u32,
    pub norm: String,
    pub engine_version: String,
    pub rows: Vec<GrowthRow>,
}

impl CountReport {
    pub fn compute(s: &ChateletSurface, grid: &[u64], budget: u128) -> Result<Self> {
        Ok(Self {
            surface: s.spec(),
            rho: s.picard_rank(),
            norm: "sup".into(),
            engine_version: ENGINE_VERSION.into(),
            rows: growth_report(s, grid, budget)?,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("B,N,T,ratio,beta_secant\n");
        for r in &self.rows {
            let beta = r.beta_secant.map(fmt_float).unwrap_or_default();
            out.push_str(&format!("{},{},{},{},{}\n", r.bound, r.rational, r.torsor, fmt_float(r.ratio), beta));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// 15 significant digits in scientific notation.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.14e}")
}
