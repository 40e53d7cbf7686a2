// SPDX-License-Identifier: Apache-2.0

//! Exact point counts on the universal torsor, the P⁴ oracle, and the
//! sieve quantities ϑ, S(U, V) and E_f(U) evaluated over fibers.

mod fiber;
mod oracle;
mod report;
mod sieve;
mod torsor;

pub use fiber::{fiber_count, fiber_points, FiberKey, HeightMode, TorsorPoint};
pub use oracle::{oracle_count, oracle_count_with_budget, DEFAULT_ORACLE_BUDGET};
pub use report::{fmt_float, CountReport, ENGINE_VERSION};
pub use sieve::{
    dyadic_blocks, euler_product, euler_product_by_factor, fiber_bound_constant, filter_stats, isotropy_filter,
    render_rational, sum_s, sum_s_diagonal, DyadicBlock, EulerProduct, FiberBoundStat, FilterStats, IsotropyVerdict,
};
pub use torsor::{
    fiber_counts, growth_report, parse_grid, torsor_count, torsor_count_with_budget, torsor_counts_on_grid,
    torsor_points, work_estimate, GrowthRow, TorsorCount, DEFAULT_BUDGET,
};
