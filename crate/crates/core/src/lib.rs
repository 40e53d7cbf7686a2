// SPDX-License-Identifier: Apache-2.0

//! Arithmetic of the surfaces `y² − a z² = f(x)` with `deg f ∈ {3, 4}`:
//! Picard ranks, exact torsor point counts and sieve-side quantities.

pub mod arith;
pub mod cli;
pub mod count;
pub mod error;
pub mod poly;
pub mod quadfield;
pub mod surface;

pub use error::{Error, Result};
pub use surface::{ChateletSurface, Hypothesis, SurfaceSpec};
