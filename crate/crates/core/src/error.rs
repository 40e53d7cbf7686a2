// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::surface::Hypothesis;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("cannot factor zero")]
    ZeroInput,

    #[error("invalid modulus {0}: must be odd and positive")]
    InvalidModulus(i128),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("polynomial is reducible over Q: {0}")]
    Reducible(String),

    #[error("surface hypothesis violated: {0}")]
    Hypothesis(Hypothesis),

    #[error("counting requires a < 0 (got a = {0})")]
    UnsupportedRegime(i64),

    #[error("(u, v) = ({0}, {1}) is not a primitive pair")]
    NotPrimitive(i64, i64),

    #[error("degenerate fiber: F(u, v) = 0 at (u, v) = ({0}, {1})")]
    DegenerateFiber(i64, i64),

    #[error("work estimate {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
}
