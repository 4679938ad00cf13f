//! Arithmetic for astronomically large bounds, the torsion-bound towers,
//! and a step-by-step audit of the inequality chain behind them.

mod bounds;
mod chain;
mod number;

use thiserror::Error;

pub use bounds::{exp_d, generator_bounds, inner_exponent, nns_bound, nori_bound, pi1_bound, BoundVariant, GeneratorBounds};
pub use chain::{chain_audit, ChainAudit, ChainConfig, ChainStep, StepMode};
pub use number::{TowerNumber, TowerOrdering, COMPARE_TOLERANCE, EXACT_BITS, MAX_RELATIVE_ERROR};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TowerError {
    #[error("log2 of {value}, which is below 1")]
    LogOfSmallValue { value: f64 },
    #[error("accumulated relative error {bound:e} exceeds the allowed 1e-9")]
    PrecisionLoss { bound: f64 },
    #[error("not a finite non-negative value: {0}")]
    InvalidValue(f64),
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
}
