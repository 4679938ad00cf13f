//! Explicit equations for Hilbert schemes inside a Plücker space:
//! canonical Plücker variables, the symbolic matrices `K_a`, `L` and `Λ`,
//! Fitting minors, linear containment conditions and Plücker quadrics.

mod fitting;
mod hilb;
mod matrices;
mod plucker;

use thiserror::Error;

pub use fitting::{FittingSystem, DEFAULT_MINOR_BUDGET};
pub use hilb::{
    hilb_equations, read_equations, DegreeAudit, HilbConfig, HilbEquations, HilbManifest, PointCheck, DEFAULT_MAX_DIM_V,
};
pub use matrices::{all_tuples, k_matrix, l_matrix, lambda_matrix, ColumnSource, SymbolicMatrix, DEFAULT_COLUMN_BUDGET};
pub use plucker::{
    canonicalize, ideal_degree_piece, linear_conditions, plucker_point_of_subscheme, plucker_quadrics, PluckerLinearForm,
    PluckerPoint, PluckerSpace, PluckerVariable,
};

use crate::gotzmann::GotzmannError;
use crate::poly::PolyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrassmannError {
    #[error("index {index} out of range for dim V = {dim_v}")]
    IndexOutOfRange { index: usize, dim_v: usize },
    #[error("L would have {} columns, over the budget of {budget}", columns.as_deref().unwrap_or("too many"))]
    ColumnBudgetExceeded { columns: Option<String>, budget: usize },
    #[error("{count} minors exceed the budget of {budget}")]
    MinorBudgetExceeded { count: String, budget: u64 },
    #[error("dim R_t = {dim_v} exceeds the supported limit of {limit}")]
    ScaleExceeded { dim_v: usize, limit: usize },
    #[error("expected a subspace of dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("the given vectors are linearly dependent")]
    DependentVectors,
    #[error("t = {t} is below max(Gotzmann number, d) = {required}")]
    BelowThreshold { t: u32, required: u32 },
    #[error("line {line}, column {column}: unknown Plücker variable `{name}`")]
    UnknownVariable { line: usize, column: usize, name: String },
    #[error("{0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Gotzmann(#[from] GotzmannError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
