//! Monomials, sparse polynomials, monomial orders, ideals and the ideal
//! text format.

mod ideal;
mod monomial;
mod order;
mod parse;
mod polynomial;

use thiserror::Error;

pub use ideal::{IdealPresentation, MonomialIdeal};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::{parse_ideal, parse_polynomial};
pub use polynomial::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: generator `{text}` is not homogeneous")]
    InhomogeneousGenerator { line: usize, text: String },
    #[error("line {line}, column {column}: variable {variable} out of range for P^{r}")]
    VariableOutOfRange { line: usize, column: usize, variable: String, r: usize },
    #[error("line {line}: generator is the zero polynomial")]
    ZeroGenerator { line: usize },
    #[error("monomials live in rings with {left} and {right} variables")]
    DimensionMismatch { left: usize, right: usize },
    #[error("a monomial needs at least one variable")]
    NoVariables,
    #[error("unknown monomial order `{0}` (expected lex, grlex or grevlex)")]
    UnknownOrder(String),
}
