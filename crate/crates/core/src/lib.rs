//! Exact computer algebra behind effective bounds on global sections of
//! projective schemes, equations of Hilbert schemes in Plücker space, and
//! iterated-exponential bounds on Néron–Severi torsion.
//!
//! The examples are the main entry points, one per capability:
//!
//! - **`gamma_sections`** - exact h^0(O_Y), the splitting recursion, d^r
//! - **`groebner_hilbert`** - reduced Gröbner bases and Hilbert data of R/I
//! - **`gotzmann_numbers`** - Gotzmann decompositions, Hoa's bound, parameters
//! - **`hilbert_scheme_equations`** - quadrics, Fitting minors, coordinate points
//! - **`plucker_point`** - the Plücker point of a subscheme
//! - **`torsion_towers`** - tower bounds, logarithms and the chain audit
//! - **`corpus_audit`** - the recursion against exact values on a seeded corpus
//!
//! ```bash
//! cargo run --example gamma_sections
//! cargo run --release --example corpus_audit -- 200
//! ```
//!
//! The `torsion-bounds` binary wraps the same functions as batch commands
//! with JSON output; see [`cli`].

pub mod bigint;
pub mod cli;
pub mod cohomology;
pub mod corpus;
pub mod field;
pub mod gotzmann;
pub mod grassmann;
pub mod groebner;
pub mod linalg;
pub mod mono_gamma;
pub mod poly;
pub(crate) mod serde_util;
pub mod towers;
