//! Exact structure-constant calculus for pre-Lie algebras, coalgebras,
//! bialgebras and their Nijenhuis enrichments.
//!
//! Coefficients live in [`scalars::Scalar`], the field of rational functions
//! over the rationals in a declared list of parameters. Structures are dense
//! tensors of scalars ([`structures`]); every identity is a residual checker
//! in [`laws`]; the constructive maps live in [`constructors`] and grid search
//! in [`search`].

pub mod error;
pub mod constructors;
pub mod laws;
pub mod scalars;
pub mod search;
pub mod structures;

pub use error::{Error, Result};
