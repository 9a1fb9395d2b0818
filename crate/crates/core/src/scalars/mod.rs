//! Exact coefficient field: rational functions in named parameters.

mod parse;
mod poly;
mod ring;
mod scalar;

pub use parse::parse_scalar;
pub use poly::{Monomial, Poly};
pub use ring::ParamRing;
pub use scalar::Scalar;
pub(crate) use scalar::bindings_to_values;
