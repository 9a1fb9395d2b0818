//! Structure-constant data model.
//!
//! Index conventions, used everywhere in the crate:
//!
//! * product: `e_i ∘ e_j = Σ_k c[i][j][k] e_k`
//! * coproduct: `Δ(e_k) = Σ_{i,j} d[k][i][j] e_i ⊗ e_j`
//! * linear maps act on row vectors: `F(e_i) = Σ_j M[i][j] e_j`, so "first
//!   `F`, then `G`" has matrix `M_F · M_G`
//! * the dual of a map is its transpose; the algebra dual to `Δ` has
//!   `c*[i][j][k] = d[k][i][j]`
//! * a representation stores `ρ(e_i)` and `φ(e_i)` as maps on the module
//! * a coaction `V → A ⊗ V` is an `m × (n·m)` matrix with
//!   `ξ(v_a) = Σ xi[a][i·m + b] e_i ⊗ v_b`

mod algebra;
mod bundle;
pub mod fixtures;
mod matrix;
mod tensor;

pub use algebra::{AlgebraStructure, CoalgebraStructure, Corepresentation, Representation};
pub use bundle::{names, Bundle, PiDescriptor, PiFamily};
pub use fixtures::{catalog, fixture, FixtureInfo};
pub use matrix::{basis_vector, flip, BilinearForm, LinearOperator, Matrix, TensorElement, Vector};
pub use matrix::{vec_add, vec_scale, vec_sub};
pub use tensor::{unflatten, Tensor};
