//! Multiparameter q-commutative algebras `x_a x_b = q^{M[a][b]} x_b x_a`,
//! possibly localized at some generators.

mod algebra;
mod center;
mod element;
pub mod lattice;
mod morphism;
mod tensor;

pub use algebra::{monomial_mul, Monomial, QAlgebra};
pub use center::{center_lattice, CenterLattice};
pub use element::Element;
pub use morphism::{is_point, point_violation, Linearity, MorphismSpec, Multiplicativity};
pub use tensor::{TensorElement, TensorSpace};
