//! Exact computation in the quantum upper triangular bialgebra `T_q(n)`
//! and its Hopf algebra localization `UT_q(n)`, over `Q(i)[q, q^-1]` with
//! `q` a formal parameter.

pub mod autos;
pub mod coeff;
pub mod deriv;
pub mod error;
pub mod expr;
pub mod json;
pub mod qalgebra;
pub mod random;
pub mod structure;
pub mod triangular;

pub use coeff::{GaussianRational, ScalarQ};
pub use error::{Error, Result};
pub use qalgebra::{Element, Monomial, MorphismSpec, QAlgebra, TensorElement, TensorSpace};
pub use triangular::{TriIndex, TriangularAlgebra};
