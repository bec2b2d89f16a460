//! Exact scalars in cyclotomic fields and linear algebra over them.

pub mod finite;
pub mod linalg;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod subspace;

pub use roots::{roots_in_field, scalar_is_square};
pub use scalar::Scalar;
pub use subspace::Subspace;
