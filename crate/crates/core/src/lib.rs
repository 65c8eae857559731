//! Exact computations with Weyl-symmetric polytopes and their polytopal algebras.

pub mod error;
pub mod iso_map;
pub mod linalg;
pub mod pipeline;
pub mod polytope;
pub mod root_weyl;
pub mod scalar;
pub mod sr_algebra;

pub use error::{Error, Result};
pub use linalg::{GramForm, Matrix, Vector};
pub use root_weyl::{CartanType, RootSystem, WeylGroup};
pub use scalar::Scalar;
