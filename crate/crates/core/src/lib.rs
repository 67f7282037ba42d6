//! Exact-arithmetic homological invariants of finitely presented modules
//! over the category of finite sets with group-colored injections.
//!
//! The core is generic over the scalar type through [`field::Scalar`]; the
//! two instances are prime fields and the rationals. Concrete aliases live
//! at the crate root.

pub mod category;
#[cfg(test)]
pub(crate) mod testutil;
pub mod error;
pub mod field;
pub mod free;
pub mod group;
pub mod matrix;
pub mod module;
pub mod presentation;
pub mod shift;

pub use error::{Error, Result};
pub use field::{FieldSpec, Fp, Rat, Scalar};
pub use group::FiniteGroup;
pub use module::{Bounds, Degree, DegreeValue, DegreewiseModule, ModuleMap};

/// Matrix over a prime field.
pub type FpMatrix = matrix::Matrix<Fp>;
/// Matrix over the rationals.
pub type QMatrix = matrix::Matrix<Rat>;
/// Module over a prime field.
pub type FpModule = DegreewiseModule<Fp>;
/// Module over the rationals.
pub type QModule = DegreewiseModule<Rat>;
