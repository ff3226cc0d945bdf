//! Exact and numeric verification of the braided tensor structure on
//! representations of the deformed unitary groups, with a focus on the
//! invariant κ and its modulus on irreducible objects.

pub mod braiding;
pub mod check;
pub mod error;
pub mod hecke;
pub mod kw_twist;
pub mod lie;
pub mod linalg;
pub mod rigidity;
pub mod scalars;
pub mod spectrum;
pub mod temperley_lieb;
pub mod tensor;

pub use error::{Error, Result};
