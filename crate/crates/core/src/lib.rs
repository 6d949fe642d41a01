//! Computational model of Heisenberg-type groups over the normed division
//! algebras, their similarity groups, and the projective boundary model of
//! the rank-one symmetric spaces of noncompact type.

pub mod algebra;
pub mod boundary;
pub mod dynamics;
pub mod error;
pub mod heisenberg;
pub mod io;
pub mod sample;
pub mod similarity;
pub mod verify;

pub use algebra::{AlgElem, AlgVector, FieldTag, Matrix};
pub use error::{Error, Result};
