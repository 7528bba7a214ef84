//! Generalized projective spaces over ideals of the integers.
//!
//! The crate covers class arithmetic and enumeration of the spaces
//! `PF^{k,(m_0..m_k)}_I`, the Chinese-remainder reduction bijection with an
//! explicit inverse, and constructions of determinant-one integer matrices
//! whose rows realize prescribed classes modulo pairwise co-maximal ideals.

pub mod acceptance;
pub mod error;
pub mod ring;
pub mod sl_lift;
pub mod crt_proj;
pub mod matrix;
pub mod oracle;
pub mod projspace;
pub mod toolbox;

pub use error::{Error, Result};
pub use ring::{Ideal, Residue};
