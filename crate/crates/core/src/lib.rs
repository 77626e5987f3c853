//! Divisor and Jacobian arithmetic on algebraic curves using only linear
//! algebra on spaces of global sections.
//!
//! An effective divisor `D` is represented by the subspace
//! `W_D = H^0(L - D)` of a coordinatized space `V = H^0(L)`; all group
//! operations reduce to multiplying and dividing such subspaces through
//! precomputed multiplication tables, followed by row reduction.
//!
//! Layers, bottom up:
//! - [`field`]: GF(p) with an operation counter
//! - [`linalg`]: matrices and canonical (RREF) subspaces
//! - [`curve`]: coordinatized section spaces `H^0(m D0)` and their
//!   multiplication tables, plus a builder for odd-degree hyperelliptic curves
//! - [`divisor`]: multiplication, division, union, flip, addition, membership
//! - [`jacobian`]: group law in the large, medium and small models
//! - [`cantor`]: Mumford representation and Cantor's algorithm, used as an
//!   independent oracle, and the bridge into the subspace representation

pub mod cantor;
pub mod cli;
pub mod curve;
pub mod divisor;
pub mod error;
pub mod field;
pub mod jacobian;
pub mod linalg;
pub mod poly;

pub use curve::{CurveModel, HyperellipticSpec, ModelKind, MulTable, SectionRing};
pub use divisor::DivisorRep;
pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField};
pub use jacobian::JacobianPoint;
pub use linalg::{Matrix, Subspace};
pub use poly::Poly;
