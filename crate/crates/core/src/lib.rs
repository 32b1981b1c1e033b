//! Finite distributive bilattices and their dualities.
//!
//! Everything here is finite: algebras are operation tables over indexed
//! universes, dual spaces are finite relational structures, and the
//! topology of the infinite theory is discrete throughout.

pub mod algebra;
pub mod applications;
pub mod birkhoff;
pub mod corpus;
pub mod document;
pub mod error;
pub mod natural_duality;
pub mod piggyback;
pub mod product_rep;
pub mod relational;
pub mod signature;
pub mod varieties;

pub use algebra::{Congruence, Elem, FinAlgebra, Hom, SubUniverse};
pub use error::{Error, Result};
pub use signature::Signature;
pub use varieties::{canonical, CanonicalName, VarietyTag};
