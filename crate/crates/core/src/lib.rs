//! Finite topological monoids and their categories of continuous actions.

pub mod action;
pub mod category;
pub mod completion;
pub mod congruence;
pub mod enumerate;
pub mod error;
pub mod invariants;
pub mod monoid;
pub mod reflection;
pub mod subset;
pub mod topology;

pub use error::{Error, Result};
pub use monoid::{FiniteMonoid, SemigroupHom};
pub use subset::Subset;
pub use topology::Topology;
