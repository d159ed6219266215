//! Constants of the Malle conjecture for transitive nilpotent groups.
//!
//! The crate computes `a(G)`, `b(k,G)` and the refinement constant `d(k,G)`
//! for transitive permutation groups, builds the group extensions used in
//! the inductive counting argument, and evaluates the associated Dirichlet
//! series and field counts numerically.

pub mod catalog;
pub mod counting;
pub mod dirichlet;
pub mod error;
pub mod extension;
pub mod field;
pub mod malle;
pub mod nilpotent;
pub mod permcore;
pub mod series;
pub mod util;
pub mod verify;

pub use error::{Error, Result};
pub use field::{BaseFieldData, Cyclotomic};
pub use num_rational::Ratio;
pub use permcore::{ElementSet, FiniteGroup, GroupExt, PermGroup, Permutation, TableGroup};
