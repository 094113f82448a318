//! Torsion of the Whitehead group of odd-order p-groups, computed from a
//! genetic basis.

pub mod cl1;
pub mod cli;
pub mod constructors;
pub mod error;
pub mod formulas;
pub mod genetic;
pub mod group;
pub mod linalg;
pub mod pc;
pub mod subgroups;
pub mod sympoly;

pub use constructors::GroupSpec;
pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup, GroupElement};
pub use subgroups::Subgroup;
