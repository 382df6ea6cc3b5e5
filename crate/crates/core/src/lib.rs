//! Triple factorisations `G = ABA` of finite permutation groups.

pub mod action;
pub mod catalog;
mod chain;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod factorisation;
pub mod group;
pub mod io;
pub mod lattice;
pub mod movement;
pub mod perm;
pub mod reduction;
pub mod wreath;

pub use error::{Error, Result};
pub use factorisation::{Status, TripleFactorisation};
pub use group::PermGroup;
pub use perm::Permutation;
