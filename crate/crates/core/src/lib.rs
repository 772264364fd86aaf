#![no_std]
extern crate alloc;

pub mod axioms;
pub mod catalog;
pub mod dagiso;
pub mod iso;
pub mod lattice;
pub mod locked;
pub mod matroid;
pub mod polytope;
pub mod simplex;
pub mod subset;

pub use matroid::{two_sum, Matroid, MatroidError};
pub use subset::{Subset, SubsetFamily};
