//! File formats, the seeded corpus and the command-line front end for
//! [`locked_matroid_core`].

pub mod cli;
pub mod corpus;
pub mod format;
pub mod spec;

pub use locked_matroid_core;
