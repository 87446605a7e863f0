//! Exact character-theoretic checks on small permutation groups.

pub mod arith;
pub mod batch;
pub mod blocks;
pub mod chartab;
pub mod conjectures;
pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod io;
pub mod lattice;

pub use error::{Error, Result};
