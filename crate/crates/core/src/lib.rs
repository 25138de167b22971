//! Finite-scale computation of growth invariants of groups: modular
//! representation counts, minimal extension counts, stable-subgroup counts,
//! group-algebra ideal counts and normal-generation probabilities, each with
//! a brute-force cross-check.

pub mod cli;
pub mod error;
pub mod extensions;
pub mod ffalg;
pub mod freegrowth;
pub mod groups;
pub mod modrep;
pub mod probgen;

pub use error::{Error, Result};
