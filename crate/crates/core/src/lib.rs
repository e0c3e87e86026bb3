//! Smallest subsets of an integer set that keep the gcd or the lcm, found by
//! reduction to Minimum Cover over a coprime basis.

pub mod circulant;
pub mod cli;
pub mod coprime_basis;
pub mod error;
pub mod generator;
pub mod numeric;
pub mod reductions;
pub mod setcover;
pub mod solver;

pub use error::{Error, Result};
pub use numeric::{Nat, NatSet};
pub use solver::{Method, Mode, ProblemInstance, SubsetSolution};
