//! Exact algebra for Morse–Novikov theory: weighted group rings, the ring
//! tower of Sigma-inverting representations, chain-complex collapse, cut
//! systems and Novikov-type invariants.

pub mod complex;
pub mod cut_system;
pub mod dirichlet;
pub mod error;
pub mod group_ring;
pub mod invariants;
pub mod json;
pub mod matrix;
pub mod mpoly;
pub mod poly;
pub mod ring;
pub mod tower;

pub use error::{AlgebraError, Result};
