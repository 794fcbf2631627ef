//! Formulation-symmetry detection for quadratically constrained quadratic
//! programs.
//!
//! A problem is encoded as a matrix (tensor or flat), turned into a binary
//! layered graph (or an expression DAG), and the colour-preserving
//! automorphisms of that graph are projected back to variable permutations,
//! each of which is verified exactly against the problem.

pub mod aut;
pub mod blg;
pub mod cli;
pub mod dag;
pub mod encode;
pub mod error;
pub mod graph;
pub mod group;
pub mod io;
pub mod model;
pub mod oracle;
pub mod relax;

pub use error::{Error, Result};
