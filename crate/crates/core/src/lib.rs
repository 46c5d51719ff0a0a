//! Exact simulation and analysis of the discrete-time quantum-walk algorithm
//! for L-subset finding.
//!
//! Two engines evolve the same algorithm `(W^t1 P)^t2 |s>`:
//!
//! * [`full_sim`] works on the explicit subset/coin state space, counts oracle
//!   queries and is limited to small N;
//! * [`reduced`] works in the (2L+1)-dimensional symmetric subspace and runs
//!   at N in the millions.
//!
//! [`spectral`] checks the eigenstructure of the walk and of the search
//! operator, and [`cost`] holds the parameter choices and clique cost models.

pub mod cli;
pub mod combinat;
pub mod cost;
pub mod error;
pub mod families;
pub mod full_sim;
pub mod instance;
pub mod reduced;
pub mod report;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
