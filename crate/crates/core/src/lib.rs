//! Horizontal calculus on the Heisenberg group `H^n`.
//!
//! The crate computes exact second-order jets of scalar fields, converts them
//! into horizontal derivative data along the frame `X_j, Y_j, T`, and checks
//! how those data transform under CR maps. On top of that it builds the
//! CR-conformal tensor `A^u`, its spectrum and the symmetric functions
//! `sigma_k`, and a finite-difference model of the sublaplacian for barrier
//! problems on gauge balls.

pub mod cli;
pub mod crtransform;
pub mod error;
pub mod fields;
pub mod grid;
pub mod group;
pub mod jets;
pub mod schouten;
pub mod structure;

pub use error::{Error, Result};
pub use group::Point;
pub use jets::{HorizontalJet, Jet2};
