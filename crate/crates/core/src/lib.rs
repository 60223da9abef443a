//! Multilevel quasi-interpolant projection stabilization for B-spline
//! discretizations of advection-dominated transport.

pub mod assembly;
pub mod benchmarks;
pub mod cli;
pub mod error;
pub mod hierarchy;
pub mod infsup;
pub mod linalg;
pub mod quasi_interp;
pub mod spline;

pub use error::{Error, Result};
