pub mod analytic;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod numeric;
pub mod potentials;
pub mod specfun;
pub mod susy;

pub use error::{Error, Result};
