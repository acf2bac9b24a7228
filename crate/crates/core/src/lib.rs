//! Decision procedures for the Deligne–Simpson problem and its weak variant,
//! together with a numerical search for realizing matrix tuples.

pub mod classify;
pub mod cli;
pub mod decider;
pub mod error;
pub mod genericity;
pub mod jnf;
pub mod realize;

pub use error::{DspError, Result};
