//! Exact decomposition, equivalence and correspondence tools for
//! polynomials over ℚ(i), with numeric Julia-set exploration.

pub mod acceptance;
pub mod characters;
pub mod cli;
pub mod corr;
pub mod decompose;
pub mod equivalence;
pub mod error;
pub mod hcorr;
pub mod julia;
pub mod poly;

pub use error::{Error, Result};
