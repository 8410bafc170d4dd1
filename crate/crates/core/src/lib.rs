//! Exact-arithmetic toolkit for flat G2 orbifolds `T^7/G`: group closure,
//! singular strata, invariant cohomology, the cohomology ring of the
//! resolution and triple Massey products.

pub mod cohomology;
pub mod config;
pub mod error;
pub mod exterior;
pub mod integration;
pub mod linalg;
pub mod locus;
pub mod massey;
pub mod orbifold;
pub mod preset;
pub mod report;
pub mod resolution;

pub use error::{Error, Result};
