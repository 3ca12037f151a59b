//! Exact computations with proper holomorphic maps between complex balls:
//! properness certificates, invariance groups, equivariance homomorphisms
//! and kernel classification.

pub mod autgroup;
pub mod cli;
pub mod error;
pub mod hermitian;
pub mod invariance;
pub mod linalg;
pub mod poly;
pub mod polymap;
pub mod scalar;

pub use error::{Error, Result};
