//! Exact invariants of primitive normal compactifications of the affine plane,
//! computed from key sequences, key forms and degree-wise Puiseux series.

pub mod classify;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod geometry;
pub mod json;
pub mod keyforms;
pub mod keyseq;
pub mod laurent;
pub mod normalform;
pub mod puiseux;
pub mod selftest;

pub use error::{Error, Result};
