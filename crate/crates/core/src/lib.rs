//! Exact and numeric toolkit for complex moment-angle manifolds.
//!
//! The input is combinatorial-geometric data `{K; a_1, …, a_m; Ψ}`: a
//! simplicial complex on `[m]`, vectors `a_i ∈ R^n` with entries in a field
//! of rational functions over declared symbols, and a complex `m × ℓ`
//! matrix `Ψ`. The crate checks fan axioms and completeness, certifies weak
//! normality with an explicit polytope, verifies the complex-structure
//! conditions and genericity hypotheses, classifies foliation leaves, and
//! audits the transverse Kähler potential numerically.

pub mod cli;
pub mod error;
pub mod fan;
pub mod fixtures;
pub mod foliation;
pub mod io;
pub mod kahler;
pub mod scalar;
pub mod simplicial;
pub mod structure;

pub use error::{Error, Result};
