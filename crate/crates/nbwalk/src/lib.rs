//! Non-backtracking random walks on finite undirected graphs: the directed
//! edge space and its operators, determinant identities linking them to
//! vertex matrices, closed-form spectra for regular and biregular graphs,
//! and convergence diagnostics for the walk itself.
//!
//! Start with the runnable examples (`cargo run --release --example ...`);
//! each one walks through a single capability end to end. The `cli` module
//! exposes the same functionality as machine-readable CSV reports.

pub mod cli;
pub mod edgespace;
pub mod error;
pub mod graph;
pub mod ihara;
pub mod laplacian;
pub mod linalg;
pub mod rng;
pub mod spectra;
pub mod walks;

pub use error::{Error, Result};
