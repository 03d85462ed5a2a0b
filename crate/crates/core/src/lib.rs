//! Discrete-time coined quantum walks on complete graphs with self-loops, the
//! search-complement walk built on them, and its gate-level synthesis.
//!
//! Basis index convention everywhere: `coin * 2^n + position`.

pub mod circuit;
pub mod cli;
pub mod complement;
pub mod error;
pub mod graphs;
pub mod linalg;
pub mod probability;
pub mod sampling;
pub mod walk;

mod statevector;

pub use error::{Error, Result};
