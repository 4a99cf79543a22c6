#![allow(clippy::needless_range_loop)]

pub mod certificate;
pub mod cli;
pub mod decomposition;
pub mod density;
pub mod graph;
pub mod inequalities;
pub mod scalar;
pub mod search;

pub use graph::{Graph, GraphError};
pub use scalar::Scalar;
