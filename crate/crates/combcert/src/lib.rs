pub mod cds;
pub mod cli;
pub mod coalition;
pub mod error;
pub mod fair;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod packing;
pub mod prob;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{Cycle, Digraph, Graph, Length};
