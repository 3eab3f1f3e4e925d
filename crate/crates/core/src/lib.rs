pub mod embed;
pub mod error;
pub mod graph;
pub mod numfmt;
pub mod search;
pub mod spectral;
pub mod trees;

pub use error::{Error, Result};
pub use graph::{Construction, Graph};
pub use trees::{generate_trees, Tree, TreeFamily};
