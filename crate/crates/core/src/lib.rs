pub mod bounds;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod layering;
pub mod planar;
pub mod product;
pub mod treedecomp;
pub mod twcolour;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use graph::Graph;
pub use twcolour::Colouring;
