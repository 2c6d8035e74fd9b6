//! Finite index categories and diagrams of simplicial sets over them.

pub mod category;
#[allow(clippy::module_inception)]
pub mod diagram;
pub mod hom;
pub mod ops;

pub use category::{Morphism, SmallCategory};
pub use diagram::{Diagram, DiagramMap};
