pub mod catalog;
pub mod diagram;
pub mod document;
pub mod error;
pub mod localization;
pub mod model;
pub mod orbit;
pub mod random;
pub mod simplicial;
pub mod soa;

pub use error::{Error, Result};
