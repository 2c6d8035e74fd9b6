//! Finite simplicial sets in Eilenberg–Zilber normal form, maps between
//! them, limits and colimits, and exhaustive map search.

pub mod hom;
pub mod limits;
pub mod map;
pub mod ops;
pub mod realize;
pub mod search;
pub mod set;
pub mod standard;

pub use map::SimplicialMap;
pub use ops::DegeneracyWord;
pub use set::{normalize, CellId, FormalSimplex, Simplex, SimplicialSet, SimplicialSetBuilder, ValidationReport, Violation};
pub use standard::{boundary, boundary_inclusion, horn, horn_inclusion, point, standard_simplex};
pub use limits::{coproduct, product, pullback, pushout, quotient, to_terminal, Colimit, Pullback};
pub use search::{find_lift, hom_set, MapSearch};
pub use realize::{realize, LevelSource, Realized};
