//! The small object argument over diagrams of simplicial sets.

pub mod run;
pub mod setup;
pub mod square;

pub use run::{
    pullback_over_colimit, retract_witness, small_object_argument, soa_functorial, Factorization, Mode,
    SoaOptions, StopReason, Trace,
};
pub use setup::{setup_from_set, setup_i, setup_j, setup_union, Instrumentation, Member};
pub use square::{arrows_isomorphic, lift_in, lifts_in, rlp_check, squares_between, RlpOutcome, Square, Witness};
