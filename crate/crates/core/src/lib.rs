//! Exact piecewise-linear reparametrizations of the unit interval and the
//! traces of PL paths in rational space.
//!
//! All arithmetic is over arbitrary-precision rationals, so every equality
//! test in this crate is exact.

pub mod error;
pub mod factorization;
pub mod lattice;
pub mod plmap;
pub mod rat;
pub mod stopmap;
pub mod trace;

#[cfg(any(test, feature = "testing"))]
pub mod testing;

pub use error::{Error, Result};
pub use factorization::{left_factor, right_lift};
pub use lattice::{class_of, join_witness, meet_witness, JoinWitness, MeetWitness, TraceClass};
pub use plmap::{Breakpoint, Homeo, Reparam};
pub use rat::{format_rat, parse_rat, Rat};
pub use stopmap::{
    approx_homeo, approx_noninjective, compose_stop_data, countable_builder, realize_values, Interval, Piece, Stop,
    StopData,
};
pub use trace::homotopy::{thin_homotopy, witness_endpoints, witness_eval, HomotopyWitness, Side};
pub use trace::loops::{image_chain, is_loop_free, ImageChain};
pub use trace::regular::{equivalent, factor_regular, normal_form, regularize, shared_source, SharedSource, TraceNF};
pub use trace::{Path, PathPoint, PathStop, PathStopData, Point};
