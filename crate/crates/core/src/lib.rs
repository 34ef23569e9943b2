//! Exact-arithmetic toolkit for rational-distance, rational-angle point
//! configurations.
//!
//! * [`cyclotomic`]: canonical arithmetic in Q(ζ_N).
//! * [`mann`]: moduli, enumeration and certification of vanishing sums of
//!   roots of unity and of the sets Z_a^k.
//! * [`pointset`]: exact point-set constructions with rich rational-angle
//!   distance structure.
//! * [`graph`]: the rational-angle distance graph, degree peeling,
//!   collinearity statistics and irredundant path counting.

pub mod arith;
pub mod cyclotomic;
pub mod mann;
pub mod pointset;
mod error;
pub mod geometry;
pub mod graph;
pub mod serial;
pub mod subsets;

pub use cyclotomic::{CycNum, RationalAngleForm};
pub use error::{Error, Result};
