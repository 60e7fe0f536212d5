//! Nested vertex-model partition functions for gl_{M+1}: brute-force lattice
//! contraction, closed-form multisymmetric weight functions, and the
//! verification suites tying them together.

pub mod error;
pub mod labels;
pub mod rmatrix;
pub mod scalars;

pub use error::{Error, Result};
pub use labels::{Color, ColorAssignment, CoordKind, Coordinate, FmLabel, Shape};
pub use scalars::{ComparePolicy, Rational, ThetaConfig};
