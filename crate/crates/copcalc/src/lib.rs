//! Calculus of composition operators inside the C*-algebra generated by a
//! single linear-fractional composition operator and the compacts on the
//! Hardy space.
//!
//! The crate has three layers:
//!
//! * exact Möbius-map algebra and boundary data ([`moebius`], [`boundary`],
//!   [`blaschke`]),
//! * the 2x2 matrix symbol calculus, essential norms/spectra and the Gelfand
//!   map of the parabolic algebra ([`symbols`]),
//! * membership decision procedures and brute-force numerical oracles
//!   ([`membership`], [`numerics`]).
//!
//! See the `examples/` directory for runnable walkthroughs of each
//! capability, and [`verify`] for the self-check suites exposed through the
//! `copcalc verify` subcommand.

pub mod blaschke;
pub mod boundary;
pub mod cli;
pub mod error;
pub mod jsonio;
pub mod membership;
pub mod moebius;
pub mod numerics;
pub mod symbols;
pub mod verify;

pub use error::{Error, Result};

/// The complex scalar used throughout.
pub type Cx = num_complex::Complex64;

/// Default tolerance for projective / jet comparisons.
pub const TOL_EQ: f64 = 1e-12;
/// Relative tolerance below which a Möbius determinant counts as degenerate.
pub const TOL_DEGENERATE: f64 = 1e-14;
/// Tolerance for boundary-data matching in decision procedures.
pub const TOL_MATCH: f64 = 1e-10;
