//! Exact enumeration and counting of conjugacy classes in the free product
//! `Z2 * Z3` (equivalently `PSL(2, Z)`), with the reciprocal and `m`-low-lying
//! subfamilies that correspond to closed geodesics on the modular orbifold.
//!
//! Words are handled through the usual identification of an (ab)-word
//! `a b^e0 a b^e1 ... a b^e(t-1)` with the sign sequence `(e0, ..., e(t-1))`;
//! see [`binwords::BinaryWord`]. Every count is an arbitrary-precision integer.
//!
//! Module map:
//! - [`binwords`]: rotations, canonical forms, primitivity, runs, half-turn words.
//! - [`counting`]: closed forms and recursions, the `alpha_m` root solver, growth targets.
//! - [`enumerate`]: brute-force enumeration and the explicit power / composition bijections.
//! - [`geometry`]: the `PSL(2, Z)` representation, traces, lengths and cusp depth.
//! - [`report`]: table and growth-law rows consumed by the CLI.
//! - [`verify`]: invariant suites run by `modgeo verify`.
//! - [`oracle`]: slow, independent reference implementations used by tests and suites.

pub mod binwords;
pub mod counting;
pub mod enumerate;
mod error;
pub mod exec;
pub mod geometry;
pub mod oracle;
pub mod report;
pub mod verify;

pub use binwords::{BinaryWord, Composition, HalfTurnWord, Sign};
pub use counting::{AlphaData, CountRecord, Family};
pub use error::{Error, Result};
pub use exec::Exec;
pub use geometry::{DepthReport, ProjectiveMatrix};
