//! Goppa codes and primitive narrow-sense BCH codes over finite field towers.
//!
//! The crate builds codes exactly (no floating point anywhere), decides when a
//! Goppa code meets its designed distance `t + 1` through the support-ratio
//! criterion, and constructs explicit minimum-weight codewords for several
//! infinite families of Goppa and BCH codes.

pub mod bch;
pub mod criterion;
pub mod error;
pub mod families;
pub mod field;
pub mod goppa;
pub mod linalg;
pub mod poly;
pub mod rng;

pub use error::{Error, Result};
pub use field::{Elem, FieldCtx, FieldSpec};
pub use linalg::{LinearCode, Matrix, MinDistance, Provenance};
pub use poly::Poly;
