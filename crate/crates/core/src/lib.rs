//! Exact computation of enumerative invariants linked by string duality.

pub mod error;
pub mod exact;
pub mod partition;
pub mod chern_simons;
pub mod series;
pub mod linalg;
pub mod hurwitz;
pub mod witten;
pub mod marino_vafa;
pub mod report;
pub mod vertex;
pub mod mirror;
pub mod verify;

pub use error::{Error, Result};
