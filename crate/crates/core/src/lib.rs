//! Growth series of structure groups and monoids of conjugation-quandle
//! solutions of the Yang–Baxter equation, with brute-force oracles.

pub mod algebra;
pub mod error;
pub mod exec;
pub mod group_growth;
pub mod oracle;
pub mod reflection;
pub mod series;
pub mod transposition;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;

/// Version of this library.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
