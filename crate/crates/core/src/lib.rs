//! p-Frobenius numbers, p-Sylvester numbers, denumerants and p-Apéry sets of
//! numerical semigroups.
//!
//! [`semigroup`] holds the generic table-driven oracles. [`geometric`] holds
//! closed forms for generators of the shape `a*b^k - c` (three and four
//! consecutive exponents). [`verifier`] sweeps parameter grids and checks the
//! closed forms against the oracles, in parallel when the `parallel` feature
//! is enabled.

pub mod error;
pub mod exec;
pub mod geometric;
pub mod semigroup;
pub mod verifier;

pub use error::{Error, Result};
pub use semigroup::{GeneratorTuple, Limits, Oracle};
