//! Denseness of partition members of ℕ in `Z_p` and of their ratio sets in `Q_p`.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`padic`]: exact arithmetic primitives (valuations, unit parts, the
//!   extended Legendre symbol, residue classes and `Q_p*` cells).
//! * [`partition`]: the extremal partitions of ℕ (modular tables,
//!   valuation-parity and Legendre-signature splits) plus their JSON form.
//! * [`density`]: finite-precision coverage oracles, the cell counter and
//!   symbolic avoidance certificates.
//! * [`scanner`]: prime sweeps that aggregate per-part verdicts into
//!   exceptional-prime sets and check them against the bounds `k - 1` and
//!   `⌊log₂ k⌋`.
//!
//! Nothing here claims denseness outright. A "covered" verdict means every
//! residue (or cell) at the requested precision is hit inside a finite window;
//! "avoids" is backed by a certificate that holds for every window.

pub mod density;
mod error;
pub mod padic;
pub mod partition;
pub mod scanner;

pub use error::{Error, Result};
