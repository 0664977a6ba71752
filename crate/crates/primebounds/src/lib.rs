//! Finite explicit formula for sums of non-negative arithmetic functions,
//! specialised to the von Mangoldt function.
//!
//! The crate assembles two-sided bounds for Σ_{n≤x} Λ(n) n^{-σ} from zeta
//! zeros up to a height T, extremal (Graham–Vaaler) weights and explicit
//! error terms, and checks them against brute-force oracles: a segmented
//! sieve, adaptive quadrature and direct series.

pub mod error;
pub mod extremal;
pub mod formula;
pub mod quad;
pub mod sieve;
pub mod special_fn;
pub mod summation;
pub mod weights;
pub mod zeros;

pub use error::{Error, Result};
