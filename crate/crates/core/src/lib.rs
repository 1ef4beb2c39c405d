//! Exact tools for partition regularity on finite-sums sets.
//!
//! * [`fs`]: finite-sums sets `FS^k`, digit words, lines and progressions.
//! * [`criteria`]: zero-sum subset covers, the columns condition, shift
//!   invariance and the signature bound for shift-invariant equations.
//! * [`constructors`]: explicit, verified solutions built from certificates.
//! * [`search`]: exhaustive search over finite colorings.

pub mod constructors;
pub mod criteria;
pub mod decimal;
pub mod fs;
pub mod linalg;
pub mod search;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
