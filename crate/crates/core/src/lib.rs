//! Symmetric divergence measures between finite discrete distributions,
//! their tight lower and upper bounds at a fixed total variation distance,
//! and an audit of uniquely-decodable lossless source codes built on them.
//!
//! The crate is `no_std` and needs only `alloc`. Every quantity is computed in
//! nats unless a function name or field says otherwise.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`dist`] | [`Distribution`], total variation, entropy |
//! | [`fdiv`] | generic f-divergence, KL, Jeffreys, Hellinger, capacitory discrimination, Bhattacharyya, Rényi, Chernoff |
//! | [`bounds`] | closed-form minima at fixed total variation, extremal pairs, the `L(ε)` curve and its inverse |
//! | [`coding`] | Kraft sums, induced distribution, redundancy, L1 bounds for UD codes |
//! | [`oracle`] | brute-force grid search that checks every bound is valid and tight |
//!
//! ```
//! use symdiv_core::{bounds, fdiv, ExtremalKind};
//!
//! let pair = bounds::make_extremal_pair(0.5, ExtremalKind::TwoElement).unwrap();
//! let c = fdiv::chernoff_information(&pair.p, &pair.q);
//! assert!((c.value - bounds::chernoff_min(0.5).unwrap()).abs() < 1e-10);
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bounds;
pub mod coding;
pub mod dist;
mod error;
pub mod fdiv;
mod math;
pub mod oracle;
pub mod search;

pub use bounds::{ExtremalKind, ExtremalPair, LCurvePoint};
pub use coding::{CodeReport, L1Bounds, UdCode};
pub use dist::{total_variation, Distribution};
pub use error::{Error, Result};
pub use fdiv::{ChernoffResult, FDivergenceSpec};
pub use oracle::{Measure, OracleReport};
