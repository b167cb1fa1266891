//! Weakly submodular set functions.
//!
//! A set function `f` on a ground set `U` is weakly submodular when
//! `|T| f(S) + |S| f(T) >= |S∩T| f(S∪T) + |S∪T| f(S∩T)` for all `S, T ⊆ U`.
//! The crate provides:
//!
//! - [`zoo`]: builders for concrete families (dispersion, segmentation,
//!   cardinality profiles, thresholds, max-cut, welfare, ...).
//! - [`check`]: exhaustive and sampled property checkers with witnesses.
//! - [`matroid`]: uniform, partition and explicit matroids, basis machinery
//!   and the Brualdi exchange bijection.
//! - [`solve`]: greedy, oblivious local search and brute-force optima.
//! - [`bounds`]: closed-form approximation ratios for both algorithms.
//! - [`instance`]: the JSON instance format.

pub mod bounds;
pub mod check;
pub mod error;
pub mod function;
pub mod ground;
pub mod instance;
pub mod matroid;
pub mod solve;
pub mod value;
pub mod zoo;

pub use check::{CheckReport, Mode, Property, ViolationWitness};
pub use error::{Error, Result};
pub use function::{Claims, Oracle, SetFunction};
pub use ground::{GroundSet, Subset};
pub use matroid::Matroid;
pub use value::Value;
