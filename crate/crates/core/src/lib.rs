//! Exact-arithmetic engine for baskets of terminal quotient singularities on
//! minimal 3-folds of general type.
//!
//! The crate computes Reid-style local contributions, plurigenera and
//! canonical volumes of formal baskets, walks the prime-packing lattice,
//! applies geometric admissibility filters, and reproduces the published
//! classification tables (the chi = 1 case list, the 63-row chi > 1 table,
//! and the fibration-type volume bound table) from first principles.
//!
//! All arithmetic is exact; floating point never enters any computation.

pub mod basket;
pub mod bounds;
pub mod chain;
pub mod classifier;
pub mod constraints;
pub mod error;
pub mod fixtures;
pub mod packing;
pub mod pair;
pub mod rational;
pub mod report;

pub use basket::{Basket, FormalBasket};
pub use bounds::{FType, FibrationCase, Schedule, XiStep, XiTrace};
pub use chain::ChainPair;
pub use error::Error;
pub use pair::Pair;
pub use rational::Rational;
