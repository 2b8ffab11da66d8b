//! Learning partial orders by pairwise comparisons.
//!
//! * [`poset`]: strict orders, covering and anti-covering relations, the
//!   per-poset lower bound `Q(P)`.
//! * [`enumerate`], [`canon`]: exhaustive generation and canonical forms for
//!   small ground sets.
//! * [`levels`]: three-level partitions, class tests and the uniform sampler.
//! * [`learner`]: oracles, knowledge tracking, the three-level learner and a
//!   compare-everything baseline.
//! * [`strategy`]: exact optimal learning strategies for `n <= 5`.

pub mod bits;
pub mod canon;
pub mod counts;
pub mod enumerate;
pub mod error;
pub mod learner;
pub mod levels;
pub mod poset;
pub mod strategy;

pub use error::{Error, Result};
pub use poset::{PairOutcome, PairSet, Poset, PosetJson, Relation};
