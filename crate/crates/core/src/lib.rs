//! High Confidence Tree (HCT) optimisation of noisy functions on `[0, 1]`
//! under bandit feedback.
//!
//! The crate is organised around the pieces of the algorithm:
//!
//! - [`partition`]: dyadic cells of the arm space and the dissimilarity geometry.
//! - [`cover_tree`]: the incremental covering tree with its `U`/`B` bounds,
//!   optimistic traversal, refresh phase and expansion rule.
//! - [`hct`]: the run loop in its iid and correlated (`Γ`) variants.
//! - [`baselines`]: a plain HOO comparator sharing the same tree.
//! - [`environments`]: reward processes (garland function, garland MDP).
//! - [`harness`]: seeded replicas, checkpointed metrics, CSV output and the
//!   property-check suites.
//!
//! ```
//! use hct_core::environments::GarlandIid;
//! use hct_core::hct::{self, HctConfig};
//!
//! let cfg = HctConfig::iid(2_000);
//! let out = hct::run(&cfg, &mut GarlandIid::new(), 7).unwrap();
//! assert_eq!(out.tree.pull_total(), 2_000);
//! ```

pub mod baselines;
pub mod cover_tree;
pub mod environments;
pub mod error;
pub mod harness;
pub mod hct;
pub mod partition;
pub mod seeding;

pub use error::{Error, Result};
