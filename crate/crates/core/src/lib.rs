//! Exact computations for a semisimple subgroup `Ghat` of `G` acting on the
//! full flag variety `G/B`: unstable loci and their codimension, the
//! Kirwan-Ness strata, the nested cones `C_k`, GIT chambers, and ample-cone
//! membership through Popov's signed tree. A brute-force invariant counter
//! cross-checks the cone answers.
//!
//! Run `cargo run --example <name>` for one small walkthrough per capability.

pub mod error;
pub mod linalg;
pub mod lp;
pub mod rootcore;
pub mod embed;
pub mod popov;
pub mod strat;
pub mod liealg;
pub mod cones;
pub mod oracle;
pub mod reproduce;
pub mod cli;

pub use error::{Error, Result};
