//! Exact Jordan decomposition of Ornstein–Uhlenbeck operators whose drift
//! matrix is a Jordan block `−c·Id + R` and whose diffusion is `σ²·Id`.
//!
//! All arithmetic is over exact rationals. The constructive chains for
//! `d = 2` ([`jordan2d`]) and `d = 3` ([`jordan3d`]) are cross-checked by a
//! brute-force kernel-rank computation ([`oracle`]).

pub mod error;
pub mod exact;
pub mod hermite;
pub mod jordan2d;
pub mod operator;
pub mod dag;
pub mod jordan3d;
pub mod oracle;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
pub use exact::{ExactMatrix, Rational};
pub use hermite::{HermitePoly, MultiIndex};
pub use operator::OuContext;
