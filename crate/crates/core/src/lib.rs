//! # entropy-extremes
//!
//! Exact extremal relations between the Shannon entropy and the ℓα-norm of
//! n-ary probability vectors, and everything that follows from them.
//!
//! Two one-parameter families carry all of the extremes:
//!
//! | Family | Shape | Role at fixed Shannon entropy |
//! |--------|-------|-------------------------------|
//! | `v_n(p)` | one mass `1-(n-1)p`, `n-1` masses `p` | largest ℓα-norm |
//! | `w_n(p)` | `⌊1/p⌋` masses `p`, one remainder, zeros | smallest ℓα-norm |
//!
//! Any measure that is a strictly monotone function of an ℓα-norm inherits
//! tight bounds from these two families: Rényi, Tsallis, type-β, γ-entropy,
//! R-norm information, the index of coincidence, the Rényi divergence from
//! the uniform distribution, and Gallager's `E0` for uniformly focusing
//! channels under a uniform input.
//!
//! ## Modules
//!
//! - [`simplex`]: probability vectors, orders, Shannon entropy, ℓα-norms, sampling.
//! - [`extremal`]: the `v`/`w` families, their entropy and norm profiles and inverses.
//! - [`bounds`]: the sandwich bounds and the measures built on ℓα-norms.
//! - [`channel`]: discrete memoryless channels, Arimoto quantities, `E0`.
//! - [`region`]: boundary curves of the feasible regions, CSV/JSON export.
//! - [`verify`]: the Monte-Carlo / brute-force verification harness.
//!
//! ## Quick start
//!
//! ```rust
//! use entropy_extremes::{bounds, simplex::{Order, ProbVec}};
//!
//! let p = ProbVec::new(vec![0.5, 0.3, 0.2]).unwrap();
//! let report = bounds::norm_bounds_at_entropy(&p, Order::finite(2.0).unwrap()).unwrap();
//! assert!(report.lower <= report.value && report.value <= report.upper);
//! ```
//!
//! All quantities are in nats.

pub mod bounds;
pub mod channel;
mod error;
pub mod extremal;
pub mod region;
mod root;
pub mod simplex;
pub mod verify;

pub use bounds::{BoundReport, MeasureKind, MeasureSpec};
pub use channel::{Channel, Classification, JointState};
pub use error::{Error, Result};
pub use extremal::{ExtremalFamily, ExtremalProfile, Family};
pub use region::{RegionCurve, XAxis};
pub use simplex::{Order, ProbVec};
