//! Exact-rational computer algebra for the multiparameter quantum group
//! U_q(so_{2n+1}).
//!
//! Layers, bottom up:
//! * [`params`]: quantification data and the bimultiplicative form.
//! * [`freealg`]: the mixed algebra with triangular normal form, skew bracket,
//!   antipode and coproduct.
//! * [`borel`]: the Serre quotient (equality by ideal slices), differential
//!   calculi and Σ-monoids.
//! * [`generators`]: the bracketed words u[k,m], the coideal generators Φ^S(k,m)
//!   and the σ/μ coefficient tables.
//! * [`schemes`]: black/white scheme combinatorics and the pair checker.
//! * [`verify`]: lemma-by-lemma verification suites.

pub mod borel;
pub mod error;
pub mod freealg;
pub mod generators;
pub mod params;
pub mod schemes;
pub mod verify;

pub use error::{Error, Result};
