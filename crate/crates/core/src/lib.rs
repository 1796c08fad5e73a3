//! Exact simulation of conditional two-particle entanglement in `n`-spin
//! triorthogonal states `c₁|z₁…z_n⟩ + c₂|−z₁…−z_n⟩`.
//!
//! The crate builds these states, measures some of the particles along
//! arbitrary axes, and studies what is left behind:
//!
//! - [`states`]: state construction, rotated measurement kets, conditional
//!   projection with its closed-form counterpart, reduced density matrices;
//! - [`correlations`]: unconditional and conditional correlation functions;
//! - [`bell`]: CHSH and three-particle Bell operators, their closed-form
//!   spectral maxima, maximal-violation families and a settings optimizer;
//! - [`experiment`]: seeded Monte Carlo sampling and post-selection;
//! - [`cli`]: JSON-configured batch runs used by the `belllab` binary.
//!
//! Particles are indexed from 0 and particle 0 is the most significant
//! factor of every tensor product.

pub mod bell;
pub mod cli;
pub mod correlations;
pub mod direction;
pub mod error;
pub mod experiment;
pub mod linalg;
pub mod rng;
pub mod states;

pub use direction::{Direction, SpinLabel};
pub use error::{Error, Result};
