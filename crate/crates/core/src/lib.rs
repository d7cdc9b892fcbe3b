//! Numerical ranges and numerical indices on finite-dimensional normed spaces,
//! together with their Lipschitz counterparts.
//!
//! The crate has three layers:
//!
//! * **Geometry** ([`space`]): normed spaces (`ℓp` over ℝ or ℂ, real polyhedral
//!   norms), duality pairings, support faces of the unit sphere, norming pairs,
//!   and a Bishop–Phelps–Bollobás-style correction that turns an almost-norming
//!   pair into an exact one nearby.
//! * **Linear layer** ([`linop`]): operators as dense matrices, exact operator
//!   norms and numerical radii where the norm structure permits (spectral,
//!   `ℓ1`/`ℓ∞`, polyhedral), sampled numerical-range clouds, and a randomized
//!   search for upper bounds on the numerical index of a space.
//! * **Lipschitz layer** ([`lipmap`], [`smooth`], [`extract`]): a small
//!   expression grammar for Lipschitz maps with a compositional upper bound on
//!   the Lipschitz constant, sampled lower bounds for the Lipschitz numerical
//!   radius and its relaxed variants (with recomputable witnesses), Gaussian
//!   smoothing against empirical measures with common random numbers, weak
//!   derivatives, and two pipelines that extract genuinely linear data from a
//!   Lipschitz map: operator extraction through smoothing and differentiation,
//!   and Følner-style averaging that linearizes commuting translation
//!   perturbations.
//!
//! All estimators are deterministic given a seed: parallel and sequential runs
//! reduce in a fixed tree order and produce bit-identical numbers.

pub mod config;
pub mod error;
pub mod extract;
pub mod linop;
pub mod lipmap;
pub mod par;
pub mod rng;
pub mod scalar;
pub mod smooth;
pub mod space;

pub use error::{Error, Result};
pub use linop::{IndexEstimate, LinearOperator, Matrix, RadiusEstimate};
pub use lipmap::{LipBounds, LipWitness, LipschitzExpr};
pub use scalar::Scalar;
pub use space::{Face, Field, Functional, NormKind, NormingPair, SpaceSpec, Vector};
