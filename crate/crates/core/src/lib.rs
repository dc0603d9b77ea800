//! Fučík spectrum of one-dimensional Dirichlet Sturm–Liouville problems
//!
//! ```text
//! -(p u')' + q u = a m(t) u+ - b n(t) u-   on ]T1, T2[,   u(T1) = u(T2) = 0
//! ```
//!
//! with sign-changing weights `m`, `n`. The spectrum is computed through the
//! zero-function `phi_a^w(s)`, which maps a zero `s` of a solution of
//! `Lu = a w u` to the next one; the Fučík curves are the level sets
//! `Phi_k(a, b)(T1) = T2` of its alternating compositions.
//!
//! * [`weights`]: piecewise-polynomial coefficients, sign structure, presets.
//! * [`shooting`]: the zero-function and its compositions.
//! * [`eigen`]: eigenvalues `lambda_k` on subintervals.
//! * [`spectrum`]: nonemptiness of the sets `C_k`, curve tracing.
//! * [`analysis`]: per-quadrant counts, asymptotes, compact-support gap.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the scalar to `f64`, which the default tolerances are tuned for.

// `!(x < y)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod config;
pub mod eigen;
mod error;
mod ode;
pub mod scalar;
pub mod shooting;
pub mod spectrum;
pub mod weights;

pub use error::{Error, Result};
pub use scalar::Real;
pub use shooting::{Branch, CrossingTime, Tolerances};
pub use spectrum::{Quadrant, SpectrumOptions, Status};
pub use weights::presets::Preset;
pub use weights::{Poly, WeightSelector};

pub type Weight = weights::Weight<f64>;
pub type Problem = weights::Problem<f64>;
pub type CurveBranch = spectrum::CurveBranch<f64>;
pub type SpectrumReport = analysis::SpectrumReport<f64>;

pub type Weight32 = weights::Weight<f32>;
pub type Problem32 = weights::Problem<f32>;
