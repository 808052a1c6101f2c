//! Exact computation of union Segre classes in projective space.
//!
//! Classes live in `A_*(P^n)` with exact rational coefficients. A union
//! Segre class `s(Y; X_1..X_s; P^n)` is `π_*(D/(1+D))` for
//! `D = R_1 + ... + R_s + Ȳ` on a resolving model: `P^n` itself when `Y`
//! is empty, a blow-up along a smooth center `Y`, or a two-step tower for
//! lines through a point of `P^3`. On top of that the crate provides the
//! inclusion-exclusion sums, successive approximations and their
//! recursion, the `n!` defect term, Chern-Schwartz-MacPherson classes of
//! almost nonsingular unions and bounded formal verification of the
//! underlying power-series identities.

pub mod csm;
pub mod error;
pub mod exec;
pub mod graded;
pub mod identities;
pub mod models;
pub mod segre;

pub use error::{Error, Result};
pub use exec::Exec;
pub use graded::{CycleClass, FormalSeries, Rational, TruncPoly};
pub use models::{BlowupModel, DivisorClass, Model, SplitCenter, TowerP3Lines, YMode};
