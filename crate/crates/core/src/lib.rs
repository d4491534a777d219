//! Positive solutions of u″ + a(t) f(u) = 0, u′(0) = 0, u(T) = α ∫₀^η u.

pub mod cli;
pub mod cone;
pub mod error;
pub mod expr;
pub mod grid;
pub mod hypothesis;
pub mod linear;
pub mod nonlinear;
pub mod problem;
pub mod quadrature;
pub mod verify;

pub use error::{Error, Result};
pub use grid::GridFunction;
pub use problem::{BvpProblem, ProblemParams, ScalarFn};
