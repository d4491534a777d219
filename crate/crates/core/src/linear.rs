//! The linear problem u″ + y = 0, u′(0) = 0, u(T) = α ∫₀^η u.
//!
//! Its unique solution (αη ≠ 1) is
//!
//! ```text
//! u(t) = [∫₀^T (T−s) y ds − (α/2) ∫₀^η (η−s)² y ds] / (1 − αη) − ∫₀^t (t−s) y ds
//! ```
//!
//! The forcing is read as the piecewise-linear interpolant of its node
//! values, for which every integral above is evaluated exactly (up to
//! rounding), so `u` is the exact solution for that interpolant.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::problem::BvpProblem;

/// Relative tolerance for the integral boundary condition.
pub const TOL_BC: f64 = 1e-8;
/// Relative tolerance for sign checks.
pub const TOL_POS: f64 = 1e-10;
/// Relative tolerance for the cone bound min u ≥ γ‖u‖.
pub const TOL_CONE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearSolution {
    pub u: GridFunction,
    /// u(0).
    pub u0: f64,
    /// u(T) − α ∫₀^η u, by fourth-order quadrature of the node values.
    pub boundary_defect: f64,
}

impl LinearSolution {
    pub fn bc_ok(&self) -> bool {
        self.boundary_defect.abs() <= TOL_BC * self.u.sup_norm().max(1.0)
    }
}

/// Solves the linear problem for forcing `y` on the grid of `y`.
pub fn solve_linear(problem: &BvpProblem, y: &GridFunction) -> Result<LinearSolution> {
    let denom = problem.one_minus_alpha_eta();
    if denom.abs() <= 1e-12 {
        return Err(Error::param(
            "alpha",
            "alpha*eta = 1: the linear problem is singular",
        ));
    }
    if (y.t_end() - problem.t_end()).abs() > 1e-12 * problem.t_end() {
        return Err(Error::param(
            "y",
            format!(
                "forcing lives on [0, {}], problem on [0, {}]",
                y.t_end(),
                problem.t_end()
            ),
        ));
    }
    let (alpha, eta) = (problem.alpha(), problem.eta());
    let h = y.step();
    let yv = y.values();
    let n = y.n();

    // I(tᵢ) = ∫₀^tᵢ (tᵢ − s) y ds via I(t+h) = I(t) + h·Y(t) + h²(2yᵢ + yᵢ₊₁)/6,
    // Y(t) = ∫₀^t y.
    let mut sweep = Vec::with_capacity(n + 1);
    let (mut i_acc, mut y_acc) = (0.0f64, 0.0f64);
    sweep.push(0.0);
    for k in 0..n {
        i_acc += h * y_acc + h * h * (2.0 * yv[k] + yv[k + 1]) / 6.0;
        y_acc += 0.5 * h * (yv[k] + yv[k + 1]);
        sweep.push(i_acc);
    }
    let full = sweep[n];
    let near = y.weighted_integral(|s| (eta - s) * (eta - s), 0.0, eta)?;
    let u0 = (full - 0.5 * alpha * near) / denom;

    let values: Vec<f64> = sweep.iter().map(|i| u0 - i).collect();
    let u = GridFunction::new(y.t_end(), values)?;
    let boundary_defect = u.last() - alpha * u.integral(0.0, eta)?;
    Ok(LinearSolution {
        u,
        u0,
        boundary_defect,
    })
}

/// min u ≥ −tol_pos.
pub fn check_positivity(u: &GridFunction) -> bool {
    u.min() >= -TOL_POS * u.sup_norm().max(1.0)
}

/// For α > 1/η and nonnegative, nonzero forcing: true iff the unique
/// solution is strictly negative somewhere on the grid.
///
/// Uniqueness makes this a witness that no nonnegative solution exists, up
/// to grid resolution.
pub fn check_nonexistence_supercritical(problem: &BvpProblem, y: &GridFunction) -> Result<bool> {
    if problem.alpha() * problem.eta() <= 1.0 {
        return Err(Error::param(
            "alpha",
            format!(
                "needs alpha > 1/eta = {}, got {}",
                1.0 / problem.eta(),
                problem.alpha()
            ),
        ));
    }
    if y.min() < 0.0 {
        return Err(Error::param("y", "forcing must be nonnegative"));
    }
    if y.integral(0.0, y.t_end())? <= 0.0 || y.max() <= 0.0 {
        return Err(Error::param("y", "forcing must not vanish identically"));
    }
    let sol = solve_linear(problem, y)?;
    Ok(sol.u.min() < -TOL_POS * sol.u.sup_norm().max(1.0))
}

/// min u ≥ γ·max u − tol_cone.
pub fn check_min_bound(u: &GridFunction, gamma: f64) -> bool {
    u.min() >= gamma * u.max() - TOL_CONE * u.sup_norm().max(1.0)
}

/// One-sided fourth-order estimate of u′(0),
/// (−25u₀ + 48u₁ − 36u₂ + 16u₃ − 3u₄)/(12h).
pub fn neumann_defect(u: &GridFunction) -> f64 {
    let v = u.values();
    (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * u.step())
}

/// u(T) − α ∫₀^η u for a sampled u.
pub fn integral_defect(problem: &BvpProblem, u: &GridFunction) -> Result<f64> {
    Ok(u.last() - problem.alpha() * u.integral(0.0, problem.eta())?)
}

/// Node values never increase by more than tol_pos.
pub fn is_nonincreasing(u: &GridFunction) -> bool {
    let tol = TOL_POS * u.sup_norm().max(1.0);
    u.values().windows(2).all(|w| w[1] <= w[0] + tol)
}

/// Second differences never exceed tol_pos.
pub fn is_concave(u: &GridFunction) -> bool {
    let tol = TOL_POS * u.sup_norm().max(1.0);
    u.values()
        .windows(3)
        .all(|w| w[0] - 2.0 * w[1] + w[2] <= tol)
}
