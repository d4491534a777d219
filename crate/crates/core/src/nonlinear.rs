//! Shooting on c = u(0) and the fixed-point operator A.

use rayon::prelude::*;
use serde::Serialize;

use crate::cone::ConeConstants;
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::linear::solve_linear;
use crate::problem::BvpProblem;
use crate::verify::{verify, VerificationReport};

/// Default solver grid resolution.
pub const DEFAULT_GRID: usize = 4096;
/// |u| above this aborts a shot.
pub const BLOWUP_GUARD: f64 = 1e12;
/// Accepted ‖Au − u‖∞ relative to max(1, ‖u‖).
pub const FIXEDPOINT_TOL: f64 = 1e-5;
/// Roots with smaller norm are taken to be the zero solution.
pub const TRIVIAL_NORM: f64 = 1e-10;

const GEOMETRIC_POINTS: usize = 64;
const GEOMETRIC_START: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverOptions {
    /// Panels of the solution grid.
    pub grid: usize,
    pub c_max: f64,
    /// Uniform scan points added to the geometric ones.
    pub n_scan: usize,
    pub tol_root: f64,
    pub max_bisections: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            grid: DEFAULT_GRID,
            c_max: 100.0,
            n_scan: 128,
            tol_root: 1e-10,
            max_bisections: 200,
        }
    }
}

impl SolverOptions {
    /// 10·(largest witness radius), or 100 without one.
    pub fn default_c_max(max_radius: Option<f64>) -> f64 {
        max_radius.map_or(100.0, |r| 10.0 * r)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionResult {
    pub u: GridFunction,
    pub norm: f64,
    pub c0: f64,
    pub residual_ode: f64,
    /// Larger of the two boundary defects.
    pub bc_defect: f64,
    pub fixedpoint_defect: f64,
    pub in_cone: bool,
    pub verification: VerificationReport,
    pub accepted: bool,
}

impl SolutionResult {
    /// Runs the verifier and the fixed-point check on `u`.
    pub fn package(problem: &BvpProblem, consts: &ConeConstants, u: GridFunction) -> Self {
        let verification = verify(problem, &u, consts);
        let fixedpoint_defect = apply_a(problem, &u).map_or(f64::INFINITY, |au| au.distance(&u));
        let norm = u.sup_norm();
        let accepted = verification.accepted && fixedpoint_defect <= FIXEDPOINT_TOL * norm.max(1.0);
        Self {
            norm,
            c0: u.first(),
            residual_ode: verification.residual_ode,
            bc_defect: verification.bc_neumann.max(verification.bc_integral),
            fixedpoint_defect,
            in_cone: verification.cone_ok,
            verification,
            accepted,
            u,
        }
    }
}

/// Au: the linear solve with forcing a(t) f(u(t)) on the grid of `u`.
pub fn apply_a(problem: &BvpProblem, u: &GridFunction) -> Result<GridFunction> {
    let y = u.map(|t, v| problem.a(t) * problem.f(v));
    if let Some(bad) = y.values().iter().position(|v| !v.is_finite()) {
        return Err(Error::domain(
            "nonlin",
            format!("a f(u) is not finite at t = {}", y.node(bad)),
        ));
    }
    Ok(solve_linear(problem, &y)?.u)
}

/// Damped iteration u ← (1 − d)u + d·Au until ‖Au − u‖∞ ≤ tol·max(1, ‖u‖).
pub fn picard_iterate(
    problem: &BvpProblem,
    consts: &ConeConstants,
    u0: GridFunction,
    damping: f64,
    tol: f64,
    maxiter: usize,
) -> Result<SolutionResult> {
    if !(damping > 0.0 && damping <= 1.0) {
        return Err(Error::param(
            "damping",
            format!("must lie in (0, 1], got {damping}"),
        ));
    }
    let mut u = u0;
    let mut defect = f64::INFINITY;
    for _ in 0..maxiter {
        let au = apply_a(problem, &u)?;
        defect = au.distance(&u);
        if defect <= tol * u.sup_norm().max(1.0) {
            return Ok(SolutionResult::package(problem, consts, u));
        }
        u = u.blend(&au, damping);
    }
    Err(Error::NonConvergence {
        iterations: maxiter,
        defect,
    })
}

/// Integrates u″ = −a(t) f(u), u(0) = c, u′(0) = 0 by classical RK4 with
/// `n` steps and returns (u, u(T) − α ∫₀^η u).
pub fn shoot(problem: &BvpProblem, c: f64, n: usize) -> Result<(GridFunction, f64)> {
    if !(c.is_finite() && c >= 0.0) {
        return Err(Error::param("c", format!("must be nonnegative, got {c}")));
    }
    let h = problem.t_end() / n as f64;
    let accel = |t: f64, u: f64| -problem.a(t) * problem.f(u);
    let mut values = Vec::with_capacity(n + 1);
    let (mut u, mut v) = (c, 0.0f64);
    values.push(u);
    for k in 0..n {
        let t = k as f64 * h;
        let (k1u, k1v) = (v, accel(t, u));
        let (k2u, k2v) = (v + 0.5 * h * k1v, accel(t + 0.5 * h, u + 0.5 * h * k1u));
        let (k3u, k3v) = (v + 0.5 * h * k2v, accel(t + 0.5 * h, u + 0.5 * h * k2u));
        let (k4u, k4v) = (v + h * k3v, accel(t + h, u + h * k3u));
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if !(u.is_finite() && v.is_finite()) || u.abs() > BLOWUP_GUARD {
            return Err(Error::Blowup { t: t + h, value: u });
        }
        values.push(u);
    }
    let sol = GridFunction::new(problem.t_end(), values)?;
    let g = sol.last() - problem.alpha() * sol.integral(0.0, problem.eta())?;
    Ok((sol, g))
}

/// Scan points in c: 64 geometric over [1e-4, c_max] and `n_scan` uniform
/// over (0, c_max], merged.
pub fn scan_grid(c_max: f64, n_scan: usize) -> Vec<f64> {
    let mut cs: Vec<f64> = (1..=n_scan)
        .map(|k| c_max * k as f64 / n_scan as f64)
        .collect();
    if c_max > GEOMETRIC_START {
        let ratio = (c_max / GEOMETRIC_START).ln() / (GEOMETRIC_POINTS - 1) as f64;
        cs.extend((0..GEOMETRIC_POINTS).map(|i| GEOMETRIC_START * (ratio * i as f64).exp()));
    }
    cs.sort_by(f64::total_cmp);
    cs.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    cs
}

/// Locates sign changes of the shooting defect and refines each by bisection.
///
/// Only nontrivial roots whose defect actually vanishes are kept; every
/// kept root is verified and the results are sorted by norm.
pub fn find_solutions(
    problem: &BvpProblem,
    consts: &ConeConstants,
    opts: &SolverOptions,
) -> Vec<SolutionResult> {
    let defect = |c: f64| {
        shoot(problem, c, opts.grid)
            .ok()
            .map(|(_, g)| g)
            .filter(|g| g.is_finite())
    };
    let cs = scan_grid(opts.c_max, opts.n_scan.max(1));
    let gs: Vec<Option<f64>> = cs.par_iter().map(|&c| defect(c)).collect();
    let small = |c: f64, g: f64| g.abs() <= opts.tol_root * c.max(1.0);

    let mut roots = Vec::new();
    for i in 0..cs.len() {
        let Some(gi) = gs[i] else { continue };
        if small(cs[i], gi) {
            roots.push(cs[i]);
            continue;
        }
        let Some(Some(gj)) = gs.get(i + 1) else {
            continue;
        };
        if small(cs[i + 1], *gj) || gi.signum() == gj.signum() {
            continue;
        }
        let (mut lo, mut hi, mut glo) = (cs[i], cs[i + 1], gi);
        let mut found = None;
        for _ in 0..opts.max_bisections {
            let mid = 0.5 * (lo + hi);
            let Some(gm) = defect(mid) else { break };
            if small(mid, gm) {
                found = Some(mid);
                break;
            }
            if gm.signum() == glo.signum() {
                (lo, glo) = (mid, gm);
            } else {
                hi = mid;
            }
            if hi - lo <= 4.0 * f64::EPSILON * hi {
                break;
            }
        }
        roots.extend(found);
    }

    let mut results: Vec<SolutionResult> = roots
        .par_iter()
        .filter_map(|&c| shoot(problem, c, opts.grid).ok())
        .filter(|(u, _)| u.sup_norm() >= TRIVIAL_NORM)
        .map(|(u, _)| SolutionResult::package(problem, consts, u))
        .collect();
    results.sort_by(|a, b| a.norm.total_cmp(&b.norm));
    results
}
