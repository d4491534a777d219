//! Independent checks of candidate solutions and reconciliation with the
//! predicted solution counts.

use serde::Serialize;

use crate::cone::{cone_membership, ConeConstants};
use crate::grid::GridFunction;
use crate::hypothesis::{HypothesisReport, NormBracket, Theorem};
use crate::linear::{check_positivity, is_concave, is_nonincreasing, neumann_defect};
use crate::problem::BvpProblem;

/// Relative tolerance for both boundary defects.
pub const TOL_BC_VERIFY: f64 = 1e-6;

/// Largest accepted ratio r(h)/r(2h) of the ODE residual under refinement.
pub const RESIDUAL_RATIO: f64 = 0.6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    /// max |D²u + a f(u)| over interior nodes.
    pub residual_ode: f64,
    /// The same on every second node (step 2h), if the grid allows it.
    pub residual_coarse: Option<f64>,
    pub residual_ok: bool,
    pub bc_neumann: f64,
    pub bc_integral: f64,
    pub bc_ok: bool,
    pub positive: bool,
    pub decreasing: bool,
    pub concave: bool,
    pub cone_ok: bool,
    pub norm: f64,
    pub accepted: bool,
}

fn residual(problem: &BvpProblem, u: &GridFunction) -> (f64, f64) {
    let h = u.step();
    let v = u.values();
    let mut worst = 0.0f64;
    let mut forcing = 0.0f64;
    for i in 1..u.n() {
        let af = problem.a(u.node(i)) * problem.f(v[i]);
        let r = (v[i - 1] - 2.0 * v[i] + v[i + 1]) / (h * h) + af;
        // NaN must not pass as a small residual
        worst = if r.is_nan() {
            f64::NAN
        } else {
            worst.max(r.abs())
        };
        forcing = forcing.max(af.abs());
    }
    (worst, forcing)
}

/// Checks the ODE, both boundary conditions, sign, shape and cone membership.
///
/// The ODE residual is accepted when it shrinks under refinement
/// (r(h) ≤ 0.6·r(2h)) or sits at the rounding floor of the difference
/// quotient.
pub fn verify(
    problem: &BvpProblem,
    u: &GridFunction,
    consts: &ConeConstants,
) -> VerificationReport {
    let norm = u.sup_norm();
    let scale = norm.max(1.0);
    let (residual_ode, forcing) = residual(problem, u);
    let residual_coarse = u.coarsened().map(|c| residual(problem, &c).0);
    let h = u.step();
    let floor = 256.0 * f64::EPSILON * (scale / (h * h) + forcing);
    let residual_ok = residual_ode <= floor
        || residual_coarse.is_some_and(|rc| residual_ode <= RESIDUAL_RATIO * rc + floor);

    let bc_neumann = neumann_defect(u).abs();
    let bc_integral = crate::linear::integral_defect(problem, u).map_or(f64::INFINITY, f64::abs);
    let bc_ok = bc_neumann <= TOL_BC_VERIFY * scale && bc_integral <= TOL_BC_VERIFY * scale;

    let positive = check_positivity(u);
    let decreasing = is_nonincreasing(u);
    let concave = is_concave(u);
    let cone_ok = cone_membership(u, consts.gamma);
    let accepted = residual_ok && bc_ok && positive && decreasing && concave && cone_ok;
    VerificationReport {
        residual_ode,
        residual_coarse,
        residual_ok,
        bc_neumann,
        bc_integral,
        bc_ok,
        positive,
        decreasing,
        concave,
        cone_ok,
        norm,
        accepted,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Confirmed,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictionOutcome {
    pub theorem: Theorem,
    pub status: Status,
    /// For each bracket, the norms of accepted solutions inside it.
    pub matches: Vec<(NormBracket, Vec<f64>)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub outcomes: Vec<PredictionOutcome>,
}

/// A prediction is CONFIRMED when each of its brackets holds the norm of
/// an accepted solution; a search that comes up short is UNRESOLVED.
pub fn reconcile(report: &HypothesisReport, accepted_norms: &[f64]) -> Verdict {
    let outcomes: Vec<PredictionOutcome> = report
        .predictions
        .iter()
        .map(|p| {
            let matches: Vec<(NormBracket, Vec<f64>)> = p
                .brackets
                .iter()
                .map(|b| {
                    let inside = accepted_norms
                        .iter()
                        .copied()
                        .filter(|&n| b.contains(n))
                        .collect();
                    (*b, inside)
                })
                .collect();
            let filled = matches.iter().filter(|(_, v)| !v.is_empty()).count();
            let status = if filled == p.brackets.len() && filled >= p.count {
                Status::Confirmed
            } else {
                Status::Unresolved
            };
            PredictionOutcome {
                theorem: p.theorem,
                status,
                matches,
            }
        })
        .collect();
    let status = if outcomes.iter().all(|o| o.status == Status::Confirmed) {
        Status::Confirmed
    } else {
        Status::Unresolved
    };
    Verdict { status, outcomes }
}
