//! Cone constants γ, Λ₁, Λ₂ and membership in
//! K = { u ≥ 0 : min u ≥ γ‖u‖ }.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::problem::BvpProblem;
use crate::quadrature::{integrate, DEFAULT_PANELS};

const DEGENERATE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConeConstants {
    pub gamma: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

impl ConeConstants {
    /// All three constants with `panels` Simpson panels.
    pub fn compute(problem: &BvpProblem, panels: usize) -> Result<Self> {
        Ok(Self {
            gamma: gamma(problem)?,
            lambda1: lambda1_with(problem, panels)?,
            lambda2: lambda2_with(problem, panels)?,
        })
    }

    pub fn new(problem: &BvpProblem) -> Result<Self> {
        Self::compute(problem, DEFAULT_PANELS)
    }
}

/// γ = αη(T − η)/(T − αη²).
pub fn gamma(problem: &BvpProblem) -> Result<f64> {
    let (alpha, eta, t) = (problem.alpha(), problem.eta(), problem.t_end());
    if alpha * eta >= 1.0 {
        return Err(Error::param("alpha", "the cone needs alpha < 1/eta"));
    }
    let denom = t - alpha * eta * eta;
    if denom <= 0.0 {
        return Err(Error::param(
            "alpha",
            format!("T − αη² = {denom} is not positive"),
        ));
    }
    Ok(alpha * eta * (t - eta) / denom)
}

pub fn lambda1(problem: &BvpProblem) -> Result<f64> {
    lambda1_with(problem, DEFAULT_PANELS)
}

/// Λ₁ = (1 − αη) / ∫₀^T (T − s) a(s) ds.
pub fn lambda1_with(problem: &BvpProblem, panels: usize) -> Result<f64> {
    let t = problem.t_end();
    let moment = integrate(&|s: f64| (t - s) * problem.a(s), 0.0, t, panels)?;
    if moment <= DEGENERATE {
        return Err(Error::Degenerate(format!("∫(T−s)a(s)ds = {moment:e}")));
    }
    Ok(problem.one_minus_alpha_eta() / moment)
}

pub fn lambda2(problem: &BvpProblem) -> Result<f64> {
    lambda2_with(problem, DEFAULT_PANELS)
}

/// Λ₂ = (1 − αη) / γ[∫_η^T (T−s)a ds + ½∫₀^η (2(T−η) + α(η² − s²)) a ds].
pub fn lambda2_with(problem: &BvpProblem, panels: usize) -> Result<f64> {
    let (alpha, eta, t) = (problem.alpha(), problem.eta(), problem.t_end());
    let g = gamma(problem)?;
    let tail = integrate(&|s: f64| (t - s) * problem.a(s), eta, t, panels)?;
    let head = integrate(
        &|s: f64| (2.0 * (t - eta) + alpha * (eta * eta - s * s)) * problem.a(s),
        0.0,
        eta,
        panels,
    )?;
    let bracket = tail + 0.5 * head;
    if bracket <= DEGENERATE {
        return Err(Error::Degenerate(format!("Λ₂ bracket = {bracket:e}")));
    }
    Ok(problem.one_minus_alpha_eta() / (g * bracket))
}

/// u ≥ −tol and min u ≥ γ·max u − tol, tol = 1e-8·max(1, ‖u‖).
pub fn cone_membership(u: &GridFunction, gamma: f64) -> bool {
    let tol = 1e-8 * u.sup_norm().max(1.0);
    let (lo, hi) = (u.min(), u.max());
    lo >= -tol && lo >= gamma * hi - tol
}
