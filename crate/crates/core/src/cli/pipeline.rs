//! constants → hypotheses → solve → verify → reconcile.

use serde::Serialize;

use super::config::Setup;
use crate::cone::ConeConstants;
use crate::error::Result;
use crate::hypothesis::{classify, HypothesisReport};
use crate::nonlinear::{find_solutions, SolutionResult, SolverOptions, DEFAULT_GRID};
use crate::quadrature::DEFAULT_PANELS;
use crate::verify::{reconcile, Verdict};

/// Numerical settings; `None` defers to the problem setup, then defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Settings {
    pub panels: usize,
    pub grid: usize,
    pub c_max: Option<f64>,
    pub n_scan: Option<usize>,
    pub tol_root: Option<f64>,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            panels: DEFAULT_PANELS,
            grid: DEFAULT_GRID,
            c_max: None,
            n_scan: None,
            tol_root: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub consts: ConeConstants,
    pub hypotheses: HypothesisReport,
    pub options: SolverOptions,
    pub solutions: Vec<SolutionResult>,
    pub verdict: Verdict,
}

impl Outcome {
    pub fn all_accepted(&self) -> bool {
        self.solutions.iter().all(|s| s.accepted)
    }

    pub fn accepted_norms(&self) -> Vec<f64> {
        self.solutions
            .iter()
            .filter(|s| s.accepted)
            .map(|s| s.norm)
            .collect()
    }
}

pub fn solver_options(setup: &Setup, settings: &Settings) -> SolverOptions {
    let defaults = SolverOptions::default();
    SolverOptions {
        grid: settings.grid,
        c_max: settings
            .c_max
            .or(setup.c_max)
            .unwrap_or_else(|| SolverOptions::default_c_max(setup.witness.max_radius())),
        n_scan: settings.n_scan.or(setup.n_scan).unwrap_or(defaults.n_scan),
        tol_root: settings.tol_root.unwrap_or(defaults.tol_root),
        max_bisections: defaults.max_bisections,
    }
}

pub fn run(setup: &Setup, settings: &Settings) -> Result<Outcome> {
    let consts = ConeConstants::compute(&setup.problem, settings.panels)?;
    let hypotheses = classify(&setup.problem, &consts, &setup.witness, &setup.overrides)?;
    let options = solver_options(setup, settings);
    let solutions = find_solutions(&setup.problem, &consts, &options);
    let norms: Vec<f64> = solutions
        .iter()
        .filter(|s| s.accepted)
        .map(|s| s.norm)
        .collect();
    let verdict = reconcile(&hypotheses, &norms);
    Ok(Outcome {
        consts,
        hypotheses,
        options,
        solutions,
        verdict,
    })
}
