//! JSON reports, CSV solution dumps and plot columns.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use super::config::Setup;
use super::pipeline::{Outcome, Settings};
use crate::cone::ConeConstants;
use crate::hypothesis::{Hypothesis, LimitEstimate, Prediction, Truth, Witness};
use crate::nonlinear::SolverOptions;
use crate::verify::{PredictionOutcome, Status, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Both,
}

impl Format {
    fn json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }

    fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }
}

#[derive(Debug, Serialize)]
pub struct ProblemSection {
    pub alpha: f64,
    pub eta: f64,
    pub t_end: f64,
    pub coeff: String,
    pub nonlin: String,
    pub allow_supercritical: bool,
    pub nonlin_range: (f64, f64),
    pub witness: Witness,
    pub panels: usize,
    pub solver: SolverOptions,
}

#[derive(Debug, Serialize)]
pub struct Limits {
    pub f0: LimitEstimate,
    pub finf: LimitEstimate,
}

#[derive(Debug, Serialize)]
pub struct SolutionSection {
    pub norm: f64,
    pub c0: f64,
    pub u_end: f64,
    pub residual_ode: f64,
    pub bc_defect: f64,
    pub fixedpoint_defect: f64,
    pub in_cone: bool,
    pub accepted: bool,
}

#[derive(Debug, Serialize)]
pub struct VerdictSection {
    pub status: Status,
    pub all_accepted: bool,
    pub predictions: Vec<PredictionOutcome>,
}

/// The report schema; every key is always present.
#[derive(Debug, Serialize)]
pub struct Report {
    pub problem: ProblemSection,
    pub constants: ConeConstants,
    pub limits: Limits,
    pub hypotheses: BTreeMap<Hypothesis, Truth>,
    pub theorems: Vec<Prediction>,
    pub solutions: Vec<SolutionSection>,
    pub verification: Vec<VerificationReport>,
    pub verdict: VerdictSection,
}

impl Report {
    pub fn new(setup: &Setup, settings: &Settings, outcome: &Outcome) -> Self {
        let p = &setup.problem;
        Report {
            problem: ProblemSection {
                alpha: p.alpha(),
                eta: p.eta(),
                t_end: p.t_end(),
                coeff: p.coeff().label().to_string(),
                nonlin: p.nonlin().label().to_string(),
                allow_supercritical: p.allow_supercritical(),
                nonlin_range: p.nonlin_range(),
                witness: setup.witness,
                panels: settings.panels,
                solver: outcome.options,
            },
            constants: outcome.consts,
            limits: Limits {
                f0: outcome.hypotheses.f0.clone(),
                finf: outcome.hypotheses.finf.clone(),
            },
            hypotheses: outcome.hypotheses.holds.clone(),
            theorems: outcome.hypotheses.predictions.clone(),
            solutions: outcome
                .solutions
                .iter()
                .map(|s| SolutionSection {
                    norm: s.norm,
                    c0: s.c0,
                    u_end: s.u.last(),
                    residual_ode: s.residual_ode,
                    bc_defect: s.bc_defect,
                    fixedpoint_defect: s.fixedpoint_defect,
                    in_cone: s.in_cone,
                    accepted: s.accepted,
                })
                .collect(),
            verification: outcome
                .solutions
                .iter()
                .map(|s| s.verification.clone())
                .collect(),
            verdict: VerdictSection {
                status: outcome.verdict.status,
                all_accepted: outcome.all_accepted(),
                predictions: outcome.verdict.outcomes.clone(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn unix_millis() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

/// Writes a new file, never replacing an existing one.
fn write_new(path: &Path, contents: &str) -> io::Result<()> {
    let mut f = OpenOptions::new().write(true).create_new(true).open(path)?;
    f.write_all(contents.as_bytes())
}

/// A run stamp not yet used by any report for `id` in `dir`.
fn fresh_stamp(dir: &Path, id: &str) -> u128 {
    let mut stamp = unix_millis();
    while dir.join(format!("report_{id}_{stamp}.json")).exists()
        || dir.join(format!("solution_{id}_{stamp}_1.csv")).exists()
    {
        stamp += 1;
    }
    stamp
}

pub fn csv_dump(u: &crate::grid::GridFunction) -> String {
    let mut s = String::from("t,u\n");
    for (t, v) in u.iter() {
        s.push_str(&format!("{t},{v}\n"));
    }
    s
}

/// Whitespace-separated columns t u1 u2 … for every solution.
pub fn plot_columns(outcome: &Outcome) -> String {
    let mut s = String::from("# t");
    for k in 1..=outcome.solutions.len() {
        s.push_str(&format!(" u{k}"));
    }
    s.push('\n');
    if let Some(first) = outcome.solutions.first() {
        for i in 0..=first.u.n() {
            s.push_str(&format!("{}", first.u.node(i)));
            for sol in &outcome.solutions {
                s.push_str(&format!(" {}", sol.u.values()[i]));
            }
            s.push('\n');
        }
    }
    s
}

/// Writes the report and dumps into `dir` and returns the paths written.
pub fn write_outputs(
    dir: &Path,
    id: &str,
    report: &Report,
    outcome: &Outcome,
    format: Format,
    plot_data: bool,
) -> io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let stamp = fresh_stamp(dir, id);
    let mut written = Vec::new();
    if format.json() {
        let path = dir.join(format!("report_{id}_{stamp}.json"));
        write_new(&path, &report.to_json())?;
        written.push(path);
    }
    if format.csv() {
        for (k, sol) in outcome.solutions.iter().enumerate() {
            let path = dir.join(format!("solution_{id}_{stamp}_{}.csv", k + 1));
            write_new(&path, &csv_dump(&sol.u))?;
            written.push(path);
        }
    }
    if plot_data {
        let path = dir.join(format!("plot_{id}_{stamp}.dat"));
        write_new(&path, &plot_columns(outcome))?;
        written.push(path);
    }
    Ok(written)
}
