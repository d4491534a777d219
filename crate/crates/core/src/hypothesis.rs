//! Limits f₀, f∞, the hypotheses H1–H10 and the existence results they gate.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::cone::ConeConstants;
use crate::error::{Error, Result};
use crate::problem::BvpProblem;

/// Sample count for the H4/H6 range checks.
pub const HYPOTHESIS_SAMPLES: usize = 4097;

const SMALL: f64 = 1e-6;
const LARGE: f64 = 1e6;
const AGREE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LimitKind {
    Zero,
    Finite,
    Infinite,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitEstimate {
    pub kind: LimitKind,
    pub value: Option<f64>,
    /// (u, f(u)/u) samples, empty for user-supplied limits.
    pub evidence: Vec<(f64, f64)>,
}

impl LimitEstimate {
    pub fn zero() -> Self {
        Self::bare(LimitKind::Zero, None)
    }

    pub fn infinite() -> Self {
        Self::bare(LimitKind::Infinite, None)
    }

    pub fn undetermined() -> Self {
        Self::bare(LimitKind::Undetermined, None)
    }

    pub fn finite(value: f64) -> Result<Self> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::param(
                "limit",
                format!("finite limit must be >= 0, got {value}"),
            ));
        }
        Ok(Self::bare(LimitKind::Finite, Some(value)))
    }

    fn bare(kind: LimitKind, value: Option<f64>) -> Self {
        Self {
            kind,
            value,
            evidence: Vec::new(),
        }
    }

    pub fn is_determined(&self) -> bool {
        self.kind != LimitKind::Undetermined
    }

    /// Limit as an extended real; ZERO reads as 0 and INFINITE as +∞.
    pub fn as_extended(&self) -> Option<f64> {
        match self.kind {
            LimitKind::Zero => Some(0.0),
            LimitKind::Finite => self.value,
            LimitKind::Infinite => Some(f64::INFINITY),
            LimitKind::Undetermined => None,
        }
    }
}

impl fmt::Display for LimitEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.value) {
            (LimitKind::Finite, Some(v)) => write!(f, "{v}"),
            (LimitKind::Zero, _) => f.write_str("0"),
            (LimitKind::Infinite, _) => f.write_str("inf"),
            _ => f.write_str("undetermined"),
        }
    }
}

/// f₀ = lim_{u→0⁺} f(u)/u from u = 10⁻¹, …, 10⁻¹⁰.
pub fn estimate_f0(
    problem: &BvpProblem,
    override_: Option<&LimitEstimate>,
) -> Result<LimitEstimate> {
    if let Some(o) = override_ {
        return Ok(o.clone());
    }
    let mut evidence = Vec::with_capacity(10);
    for k in 1..=10 {
        let u = 10f64.powi(-k);
        let r = problem.nonlin().call(u) / u;
        if !r.is_finite() {
            return Err(Error::domain("nonlin", format!("f({u:e})/u = {r}")));
        }
        evidence.push((u, r));
    }
    Ok(classify_tail(evidence))
}

/// f∞ = lim_{u→∞} f(u)/u from u = 10¹, …, 10¹⁰.
///
/// Once f(u)/u stops being finite the ladder ends: a finite prefix of at
/// least two strictly increasing samples ending above 10⁶ reads as
/// INFINITE, anything else as UNDETERMINED.
pub fn estimate_finf(
    problem: &BvpProblem,
    override_: Option<&LimitEstimate>,
) -> Result<LimitEstimate> {
    if let Some(o) = override_ {
        return Ok(o.clone());
    }
    let mut evidence = Vec::with_capacity(10);
    for k in 1..=10 {
        let u = 10f64.powi(k);
        let r = problem.nonlin().call(u) / u;
        if !r.is_finite() {
            let growing = evidence.len() >= 2
                && strictly_increasing(&evidence)
                && evidence.last().is_some_and(|&(_, r)| r > LARGE);
            let kind = if growing {
                LimitKind::Infinite
            } else {
                LimitKind::Undetermined
            };
            return Ok(LimitEstimate {
                kind,
                value: None,
                evidence,
            });
        }
        evidence.push((u, r));
    }
    Ok(classify_tail(evidence))
}

fn strictly_increasing(s: &[(f64, f64)]) -> bool {
    s.windows(2).all(|w| w[1].1 > w[0].1)
}

fn classify_tail(evidence: Vec<(f64, f64)>) -> LimitEstimate {
    let tail = &evidence[evidence.len() - 3..];
    let r: Vec<f64> = tail.iter().map(|p| p.1).collect();
    let (kind, value) =
        if r.iter().all(|v| v.abs() < SMALL) && r.windows(2).all(|w| w[1].abs() <= w[0].abs()) {
            (LimitKind::Zero, None)
        } else if r.iter().all(|&v| v > LARGE) && strictly_increasing(tail) {
            (LimitKind::Infinite, None)
        } else {
            let hi = r.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
            let lo = r.iter().fold(f64::INFINITY, |m, &v| m.min(v));
            let last = r[2];
            if last >= 0.0 && hi - lo <= AGREE * hi.abs().max(lo.abs()) {
                (LimitKind::Finite, Some(last))
            } else {
                (LimitKind::Undetermined, None)
            }
        };
    LimitEstimate {
        kind,
        value,
        evidence,
    }
}

/// Radii, slopes and θ weights supplied by the user.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Witness {
    pub rho1: Option<f64>,
    pub m1: Option<f64>,
    pub rho2: Option<f64>,
    pub m2: Option<f64>,
    pub theta1: Option<f64>,
    pub theta2: Option<f64>,
}

impl Witness {
    pub fn h4(rho1: f64, m1: f64) -> Self {
        Self {
            rho1: Some(rho1),
            m1: Some(m1),
            ..Self::default()
        }
    }

    pub fn h6(rho2: f64, m2: f64) -> Self {
        Self {
            rho2: Some(rho2),
            m2: Some(m2),
            ..Self::default()
        }
    }

    pub fn thetas(theta1: f64, theta2: f64) -> Self {
        Self {
            theta1: Some(theta1),
            theta2: Some(theta2),
            ..Self::default()
        }
    }

    /// Largest supplied radius.
    pub fn max_radius(&self) -> Option<f64> {
        match (self.rho1, self.rho2) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [("rho1", self.rho1), ("rho2", self.rho2)] {
            if let Some(r) = v {
                if !(r.is_finite() && r > 0.0) {
                    return Err(Error::param(name, format!("must be positive, got {r}")));
                }
            }
        }
        if self.rho1.is_some() != self.m1.is_some() {
            return Err(Error::param("m1", "rho1 and m1 come together"));
        }
        if self.rho2.is_some() != self.m2.is_some() {
            return Err(Error::param("m2", "rho2 and m2 come together"));
        }
        if let Some(t) = self.theta1 {
            if !(t > 0.0 && t <= 1.0) {
                return Err(Error::param(
                    "theta1",
                    format!("must lie in (0, 1], got {t}"),
                ));
            }
        }
        if let Some(t) = self.theta2 {
            if !(t.is_finite() && t >= 1.0) {
                return Err(Error::param("theta2", format!("must be >= 1, got {t}")));
            }
        }
        Ok(())
    }
}

/// User-supplied values for f₀ and f∞.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LimitOverrides {
    pub f0: Option<LimitEstimate>,
    pub finf: Option<LimitEstimate>,
}

fn samples_of(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let m = (n - 1) as f64;
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / m)
}

fn sampled_f(problem: &BvpProblem, u: f64) -> Result<f64> {
    let v = problem.nonlin().call(u);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain("nonlin", format!("f({u}) = {v}")))
    }
}

/// (H4): f(u) ≤ M₁ρ₁ on [0, ρ₁].
pub fn check_h4(problem: &BvpProblem, rho1: f64, m1: f64, consts: &ConeConstants) -> Result<bool> {
    check_h4_sampled(problem, rho1, m1, consts, HYPOTHESIS_SAMPLES)
}

pub fn check_h4_sampled(
    problem: &BvpProblem,
    rho1: f64,
    m1: f64,
    consts: &ConeConstants,
    samples: usize,
) -> Result<bool> {
    if !(rho1.is_finite() && rho1 > 0.0) {
        return Err(Error::param(
            "rho1",
            format!("must be positive, got {rho1}"),
        ));
    }
    if !(m1 > 0.0 && m1 <= consts.lambda1 * (1.0 + 1e-12)) {
        return Err(Error::param(
            "m1",
            format!("must lie in (0, Λ₁ = {}], got {m1}", consts.lambda1),
        ));
    }
    let bound = m1 * rho1 + 1e-12;
    for u in samples_of(0.0, rho1, samples.max(2)) {
        if sampled_f(problem, u)? > bound {
            return Ok(false);
        }
    }
    Ok(true)
}

/// (H6): f(u) ≥ M₂ρ₂ on [γρ₂, ρ₂].
pub fn check_h6(problem: &BvpProblem, rho2: f64, m2: f64, consts: &ConeConstants) -> Result<bool> {
    check_h6_sampled(problem, rho2, m2, consts, HYPOTHESIS_SAMPLES)
}

pub fn check_h6_sampled(
    problem: &BvpProblem,
    rho2: f64,
    m2: f64,
    consts: &ConeConstants,
    samples: usize,
) -> Result<bool> {
    if !(rho2.is_finite() && rho2 > 0.0) {
        return Err(Error::param(
            "rho2",
            format!("must be positive, got {rho2}"),
        ));
    }
    if !(m2.is_finite() && m2 >= consts.lambda2 * (1.0 - 1e-12)) {
        return Err(Error::param(
            "m2",
            format!("must be at least Λ₂ = {}, got {m2}", consts.lambda2),
        ));
    }
    let bound = m2 * rho2 - 1e-12;
    for u in samples_of(consts.gamma * rho2, rho2, samples.max(2)) {
        if sampled_f(problem, u)? < bound {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hypothesis {
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    H7,
    H8,
    H9,
    H10,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 10] = [
        Self::H1,
        Self::H2,
        Self::H3,
        Self::H4,
        Self::H5,
        Self::H6,
        Self::H7,
        Self::H8,
        Self::H9,
        Self::H10,
    ];
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl Serialize for Hypothesis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Truth {
    True,
    False,
    NotEvaluated,
}

impl Truth {
    fn from_bool(b: bool) -> Self {
        if b {
            Self::True
        } else {
            Self::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Self::True
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theorem {
    Thm3_1,
    Thm4_1,
    Thm4_2,
    Thm5_1,
    Cor5_2,
    Cor5_3,
    Cor5_4,
    Cor5_5,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Self::Thm3_1,
        Self::Thm4_1,
        Self::Thm4_2,
        Self::Thm5_1,
        Self::Cor5_2,
        Self::Cor5_3,
        Self::Cor5_4,
        Self::Cor5_5,
    ];

    pub fn gates(self) -> &'static [Hypothesis] {
        use Hypothesis::*;
        match self {
            // H1 ∨ H2, handled separately
            Self::Thm3_1 => &[],
            Self::Thm4_1 => &[H3, H4],
            Self::Thm4_2 => &[H5, H6],
            Self::Thm5_1 => &[H4, H6],
            Self::Cor5_2 => &[H7, H8],
            Self::Cor5_3 => &[H9, H10],
            Self::Cor5_4 => &[H4, H8, H9],
            Self::Cor5_5 => &[H6, H7, H10],
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Thm3_1 => "Thm3.1",
            Self::Thm4_1 => "Thm4.1",
            Self::Thm4_2 => "Thm4.2",
            Self::Thm5_1 => "Thm5.1",
            Self::Cor5_2 => "Cor5.2",
            Self::Cor5_3 => "Cor5.3",
            Self::Cor5_4 => "Cor5.4",
            Self::Cor5_5 => "Cor5.5",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.to_string() == s)
            .ok_or_else(|| Error::param("theorem", format!("unknown theorem {s}")))
    }
}

impl Serialize for Theorem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Open interval (lo, hi) of norms; `hi = None` is +∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormBracket {
    pub lo: f64,
    pub hi: Option<f64>,
}

impl NormBracket {
    pub fn new(lo: f64, hi: Option<f64>) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, norm: f64) -> bool {
        norm > self.lo && self.hi.is_none_or(|h| norm < h)
    }
}

impl fmt::Display for NormBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) => write!(f, "({}, {h})", self.lo),
            None => write!(f, "({}, inf)", self.lo),
        }
    }
}

/// At least `count` positive solutions, one in each bracket.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prediction {
    pub theorem: Theorem,
    pub count: usize,
    pub brackets: Vec<NormBracket>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisReport {
    pub f0: LimitEstimate,
    pub finf: LimitEstimate,
    pub holds: BTreeMap<Hypothesis, Truth>,
    pub applicable: Vec<Theorem>,
    pub predictions: Vec<Prediction>,
}

impl HypothesisReport {
    pub fn truth(&self, h: Hypothesis) -> Truth {
        self.holds.get(&h).copied().unwrap_or(Truth::NotEvaluated)
    }

    pub fn applies(&self, t: Theorem) -> bool {
        self.applicable.contains(&t)
    }
}

/// Evaluates H1–H10 and the results they gate.
pub fn classify(
    problem: &BvpProblem,
    consts: &ConeConstants,
    witness: &Witness,
    overrides: &LimitOverrides,
) -> Result<HypothesisReport> {
    if !problem.is_subcritical() {
        return Err(Error::param("alpha", "classification needs alpha < 1/eta"));
    }
    witness.validate()?;
    let f0 = estimate_f0(problem, overrides.f0.as_ref())?;
    let finf = estimate_finf(problem, overrides.finf.as_ref())?;

    use Hypothesis::*;
    use LimitKind::{Infinite, Zero};
    let both = |p: &dyn Fn(LimitKind, LimitKind) -> bool| {
        if f0.is_determined() && finf.is_determined() {
            Truth::from_bool(p(f0.kind, finf.kind))
        } else {
            Truth::NotEvaluated
        }
    };
    let one = |lim: &LimitEstimate, theta: Option<f64>, p: &dyn Fn(f64, f64) -> bool| match (
        lim.as_extended(),
        theta,
    ) {
        (Some(v), Some(th)) => Truth::from_bool(p(v, th)),
        _ => Truth::NotEvaluated,
    };
    let below = |v: f64, th: f64| v < th * consts.lambda1;
    let above = |v: f64, th: f64| v > th * consts.lambda2 / consts.gamma;

    let mut holds = BTreeMap::new();
    holds.insert(H1, both(&|a, b| a == Zero && b == Infinite));
    holds.insert(H2, both(&|a, b| a == Infinite && b == Zero));
    holds.insert(H3, both(&|a, b| a == Infinite && b == Infinite));
    holds.insert(H5, both(&|a, b| a == Zero && b == Zero));
    let h4 = match (witness.rho1, witness.m1) {
        (Some(r), Some(m)) => Truth::from_bool(check_h4(problem, r, m, consts)?),
        _ => Truth::NotEvaluated,
    };
    let h6 = match (witness.rho2, witness.m2) {
        (Some(r), Some(m)) => Truth::from_bool(check_h6(problem, r, m, consts)?),
        _ => Truth::NotEvaluated,
    };
    holds.insert(H4, h4);
    holds.insert(H6, h6);
    holds.insert(H7, one(&f0, witness.theta1, &below));
    holds.insert(H8, one(&finf, witness.theta2, &above));
    holds.insert(H9, one(&f0, witness.theta2, &above));
    holds.insert(H10, one(&finf, witness.theta1, &below));

    let mut applicable = Vec::new();
    let mut predictions = Vec::new();
    let whole = NormBracket::new(0.0, None);
    let split = |rho: f64| {
        vec![
            NormBracket::new(0.0, Some(rho)),
            NormBracket::new(rho, None),
        ]
    };
    for thm in Theorem::ALL {
        let gated = match thm {
            Theorem::Thm3_1 => holds[&H1].is_true() || holds[&H2].is_true(),
            Theorem::Thm5_1 => {
                thm.gates().iter().all(|h| holds[h].is_true()) && witness.rho1 != witness.rho2
            }
            _ => thm.gates().iter().all(|h| holds[h].is_true()),
        };
        if !gated {
            continue;
        }
        let brackets = match thm {
            Theorem::Thm3_1 | Theorem::Cor5_2 | Theorem::Cor5_3 => vec![whole],
            Theorem::Thm4_1 | Theorem::Cor5_4 => split(witness.rho1.expect("H4 holds")),
            Theorem::Thm4_2 | Theorem::Cor5_5 => split(witness.rho2.expect("H6 holds")),
            Theorem::Thm5_1 => {
                let (a, b) = (witness.rho1.unwrap(), witness.rho2.unwrap());
                vec![NormBracket::new(a.min(b), Some(a.max(b)))]
            }
        };
        applicable.push(thm);
        predictions.push(Prediction {
            theorem: thm,
            count: brackets.len(),
            brackets,
        });
    }

    Ok(HypothesisReport {
        f0,
        finf,
        holds,
        applicable,
        predictions,
    })
}
