//! Problem description and the gate that checks the standing assumptions.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::Expr;

/// Sample count for the coefficient and nonlinearity sign checks.
pub const VALIDATION_SAMPLES: usize = 1025;

/// Default range on which f is sampled for nonnegativity.
pub const DEFAULT_NONLIN_RANGE: (f64, f64) = (0.0, 100.0);

/// A shareable scalar callable with a human-readable label.
#[derive(Clone)]
pub struct ScalarFn {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    label: String,
}

impl ScalarFn {
    pub fn new(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            f: Arc::new(f),
            label: label.into(),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("{c}"), move |_| c)
    }

    /// Wraps a parsed formula.
    pub fn from_expr(expr: Expr) -> Self {
        let label = expr.source().to_string();
        Self::new(label, move |x| expr.eval(x))
    }

    /// Parses `source` as a formula in `var`.
    pub fn parse(source: &str, var: &str) -> Result<Self> {
        Ok(Self::from_expr(Expr::parse(source, var)?))
    }

    #[inline]
    pub fn call(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarFn({})", self.label)
    }
}

/// Two callables are equal when they are the same shared closure.
impl PartialEq for ScalarFn {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.f, &other.f) && self.label == other.label
    }
}

/// The three-point integral BVP
/// u″ + a(t) f(u) = 0 on (0, T), u′(0) = 0, u(T) = α ∫₀^η u.
#[derive(Debug, Clone, PartialEq)]
pub struct BvpProblem {
    alpha: f64,
    eta: f64,
    t_end: f64,
    coeff: ScalarFn,
    nonlin: ScalarFn,
    allow_supercritical: bool,
    nonlin_range: (f64, f64),
}

/// Inputs to [`validate_problem`].
#[derive(Debug, Clone)]
pub struct ProblemParams {
    pub alpha: f64,
    pub eta: f64,
    pub t_end: f64,
    pub coeff: ScalarFn,
    pub nonlin: ScalarFn,
    pub allow_supercritical: bool,
    /// Interval of u on which f ≥ 0 is checked by sampling.
    pub nonlin_range: (f64, f64),
}

impl ProblemParams {
    pub fn new(alpha: f64, eta: f64, t_end: f64, coeff: ScalarFn, nonlin: ScalarFn) -> Self {
        Self {
            alpha,
            eta,
            t_end,
            coeff,
            nonlin,
            allow_supercritical: false,
            nonlin_range: DEFAULT_NONLIN_RANGE,
        }
    }

    pub fn supercritical(mut self, allow: bool) -> Self {
        self.allow_supercritical = allow;
        self
    }

    pub fn nonlin_range(mut self, lo: f64, hi: f64) -> Self {
        self.nonlin_range = (lo, hi);
        self
    }

    pub fn validate(self) -> Result<BvpProblem> {
        validate_problem(self)
    }
}

/// Checks 0 < η < T, α > 0, αη ≠ 1, α < 1/η (unless supercritical problems
/// are allowed), and samples a ≥ 0 on [0, T] with max a > 0 and f ≥ 0 on the
/// nonlinearity range.
///
/// The positivity of `a` somewhere is only checked on the sample nodes, so a
/// coefficient that is positive solely between them is rejected.
pub fn validate_problem(params: ProblemParams) -> Result<BvpProblem> {
    let ProblemParams {
        alpha,
        eta,
        t_end,
        coeff,
        nonlin,
        allow_supercritical,
        nonlin_range,
    } = params;

    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::param(
            "t_end",
            format!("must be positive, got {t_end}"),
        ));
    }
    if !(eta.is_finite() && eta > 0.0 && eta < t_end) {
        return Err(Error::param(
            "eta",
            format!("must lie in (0, {t_end}), got {eta}"),
        ));
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::param(
            "alpha",
            format!("must be positive, got {alpha}"),
        ));
    }
    let product = alpha * eta;
    if (product - 1.0).abs() <= 1e-12 {
        return Err(Error::param(
            "alpha",
            "alpha*eta = 1 makes the problem degenerate",
        ));
    }
    if product > 1.0 && !allow_supercritical {
        return Err(Error::param(
            "alpha",
            format!("must be below 1/eta = {}, got {alpha}", 1.0 / eta),
        ));
    }

    let m = VALIDATION_SAMPLES - 1;
    let mut coeff_max = 0.0f64;
    for i in 0..=m {
        let t = t_end * i as f64 / m as f64;
        let v = coeff.call(t);
        if !v.is_finite() || v < 0.0 {
            return Err(Error::domain("coeff", format!("a({t}) = {v}")));
        }
        coeff_max = coeff_max.max(v);
    }
    if coeff_max <= 0.0 {
        return Err(Error::domain("coeff", "a vanishes at every sample"));
    }

    let (lo, hi) = nonlin_range;
    if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo < hi) {
        return Err(Error::param(
            "nonlin_range",
            format!("need 0 <= lo < hi, got [{lo}, {hi}]"),
        ));
    }
    for i in 0..=m {
        let u = lo + (hi - lo) * i as f64 / m as f64;
        let v = nonlin.call(u);
        if !v.is_finite() || v < 0.0 {
            return Err(Error::domain("nonlin", format!("f({u}) = {v}")));
        }
    }

    Ok(BvpProblem {
        alpha,
        eta,
        t_end,
        coeff,
        nonlin,
        allow_supercritical,
        nonlin_range,
    })
}

impl BvpProblem {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn coeff(&self) -> &ScalarFn {
        &self.coeff
    }

    pub fn nonlin(&self) -> &ScalarFn {
        &self.nonlin
    }

    pub fn allow_supercritical(&self) -> bool {
        self.allow_supercritical
    }

    pub fn nonlin_range(&self) -> (f64, f64) {
        self.nonlin_range
    }

    /// 1 − αη.
    pub fn one_minus_alpha_eta(&self) -> f64 {
        1.0 - self.alpha * self.eta
    }

    pub fn is_subcritical(&self) -> bool {
        self.alpha * self.eta < 1.0
    }

    /// a(t).
    #[inline]
    pub fn a(&self, t: f64) -> f64 {
        self.coeff.call(t)
    }

    /// f(u), extended to negative arguments by f(max(u, 0)).
    #[inline]
    pub fn f(&self, u: f64) -> f64 {
        self.nonlin.call(u.max(0.0))
    }

    /// Same problem with a different nonlinearity (re-validated).
    pub fn with_nonlin(&self, nonlin: ScalarFn) -> Result<Self> {
        let mut p = self.params();
        p.nonlin = nonlin;
        p.validate()
    }

    /// Same problem with a different coefficient (re-validated).
    pub fn with_coeff(&self, coeff: ScalarFn) -> Result<Self> {
        let mut p = self.params();
        p.coeff = coeff;
        p.validate()
    }

    /// The parameter set this problem was validated from.
    pub fn params(&self) -> ProblemParams {
        ProblemParams {
            alpha: self.alpha,
            eta: self.eta,
            t_end: self.t_end,
            coeff: self.coeff.clone(),
            nonlin: self.nonlin.clone(),
            allow_supercritical: self.allow_supercritical,
            nonlin_range: self.nonlin_range,
        }
    }
}
