//! JSON problem files.
//!
//! ```json
//! {
//!   "alpha": 0.5, "eta": 1, "t_end": 2,
//!   "coeff": "5/32*(2-t)^3",
//!   "nonlin": "u^(1/2)/2 + u^2/32",
//!   "rho1": 4, "m1": "3/8",
//!   "f0": "infinite"
//! }
//! ```
//!
//! Numbers may be given as JSON numbers or as constant formulas.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::expr::Expr;
use crate::hypothesis::{LimitEstimate, LimitOverrides, Witness};
use crate::problem::{BvpProblem, ProblemParams, ScalarFn, DEFAULT_NONLIN_RANGE};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

impl ConfigError {
    fn field(field: &str, message: impl ToString) -> Self {
        Self::Field {
            field: field.to_string(),
            message: message.to_string(),
        }
    }
}

/// A number or a constant formula such as "1/3".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Value(f64),
    Formula(String),
}

impl Number {
    fn resolve(&self, field: &str) -> Result<f64, ConfigError> {
        let v = match self {
            Number::Value(v) => *v,
            Number::Formula(s) => Expr::constant(s).map_err(|e| ConfigError::field(field, e))?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ConfigError::field(
                field,
                format!("not a finite number: {v}"),
            ))
        }
    }
}

impl From<f64> for Number {
    fn from(v: f64) -> Self {
        Number::Value(v)
    }
}

impl From<&str> for Number {
    fn from(s: &str) -> Self {
        Number::Formula(s.to_string())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub alpha: Option<Number>,
    pub eta: Option<Number>,
    pub t_end: Option<Number>,
    pub coeff: Option<String>,
    pub nonlin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho1: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m1: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho2: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m2: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta1: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta2: Option<Number>,
    /// "zero", "infinite" or a number.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f0: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finf: Option<Number>,
    #[serde(default)]
    pub allow_supercritical: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonlin_range: Option<[Number; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_max: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_scan: Option<usize>,
}

/// Everything a run needs besides numerical settings.
#[derive(Debug, Clone)]
pub struct Setup {
    pub problem: BvpProblem,
    pub witness: Witness,
    pub overrides: LimitOverrides,
    pub c_max: Option<f64>,
    pub n_scan: Option<usize>,
}

/// Parses "zero", "infinite"/"inf" or a number as a limit.
pub fn parse_limit(field: &str, n: &Number) -> Result<LimitEstimate, ConfigError> {
    if let Number::Formula(s) = n {
        match s.trim().to_ascii_lowercase().as_str() {
            "zero" | "0" => return Ok(LimitEstimate::zero()),
            "infinite" | "inf" | "infinity" => return Ok(LimitEstimate::infinite()),
            _ => {}
        }
    }
    let v = n.resolve(field)?;
    if v == 0.0 {
        return Ok(LimitEstimate::zero());
    }
    LimitEstimate::finite(v).map_err(|e| ConfigError::field(field, e))
}

fn opt(field: &str, n: &Option<Number>) -> Result<Option<f64>, ConfigError> {
    n.as_ref().map(|n| n.resolve(field)).transpose()
}

fn required<'a, T>(field: &str, v: &'a Option<T>) -> Result<&'a T, ConfigError> {
    v.as_ref()
        .ok_or_else(|| ConfigError::field(field, "missing required field"))
}

fn blame(e: Error) -> ConfigError {
    match e {
        Error::Parameter { ref name, .. } => ConfigError::field(name, e.to_string()),
        Error::Domain { ref what, .. } => ConfigError::field(what, e.to_string()),
        other => ConfigError::field("problem", other),
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Parses formulas and validates the problem.
    pub fn build(&self) -> Result<Setup, ConfigError> {
        let alpha = required("alpha", &self.alpha)?.resolve("alpha")?;
        let eta = required("eta", &self.eta)?.resolve("eta")?;
        let t_end = required("t_end", &self.t_end)?.resolve("t_end")?;
        let coeff = ScalarFn::parse(required("coeff", &self.coeff)?, "t")
            .map_err(|e| ConfigError::field("coeff", e))?;
        let nonlin = ScalarFn::parse(required("nonlin", &self.nonlin)?, "u")
            .map_err(|e| ConfigError::field("nonlin", e))?;
        let (lo, hi) = match &self.nonlin_range {
            Some([lo, hi]) => (lo.resolve("nonlin_range")?, hi.resolve("nonlin_range")?),
            None => DEFAULT_NONLIN_RANGE,
        };
        let problem = ProblemParams::new(alpha, eta, t_end, coeff, nonlin)
            .supercritical(self.allow_supercritical)
            .nonlin_range(lo, hi)
            .validate()
            .map_err(blame)?;

        let witness = Witness {
            rho1: opt("rho1", &self.rho1)?,
            m1: opt("m1", &self.m1)?,
            rho2: opt("rho2", &self.rho2)?,
            m2: opt("m2", &self.m2)?,
            theta1: opt("theta1", &self.theta1)?,
            theta2: opt("theta2", &self.theta2)?,
        };
        let overrides = LimitOverrides {
            f0: self.f0.as_ref().map(|n| parse_limit("f0", n)).transpose()?,
            finf: self
                .finf
                .as_ref()
                .map(|n| parse_limit("finf", n))
                .transpose()?,
        };
        let c_max = opt("c_max", &self.c_max)?;
        if let Some(c) = c_max {
            if c <= 0.0 {
                return Err(ConfigError::field(
                    "c_max",
                    format!("must be positive, got {c}"),
                ));
            }
        }
        if let Some(n) = self.n_scan {
            if n < 16 {
                return Err(ConfigError::field(
                    "n_scan",
                    format!("must be at least 16, got {n}"),
                ));
            }
        }
        Ok(Setup {
            problem,
            witness,
            overrides,
            c_max,
            n_scan: self.n_scan,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypothesis::LimitKind;

    const EXAMPLE_6_4: &str = r#"{
        "alpha": 0.5, "eta": 1, "t_end": 2,
        "coeff": "5/32*(2-t)^3",
        "nonlin": "u^(1/2)/2 + u^2/32",
        "rho1": 4, "m1": "3/8",
        "f0": "infinite"
    }"#;

    #[test]
    fn parses_and_builds() {
        let s = Config::from_json(EXAMPLE_6_4).unwrap().build().unwrap();
        assert_eq!(s.problem.alpha(), 0.5);
        assert_eq!(s.witness.m1, Some(0.375));
        assert_eq!(s.overrides.f0.unwrap().kind, LimitKind::Infinite);
        assert!(s.overrides.finf.is_none());
    }

    #[test]
    fn eta_beyond_t_end_names_eta() {
        let text = r#"{"alpha": 1, "eta": 2, "t_end": 1, "coeff": "1", "nonlin": "u"}"#;
        match Config::from_json(text).unwrap().build() {
            Err(ConfigError::Field { field, .. }) => assert_eq!(field, "eta"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let text = "{\n  \"alpha\": 1,\n  \"eta\": ,\n}";
        match Config::from_json(text) {
            Err(ConfigError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Config::from_json(r#"{"alpha": 1, "gamma": 2}"#),
            Err(ConfigError::Syntax { .. })
        ));
    }

    #[test]
    fn bad_formula_names_its_field() {
        let text = r#"{"alpha": 1, "eta": 0.5, "t_end": 1, "coeff": "1", "nonlin": "u^"}"#;
        match Config::from_json(text).unwrap().build() {
            Err(ConfigError::Field { field, .. }) => assert_eq!(field, "nonlin"),
            other => panic!("{other:?}"),
        }
        let text = r#"{"alpha": "1/", "eta": 0.5, "t_end": 1, "coeff": "1", "nonlin": "u"}"#;
        match Config::from_json(text).unwrap().build() {
            Err(ConfigError::Field { field, .. }) => assert_eq!(field, "alpha"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_field_is_reported() {
        match Config::from_json(r#"{"alpha": 1}"#).unwrap().build() {
            Err(ConfigError::Field { field, .. }) => assert_eq!(field, "eta"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn limits_accept_words_and_numbers() {
        assert_eq!(
            parse_limit("f0", &"zero".into()).unwrap().kind,
            LimitKind::Zero
        );
        assert_eq!(
            parse_limit("f0", &"Infinite".into()).unwrap().kind,
            LimitKind::Infinite
        );
        assert_eq!(parse_limit("f0", &2.5.into()).unwrap().value, Some(2.5));
        assert_eq!(parse_limit("f0", &"1+80".into()).unwrap().value, Some(81.0));
        assert!(parse_limit("f0", &(-1.0).into()).is_err());
    }

    #[test]
    fn round_trips_through_json() {
        let c = Config::from_json(EXAMPLE_6_4).unwrap();
        assert_eq!(Config::from_json(&c.to_json()).unwrap(), c);
    }
}
