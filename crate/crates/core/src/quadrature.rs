//! Composite Simpson quadrature.

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::problem::ScalarFn;

/// Default number of Simpson panels.
pub const DEFAULT_PANELS: usize = 1024;

/// Anything that can be evaluated on a real interval.
pub trait Integrand {
    fn eval(&self, t: f64) -> f64;

    /// The interval the integrand lives on, if it has one.
    fn domain(&self) -> Option<(f64, f64)> {
        None
    }
}

impl<F: Fn(f64) -> f64> Integrand for F {
    fn eval(&self, t: f64) -> f64 {
        self(t)
    }
}

impl Integrand for ScalarFn {
    fn eval(&self, t: f64) -> f64 {
        self.call(t)
    }
}

impl Integrand for GridFunction {
    fn eval(&self, t: f64) -> f64 {
        self.at(t)
    }

    fn domain(&self) -> Option<(f64, f64)> {
        Some((0.0, self.t_end()))
    }
}

/// Composite Simpson approximation of ∫ₗₒ^ʰⁱ g with `n` panels.
///
/// Grid functions are read through their piecewise-linear interpolant.
pub fn integrate<G: Integrand + ?Sized>(g: &G, lo: f64, hi: f64, n: usize) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::Range {
            lo,
            hi,
            reason: "bounds must be finite with lo <= hi".into(),
        });
    }
    if let Some((a, b)) = g.domain() {
        let slack = 1e-12 * (b - a).abs().max(1.0);
        if lo < a - slack || hi > b + slack {
            return Err(Error::Range {
                lo,
                hi,
                reason: format!("bounds leave [{a}, {b}]"),
            });
        }
    }
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::param(
            "n",
            format!("Simpson needs an even panel count, got {n}"),
        ));
    }
    if lo == hi {
        return Ok(0.0);
    }
    let h = (hi - lo) / n as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..n {
        let v = g.eval(lo + i as f64 * h);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    Ok(h / 3.0 * (g.eval(lo) + 4.0 * odd + 2.0 * even + g.eval(hi)))
}
