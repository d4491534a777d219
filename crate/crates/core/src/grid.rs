//! Sampled functions on the uniform grid tᵢ = i·T/n.

use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest admissible panel count.
pub const MIN_PANELS: usize = 8;

/// A real function sampled at the n+1 nodes of a uniform grid over [0, T].
///
/// Between nodes the function is read by piecewise-linear interpolation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridFunction {
    t_end: f64,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(t_end: f64, values: Vec<f64>) -> Result<Self> {
        if !(t_end.is_finite() && t_end > 0.0) {
            return Err(Error::param(
                "t_end",
                format!("must be positive, got {t_end}"),
            ));
        }
        check_panels(values.len().saturating_sub(1))?;
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(
                "grid function",
                format!("non-finite value {} at node {i}", values[i]),
            ));
        }
        Ok(Self { t_end, values })
    }

    /// Samples `f` at every node.
    pub fn from_fn(t_end: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        check_panels(n)?;
        let h = t_end / n as f64;
        Self::new(t_end, (0..=n).map(|i| f(i as f64 * h)).collect())
    }

    pub fn constant(t_end: f64, n: usize, c: f64) -> Result<Self> {
        Self::from_fn(t_end, n, |_| c)
    }

    pub(crate) fn from_parts_unchecked(t_end: f64, values: Vec<f64>) -> Self {
        Self { t_end, values }
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    /// Number of panels n.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn step(&self) -> f64 {
        self.t_end / self.n() as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i == self.n() {
            self.t_end
        } else {
            i as f64 * self.step()
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Iterates `(tᵢ, uᵢ)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (self.node(i), v))
    }

    pub fn first(&self) -> f64 {
        self.values[0]
    }

    pub fn last(&self) -> f64 {
        self.values[self.n()]
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// ‖u‖ = max |u(tᵢ)|.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Piecewise-linear value at `t`, clamped to [0, T].
    pub fn at(&self, t: f64) -> f64 {
        let n = self.n();
        let x = (t / self.step()).clamp(0.0, n as f64);
        let k = (x.floor() as usize).min(n - 1);
        let w = x - k as f64;
        self.values[k] * (1.0 - w) + self.values[k + 1] * w
    }

    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = self.iter().map(|(t, v)| f(t, v)).collect();
        Self::from_parts_unchecked(self.t_end, values)
    }

    pub fn scaled(&self, c: f64) -> Self {
        self.map(|_, v| c * v)
    }

    /// Pointwise `(1 − w)·self + w·other`; both must share a grid.
    pub fn blend(&self, other: &Self, w: f64) -> Self {
        debug_assert_eq!(self.values.len(), other.values.len());
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (1.0 - w) * a + w * b)
            .collect();
        Self::from_parts_unchecked(self.t_end, values)
    }

    /// max |self − other| over the shared nodes.
    pub fn distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Every other node: the same function on the grid with spacing 2h.
    pub fn coarsened(&self) -> Option<Self> {
        let n = self.n();
        if !n.is_multiple_of(4) || n / 2 < MIN_PANELS {
            return None;
        }
        let values = self.values.iter().step_by(2).copied().collect();
        Some(Self::from_parts_unchecked(self.t_end, values))
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.values.len() == other.values.len()
            && (self.t_end - other.t_end).abs() <= 1e-12 * self.t_end
    }

    pub(crate) fn check_bounds(&self, lo: f64, hi: f64) -> Result<()> {
        let slack = 1e-12 * self.t_end;
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::Range {
                lo,
                hi,
                reason: "bounds must be finite with lo <= hi".into(),
            });
        }
        if lo < -slack || hi > self.t_end + slack {
            return Err(Error::Range {
                lo,
                hi,
                reason: format!("bounds leave [0, {}]", self.t_end),
            });
        }
        Ok(())
    }

    /// Fourth-order quadrature of the sampled data over [lo, hi].
    ///
    /// Whole node pairs use Simpson, an odd leftover of three panels uses the
    /// 3/8 rule, and partial cells (bounds between nodes) integrate the local
    /// cubic through the four surrounding nodes.
    pub fn integral(&self, lo: f64, hi: f64) -> Result<f64> {
        self.check_bounds(lo, hi)?;
        let lo = lo.clamp(0.0, self.t_end);
        let hi = hi.clamp(0.0, self.t_end);
        if hi == lo {
            return Ok(0.0);
        }
        let h = self.step();
        let n = self.n();
        let snap = |x: f64| -> (f64, bool) {
            let r = x / h;
            let k = r.round();
            ((k.clamp(0.0, n as f64)), (r - k).abs() <= 1e-9)
        };

        let (rlo, lo_on_node) = snap(lo);
        let (rhi, hi_on_node) = snap(hi);
        let i_lo = if lo_on_node {
            rlo as usize
        } else {
            (lo / h).ceil() as usize
        };
        let i_hi = if hi_on_node {
            rhi as usize
        } else {
            (hi / h).floor() as usize
        };

        if i_lo > i_hi {
            // both bounds inside one cell
            return Ok(self.cubic_piece(i_hi, lo, hi));
        }
        let mut total = 0.0;
        if !lo_on_node {
            total += self.cubic_piece(i_lo - 1, lo, self.node(i_lo));
        }
        total += self.node_range(i_lo, i_hi);
        if !hi_on_node {
            total += self.cubic_piece(i_hi, self.node(i_hi), hi);
        }
        Ok(total)
    }

    fn node_range(&self, i0: usize, i1: usize) -> f64 {
        let m = i1 - i0;
        let h = self.step();
        let v = &self.values;
        let simpson = |a: usize, b: usize| -> f64 {
            let mut s = v[a] + v[b];
            for j in (a + 1..b).step_by(2) {
                s += 4.0 * v[j];
            }
            for j in (a + 2..b).step_by(2) {
                s += 2.0 * v[j];
            }
            s * h / 3.0
        };
        match m {
            0 => 0.0,
            1 => self.cubic_piece(i0, self.node(i0), self.node(i1)),
            _ if m.is_multiple_of(2) => simpson(i0, i1),
            _ => {
                let j = i1 - 3;
                let three_eighths =
                    3.0 * h / 8.0 * (v[j] + 3.0 * v[j + 1] + 3.0 * v[j + 2] + v[j + 3]);
                let head = if j > i0 { simpson(i0, j) } else { 0.0 };
                head + three_eighths
            }
        }
    }

    /// Exact integral over [a, b] ⊂ cell k of the cubic through four nodes near k.
    fn cubic_piece(&self, k: usize, a: f64, b: f64) -> f64 {
        let n = self.n();
        let j0 = k.saturating_sub(1).min(n - 3);
        let h = self.step();
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = &self.values[j0..j0 + 4];
        let lagrange = |t: f64| -> f64 {
            let x = t / h - j0 as f64;
            let mut acc = 0.0;
            for i in 0..4 {
                let mut w = 1.0;
                for j in 0..4 {
                    if i != j {
                        w *= (x - xs[j]) / (xs[i] - xs[j]);
                    }
                }
                acc += w * ys[i];
            }
            acc
        };
        gauss3(lagrange, a, b)
    }

    /// ∫ w(s)·ĝ(s) ds over [lo, hi] where ĝ is the piecewise-linear interpolant.
    ///
    /// Each (partial) cell is one Simpson panel, so the result is exact
    /// whenever `w` is a polynomial of degree ≤ 2.
    pub fn weighted_integral(&self, w: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<f64> {
        self.check_bounds(lo, hi)?;
        let lo = lo.clamp(0.0, self.t_end);
        let hi = hi.clamp(0.0, self.t_end);
        if hi == lo {
            return Ok(0.0);
        }
        let h = self.step();
        let n = self.n();
        let k0 = ((lo / h).floor() as usize).min(n - 1);
        let mut total = 0.0;
        for k in k0..n {
            let a = self.node(k).max(lo);
            let b = self.node(k + 1).min(hi);
            if b <= a {
                if self.node(k) >= hi {
                    break;
                }
                continue;
            }
            let m = 0.5 * (a + b);
            total +=
                (b - a) / 6.0 * (w(a) * self.at(a) + 4.0 * w(m) * self.at(m) + w(b) * self.at(b));
        }
        Ok(total)
    }
}

fn check_panels(n: usize) -> Result<()> {
    if n < MIN_PANELS || !n.is_multiple_of(2) {
        return Err(Error::param(
            "n",
            format!("grid needs an even panel count >= {MIN_PANELS}, got {n}"),
        ));
    }
    Ok(())
}

/// Three-point Gauss–Legendre rule, exact through degree 5.
fn gauss3(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const X: f64 = 0.774_596_669_241_483_4; // sqrt(3/5)
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    r * (5.0 * f(c - r * X) + 8.0 * f(c) + 5.0 * f(c + r * X)) / 9.0
}
