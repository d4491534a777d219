#![allow(dead_code)]

use cone_bvp::{BvpProblem, GridFunction, ProblemParams, ScalarFn};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random (α, η, T) with αη in `alpha_eta`; a ≡ 1 and f ≡ 0 are placeholders
/// for linear experiments.
pub fn random_problem(rng: &mut impl Rng, alpha_eta: (f64, f64)) -> BvpProblem {
    let t_end = rng.gen_range(0.25..3.0);
    let eta = t_end * rng.gen_range(0.05..0.95);
    let alpha = rng.gen_range(alpha_eta.0..alpha_eta.1) / eta;
    ProblemParams::new(
        alpha,
        eta,
        t_end,
        ScalarFn::constant(1.0),
        ScalarFn::constant(0.0),
    )
    .supercritical(alpha * eta > 1.0)
    .validate()
    .unwrap()
}

/// Piecewise-linear forcing with 16 equal pieces and knot values in [0, 10].
pub fn random_forcing(rng: &mut impl Rng, t_end: f64, n: usize) -> GridFunction {
    assert_eq!(n % 16, 0);
    let knots: Vec<f64> = (0..=16).map(|_| rng.gen_range(0.0..10.0)).collect();
    let per = n / 16;
    let values = (0..=n)
        .map(|i| {
            let (k, r) = (i / per, i % per);
            if k == 16 {
                knots[16]
            } else {
                let w = r as f64 / per as f64;
                (1.0 - w) * knots[k] + w * knots[k + 1]
            }
        })
        .collect();
    GridFunction::new(t_end, values).unwrap()
}

/// Tridiagonal solve: sub, diag, sup and right-hand side, all of length m.
fn thomas(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let m = diag.len();
    let mut c = vec![0.0; m];
    let mut d = vec![0.0; m];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..m {
        let den = diag[i] - sub[i] * c[i - 1];
        c[i] = sup[i] / den;
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / den;
    }
    let mut x = vec![0.0; m];
    x[m - 1] = d[m - 1];
    for i in (0..m - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Second-order finite differences for u″ = −y, u′(0) = 0 (ghost node),
/// u(T) = α ∫₀^η u: solve with u(T) = 0, then add the constant that
/// restores the integral condition.
pub fn fd_solve(problem: &BvpProblem, y: &GridFunction) -> GridFunction {
    let n = y.n();
    let h = y.step();
    let yv = y.values();
    let (mut sub, mut diag, mut sup, mut rhs) =
        (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    // unknowns u_0 … u_{n−1}; u_n = 0
    diag[0] = -2.0;
    sup[0] = 2.0;
    rhs[0] = -h * h * yv[0];
    for i in 1..n {
        sub[i] = 1.0;
        diag[i] = -2.0;
        sup[i] = if i + 1 < n { 1.0 } else { 0.0 };
        rhs[i] = -h * h * yv[i];
    }
    let mut p = thomas(&sub, &diag, &sup, &rhs);
    p.push(0.0);
    let p = GridFunction::new(y.t_end(), p).unwrap();
    let q = p.integral(0.0, problem.eta()).unwrap();
    let beta = problem.alpha() * q / problem.one_minus_alpha_eta();
    p.map(|_, v| v + beta)
}

pub fn rel_sup(a: &GridFunction, b: &GridFunction) -> f64 {
    a.distance(b) / b.sup_norm().max(1e-300)
}
