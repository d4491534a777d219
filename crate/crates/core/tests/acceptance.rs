//! One line per acceptance criterion; exits non-zero if any fails.

mod support;

use std::time::Instant;

use rand::Rng;

use cone_bvp::cli::{lookup, pipeline, Settings, Setup, EXAMPLES};
use cone_bvp::cone::{cone_membership, ConeConstants};
use cone_bvp::hypothesis::{classify, Hypothesis, Theorem, Witness};
use cone_bvp::linear::{
    check_min_bound, check_nonexistence_supercritical, check_positivity, is_concave,
    is_nonincreasing, solve_linear,
};
use cone_bvp::nonlinear::{apply_a, shoot};
use cone_bvp::verify::verify;
use cone_bvp::GridFunction;
use support::*;

struct Line {
    pass: bool,
    detail: String,
}

fn setup(id: &str) -> Setup {
    lookup(id).unwrap().config().build().unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn constants() -> Line {
    let start = Instant::now();
    let cases: [(&str, &str, f64); 9] = [
        ("6.5", "gamma", 2.0 / 3.0),
        ("6.5", "lambda2", 3.0 / 17.0),
        ("6.6", "gamma", 4.0 / 7.0),
        ("6.6", "lambda1", 2.0 / 3.0),
        ("6.6", "lambda2", 189.0 / 152.0),
        ("6.7", "gamma", 1.0 / 3.0),
        ("6.7", "lambda1", 5.0),
        ("6.7", "lambda2", 18.0),
        ("6.4", "lambda1", 0.5),
    ];
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for (id, name, want) in cases {
        let c = ConeConstants::compute(&setup(id).problem, 4096).unwrap();
        let got = match name {
            "gamma" => c.gamma,
            "lambda1" => c.lambda1,
            _ => c.lambda2,
        };
        let e = rel(got, want);
        worst = worst.max(e);
        if e > 1e-8 {
            bad.push(format!("{id} {name} = {got}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Line {
        pass: bad.is_empty() && secs < 1.0,
        detail: format!("max relative error {worst:.1e}, {secs:.3} s {bad:?}"),
    }
}

fn classification() -> Line {
    use Hypothesis::*;
    let expected: [(&str, Theorem, &[Hypothesis]); 8] = [
        ("6.1a", Theorem::Thm3_1, &[H1]),
        ("6.1b", Theorem::Thm3_1, &[H2]),
        ("6.2", Theorem::Thm3_1, &[H1]),
        ("6.3", Theorem::Thm3_1, &[H2]),
        ("6.4", Theorem::Thm4_1, &[H3, H4]),
        ("6.5", Theorem::Thm4_2, &[H5, H6]),
        ("6.6", Theorem::Cor5_2, &[H7, H8]),
        ("6.7", Theorem::Cor5_3, &[H9, H10]),
    ];
    let thetas = |id: &str| -> Vec<(f64, f64)> {
        let (t1, t2): (&[f64], &[f64]) = match id {
            "6.6" => (&[0.76, 0.875, 1.0], &[1.0, 1.5, 2.0]),
            "6.7" => (&[0.21, 0.6, 1.0], &[1.0, 1.25, 1.49]),
            _ => return vec![(f64::NAN, f64::NAN)],
        };
        t1.iter()
            .flat_map(|&a| t2.iter().map(move |&b| (a, b)))
            .collect()
    };
    let mut bad = Vec::new();
    let mut checked = 0;
    for (id, thm, via) in expected {
        let s = setup(id);
        let c = ConeConstants::new(&s.problem).unwrap();
        for (t1, t2) in thetas(id) {
            let w = if t1.is_nan() {
                s.witness
            } else {
                Witness {
                    theta1: Some(t1),
                    theta2: Some(t2),
                    ..s.witness
                }
            };
            let r = classify(&s.problem, &c, &w, &s.overrides).unwrap();
            checked += 1;
            let via_ok = via.iter().all(|h| r.truth(*h).is_true());
            if r.applicable != [thm] || !via_ok {
                bad.push(format!("{id} θ=({t1},{t2}): {:?}", r.applicable));
            }
        }
    }
    Line {
        pass: bad.is_empty(),
        detail: format!("{checked} classifications, mismatches {bad:?}"),
    }
}

fn oracle_equivalence() -> Line {
    let mut rng = rng(2024);
    let (mut worst, mut worst_bc, mut bad) = (0.0f64, 0.0f64, 0);
    for _ in 0..100 {
        let p = random_problem(&mut rng, (0.01, 0.99));
        let y = random_forcing(&mut rng, p.t_end(), 4096);
        let s = solve_linear(&p, &y).unwrap();
        let e = rel_sup(&fd_solve(&p, &y), &s.u);
        let bc = s.boundary_defect.abs() / s.u.sup_norm().max(1.0);
        worst = worst.max(e);
        worst_bc = worst_bc.max(bc);
        if e > 1e-6 || bc > 1e-8 {
            bad += 1;
        }
    }
    Line {
        pass: bad == 0,
        detail: format!(
            "100 instances, max relative gap {worst:.1e}, max boundary defect {worst_bc:.1e}"
        ),
    }
}

fn lemma_campaigns() -> Line {
    let start = Instant::now();
    let mut rng = rng(7);
    let trials = 10_000;
    let (mut pos, mut cone, mut dec, mut conc, mut neg) = (0, 0, 0, 0, 0);
    for _ in 0..trials {
        let p = random_problem(&mut rng, (0.01, 0.99));
        let y = random_forcing(&mut rng, p.t_end(), 1024);
        let u = solve_linear(&p, &y).unwrap().u;
        let g = cone_bvp::cone::gamma(&p).unwrap();
        pos += !check_positivity(&u) as usize;
        cone += !check_min_bound(&u, g) as usize;
        dec += !is_nonincreasing(&u) as usize;
        conc += !is_concave(&u) as usize;
    }
    for _ in 0..trials {
        let p = random_problem(&mut rng, (1.01, 10.0));
        let y = random_forcing(&mut rng, p.t_end(), 1024);
        neg += !check_nonexistence_supercritical(&p, &y).unwrap() as usize;
    }
    let secs = start.elapsed().as_secs_f64();
    let fails = pos + cone + dec + conc + neg;
    Line {
        pass: fails == 0 && secs < 30.0,
        detail: format!(
            "{trials}+{trials} trials, counterexamples: positivity {pos}, cone bound {cone}, \
             decrease {dec}, concavity {conc}, negativity {neg}; {secs:.2} s"
        ),
    }
}

/// r(h)/r(h/2) of the verifier's ODE residual for the trajectory from c.
fn refinement_factor(s: &Setup, c: f64) -> f64 {
    let consts = ConeConstants::new(&s.problem).unwrap();
    let r =
        |n: usize| verify(&s.problem, &shoot(&s.problem, c, n).unwrap().0, &consts).residual_ode;
    r(256) / r(512)
}

fn existence() -> Line {
    let need: [(&str, usize, Option<f64>); 8] = [
        ("6.1a", 1, None),
        ("6.1b", 1, None),
        ("6.2", 1, None),
        ("6.3", 1, None),
        ("6.4", 2, Some(4.0)),
        ("6.5", 2, Some(3.0)),
        ("6.6", 1, None),
        ("6.7", 1, None),
    ];
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for (id, count, rho) in need {
        let s = setup(id);
        let start = Instant::now();
        let out = pipeline::run(&s, &Settings::default()).unwrap();
        let secs = start.elapsed().as_secs_f64();
        let accepted: Vec<_> = out.solutions.iter().filter(|r| r.accepted).collect();
        let gamma = out.consts.gamma;
        if accepted.len() < count || secs >= 10.0 {
            bad.push(format!("{id}: {} accepted in {secs:.1} s", accepted.len()));
        }
        if let Some(rho) = rho {
            if !(accepted.iter().any(|r| r.norm < rho) && accepted.iter().any(|r| r.norm > rho)) {
                bad.push(format!("{id}: norms do not bracket {rho}"));
            }
        }
        for r in &accepted {
            let v = &r.verification;
            let factor = refinement_factor(&s, r.c0);
            let scale = r.norm.max(1.0);
            let ok = (3.0..5.0).contains(&factor)
                && v.bc_neumann <= 1e-6
                && v.bc_integral <= 1e-6
                && r.fixedpoint_defect <= 1e-5 * scale
                && r.u.min() >= gamma * r.norm - 1e-8;
            notes.push(format!("{id} ‖u‖={:.6} ×{factor:.2}", r.norm));
            if !ok {
                bad.push(format!(
                    "{id} ‖u‖={}: factor {factor}, bc {:.1e}/{:.1e}, |Au-u| {:.1e}",
                    r.norm, v.bc_neumann, v.bc_integral, r.fixedpoint_defect
                ));
            }
        }
    }
    Line {
        pass: bad.is_empty(),
        detail: format!("{}; failures {bad:?}", notes.join(", ")),
    }
}

/// Random element of K with sup norm in [1e-3, top].
fn cone_element(rng: &mut impl Rng, t_end: f64, gamma: f64, top: f64) -> GridFunction {
    let n = 256;
    let m = (rng.gen_range((1e-3f64).ln()..top.ln())).exp();
    let peak = rng.gen_range(0..=n);
    let values = (0..=n)
        .map(|i| {
            if i == peak {
                m
            } else {
                m * (gamma + (1.0 - gamma) * rng.gen::<f64>())
            }
        })
        .collect();
    GridFunction::new(t_end, values).unwrap()
}

fn cone_invariance() -> Line {
    let mut rng = rng(99);
    let mut bad = Vec::new();
    for e in &EXAMPLES {
        let s = e.config().build().unwrap();
        let gamma = cone_bvp::cone::gamma(&s.problem).unwrap();
        let top = s.problem.nonlin_range().1;
        let mut fails = 0;
        for _ in 0..1000 {
            let u = cone_element(&mut rng, s.problem.t_end(), gamma, top);
            assert!(cone_membership(&u, gamma));
            if !apply_a(&s.problem, &u).is_ok_and(|au| cone_membership(&au, gamma)) {
                fails += 1;
            }
        }
        if fails > 0 {
            bad.push(format!("{}: {fails}", e.id));
        }
    }
    Line {
        pass: bad.is_empty(),
        detail: format!("8 × 1000 cone elements, failures {bad:?}"),
    }
}

type Check = fn() -> Line;

fn main() {
    let criteria: [(&str, Check); 6] = [
        ("constant reproduction", constants),
        ("hypothesis classification", classification),
        ("linear-solver oracle equivalence", oracle_equivalence),
        ("lemma property suites", lemma_campaigns),
        ("solution existence", existence),
        ("cone invariance", cone_invariance),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let line = check();
        println!(
            "criterion {} ({name}): {} | {}",
            k + 1,
            if line.pass { "PASS" } else { "FAIL" },
            line.detail
        );
        failed += !line.pass as usize;
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
