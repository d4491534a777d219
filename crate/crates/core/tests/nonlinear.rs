use cone_bvp::cli::{lookup, Settings, EXAMPLES};
use cone_bvp::cone::ConeConstants;
use cone_bvp::nonlinear::{apply_a, find_solutions, shoot, SolverOptions};

fn setup(id: &str) -> cone_bvp::cli::Setup {
    lookup(id).unwrap().config().build().unwrap()
}

#[test]
fn example_6_4_defect_changes_sign_below_four() {
    // scipy reference root: u(0) ≈ 0.90239
    let s = setup("6.4");
    let g = |c: f64| shoot(&s.problem, c, 4096).unwrap().1;
    assert!(g(0.85) * g(0.95) < 0.0);
    assert!(g(0.5) * g(4.0) < 0.0);
}

#[test]
fn two_solutions_around_the_witness_radius() {
    for (id, rho) in [("6.4", 4.0), ("6.5", 3.0)] {
        let s = setup(id);
        let c = ConeConstants::new(&s.problem).unwrap();
        let opts = cone_bvp::cli::pipeline::solver_options(&s, &Settings::default());
        let found = find_solutions(&s.problem, &c, &opts);
        let norms: Vec<f64> = found
            .iter()
            .filter(|r| r.accepted)
            .map(|r| r.norm)
            .collect();
        assert!(norms.iter().any(|&n| n < rho), "{id}: {norms:?}");
        assert!(norms.iter().any(|&n| n > rho), "{id}: {norms:?}");
    }
}

#[test]
fn reference_norms() {
    // independent scipy solve_ivp roots at rtol 1e-12
    let want = [
        ("6.1a", vec![3.7708]),
        ("6.1b", vec![0.098801]),
        ("6.2", vec![1.88043]),
        ("6.3", vec![0.9664]),
        ("6.4", vec![0.90239, 14.4929]),
        ("6.5", vec![0.0062772, 7.40533]),
        ("6.6", vec![0.24147]),
        ("6.7", vec![4.40029]),
    ];
    for (id, norms) in want {
        let s = setup(id);
        let c = ConeConstants::new(&s.problem).unwrap();
        let opts = cone_bvp::cli::pipeline::solver_options(&s, &Settings::default());
        let found = find_solutions(&s.problem, &c, &opts);
        for n in norms {
            assert!(
                found
                    .iter()
                    .any(|r| r.accepted && (r.norm - n).abs() < 2e-4 * n),
                "{id}: no solution near {n}"
            );
        }
    }
}

#[test]
fn accepted_solutions_are_fixed_points_of_a() {
    for e in &EXAMPLES {
        let s = e.config().build().unwrap();
        let c = ConeConstants::new(&s.problem).unwrap();
        let opts = SolverOptions {
            grid: 4096,
            ..cone_bvp::cli::pipeline::solver_options(&s, &Settings::default())
        };
        for r in find_solutions(&s.problem, &c, &opts)
            .iter()
            .filter(|r| r.accepted)
        {
            let au = apply_a(&s.problem, &r.u).unwrap();
            assert!(au.distance(&r.u) <= 1e-5 * r.norm.max(1.0), "{}", e.id);
            assert!(
                r.verification.decreasing && r.verification.concave,
                "{}",
                e.id
            );
            assert!((r.norm - r.c0).abs() <= 1e-12 * r.norm, "{}", e.id);
        }
    }
}
