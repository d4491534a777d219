//! Built-in example problems, stored as configs so that a JSON file with the
//! same content reproduces them exactly.

use super::config::{Config, Number};

pub struct ExampleSpec {
    pub id: &'static str,
    pub summary: &'static str,
    config: fn() -> Config,
}

impl ExampleSpec {
    pub fn config(&self) -> Config {
        (self.config)()
    }
}

fn n(s: &str) -> Option<Number> {
    Some(Number::from(s))
}

fn base(alpha: &str, eta: &str, t_end: &str, coeff: &str, nonlin: &str) -> Config {
    Config {
        alpha: n(alpha),
        eta: n(eta),
        t_end: n(t_end),
        coeff: Some(coeff.into()),
        nonlin: Some(nonlin.into()),
        ..Config::default()
    }
}

fn e61a() -> Config {
    base("2", "1/4", "1", "t", "u^2")
}

fn e61b() -> Config {
    // f(u)/u = u^(-1/2) creeps too slowly for the ladders
    Config {
        f0: n("infinite"),
        finf: n("zero"),
        ..base("2", "1/4", "1", "t", "u^(1/2)")
    }
}

fn e62() -> Config {
    base("3/2", "1/2", "3/4", "t^2", "u^2*exp(u)")
}

fn e63() -> Config {
    // sin(u)/u² is singular at 0 and negative past π; the scan stays below 2
    Config {
        nonlin_range: Some(["1e-3".into(), "pi".into()]),
        c_max: n("2"),
        n_scan: Some(64),
        ..base("1/2", "1/3", "1", "exp(t)", "sin(u)/u^2")
    }
}

fn e64() -> Config {
    Config {
        rho1: n("4"),
        m1: n("3/8"),
        f0: n("infinite"),
        ..base("1/2", "1", "2", "5/32*(2-t)^3", "u^(1/2)/2 + u^2/32")
    }
}

fn e65() -> Config {
    Config {
        rho2: n("3"),
        m2: n("3"),
        ..base("3", "1/4", "3/4", "8", "exp(3)*u^2*exp(-u)")
    }
}

fn e66() -> Config {
    // 5u e^{2u}/(8 + e^u + e^{2u}) divided through by e^{2u}
    Config {
        theta1: n("1"),
        theta2: n("1"),
        ..base("2", "1/3", "1", "1", "5*u/(8*exp(-2*u) + exp(-u) + 1)")
    }
}

fn e67() -> Config {
    Config {
        theta1: n("1"),
        theta2: n("1"),
        ..base("1", "1/2", "1", "1/5", "u*(1 + 80/(1 + u^2))")
    }
}

pub const EXAMPLES: [ExampleSpec; 8] = [
    ExampleSpec {
        id: "6.1a",
        summary: "u'' + t u^2 = 0, alpha = 2, eta = 1/4, T = 1",
        config: e61a,
    },
    ExampleSpec {
        id: "6.1b",
        summary: "u'' + t u^(1/2) = 0, alpha = 2, eta = 1/4, T = 1",
        config: e61b,
    },
    ExampleSpec {
        id: "6.2",
        summary: "u'' + t^2 u^2 e^u = 0, alpha = 3/2, eta = 1/2, T = 3/4",
        config: e62,
    },
    ExampleSpec {
        id: "6.3",
        summary: "u'' + e^t sin(u)/u^2 = 0, alpha = 1/2, eta = 1/3, T = 1",
        config: e63,
    },
    ExampleSpec {
        id: "6.4",
        summary: "u'' + (5/32)(2-t)^3 (u^(1/2)/2 + u^2/32) = 0, alpha = 1/2, eta = 1, T = 2",
        config: e64,
    },
    ExampleSpec {
        id: "6.5",
        summary: "u'' + 8 e^3 u^2 e^(-u) = 0, alpha = 3, eta = 1/4, T = 3/4",
        config: e65,
    },
    ExampleSpec {
        id: "6.6",
        summary: "u'' + 5u e^(2u)/(8 + e^u + e^(2u)) = 0, alpha = 2, eta = 1/3, T = 1",
        config: e66,
    },
    ExampleSpec {
        id: "6.7",
        summary: "u'' + (1/5) u (1 + 80/(1 + u^2)) = 0, alpha = 1, eta = 1/2, T = 1",
        config: e67,
    },
];

pub fn lookup(id: &str) -> Option<&'static ExampleSpec> {
    EXAMPLES.iter().find(|e| e.id == id)
}
