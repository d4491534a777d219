use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cone_bvp::cli::config::Number;
use cone_bvp::cli::{self, Config, Format, Report, Settings};
use cone_bvp::nonlinear::DEFAULT_GRID;
use cone_bvp::quadrature::DEFAULT_PANELS;

#[derive(Parser)]
#[command(
    name = "cone-bvp",
    version,
    about = "Positive solutions of u'' + a(t) f(u) = 0, u'(0) = 0, u(T) = alpha * int_0^eta u"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in examples.
    List,
    /// Run a built-in example.
    Example {
        id: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run a problem described in a JSON file.
    Run {
        config: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Both,
}

#[derive(Args)]
struct Flags {
    /// Simpson panels for the cone constants.
    #[arg(long, env = "CONE_BVP_PANELS", default_value_t = DEFAULT_PANELS)]
    panels: usize,
    /// Panels of the solution grid.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    /// Uniform scan points in u(0).
    #[arg(long)]
    scan: Option<usize>,
    /// Largest u(0) scanned.
    #[arg(long)]
    cmax: Option<f64>,
    /// Root tolerance on the shooting defect.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    rho1: Option<String>,
    #[arg(long)]
    m1: Option<String>,
    #[arg(long)]
    rho2: Option<String>,
    #[arg(long)]
    m2: Option<String>,
    #[arg(long)]
    theta1: Option<String>,
    #[arg(long)]
    theta2: Option<String>,
    /// Override f0: zero, infinite or a number.
    #[arg(long)]
    f0: Option<String>,
    /// Override f_inf: zero, infinite or a number.
    #[arg(long)]
    finf: Option<String>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Both)]
    format: FormatArg,
    /// Also write whitespace-separated t u1 u2 … columns.
    #[arg(long)]
    plot_data: bool,
}

impl Flags {
    fn apply(&self, config: &mut Config) {
        let set = |slot: &mut Option<Number>, v: &Option<String>| {
            if let Some(s) = v {
                *slot = Some(Number::Formula(s.clone()));
            }
        };
        set(&mut config.rho1, &self.rho1);
        set(&mut config.m1, &self.m1);
        set(&mut config.rho2, &self.rho2);
        set(&mut config.m2, &self.m2);
        set(&mut config.theta1, &self.theta1);
        set(&mut config.theta2, &self.theta2);
        set(&mut config.f0, &self.f0);
        set(&mut config.finf, &self.finf);
    }

    fn settings(&self) -> anyhow::Result<Settings> {
        if self.panels == 0 || !self.panels.is_multiple_of(2) {
            bail!(
                "--panels must be a positive even number, got {}",
                self.panels
            );
        }
        if self.grid < 8 || !self.grid.is_multiple_of(2) {
            bail!(
                "--grid must be an even number of at least 8, got {}",
                self.grid
            );
        }
        Ok(Settings {
            panels: self.panels,
            grid: self.grid,
            c_max: self.cmax,
            n_scan: self.scan,
            tol_root: self.tol,
        })
    }

    fn format(&self) -> Format {
        match self.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Both => Format::Both,
        }
    }
}

fn execute(id: &str, mut config: Config, flags: &Flags) -> anyhow::Result<bool> {
    flags.apply(&mut config);
    let setup = config.build()?;
    let settings = flags.settings()?;
    let outcome = cli::run(&setup, &settings)?;
    let report = Report::new(&setup, &settings, &outcome);

    let c = &outcome.consts;
    println!("problem {id}");
    println!(
        "  gamma = {}, lambda1 = {}, lambda2 = {}",
        c.gamma, c.lambda1, c.lambda2
    );
    println!(
        "  f0 = {}, finf = {}",
        outcome.hypotheses.f0, outcome.hypotheses.finf
    );
    let holds: Vec<String> = outcome
        .hypotheses
        .holds
        .iter()
        .filter(|(_, t)| t.is_true())
        .map(|(h, _)| h.to_string())
        .collect();
    println!(
        "  hypotheses holding: {}",
        if holds.is_empty() {
            "none".into()
        } else {
            holds.join(", ")
        }
    );
    for p in &outcome.hypotheses.predictions {
        let brackets: Vec<String> = p.brackets.iter().map(|b| b.to_string()).collect();
        println!(
            "  {}: at least {} in {}",
            p.theorem,
            p.count,
            brackets.join(", ")
        );
    }
    for (k, s) in outcome.solutions.iter().enumerate() {
        println!(
            "  solution {}: ||u|| = {:.10}, residual {:.2e}, bc {:.2e}, |Au-u| {:.2e}, {}",
            k + 1,
            s.norm,
            s.residual_ode,
            s.bc_defect,
            s.fixedpoint_defect,
            if s.accepted { "accepted" } else { "REJECTED" }
        );
    }
    println!("  verdict: {:?}", outcome.verdict.status);

    let written = cli::write_outputs(
        &flags.out,
        id,
        &report,
        &outcome,
        flags.format(),
        flags.plot_data,
    )
    .with_context(|| format!("writing into {}", flags.out.display()))?;
    for path in written {
        println!("  wrote {}", path.display());
    }
    Ok(outcome.all_accepted())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::List => {
            for e in &cli::EXAMPLES {
                println!("{:5} {}", e.id, e.summary);
            }
            Ok(true)
        }
        Command::Example { id, flags } => match cli::lookup(id) {
            Some(spec) => execute(spec.id, spec.config(), flags),
            None => Err(anyhow::anyhow!(
                "unknown example `{id}`; available: {}",
                cli::EXAMPLES
                    .iter()
                    .map(|e| e.id)
                    .collect::<Vec<_>>()
                    .join(", ")
            )),
        },
        Command::Run { config, flags } => {
            let id = config
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "config".into());
            Config::load(config)
                .map_err(anyhow::Error::from)
                .and_then(|c| execute(&id, c, flags))
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
