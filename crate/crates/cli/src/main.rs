//! `rapidity`: relativistic velocity composition, rapidities, boost chains
//! and the group-law verifier from the command line.
//!
//! Exit codes: 0 success, 1 a verified law failed, 2 usage or domain error.

mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rapidity_core::chain::{comparison_table, MAX_CHAIN_STEPS};
use rapidity_core::prelude::*;
use rapidity_core::sampling::SampleSpec;
use rapidity_core::verify::DEFAULT_LIMIT_STEPS;

use output::{ComposedVelocity, Format, RapidityValue};

#[derive(Debug, Parser)]
#[command(name = "rapidity", version, about = "Relativistic velocity addition and its rapidity isomorphisms")]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Light speed in physical units. Literals are then physical velocities
    /// unless --natural is also given.
    #[arg(long, global = true, value_parser = positive)]
    c: Option<f64>,

    /// Scale of the rapidity isomorphism.
    #[arg(long, global = true, default_value_t = 1.0, value_parser = positive)]
    k: f64,

    /// Associativity tolerance for `verify` (other laws keep their own).
    #[arg(long, global = true, value_parser = positive)]
    tol: Option<f64>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, env = "RAPIDITY_FORMAT", default_value = "plain")]
    format: Format,

    /// Read velocity literals as multiples of c.
    #[arg(long, global = true)]
    natural: bool,

    /// Admit |v| = c (composition on the closed interval).
    #[arg(long, global = true)]
    extended: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compose two or more velocities, left to right.
    Compose {
        #[arg(required = true, num_args = 2.., allow_negative_numbers = true)]
        velocities: Vec<f64>,

        /// Evaluation strategy: direct, naive or rapidity.
        #[arg(long, default_value = "direct")]
        route: String,
    },
    /// Map a velocity to its rapidity (`to`) or back (`from`).
    Rapidity {
        #[arg(value_enum)]
        direction: Direction,

        #[arg(allow_negative_numbers = true)]
        value: f64,
    },
    /// Tabulate n repeated boosts next to their Newtonian counterpart.
    Chain {
        #[arg(allow_negative_numbers = true)]
        dv: f64,

        n: u64,
    },
    /// Check group laws on seeded samples.
    Verify {
        /// Law names, or `all` for the group suite.
        #[arg(default_value = "all")]
        laws: Vec<String>,

        #[arg(long, default_value_t = 10_000)]
        count: usize,

        /// Sampled velocities satisfy |beta| <= 1 - margin.
        #[arg(long, default_value_t = 1e-6, value_parser = positive)]
        margin: f64,

        /// Number of steps n in the limit sequence beta = 1 - 10^-n.
        #[arg(long, default_value_t = DEFAULT_LIMIT_STEPS)]
        limit_steps: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Direction {
    To,
    From,
}

fn positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("expected a positive finite number, got {s}"))
    }
}

enum Failure {
    Usage(String),
    LawsFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl Global {
    fn params(&self) -> Result<IsoParams> {
        IsoParams::new(self.light_speed(), self.k)
    }

    fn light_speed(&self) -> f64 {
        self.c.unwrap_or(1.0)
    }

    /// Literal to velocity, per --c / --natural.
    fn velocity(&self, literal: f64) -> Result<Velocity> {
        match self.c {
            Some(c) if !self.natural => make_velocity(literal, c),
            _ => make_velocity(literal, 1.0),
        }
    }

    fn extended_velocity(&self, literal: f64) -> Result<ExtendedVelocity> {
        match self.c {
            Some(c) if !self.natural => {
                if literal.abs() == c {
                    ExtendedVelocity::from_beta(literal.signum())
                } else {
                    ExtendedVelocity::from_beta(literal / c)
                }
            }
            _ => ExtendedVelocity::from_beta(literal),
        }
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let g = &cli.global;
    let format = g.format;
    match cli.command {
        Command::Compose { velocities, route } => {
            let c = g.light_speed();
            let composed = if g.extended {
                if route != "direct" {
                    return Err(Failure::Usage("--route applies to the open interval only".into()));
                }
                let vs = velocities
                    .iter()
                    .map(|x| g.extended_velocity(*x))
                    .collect::<Result<Vec<_>>>()?;
                let w = vs[1..].iter().try_fold(vs[0], |acc, v| compose_extended(acc, *v))?;
                ComposedVelocity { value: w.beta() * c, beta: w.beta(), saturated: false }
            } else {
                let route = RouteRegistry::builtin(g.params()?).get(&route)?;
                let vs = velocities.iter().map(|x| g.velocity(*x)).collect::<Result<Vec<_>>>()?;
                let w = route.fold(&vs)?;
                ComposedVelocity { value: w.to_physical(c), beta: w.beta(), saturated: w.is_saturated() }
            };
            Ok(output::velocity(&composed, format))
        }
        Command::Rapidity { direction, value } => {
            let p = g.params()?;
            match direction {
                Direction::To => {
                    let x = alpha(g.velocity(value)?, p);
                    Ok(output::rapidity(&RapidityValue { rapidity: x.value() }, format))
                }
                Direction::From => {
                    let w = beta_inv(Rapidity::new(value)?, p);
                    let v = ComposedVelocity {
                        value: w.to_physical(p.c()),
                        beta: w.beta(),
                        saturated: w.is_saturated(),
                    };
                    Ok(output::velocity(&v, format))
                }
            }
        }
        Command::Chain { dv, n } => {
            if !(1..=MAX_CHAIN_STEPS).contains(&n) {
                return Err(Failure::Usage(format!("n must lie in 1..={MAX_CHAIN_STEPS}, got {n}")));
            }
            let dv = g.velocity(dv)?;
            let rows = comparison_table(dv.beta(), n)?;
            Ok(output::chain_table(&rows, format))
        }
        Command::Verify { laws, count, margin, limit_steps } => {
            let ctx = CheckContext {
                spec: SampleSpec::new(count, g.seed, margin, true)?,
                params: g.params()?,
                tolerance: g.tol,
                limit_steps,
            };
            let reports = LawRegistry::builtin().run(&laws, &ctx)?;
            let text = output::reports(&reports, format);
            if reports.iter().all(|r| r.passed) {
                Ok(text)
            } else {
                println!("{text}");
                Err(Failure::LawsFailed)
            }
        }
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::LawsFailed) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
