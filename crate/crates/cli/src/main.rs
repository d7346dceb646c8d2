mod input;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use brkit_core::perturb::{make_regular_instance_with, perturb_with_epsilon, PlanOptions, RegularOptions};
use brkit_core::pipeline::{reduce_permanent_with, ReductionOptions};
use brkit_core::rootfind::{locate_roots, DEFAULT_REGULARITY_TOLERANCE};
use brkit_core::{
    certify_regular, consistency_check, degree_via_mv, mixed_volume_ie,
    mixed_volume_interp, perturb_system, rouche_radius, DegreeOptions, Method, NewtonConfig,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "brkit", version, about = "Mixed volumes, zero counts and analytic degrees of sparse polynomial systems")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Regularity threshold on min |det J| at the located zeros.
    #[arg(long, global = true, default_value_t = DEFAULT_REGULARITY_TOLERANCE)]
    tolerance: f64,

    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum MvRoute {
    Ie,
    Interp,
}

#[derive(Clone, Copy, ValueEnum)]
enum DegreeMethod {
    Mv,
    Roots,
    Integral,
    All,
}

impl From<DegreeMethod> for Method {
    fn from(m: DegreeMethod) -> Self {
        match m {
            DegreeMethod::Mv => Method::Mv,
            DegreeMethod::Roots => Method::Roots,
            DegreeMethod::Integral => Method::Integral,
            DegreeMethod::All => Method::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normalized mixed volume of lattice supports.
    MixedVolume {
        supports: PathBuf,
        #[arg(long, value_enum, default_value_t = MvRoute::Ie)]
        method: MvRoute,
    },
    /// Analytic degree of a system at 0, by one or all routes.
    Degree {
        system: PathBuf,
        #[arg(long, value_enum, default_value_t = DegreeMethod::All)]
        method: DegreeMethod,
        /// Integrand samples per level of the integral route.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Locate the zeros of a system.
    Solve { system: PathBuf },
    /// Perturb the coefficients of a system without changing its zero count.
    Perturb {
        system: PathBuf,
        /// `auto` for a Rouche-certified radius, or an explicit radius.
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        epsilon: String,
    },
    /// Random Gaussian-rational system on the given supports with 0 certified regular.
    MakeRegular {
        supports: PathBuf,
        /// Coefficient height; defaults to the largest total degree.
        #[arg(long)]
        height: Option<u64>,
    },
    /// Permanent of a nonnegative matrix carried through mixed volumes to a degree.
    ReducePermanent {
        #[arg(long)]
        matrix: PathBuf,
        /// Coefficient height; defaults to the largest row sum.
        #[arg(long)]
        height: Option<u64>,
        /// Largest size that still gets a full root search.
        #[arg(long)]
        root_limit: Option<usize>,
    },
    /// Certify that 0 is a regular value of a system.
    CheckRegular { system: PathBuf },
}

/// A failed run: exit code 1 for a computation that refused to certify, 2 for bad input.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<brkit_core::Error> for Failure {
    fn from(e: brkit_core::Error) -> Self {
        Self {
            code: if e.is_input_error() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

/// What a command printed, plus a refusal to report after printing it.
struct Done {
    text: String,
    refusal: Option<String>,
}

fn render<T: Serialize>(out: Output, value: &T, table: impl FnOnce(&T) -> String) -> String {
    match out {
        Output::Json => serde_json::to_string_pretty(value).expect("output serializes") + "\n",
        Output::Table => table(value),
    }
}

#[derive(Serialize)]
pub struct MvOutput {
    /// Exact value, an integer for lattice supports.
    mixed_volume: String,
    method: brkit_core::MvMethod,
}

#[derive(Serialize)]
struct SolveOutput {
    roots: brkit_core::RootSet,
    certificate: brkit_core::RegularityCertificate,
}

#[derive(Serialize)]
pub struct PerturbOutput {
    epsilon: f64,
    plan: Option<brkit_core::PerturbationPlan>,
    system: brkit_core::PolySystem,
}

fn newton(seed: u64) -> NewtonConfig {
    NewtonConfig::with_seed(seed)
}

fn target(s: &brkit_core::PolySystem) -> Option<usize> {
    degree_via_mv(s).ok().map(|v| v as usize)
}

fn solve(cli: &Cli, path: &std::path::Path) -> Result<(SolveOutput, Option<String>), Failure> {
    let s = input::system(path)?;
    let roots = locate_roots(&s, target(&s), &newton(cli.seed));
    let certificate = certify_regular(&s, &roots, cli.tolerance);
    let refusal = if !certificate.is_regular() {
        Some("0 is not certified regular".to_string())
    } else if roots.target.is_some() && !roots.complete {
        Some(format!(
            "root set is incomplete: located {} of {}",
            roots.len(),
            roots.target.unwrap_or_default()
        ))
    } else {
        None
    };
    Ok((SolveOutput { roots, certificate }, refusal))
}

fn run(cli: &Cli) -> Result<Done, Failure> {
    let out = cli.output;
    match &cli.command {
        Command::MixedVolume { supports, method } => {
            let sup = input::supports(supports)?;
            let r = match method {
                MvRoute::Ie => mixed_volume_ie(&sup)?,
                MvRoute::Interp => mixed_volume_interp(&sup)?,
            };
            let r = MvOutput {
                mixed_volume: r.as_integer().map_or_else(|| r.value.to_string(), |v| v.to_string()),
                method: r.method,
            };
            Ok(Done {
                text: render(out, &r, table::mixed_volume),
                refusal: None,
            })
        }
        Command::Degree { system, method, samples } => {
            let s = input::system(system)?;
            let mut opts = DegreeOptions::with_seed(cli.seed);
            opts.method = (*method).into();
            opts.tolerance = cli.tolerance;
            opts.integral.seed = cli.seed;
            if samples.is_some() {
                opts.integral.samples = *samples;
            }
            let r = consistency_check(&s, &opts);
            let refusal = (!r.consistent).then(|| {
                if r.notes.is_empty() {
                    "degree routes disagree".to_string()
                } else {
                    r.notes.join("; ")
                }
            });
            Ok(Done {
                text: render(out, &r, table::degree),
                refusal,
            })
        }
        Command::Solve { system } => {
            let (r, refusal) = solve(cli, system)?;
            Ok(Done {
                text: render(out, &r, |r| table::roots(&r.roots, &r.certificate)),
                refusal,
            })
        }
        Command::CheckRegular { system } => {
            let (r, refusal) = solve(cli, system)?;
            Ok(Done {
                text: render(out, &r.certificate, table::certificate),
                refusal,
            })
        }
        Command::Perturb { system, epsilon } => {
            let s = input::system(system)?;
            let r = if epsilon == "auto" {
                let popts = PlanOptions {
                    tolerance: cli.tolerance,
                    newton: newton(cli.seed),
                    ..PlanOptions::with_seed(cli.seed)
                };
                let plan = rouche_radius(&s, &popts)?;
                PerturbOutput {
                    epsilon: plan.epsilon,
                    system: perturb_system(&s, &plan, cli.seed)?,
                    plan: Some(plan),
                }
            } else {
                let eps: f64 = epsilon
                    .parse()
                    .ok()
                    .filter(|e: &f64| e.is_finite() && *e >= 0.0)
                    .ok_or_else(|| Failure::input(format!("--epsilon expects `auto` or a radius >= 0, got {epsilon:?}")))?;
                PerturbOutput {
                    epsilon: eps,
                    plan: None,
                    system: perturb_with_epsilon(&s, eps, cli.seed)?,
                }
            };
            Ok(Done {
                text: render(out, &r, table::perturbed),
                refusal: None,
            })
        }
        Command::MakeRegular { supports, height } => {
            let sup = input::supports(supports)?;
            let h = height.unwrap_or_else(|| sup.iter().map(|a| a.max_total_degree()).max().unwrap_or(1).max(1) as u64);
            let ropts = RegularOptions {
                target: None,
                plan: PlanOptions {
                    tolerance: cli.tolerance,
                    newton: newton(cli.seed),
                    ..PlanOptions::with_seed(cli.seed)
                },
            };
            let r = make_regular_instance_with(&sup, h, cli.seed, &ropts)?;
            Ok(Done {
                text: render(out, &r, table::regular),
                refusal: None,
            })
        }
        Command::ReducePermanent { matrix, height, root_limit } => {
            let m = input::matrix(matrix)?;
            let h = height.unwrap_or_else(|| m.rows().iter().map(|r| r.iter().sum::<i64>()).max().unwrap_or(1).max(1) as u64);
            let mut opts = ReductionOptions::new(h, cli.seed);
            opts.degree.tolerance = cli.tolerance;
            if let Some(l) = root_limit {
                opts.root_limit = *l;
            }
            let t = reduce_permanent_with(&m, &opts)?;
            let refusal = (!t.agreement).then(|| "no certified degree to compare with the permanent".to_string());
            Ok(Done {
                text: render(out, &t, table::trace),
                refusal,
            })
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("BRKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::input(format!("BRKIT_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::input(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(&cli));
    match result {
        Ok(done) => {
            print!("{}", done.text);
            match done.refusal {
                Some(msg) => {
                    eprintln!("brkit: {msg}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("brkit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
