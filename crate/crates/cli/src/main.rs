use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nonharmonic::bounds::{best_over_tau, BoundParams, OperatorKind, Theorem};
use nonharmonic::experiment::{emit_plotscript, exponent_csv, sweep, sweep_csv, table_exponents, table_prelim, ExponentProtocol, SweepConfig};
use nonharmonic::lattice::{FrequencyDomain, Mode, Shape};
use nonharmonic::operators::{measure, sigma_sandwich_check};
use nonharmonic::verify::{self, CRITERIA, DEFAULT_SEED};
use nonharmonic::{Error, PointSet64};

const EXIT_CONFIG: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_VIOLATION: u8 = 4;
const EXIT_OTHER: u8 = 1;

#[derive(Parser)]
#[command(name = "nhf", version, about = "Nonharmonic Fourier operators: singular values, lower bounds and δ-sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum and lower bounds for one node set (JSON {d, space, points}; `-` reads stdin).
    Sigma {
        points: PathBuf,
        #[arg(long, value_enum, default_value = "cube")]
        shape: ShapeArg,
        #[arg(long)]
        m: f64,
        #[arg(long, value_enum, default_value = "discrete")]
        mode: OperatorArg,
        #[arg(long, default_value_t = 1)]
        rho: u32,
        /// Comma-separated bound names, or `all`.
        #[arg(long, default_value = "all")]
        bounds: String,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Run a δ-sweep from a JSON config and write CSV.
    Sweep {
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reproduce a table as CSV.
    Tables {
        #[command(subcommand)]
        table: Table,
    },
    /// Run the property suites; exits 4 on any violation.
    Verify {
        /// Criterion ids to run (default: all).
        #[arg(long = "criterion", short = 'c')]
        criteria: Vec<u8>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Emit a gnuplot script for a sweep CSV.
    Plot {
        csv: PathBuf,
        /// Exponents of the reference lines `C δ^k`.
        #[arg(short, long = "k", value_delimiter = ',')]
        ks: Vec<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Table {
    Prelim,
    Exponents {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 10)]
        lambda_max: usize,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Cube,
    Ball,
}

#[derive(Clone, Copy, ValueEnum)]
enum OperatorArg {
    Discrete,
    Continuous,
}

enum Failure {
    Config(String),
    Core(Error),
    Io(String),
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn parse_bounds(spec: &str) -> Result<Vec<Theorem>, Failure> {
    if spec.trim() == "all" {
        return Ok(Theorem::ALL.to_vec());
    }
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Theorem::from_name(s).ok_or_else(|| Failure::Config(format!("unknown bound '{s}'"))))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_sigma(
    points: &Path,
    shape: ShapeArg,
    m: f64,
    mode: OperatorArg,
    rho: u32,
    bounds: &str,
    beta: Option<f64>,
    alpha: Option<f64>,
) -> Result<(), Failure> {
    let x: PointSet64 = serde_json::from_str(&read_input(points)?).map_err(|e| Failure::Config(format!("points: {e}")))?;
    let theorems = parse_bounds(bounds)?;
    let shape = match shape {
        ShapeArg::Cube => Shape::Cube,
        ShapeArg::Ball => Shape::Ball,
    };
    let (op, dmode) = match mode {
        OperatorArg::Discrete => (OperatorKind::Discrete, Mode::Discrete { rho }),
        OperatorArg::Continuous => (OperatorKind::Continuous, Mode::Continuous),
    };
    let dom = FrequencyDomain::new(shape, m, dmode, x.dim()).map_err(|e| Failure::Config(e.to_string()))?;
    dom.ensure_enumerable()?;
    let spectrum = measure(&dom, &x)?;
    let sandwich = sigma_sandwich_check(&dom, x.len(), &spectrum)?;
    let mut params = BoundParams::default_for(x.dim()).unwrap_or(BoundParams { beta: 1.0, alpha: 1.0 });
    params.beta = beta.unwrap_or(params.beta);
    params.alpha = alpha.unwrap_or(params.alpha);
    let reports: Vec<_> = theorems
        .iter()
        .map(|&t| match best_over_tau(t, m, &x, params, op) {
            Ok(r) => serde_json::to_value(r).expect("plain data"),
            Err(e) => json!({ "theorem": t, "operator": op, "applicable": false, "error": e.to_string() }),
        })
        .collect();
    let doc = json!({
        "domain": { "shape": shape, "m": m, "mode": op, "rho": dom.rho(), "measure": dom.measure()? },
        "points": x,
        "spectrum": spectrum,
        "sandwich": sandwich,
        "bounds": reports,
    });
    write_output(None, &format!("{}\n", serde_json::to_string_pretty(&doc).expect("plain data")))
}

fn cmd_sweep(config: &Path, output: Option<&Path>) -> Result<(), Failure> {
    let cfg: SweepConfig = serde_json::from_str(&read_input(config)?).map_err(|e| Failure::Config(format!("config: {e}")))?;
    let dom = cfg.domain().map_err(|e| Failure::Config(e.to_string()))?;
    cfg.deltas.values().map_err(|e| Failure::Config(e.to_string()))?;
    dom.ensure_enumerable()?;
    let records = sweep(&cfg)?;
    for r in &records {
        if let Some(e) = &r.error {
            eprintln!("trial {} delta {:e}: {e}", r.trial, r.delta);
        }
    }
    write_output(output, &sweep_csv(&cfg, &records))
}

fn cmd_tables(table: &Table) -> Result<(), Failure> {
    let text = match table {
        Table::Prelim => table_prelim()?,
        Table::Exponents { d, lambda_max, trials, seed } => {
            let mut proto = ExponentProtocol::default();
            proto.trials = trials.unwrap_or(proto.trials);
            proto.seed = seed.unwrap_or(proto.seed);
            exponent_csv(&table_exponents(*d, 1..=*lambda_max, &proto)?)
        }
    };
    write_output(None, &text)
}

fn cmd_verify(criteria: &[u8], seed: u64, as_json: bool) -> Result<(), Failure> {
    let ids: Vec<u8> = if criteria.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { criteria.to_vec() };
    let mut all_pass = true;
    let mut outcomes = Vec::new();
    for id in ids {
        let o = verify::run_criterion(id, seed).ok_or_else(|| Failure::Config(format!("no criterion {id}")))?;
        if !as_json {
            println!("{}", o.line());
        }
        all_pass &= o.pass;
        outcomes.push(o);
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&outcomes).expect("plain data"));
    }
    if all_pass {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn cmd_plot(csv: &Path, ks: &[u32], output: Option<&Path>) -> Result<(), Failure> {
    let text = read_input(csv)?;
    let script = emit_plotscript(&csv.display().to_string(), &text, ks).map_err(|e| Failure::Config(e.to_string()))?;
    write_output(output, &script)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Sigma { points, shape, m, mode, rho, bounds, beta, alpha } => {
            cmd_sigma(points, *shape, *m, *mode, *rho, bounds, *beta, *alpha)
        }
        Command::Sweep { config, output } => cmd_sweep(config, output.as_deref()),
        Command::Tables { table } => cmd_tables(table),
        Command::Verify { criteria, seed, json } => cmd_verify(criteria, *seed, *json),
        Command::Plot { csv, ks, output } => cmd_plot(csv, ks, output.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("nhf: config error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Core(e @ Error::Budget { .. })) => {
            eprintln!("nhf: {e}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(Failure::Core(e @ (Error::InvalidArgument(_) | Error::InvalidPointSet(_) | Error::DimensionMismatch { .. }))) => {
            eprintln!("nhf: config error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Core(e)) => {
            eprintln!("nhf: {e}");
            ExitCode::from(EXIT_OTHER)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("nhf: {msg}");
            ExitCode::from(EXIT_OTHER)
        }
        Err(Failure::Violation) => ExitCode::from(EXIT_VIOLATION),
    }
}
