use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{Output, RunConfig};

#[derive(Parser)]
#[command(
    name = "polyzeta",
    version,
    about = "Shuffle/stuffle algebras, rational series and multiple zeta values"
)]
struct Cli {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, default_value_t = 256)]
    prec_bits: usize,
    /// Absolute error target for numerical sums.
    #[arg(long, global = true, default_value_t = 1e-10)]
    err: f64,
    /// Truncation weight for series (at most 12).
    #[arg(long, global = true, default_value_t = 8)]
    max_weight: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for `verify` (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Glob on identity ids for `verify`; repeatable.
    #[arg(long, global = true)]
    filter: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Lyndon words up to --max-weight over `x` (x0 < x1) or `y` (y1 < y2 < ...).
    Lyndon { alphabet: String },
    /// Shuffle product of two polynomials, e.g. `x0` `x1`.
    Shuffle { p: String, q: String },
    /// Stuffle product of two polynomials over Y.
    Stuffle { p: String, q: String },
    /// Truncation of a rational expression to --max-weight, e.g. `(x0 + x1)*`.
    Star { expr: String },
    /// Minimal linear representation of a rational expression.
    Minimize { expr: String },
    /// Multiple zeta value, e.g. `(2,2)`.
    Mzv { index: String },
    /// Exact harmonic sum H_s(n).
    Hsum { index: String, n: u64 },
    /// Polylogarithm Li_s(z) for |z| < 1 (or z = 1 with s1 >= 2).
    Li { index: String, z: String },
    /// Gamma_{y_r}(1 + z) = exp(-l_r(z)) for |z| < 1.
    Gammafn { r: u32, z: String },
    /// Star combination, gamma and zeta_shuffle of a negative index, e.g. `(-1,-1)`.
    Regularize { index: String },
    /// Run the verification suite; exits with status 1 if an item fails.
    Verify,
}

fn run(cli: &Cli, cfg: &RunConfig) -> anyhow::Result<Output> {
    cfg.validate()?;
    match &cli.command {
        Command::Lyndon { alphabet } => commands::lyndon(alphabet, cfg),
        Command::Shuffle { p, q } => commands::shuffle(p, q),
        Command::Stuffle { p, q } => commands::stuffle(p, q),
        Command::Star { expr } => commands::star(expr, cfg),
        Command::Minimize { expr } => commands::minimize_cmd(expr),
        Command::Mzv { index } => commands::mzv_cmd(index, cfg),
        Command::Hsum { index, n } => commands::hsum(index, *n),
        Command::Li { index, z } => commands::li(index, z, cfg),
        Command::Gammafn { r, z } => commands::gammafn(*r, z, cfg),
        Command::Regularize { index } => commands::regularize(index, cfg),
        Command::Verify => commands::verify_cmd(cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        prec_bits: cli.prec_bits,
        err: cli.err,
        max_weight: cli.max_weight,
        jobs: cli
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        filter: cli.filter.clone(),
    };
    match run(&cli, &cfg) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&out.json).expect("json"))
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
