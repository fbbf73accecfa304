use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::CliError;

#[derive(Debug, Parser)]
#[command(name = "symca", version, about = "Symmetric 2D elementary cellular automata and their limit functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Pgm,
    Pbm,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalFn {
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
    #[value(name = "Hk")]
    Hk,
    #[value(name = "salem")]
    Salem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IntegrateFn {
    #[value(name = "F")]
    F,
    /// Grid values `G_k`, the census form
    #[value(name = "G")]
    G,
    /// Grid values of `G` itself
    #[value(name = "G-exact")]
    GExact,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve the single site seed, writing one image per step and a census CSV.
    Evolve {
        /// Builtin name (ta, tb, ts0) or path to a JSON rule file
        #[arg(long)]
        rule: String,
        #[arg(long)]
        steps: u64,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "pgm")]
        format: Format,
    },
    /// Compare simulated and closed-form censuses.
    Census {
        #[arg(long)]
        rule: String,
        #[arg(long, default_value_t = 256)]
        tmax: u64,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate F, G, H_k or Salem's function exactly at a dyadic point, or
    /// export all of them on a dyadic grid.
    Eval {
        #[arg(long = "fn", value_enum)]
        function: Option<EvalFn>,
        /// Dyadic point, `t/2^k` or `t/d`
        #[arg(long)]
        x: Option<String>,
        /// The point, given positionally
        #[arg(value_name = "X", conflicts_with = "x")]
        point: Option<String>,
        /// Index of H_k
        #[arg(long)]
        k: Option<u32>,
        /// Salem parameter, a fraction in (0, 1)
        #[arg(long, default_value = "1/5")]
        alpha: String,
        /// Export every point of this grid level instead of a single value
        #[arg(long, conflicts_with_all = ["x", "point"])]
        grid: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dyadic Riemann sums for levels 1..=kmax.
    Integrate {
        #[arg(long = "fn", value_enum)]
        function: IntegrateFn,
        #[arg(long)]
        kmax: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// `csv` for the report CSV; a plain table otherwise
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Match census formulas against all 4096 symmetric rule tables.
    Rulesearch {
        /// a, b, s0 or all
        #[arg(long, default_value = "all")]
        rule: String,
        #[arg(long, default_value_t = 32)]
        horizon: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tile the snapshots of generations 0..=steps into one image.
    RenderSpacetime {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        steps: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "pgm")]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Evolve {
            rule,
            steps,
            out,
            format,
        } => commands::evolve(&rule, steps, &out, format),
        Command::Census { rule, tmax, out } => commands::census(&rule, tmax, out.as_deref()),
        Command::Eval {
            function,
            x,
            point,
            k,
            alpha,
            grid,
            out,
        } => match grid {
            Some(level) => commands::sample(level, k, &alpha, out.as_deref()),
            None => {
                let x = x.or(point);
                commands::eval(function, x.as_deref(), k, &alpha, out.as_deref())
            }
        },
        Command::Integrate {
            function,
            kmax,
            out,
            format,
        } => commands::integrate(function, kmax, format, out.as_deref()),
        Command::Rulesearch { rule, horizon, out } => {
            commands::rulesearch(&rule, horizon, out.as_deref())
        }
        Command::RenderSpacetime {
            rule,
            steps,
            out,
            format,
        } => commands::render_spacetime(&rule, steps, &out, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("symca: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
