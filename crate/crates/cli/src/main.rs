use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lgcy::cache::Cache;
use lgcy::commands::{self, WeierstrassKind};
use lgcy::output::render;
use lgcy::record::Document;
use lgcy::suites::Suite;
use lgcy::{CliError, Format, RunConfig};

/// Exact quasi-modular computations for the elliptic curve and the Fermat
/// cubic: invariant tables, verification suites and JSON/CSV output.
#[derive(Parser)]
#[command(name = "lgcy", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Truncation order of q- and s-series.
    #[arg(long, global = true, default_value_t = 24)]
    order: usize,
    /// Order in z of prime-form expansions.
    #[arg(long, global = true, default_value_t = 14)]
    z_order: u32,
    /// Bound on 4m + 6n for the Weierstrass tables (default: what the command needs).
    #[arg(long, global = true)]
    b_bound: Option<u32>,
    /// Extra q-coefficients checked when recognizing quasi-modular forms.
    #[arg(long, global = true, default_value_t = 10)]
    margin: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cache directory (default: lgcy-cache under the system temp directory).
    #[arg(long, global = true, env = "CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Stationary Gromov-Witten invariants of the elliptic curve.
    #[command(subcommand)]
    Gw(GwCommand),
    /// FJRW invariants of the Fermat cubic.
    #[command(subcommand)]
    Fjrw(FjrwCommand),
    /// Run a verification suite; exits with status 1 if any check fails.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Dump coefficient tables.
    #[command(subcommand)]
    Tables(TableCommand),
}

#[derive(Subcommand)]
enum GwCommand {
    /// <<omega psi^(2g-2)>>_g as a polynomial in E2, E4, E6.
    Onepoint {
        #[arg(long)]
        genus: u32,
        #[arg(long, allow_hyphen_values = true)]
        psi: Option<i64>,
        /// Also print the q-expansion.
        #[arg(long)]
        q_series: bool,
    },
    /// Stationary n-point function.
    Npoint {
        #[arg(long)]
        legs: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        psi: Vec<i64>,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        q_series: bool,
    },
}

#[derive(Subcommand)]
enum FjrwCommand {
    /// Genus-one series and the primary invariants Theta_(1,n) for n <= max.
    Invariants {
        #[arg(long, default_value_t = 12)]
        max: usize,
    },
    /// <<phi psi^(2g-2)>>_(g,1) as a series in s.
    Onepoint {
        #[arg(long)]
        genus: u32,
    },
}

#[derive(Subcommand)]
enum TableCommand {
    /// Weierstrass sigma coefficients a(m, n).
    A {
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Coefficients b(m, n) of 1/sigma.
    B {
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Eisenstein series and their expressions in E4, E6.
    Eisenstein {
        #[arg(long, default_value_t = 12)]
        max_weight: u32,
    },
}

fn config(g: &Global) -> RunConfig {
    let cache_dir = if g.no_cache {
        None
    } else {
        Some(g.cache_dir.clone().unwrap_or_else(|| std::env::temp_dir().join("lgcy-cache")))
    };
    RunConfig {
        order: g.order,
        z_order: g.z_order,
        b_bound: g.b_bound,
        margin: g.margin,
        cache_dir,
        format: g.format,
    }
}

fn execute(cmd: &Command, cfg: &RunConfig) -> Result<Document, CliError> {
    let cache = Cache::new(cfg.cache_dir.clone());
    let default_bound = || cfg.b_bound.unwrap_or(cfg.z_order);
    match cmd {
        Command::Gw(GwCommand::Onepoint { genus, psi, q_series }) => {
            commands::gw_onepoint(cfg, &cache, *genus, *psi, *q_series)
        }
        Command::Gw(GwCommand::Npoint { legs, psi, connected, q_series }) => {
            commands::gw_npoint(cfg, &cache, *legs, psi, *connected, *q_series)
        }
        Command::Fjrw(FjrwCommand::Invariants { max }) => commands::fjrw_invariants(cfg, *max),
        Command::Fjrw(FjrwCommand::Onepoint { genus }) => commands::fjrw_onepoint(cfg, *genus),
        Command::Verify { suite } => commands::verify(cfg, *suite),
        Command::Tables(TableCommand::A { bound }) => {
            commands::weierstrass_table(&cache, WeierstrassKind::A, bound.unwrap_or_else(default_bound))
        }
        Command::Tables(TableCommand::B { bound }) => {
            commands::weierstrass_table(&cache, WeierstrassKind::B, bound.unwrap_or_else(default_bound))
        }
        Command::Tables(TableCommand::Eisenstein { max_weight }) => {
            commands::eisenstein_table(cfg, &cache, *max_weight)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = config(&cli.global);
    let doc = execute(&cli.command, &cfg)?;
    let text = render(&doc, cfg.format)?;
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    match doc.failures() {
        0 => Ok(()),
        n => Err(CliError::ChecksFailed(n)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lgcy: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
