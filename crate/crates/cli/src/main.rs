use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tracegenus_cli::cache::{Cache, CACHE_ENV};
use tracegenus_cli::commands::{run_analyze, run_compare, run_scan, Format, Outcome, EXIT_INPUT};
use tracegenus_cli::corpus::read_corpus;

#[derive(Parser)]
#[command(name = "tracegenus", version, about = "Integral trace forms and spinor genera of number fields")]
struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "human")]
    json: bool,
    /// Emit a human-readable table.
    #[arg(long, global = true)]
    human: bool,
    /// Neither read nor write the analysis cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cache directory.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the field defined by a monic irreducible polynomial.
    Analyze {
        /// e.g. "x^4 - 41*x^2 + 144" or "144,0,-41,0,1"
        poly: String,
    },
    /// Decide whether two integral trace forms share a spinor genus.
    /// Exit status: 0 same, 1 different, 4 not applicable.
    Compare { poly_a: String, poly_b: String },
    /// Analyze every record of a `label,polynomial` CSV corpus.
    Scan {
        corpus: PathBuf,
        /// Cross-validate Gamma fields sharing discriminant and signature.
        #[arg(long)]
        pairs: bool,
    },
}

fn open_cache(cli: &Cli) -> Cache {
    if cli.no_cache {
        return Cache::disabled();
    }
    match cli.cache_dir.clone().or_else(Cache::default_dir) {
        Some(dir) => Cache::open(&dir),
        None => Cache::disabled(),
    }
}

fn emit(o: Outcome) -> ExitCode {
    let _ = std::io::stderr().write_all(o.stderr.as_bytes());
    let _ = std::io::stdout().write_all(o.stdout.as_bytes());
    ExitCode::from(o.code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: could not configure {n} workers: {e}");
        }
    }
    let format = if cli.human { Format::Human } else { Format::Json };
    let outcome = match &cli.command {
        Command::Analyze { poly } => run_analyze(poly, &open_cache(&cli), format),
        Command::Compare { poly_a, poly_b } => run_compare(poly_a, poly_b, format),
        Command::Scan { corpus, pairs } => {
            let records = File::open(corpus)
                .map_err(|e| e.to_string())
                .and_then(|f| read_corpus(f).map_err(|e| e.to_string()));
            match records {
                Ok(records) => run_scan(&records, &open_cache(&cli), *pairs, format),
                Err(e) => Outcome {
                    stdout: String::new(),
                    stderr: format!("error: cannot read {}: {e}\n", corpus.display()),
                    code: EXIT_INPUT,
                },
            }
        }
    };
    emit(outcome)
}
