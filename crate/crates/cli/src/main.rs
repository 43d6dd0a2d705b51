use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Parser, Subcommand, ValueEnum};
use omegaq_core::arith::{export_tables, import_tables, MemoTables};
use omegaq_core::bundle::{SeriesBundle, SeriesKind};
use omegaq_core::verify::{run_check, CHECKS};

const SAFETY_CAP: usize = 12;
const CACHE_FILE: &str = "memo-tables.json";

#[derive(Parser)]
#[command(name = "omegaq", version, about = "Exact computation and verification of the series Ω and Ω_q")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Allow orders above the safety cap.
    #[arg(long, global = true)]
    force_large: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a series and write it as JSON or text.
    Compute {
        #[arg(long, value_parser = PossibleValuesParser::new(SeriesKind::ALL.map(SeriesKind::name)))]
        series: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        order: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Computation route, e.g. `forks` for omega-q or `explicit` for dend-omega-q.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run one of the registered checks; exits 1 if it fails.
    Verify {
        #[arg(long, value_parser = PossibleValuesParser::new(CHECKS.map(|(name, _)| name)))]
        check: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        order: Option<u64>,
    },
    /// List series kinds, their modes, and the registered checks.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn load_cache(dir: &Path) {
    let Ok(raw) = fs::read_to_string(dir.join(CACHE_FILE)) else { return };
    match serde_json::from_str::<MemoTables>(&raw).map_err(|e| e.to_string()).and_then(|t| {
        import_tables(&t).map_err(|e| e.to_string())
    }) {
        Ok(()) => {}
        Err(e) => eprintln!("warning: ignoring cache in {}: {e}", dir.display()),
    }
}

fn save_cache(dir: &Path) {
    let json = serde_json::to_string(&export_tables()).expect("tables serialize");
    if let Err(e) = fs::create_dir_all(dir).and_then(|_| fs::write(dir.join(CACHE_FILE), json)) {
        eprintln!("warning: could not write cache in {}: {e}", dir.display());
    }
}

fn emit(text: &str, output: Option<&Path>) -> io::Result<()> {
    match output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let requested = match &cli.command {
        Command::Compute { order, .. } => Some(*order as usize),
        Command::Verify { order, .. } => order.map(|o| o as usize),
        Command::List => None,
    };
    if let Some(order) = requested {
        if order > SAFETY_CAP && !cli.force_large {
            return usage_error(format!("order {order} exceeds the safety cap {SAFETY_CAP}; pass --force-large"));
        }
    }
    let cache = std::env::var_os("OMEGAQ_CACHE_DIR").map(PathBuf::from);
    if let Some(dir) = &cache {
        load_cache(dir);
    }
    let code = match cli.command {
        Command::Compute { series, order, format, mode, output } => {
            let kind: SeriesKind = series.parse().expect("validated by clap");
            match SeriesBundle::compute(kind, order as usize, mode.as_deref()) {
                Ok(bundle) => {
                    let text = match format {
                        Format::Json => bundle.to_json() + "\n",
                        Format::Text => bundle.to_text(),
                    };
                    match emit(&text, output.as_deref()) {
                        Ok(()) => ExitCode::SUCCESS,
                        Err(e) => {
                            eprintln!("error: {e}");
                            ExitCode::FAILURE
                        }
                    }
                }
                Err(e @ omegaq_core::bundle::BundleError::UnknownMode { .. }) => usage_error(e),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Command::Verify { check, order } => match run_check(&check, order.map(|o| o as usize)) {
            Ok(report) => {
                print!("{report}");
                if report.passed {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                }
            }
            Err(e) => usage_error(e),
        },
        Command::List => {
            println!("series:");
            for k in SeriesKind::ALL {
                println!("  {:<14} modes: {}", k.name(), k.modes().join(", "));
            }
            println!("checks:");
            for (name, order) in CHECKS {
                println!("  {name:<18} default order {order}");
            }
            ExitCode::SUCCESS
        }
    };
    if let Some(dir) = &cache {
        save_cache(dir);
    }
    code
}
