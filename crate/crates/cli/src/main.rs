use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tsqml_cli::{output_dir, parse_config, run, CliError};
use tsqml_core::circuits::{catalog_listing, Encoding};

/// Teacher-student experiments with simulated quantum classifiers.
#[derive(Debug, Parser)]
#[command(name = "tsqml", version)]
struct Args {
    /// Experiment config file.
    #[arg(long, required_unless_present = "list_architectures")]
    config: Option<PathBuf>,
    /// Output directory; overrides `output` in the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the number of seeds.
    #[arg(long)]
    seeds: Option<usize>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long)]
    threads: Option<usize>,
    /// Print the gate listing of every architecture and exit.
    #[arg(long)]
    list_architectures: bool,
    /// Encoding used by --list-architectures (`rx` or `roth`).
    #[arg(long, default_value = "rx")]
    encoding: Encoding,
}

fn main_inner(args: Args) -> Result<(), CliError> {
    if args.list_architectures {
        print!("{}", catalog_listing(args.encoding));
        return Ok(());
    }
    let path = args.config.expect("clap enforces --config");
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io {
        path: path.clone(),
        source: e,
    })?;
    let mut cfg = parse_config(&text)?;
    if let Some(n) = args.seeds {
        cfg.n_seeds = n;
    }
    let out = output_dir(&cfg, args.out)?;
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("global pool is configured once");
    }
    let summary = run(&cfg, &out)?;
    eprintln!(
        "wrote {} ({})",
        out.display(),
        summary["kind"].as_str().unwrap_or_default()
    );
    Ok(())
}

fn main() -> ExitCode {
    match main_inner(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
