use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fluxlat::scenario::{self, RunOptions};
use fluxlat::Error;

#[derive(Parser)]
#[command(name = "fluxlat", version, about = "Run fluxonium-lattice analysis scenarios from JSON configs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario and write its results.
    Run {
        config: PathBuf,
        /// Directory for output files (overrides the directory of `output`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write SVG plots next to the results.
        #[arg(long)]
        plot: bool,
        /// Worker threads (default: FLUXLAT_THREADS, then all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check a config against the schema without running it.
    Validate { config: PathBuf },
    /// Print the config JSON schema.
    Schema,
}

fn threads(flag: Option<usize>) -> Result<Option<usize>, Error> {
    if let Some(n) = flag {
        return Ok(Some(n));
    }
    match std::env::var("FLUXLAT_THREADS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Config(vec![format!("FLUXLAT_THREADS: not a thread count: {v:?}")])),
        Err(_) => Ok(None),
    }
}

fn main_inner(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Schema => {
            let text = serde_json::to_string_pretty(&scenario::schema())?;
            if let Err(e) = writeln!(std::io::stdout(), "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
        Command::Validate { config } => {
            let c = scenario::load(&config)?;
            println!("{}: valid {} config", config.display(), c.envelope.scenario.name());
        }
        Command::Run {
            config,
            out,
            plot,
            threads: t,
        } => {
            let c = scenario::load(&config)?;
            if let Some(n) = threads(t)? {
                if n == 0 {
                    return Err(Error::Config(vec!["--threads: must be at least 1".into()]));
                }
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .map_err(|e| Error::InvalidParams(e.to_string()))?;
            }
            let output = scenario::run(&c, &RunOptions { out_dir: out, plot })?;
            for f in &output.files {
                println!("{}", f.display());
            }
            let r = &output.result;
            if !r.failures.is_empty() {
                log::warn!("{} of {} grid points failed", r.failures.len(), r.points());
            }
            eprintln!(
                "{}: {} points in {:.2} s",
                c.envelope.scenario.name(),
                r.points(),
                r.metadata.wall_time_s.unwrap_or_default()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match main_inner(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
