use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use latbound_cli::exec::{pool, workers_from_env, Rayon, WORKERS_ENV};
use latbound_cli::{load_sweeps, output, run_sweep, CliError, Overrides};

#[derive(Parser)]
#[command(name = "latbound", version, about = "Error-probability bounds and simulation for lattice constellations over Nakagami-m block fading")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every sweep of a config file over its SNR grid.
    #[command(after_help = format!("Worker threads default to the number of CPUs; set {WORKERS_ENV} to override."))]
    Sweep {
        config: PathBuf,
        /// Seed for simulations and numeric bounds.
        #[arg(long)]
        seed: Option<u64>,
        /// Simulated frames per SNR point.
        #[arg(long)]
        frames: Option<u64>,
        /// Prefix prepended to every output path.
        #[arg(long)]
        out: Option<String>,
        /// Comma-separated targets replacing the configured ones.
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<String>>,
        /// Also write a gnuplot script per sweep.
        #[arg(long)]
        plot: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let Command::Sweep { config, seed, frames, out, targets, plot } = cli.command;
    let workers = workers_from_env().map_err(|m| CliError::config(WORKERS_ENV, m))?;
    let pool = pool(workers).map_err(|e| CliError::config(WORKERS_ENV, e.to_string()))?;
    let ov = Overrides { seed, frames, targets, out };
    let sweeps = load_sweeps(&config, &ov)?;
    pool.install(|| {
        for cfg in &sweeps {
            let r = run_sweep(cfg, &Rayon)?;
            for c in &r.columns {
                for (snr, p) in r.snr_db.iter().zip(c.sim.iter().flatten()) {
                    if p.window_suspect {
                        eprintln!(
                            "warning: {}/{} at {snr} dB: {} of {} errors decided on the window boundary",
                            r.name, c.name, p.boundary_errors, p.errors
                        );
                    }
                }
            }
            let w = output::emit(&r, &cfg.output, plot)?;
            println!("{}: {}", r.name, w.csv);
        }
        Ok(())
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.record());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
