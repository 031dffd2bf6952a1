//! `sphertest`: power envelopes, critical values and sphericity tests from
//! the command line.

mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::Ctx;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::Provenance;

#[derive(Parser)]
#[command(name = "sphertest", version, about = "Sphericity tests against spiked alternatives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    cfg: RunConfig,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Asymptotic power envelopes of the two likelihood ratio tests.
    Envelope,
    /// Power curves of the LR, WAP and classical tests (CSV per figure).
    PowerFigures,
    /// Runs tests on eigenvalue files or simulated spectra (JSON lines).
    Test,
    /// Monte Carlo critical value of an exact likelihood ratio test.
    McCritical,
    /// Simulates the supremum of the limiting log-LR process.
    SupSim,
    /// Median exact log-LR above the phase transition at growing n.
    DecayProbe,
    /// Writes sample eigenvalues from a spiked model.
    Simulate,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Envelope => "envelope",
            Command::PowerFigures => "power-figures",
            Command::Test => "test",
            Command::McCritical => "mc-critical",
            Command::SupSim => "sup-sim",
            Command::DecayProbe => "decay-probe",
            Command::Simulate => "simulate",
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = cli.cfg;
    if let Some(path) = cfg.config.clone() {
        let text = std::fs::read_to_string(&path)?;
        let file: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        cfg = cfg.over(file);
    }
    if let Some(verb) = &cfg.command {
        if verb != cli.command.name() {
            return Err(CliError::Config(format!(
                "config file is for {verb:?}, not {:?}",
                cli.command.name()
            )));
        }
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build_global()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let args: Vec<String> = std::env::args().collect();
    let prov = Provenance::new(&args, cfg.seed(), cfg.scale());
    let ctx = Ctx { cfg, prov };
    match cli.command {
        Command::Envelope => commands::envelope_cmd(&ctx),
        Command::PowerFigures => commands::power_figures_cmd(&ctx),
        Command::Test => commands::test_cmd(&ctx),
        Command::McCritical => commands::mc_critical_cmd(&ctx),
        Command::SupSim => commands::sup_sim_cmd(&ctx),
        Command::DecayProbe => commands::decay_probe_cmd(&ctx),
        Command::Simulate => commands::simulate_cmd(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sphertest: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
