//! Command-line front end: parse a TOML run config, apply flag overrides and
//! hand off to the sweep engine.  Exit codes: 0 success, 1 runtime error,
//! 2 config error.

use clap::{Args, Parser, Subcommand};
use ssh_ladder::sweep::{self, Mode, RunConfig};
use ssh_ladder::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ssh-ladder", version, about = "Sweep runner for M-leg SSH ladders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Run configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path; overrides the config file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; overrides the config file.
    #[arg(long)]
    workers: Option<usize>,
    /// Brillouin-zone grid size; overrides the config file.
    #[arg(long)]
    nk: Option<usize>,
    /// Reserved; every mode is fully deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Winding-number sweep.
    Invariant(CommonArgs),
    /// Alias of `invariant` for 2-D grids.
    PhaseDiagram(CommonArgs),
    /// Operational-entanglement map.
    EntanglementMap(CommonArgs),
    /// Number-entropy map.
    NumberEntropyMap(CommonArgs),
    /// Ground-state CHSH scan.
    Chsh(CommonArgs),
    /// Thermal-state CHSH scan.
    ThermalChsh(CommonArgs),
    /// Rotation-protocol fidelity traces.
    Protocol(CommonArgs),
    /// Parse and validate a config without running it.
    Validate {
        /// Run configuration (TOML).
        #[arg(long)]
        config: PathBuf,
    },
}

fn mode_of(command: &Command) -> Option<Mode> {
    match command {
        Command::Invariant(_) | Command::PhaseDiagram(_) => Some(Mode::Invariant),
        Command::EntanglementMap(_) => Some(Mode::Entanglement),
        Command::NumberEntropyMap(_) => Some(Mode::NumberEntropy),
        Command::Chsh(_) => Some(Mode::Chsh),
        Command::ThermalChsh(_) => Some(Mode::ThermalChsh),
        Command::Protocol(_) => Some(Mode::Protocol),
        Command::Validate { .. } => None,
    }
}

fn load(args: &CommonArgs, mode: Mode) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::from_path(&args.config)?;
    cfg.mode = mode;
    if let Some(out) = &args.out {
        cfg.output = Some(out.clone());
    }
    if let Some(w) = args.workers {
        cfg.workers = Some(w);
    }
    if let Some(nk) = args.nk {
        cfg.n_k = nk;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn exit_code(err: &Error) -> ExitCode {
    // config problems surface as InvalidParams; everything else is runtime
    match err {
        Error::InvalidParams(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Command::Validate { config } = &cli.command {
        return match RunConfig::from_path(config) {
            Ok(cfg) => {
                let resolved = toml::to_string_pretty(&cfg.resolved())
                    .unwrap_or_else(|e| format!("serialization error: {e}"));
                println!("OK");
                print!("{resolved}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }

    let mode = mode_of(&cli.command).expect("validate handled above");
    let args = match &cli.command {
        Command::Invariant(a)
        | Command::PhaseDiagram(a)
        | Command::EntanglementMap(a)
        | Command::NumberEntropyMap(a)
        | Command::Chsh(a)
        | Command::ThermalChsh(a)
        | Command::Protocol(a) => a,
        Command::Validate { .. } => unreachable!(),
    };

    let cfg = match load(args, mode) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match sweep::run(&cfg) {
        Ok(path) => {
            println!("wrote {}", path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
