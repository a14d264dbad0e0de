use std::path::PathBuf;
use std::process::ExitCode;

use cavity_metrology_cli::{exit, format_report, protocol_json, run_check, run_protocol, run_sweep, CliError, RunConfig};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "simulate", version, about = "Cavity-coupled qubit metrology simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the protocol once and print the result as JSON.
    Protocol {
        #[arg(long)]
        config: PathBuf,
    },
    /// Sweep one parameter and write a CSV table.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Report the coupling-regime flags; exit 1 if any fails.
    Check {
        #[arg(long)]
        config: PathBuf,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Protocol { config } => {
            let rec = run_protocol(&RunConfig::load(&config)?)?;
            println!("{}", protocol_json(&rec));
            Ok(exit::OK)
        }
        Command::Sweep { config, out } => {
            run_sweep(&RunConfig::load(&config)?)?.write_csv(&out)?;
            Ok(exit::OK)
        }
        Command::Check { config } => {
            let report = run_check(&RunConfig::load(&config)?)?;
            print!("{}", format_report(&report));
            Ok(if report.all_pass() { exit::OK } else { exit::REGIME_FLAG })
        }
    }
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
