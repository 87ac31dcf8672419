use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use jcm_cli::{run::run, Mode, RunConfig};

/// Jaynes-Cummings entanglement thermodynamics batch runs.
#[derive(Parser)]
#[command(name = "jcm-thermolab", version)]
struct Cli {
    #[arg(value_enum)]
    mode: Mode,

    /// JSON run configuration
    #[arg(long)]
    config: PathBuf,

    /// Overrides the configuration's output_path
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which is reserved for oracle failures
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = RunConfig::from_path(&cli.config).and_then(|mut cfg| {
        if let Some(out) = cli.output {
            cfg.output_path = Some(out);
        }
        run(cli.mode, &cfg)
    });
    match result {
        Ok(summary) => {
            for line in summary {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
