use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qsignals::scenario::{
    format_report, parse_scenario_with, run_pipeline, ParseOptions, ReportFormat, ScenarioError,
};

const EXIT_VALIDATION: u8 = 1;
const EXIT_RUNTIME: u8 = 2;
const EXIT_USAGE: u8 = 64;

const BUNDLED: [&str; 2] = ["binary_channel.json", "cnot_entangle.json"];

#[derive(Parser)]
#[command(name = "qsignals", version, about = "Run density-matrix scenario pipelines")]
struct Cli {
    /// Comparison tolerance; overrides the scenario's setting.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Fractional digits in human reports; overrides the scenario's setting.
    #[arg(long, global = true)]
    precision: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check a scenario without running it.
    Validate { file: PathBuf },
    /// Run a scenario and print its report.
    Run { file: PathBuf },
    /// Print the paths of the bundled scenarios.
    Examples,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let options = ParseOptions {
        tolerance: cli.tolerance,
        precision: cli.precision,
    };
    let format = match cli.format {
        Format::Human => ReportFormat::Human,
        Format::Machine => ReportFormat::Machine,
    };
    match cli.command {
        Command::Examples => {
            let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
            for name in BUNDLED {
                println!("{}", dir.join(name).display());
            }
            ExitCode::SUCCESS
        }
        Command::Validate { file } => {
            let bytes = match read(&file) {
                Ok(b) => b,
                Err(code) => return code,
            };
            match parse_scenario_with(&bytes, options) {
                Ok(doc) => {
                    match format {
                        ReportFormat::Human => println!(
                            "ok: {} states, {} channels, {} observables, {} steps",
                            doc.states.len(),
                            doc.channels.len(),
                            doc.observables.len(),
                            doc.pipeline.len()
                        ),
                        ReportFormat::Machine => println!(
                            "{}",
                            serde_json::json!({
                                "valid": true,
                                "states": doc.states.len(),
                                "channels": doc.channels.len(),
                                "observables": doc.observables.len(),
                                "steps": doc.pipeline.len(),
                            })
                        ),
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e),
            }
        }
        Command::Run { file } => {
            let bytes = match read(&file) {
                Ok(b) => b,
                Err(code) => return code,
            };
            let report = parse_scenario_with(&bytes, options).and_then(|doc| run_pipeline(&doc));
            match report {
                Ok(report) => {
                    use std::io::Write;
                    let mut out = std::io::stdout().lock();
                    let _ = out.write_all(&format_report(&report, format));
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e),
            }
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, ExitCode> {
    std::fs::read(path).map_err(|e| {
        eprintln!("error[usage]: cannot read {}: {e}", path.display());
        ExitCode::from(EXIT_USAGE)
    })
}

fn fail(e: &ScenarioError) -> ExitCode {
    eprintln!("error[{}]: {e}", e.category());
    ExitCode::from(if e.is_runtime() {
        EXIT_RUNTIME
    } else {
        EXIT_VALIDATION
    })
}
