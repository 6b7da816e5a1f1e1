use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hermsym_cli::config::{load_config, Format};
use hermsym_cli::output::emit;
use hermsym_cli::run::{run, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK};

#[derive(Parser)]
#[command(
    name = "hermsym",
    version,
    about = "Scattering matrices of star graphs with self-adjoint vertex conditions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Results file; overrides `outputs.path`. Standard output if neither is set.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides `outputs.format`.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Suppress the report.
        #[arg(long)]
        quiet: bool,
    },
    /// List preset vertex conditions and their unitary matrices.
    Presets {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
    },
    /// Validate a config file without running it.
    Check {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Presets { n, alpha } => match hermsym_cli::describe_presets(n, alpha) {
            Ok(text) => {
                print!("{text}");
                exit(EXIT_OK)
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit(EXIT_CONFIG)
            }
        },
        Command::Check { config } => match load_config(&config.to_string_lossy()) {
            Ok(c) => {
                println!("config ok");
                println!("{}", c.echo());
                exit(EXIT_OK)
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit(EXIT_CONFIG)
            }
        },
        Command::Run {
            config,
            out,
            format,
            quiet,
        } => {
            let cfg = match load_config(&config.to_string_lossy()) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit(EXIT_CONFIG);
                }
            };
            let outcome = match run(&cfg) {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit(EXIT_NUMERICAL);
                }
            };
            let format = match format {
                Some(FormatArg::Csv) => Format::Csv,
                Some(FormatArg::Json) => Format::Json,
                None => cfg.file.outputs.format,
            };
            let path = out
                .map(|p| p.to_string_lossy().into_owned())
                .or_else(|| cfg.file.outputs.path.clone());
            if let Err(e) = emit(
                &outcome.rows,
                cfg.bc.n(),
                cfg.file.outputs.include_m_matrices,
                format,
                path.as_deref(),
            ) {
                eprintln!("error: {e}");
                return exit(EXIT_NUMERICAL);
            }
            let report = outcome.report.render(true);
            if let Some(p) = &path {
                let report_path = format!("{p}.report.txt");
                if let Err(e) = std::fs::write(&report_path, &report) {
                    eprintln!("error: cannot write {report_path}: {e}");
                    return exit(EXIT_NUMERICAL);
                }
            }
            if !quiet {
                eprint!("{report}");
            }
            let code = outcome.report.exit_code();
            if let Some(d) = outcome.report.diagnostic() {
                eprintln!("error: {d}");
            }
            exit(code)
        }
    }
}
