use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use asymclone::analysis::Mode;
use asymclone::cli::{self, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "asymclone",
    version,
    about = "Asymmetric 1->2 qubit cloning machine: broadcast and disentangle a two-qubit entangled state in one evolution"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute both p thresholds and compare them with their closed forms
    Thresholds,
    /// Classify a single (p, alpha^2) point
    Report {
        /// Cloner asymmetry parameter in [0, 1]
        #[arg(long)]
        p: f64,
        /// Squared amplitude of |00> in the input state, in [0, 1]
        #[arg(long = "alpha-sq")]
        alpha_sq: f64,
        /// Clone one qubit or both
        #[arg(long, value_enum, default_value_t = ModeArg::TwoSide)]
        mode: ModeArg,
    },
    /// Sweep a (p, alpha^2) grid and emit one row per cell
    Sweep {
        #[arg(long, value_enum, default_value_t = ModeArg::TwoSide)]
        mode: ModeArg,
        #[arg(long = "p-min", default_value_t = 0.0)]
        p_min: f64,
        #[arg(long = "p-max", default_value_t = 1.0)]
        p_max: f64,
        #[arg(long = "p-steps", default_value_t = 101)]
        p_steps: usize,
        #[arg(long = "alpha-sq-min", default_value_t = 0.0)]
        alpha_sq_min: f64,
        #[arg(long = "alpha-sq-max", default_value_t = 1.0)]
        alpha_sq_max: f64,
        #[arg(long = "alpha-sq-steps", default_value_t = 21)]
        alpha_sq_steps: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Output file; "-" writes to standard output
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Run the full consistency suite and exit nonzero on any failure
    Verify,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ModeArg {
    #[value(name = "one-side")]
    OneSide,
    #[value(name = "two-side")]
    TwoSide,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::OneSide => Mode::OneSide,
            ModeArg::TwoSide => Mode::TwoSide,
        }
    }
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

fn run(command: Command, out: &mut dyn Write) -> asymclone::Result<i32> {
    match command {
        Command::Thresholds => cli::cmd_thresholds(out),
        Command::Report { p, alpha_sq, mode } => cli::cmd_report(p, alpha_sq, mode.into(), out),
        Command::Sweep {
            mode,
            p_min,
            p_max,
            p_steps,
            alpha_sq_min,
            alpha_sq_max,
            alpha_sq_steps,
            format,
            out: out_path,
        } => {
            let config = RunConfig {
                mode: mode.into(),
                p_min,
                p_max,
                p_steps,
                alpha_sq_min,
                alpha_sq_max,
                alpha_sq_steps,
                format: format.into(),
                out: if out_path == "-" {
                    None
                } else {
                    Some(PathBuf::from(out_path))
                },
            };
            cli::cmd_sweep(&config, out)
        }
        Command::Verify => cli::cmd_verify(out),
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(args.command, &mut stdout) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(cli::exit_code_for(&err) as u8)
        }
    }
}
