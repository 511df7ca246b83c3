use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use valext::run::{Base, Format, RunConfig, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "valext", version, about = "Extensions of a discrete valuation to K[x]/(f)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the extensions for one polynomial.
    Extend {
        #[arg(long, value_enum, default_value = "q")]
        base: Base,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long, env = "VALEXT_SEED", default_value_t = 0)]
        seed: u64,
        /// Maximum number of augmentations along one branch (default 16·deg f).
        #[arg(long = "max-aug")]
        max_aug: Option<usize>,
        #[arg(long = "no-invariants")]
        no_invariants: bool,
    },
    /// Run a line-delimited JSON corpus and compare leaf multisets.
    Corpus { path: PathBuf },
}

fn emit(stdout: &str, stderr: &str, code: i32) -> ExitCode {
    let _ = std::io::stdout().write_all(stdout.as_bytes());
    let _ = std::io::stderr().write_all(stderr.as_bytes());
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match cli.command {
        Command::Extend { base, p, poly, format, seed, max_aug, no_invariants } => {
            let config = RunConfig {
                format,
                seed,
                max_augmentations: max_aug,
                check_invariants: !no_invariants,
                parallel: true,
                ..RunConfig::new(base, p, poly)
            };
            let out = valext::run(&config);
            emit(&out.stdout, &out.stderr, out.code)
        }
        Command::Corpus { path } => match valext::run_corpus(&path) {
            Ok(summary) => emit(&summary.render(), "", summary.exit_code()),
            Err(e) => emit("", &format!("error: {e}\n"), EXIT_INPUT),
        },
    }
}
