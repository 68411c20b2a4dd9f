use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hinfty::suite::{manifest_text, run_suite_timed, Format, SuiteConfig};

#[derive(Parser)]
#[command(name = "hinfty", version, about = "Verification suites for H-infinity modules, pseudoalgebras and operads")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite, `all`, or a single check id and write a report.
    Check {
        suite: String,
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long = "module")]
        modules: Vec<PathBuf>,
        #[arg(long, default_value_t = 3)]
        trunc: usize,
        #[arg(long, default_value_t = 4)]
        arity: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
        /// Print the wall time of each check to standard error.
        #[arg(long)]
        timings: bool,
    },
    /// Print every check id with the statement it verifies.
    Manifest,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::Manifest => {
            print!("{}", manifest_text());
            ExitCode::SUCCESS
        }
        Command::Check { suite, algebra, modules, trunc, arity, seed, out, format, timings } => {
            let cfg = SuiteConfig::load_selector(&suite, &algebra, &modules, trunc, arity, seed);
            let cfg = match cfg {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("hinfty: {e}");
                    return ExitCode::from(2);
                }
            };
            let (report, times) = run_suite_timed(&cfg);
            if timings {
                for (id, t) in times {
                    eprintln!("{:>9.3}s  {id}", t.as_secs_f64());
                }
            }
            let format = match format {
                OutFormat::Json => Format::Json,
                OutFormat::Text => Format::Text,
            };
            match &out {
                Some(path) => {
                    if let Err(e) = report.export(path, format) {
                        eprintln!("hinfty: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => match format {
                    Format::Json => print!("{}", report.to_json()),
                    Format::Text => print!("{}", report.to_text()),
                },
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
