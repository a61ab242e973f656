use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use superfda::catalog;
use superfda::clifford::CliffordModel;
use superfda::fda::{check_document, FdaDocument};
use superfda::report::{Report, ReportEntry};
use superfda::suite::{self, Flags};

#[derive(Parser)]
#[command(name = "superfda", version, about = "Exact checks on super-Minkowski CE algebras, brane cocycles and T-duality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks under a selector (`all`, or a dotted prefix such as `tduality.`)
    Verify {
        selector: String,
        #[arg(long, value_enum, default_value = "text")]
        report: Format,
        /// Degree cap for truncated series
        #[arg(long, default_value_t = suite::Flags::default().max_degree)]
        max_degree: i32,
        /// KU coefficient window as 0:HI
        #[arg(long, value_parser = suite::parse_window)]
        window: Option<superfda::brane_cocycles::CoefficientWindow>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print a built-in algebra or family as .fda text, or the gamma matrices
    Dump {
        #[arg(required_unless_present = "gammas", conflicts_with = "gammas")]
        name: Option<String>,
        #[arg(long)]
        gammas: bool,
    },
    /// Parse a .fda file (`-` for standard input) and check every block in it
    Check {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        report: Format,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("superfda: {msg}");
    ExitCode::from(2)
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { selector, report, max_degree, window, threads } => {
            if max_degree < 1 {
                return usage("--max-degree must be positive");
            }
            let mut flags = Flags { max_degree, threads, ..Flags::default() };
            if let Some(w) = window {
                flags.window = w;
            }
            match suite::run(&selector, &flags) {
                Ok(r) => emit(&r, report),
                Err(e) => usage(e),
            }
        }
        Command::Dump { name, gammas } => {
            if gammas {
                print!("{}", CliffordModel::shared().dump());
                return ExitCode::SUCCESS;
            }
            let name = name.expect("clap requires a name without --gammas");
            let doc = if catalog::FAMILIES.contains(&name.as_str()) { catalog::family_document(&name) } else { catalog::algebra_document(&name) };
            match doc {
                Ok(d) => {
                    print!("{}", d.to_text());
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            }
        }
        Command::Check { file, report } => {
            let mut src = String::new();
            let read = if file == "-" { std::io::stdin().read_to_string(&mut src).map(|_| ()) } else { std::fs::read_to_string(&file).map(|s| src = s) };
            if let Err(e) = read {
                return usage(format!("cannot read {file}: {e}"));
            }
            let fingerprint = CliffordModel::shared().fingerprint();
            let r = match FdaDocument::parse(&src) {
                Ok(doc) => Report::new(fingerprint, check_document(&doc, "all")),
                Err(diags) => {
                    for d in &diags {
                        eprintln!("{file}:{d}");
                    }
                    let entries = diags.iter().map(|d| ReportEntry::fail("fda.parse", d.to_string(), Some(d.lexeme.clone()))).collect();
                    Report::new(fingerprint, entries)
                }
            };
            emit(&r, report)
        }
    }
}
