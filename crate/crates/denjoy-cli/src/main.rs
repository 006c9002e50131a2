//! `denjoy` — build circle actions from specification files and compute
//! their dynamical and operator-algebraic invariants, with certified
//! arithmetic and reproducible machine-readable reports.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};

use denjoy_cli::commands;
use denjoy_cli::report::Report;
use denjoy_cli::spec_file::{ActionSpecDocument, ResourceOverrides};

#[derive(Parser)]
#[command(
    name = "denjoy",
    about = "Exact invariants of blown-up rotation actions on the circle",
    version
)]
struct Cli {
    /// Working precision in bits for certified evaluations.
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    /// Refinement ceiling in bits; beyond it queries report Undecided.
    #[arg(long, global = true)]
    max_precision_bits: Option<u32>,
    /// Cap on enumerated lattice points in geometric realizations.
    #[arg(long, global = true)]
    enum_budget: Option<u64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock timing in the (non-canonical) output.
    #[arg(long, global = true, action = ArgAction::SetTrue)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the action: finite orbit, minimal, or Denjoy.
    Classify {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Exact rotation number of a group element, optionally with an
    /// iterated-lift estimate.
    Rho {
        #[arg(long)]
        spec: PathBuf,
        /// Group element, e.g. "1,0".
        #[arg(long)]
        g: String,
        /// Also run an n-step lift estimate.
        #[arg(long)]
        estimate: Option<u64>,
    },
    /// Apply a group element to a symbolic point.
    Act {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        g: String,
        /// Point, e.g. "cantor:1/4", "gap:0:1,-2:1/2", "geom:3/10".
        #[arg(long)]
        point: String,
    },
    /// Invariant measure of an arc (from, to] or (from, g.from].
    Measure {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: Option<String>,
        #[arg(long)]
        g: Option<String>,
    },
    /// Trace of a finitely supported element; optionally test membership
    /// in the trace ideal.
    Trace {
        #[arg(long)]
        spec: PathBuf,
        /// Term "VECTOR|const:EXPR", "VECTOR|pl:CODE=VAL,...",
        /// "VECTOR|tent:ORBIT:VECTOR[:PEAK]"; repeatable.
        #[arg(long)]
        term: Vec<String>,
        #[arg(long, action = ArgAction::SetTrue)]
        ideal_test: bool,
    },
    /// Ordered K-theory with labelled bases, index maps and trace pairing.
    Ktheory {
        #[arg(long, conflicts_with = "d")]
        spec: Option<PathBuf>,
        #[arg(long, requires = "gamma")]
        d: Option<usize>,
        /// Angle expression; repeat d times with --d.
        #[arg(long)]
        gamma: Vec<String>,
        /// Pair a K0 class: "{1,2}=3;{}=1"; repeatable.
        #[arg(long)]
        pair: Vec<String>,
    },
    /// Primitive ideal space queries.
    Prim {
        #[arg(long, conflicts_with = "k")]
        spec: Option<PathBuf>,
        /// Orbit count ("2" or "inf") when no spec file is given.
        #[arg(long)]
        k: Option<String>,
        /// Subset whose closure to compute.
        #[arg(long)]
        closure: Option<String>,
        /// Open subset whose ideal to describe.
        #[arg(long)]
        ideal_of: Option<String>,
        /// Describe the unique maximal ideal.
        #[arg(long, action = ArgAction::SetTrue)]
        maximal: bool,
    },
    /// Re-canonicalize a stored report.
    Export {
        /// Stored report (JSON).
        #[arg(long)]
        input: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn read_spec(path: &PathBuf) -> Result<ActionSpecDocument, denjoy_core::Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| denjoy_core::Error::Invalid(format!("{}: {e}", path.display())))?;
    ActionSpecDocument::parse(&text)
}

fn run(cli: &Cli) -> Result<Report, denjoy_core::Error> {
    let overrides = ResourceOverrides {
        precision_bits: cli.precision_bits,
        max_precision_bits: cli.max_precision_bits,
        enum_budget: cli.enum_budget,
    };
    match &cli.command {
        Command::Classify { spec } => commands::cmd_classify(&read_spec(spec)?, &overrides),
        Command::Rho { spec, g, estimate } => {
            commands::cmd_rho(&read_spec(spec)?, g, *estimate, &overrides)
        }
        Command::Act { spec, g, point } => {
            commands::cmd_act(&read_spec(spec)?, g, point, &overrides)
        }
        Command::Measure { spec, from, to, g } => commands::cmd_measure(
            &read_spec(spec)?,
            from,
            to.as_deref(),
            g.as_deref(),
            &overrides,
        ),
        Command::Trace {
            spec,
            term,
            ideal_test,
        } => commands::cmd_trace(&read_spec(spec)?, term, *ideal_test, &overrides),
        Command::Ktheory {
            spec,
            d,
            gamma,
            pair,
        } => {
            let doc = spec.as_ref().map(read_spec).transpose()?;
            commands::cmd_ktheory(doc.as_ref(), *d, gamma, pair, &overrides)
        }
        Command::Prim {
            spec,
            k,
            closure,
            ideal_of,
            maximal,
        } => {
            let doc = spec.as_ref().map(read_spec).transpose()?;
            commands::cmd_prim(
                doc.as_ref(),
                k.as_deref(),
                closure.as_deref(),
                ideal_of.as_deref(),
                *maximal,
            )
        }
        Command::Export { input, output } => {
            let bytes = std::fs::read(input)
                .map_err(|e| denjoy_core::Error::Invalid(format!("{}: {e}", input.display())))?;
            let (report, canonical) = commands::cmd_export(&bytes)?;
            if let Some(path) = output {
                std::fs::write(path, &canonical).map_err(|e| {
                    denjoy_core::Error::Invalid(format!("{}: {e}", path.display()))
                })?;
            } else {
                std::io::stdout()
                    .write_all(&canonical)
                    .map_err(|e| denjoy_core::Error::Invalid(format!("stdout: {e}")))?;
            }
            return Ok(report);
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            if matches!(cli.command, Command::Export { .. }) {
                // Export already wrote its canonical bytes.
                return ExitCode::SUCCESS;
            }
            match cli.format {
                Format::Json => {
                    if cli.timing {
                        report.timing_ms = Some(start.elapsed().as_millis() as u64);
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&report).expect("report serializes")
                        );
                    } else {
                        let bytes = report.canonical_bytes();
                        std::io::stdout().write_all(&bytes).expect("stdout");
                    }
                }
                Format::Table => {
                    if cli.timing {
                        report.timing_ms = Some(start.elapsed().as_millis() as u64);
                    }
                    print!("{}", report.render_table());
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(denjoy_cli::exit_code_for(&e) as u8)
        }
    }
}
