use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use empathic_core::af::Semantics;
use empathic_core::agent::Variant;
use empathic_core::protocol::{run_session, OutcomeStatus, ResolutionSemantics, Trace};
use empathic_core::scenario::load_scenario;

use crate::{parse_framework, render_extensions};

pub const EXIT_AGREED: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_CANCELLED: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "empathic",
    version,
    about = "Empathic agent negotiation engine and argumentation solver"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a negotiation scenario and write its trace.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        /// Decision variant; overrides the scenario's config.
        #[arg(long)]
        variant: Option<Variant>,
        /// Resolution semantics: maximal_ideal, grounded or preferred_intersection.
        #[arg(long)]
        semantics: Option<ResolutionSemantics>,
        #[arg(long)]
        max_rounds: Option<u32>,
        /// Trace destination; defaults to `<scenario stem>.trace.jsonl` in the working directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the extensions of a framework file, one per line.
    Solve {
        #[arg(long)]
        af: PathBuf,
        /// complete, preferred, grounded or maximal_ideal.
        #[arg(long)]
        semantics: String,
    },
    /// Serve POST /solve and GET /health.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

/// Parses arguments and runs the command. Usage errors exit with 1, like
/// every other failure; `--help` and `--version` exit with 0.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_AGREED });
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

pub fn execute(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Run {
            scenario,
            variant,
            semantics,
            max_rounds,
            out,
        } => {
            let loaded = load_scenario(&scenario)?;
            let mut config = loaded.config;
            if let Some(v) = variant {
                config.variant = v;
            }
            if let Some(s) = semantics {
                config.semantics = s;
            }
            if let Some(r) = max_rounds {
                config.max_rounds = r;
            }
            let trace = run_session(&loaded, config)?;
            let out = out.unwrap_or_else(|| default_trace_path(&scenario));
            std::fs::write(&out, trace.to_jsonl()).with_context(|| format!("cannot write {}", out.display()))?;
            print_summary(&trace, &out);
            Ok(match trace.outcome() {
                Some((OutcomeStatus::Agreed, ..)) => EXIT_AGREED,
                _ => EXIT_CANCELLED,
            })
        }
        Command::Solve { af, semantics } => {
            let semantics: Semantics = semantics.parse()?;
            let text = std::fs::read_to_string(&af).with_context(|| format!("cannot read {}", af.display()))?;
            let framework =
                parse_framework(&text).with_context(|| format!("malformed framework file {}", af.display()))?;
            for line in render_extensions(&framework, semantics) {
                println!("{line}");
            }
            Ok(EXIT_AGREED)
        }
        Command::Serve { port, host } => {
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(crate::service::serve(&host, port))?;
            Ok(EXIT_AGREED)
        }
    }
}

pub fn default_trace_path(scenario: &Path) -> PathBuf {
    let stem = scenario
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "session".into());
    PathBuf::from(format!("{stem}.trace.jsonl"))
}

fn print_summary(trace: &Trace, out: &Path) {
    let (status, action, rounds) = trace.outcome().expect("finished sessions record an outcome");
    let status = match status {
        OutcomeStatus::Agreed => "agreed",
        OutcomeStatus::Cancelled => "cancelled",
    };
    println!("scenario: {}", trace.header.scenario);
    println!("outcome: {status}");
    if let Some(action) = action {
        println!("action: {action}");
    }
    println!("rounds: {rounds}");
    for (extension, retracted) in trace.resolutions() {
        let retracted: Vec<&str> = retracted.iter().map(|r| r.as_str()).collect();
        println!("resolution: {extension} retracted [{}]", retracted.join(", "));
    }
    println!("trace: {}", out.display());
}
