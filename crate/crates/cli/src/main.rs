use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use rees_cli::{run, Command, InstanceDecl};
use rees_core::Error;

#[derive(Parser)]
#[command(
    name = "rees",
    version,
    about = "Rees powers, depth sequences and theorem checkers"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Largest power in the window
    #[arg(long, global = true)]
    n_max: Option<usize>,
    /// Number of trailing equal values that count as stable
    #[arg(long, global = true)]
    window: Option<usize>,
    /// Field characteristic (0 for the rationals)
    #[arg(long = "char", global = true)]
    characteristic: Option<u32>,
    /// Seed for the random fallback of the superficial-element search
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Omit version and timings from JSON output
    #[arg(long, global = true)]
    no_meta: bool,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generator matrix of E_n as CSV
    Power { n: usize, instance: PathBuf },
    /// depth(G_n/E_n) and depth(E_n)
    DepthSeq { instance: PathBuf },
    /// Ass(G_n/E_n) for monomial instances
    AssSeq { instance: PathBuf },
    /// Analytic spread and fiber cone
    Spread { instance: PathBuf },
    /// Dimension of the Rees algebra by two routes
    Dim { instance: PathBuf },
    /// Spread against d + e - 1 and the depth tail
    Burch { instance: PathBuf },
    /// Depth of the Rees algebra against the depths of the powers
    Grade { instance: PathBuf },
    /// Spread equality when the Rees algebra is Cohen-Macaulay
    CmEquality { instance: PathBuf },
    /// Complete intersection against Cohen-Macaulay powers
    CowsikNori { instance: PathBuf },
    /// Full invariant record
    Report { instance: PathBuf },
}

impl Cmd {
    fn split(&self) -> (Command, &Path) {
        match self {
            Cmd::Power { n, instance } => (Command::Power(*n), instance),
            Cmd::DepthSeq { instance } => (Command::DepthSeq, instance),
            Cmd::AssSeq { instance } => (Command::AssSeq, instance),
            Cmd::Spread { instance } => (Command::Spread, instance),
            Cmd::Dim { instance } => (Command::Dim, instance),
            Cmd::Burch { instance } => (Command::Burch, instance),
            Cmd::Grade { instance } => (Command::Grade, instance),
            Cmd::CmEquality { instance } => (Command::CmEquality, instance),
            Cmd::CowsikNori { instance } => (Command::CowsikNori, instance),
            Cmd::Report { instance } => (Command::Report, instance),
        }
    }
}

fn fail(code: &str, message: String) -> ExitCode {
    eprintln!(
        "{}",
        json!({ "error": { "code": code, "message": message } })
    );
    ExitCode::from(2)
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let (command, path) = cli.command.split();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return fail("IO_ERROR", format!("{}: {e}", path.display())),
    };
    let mut decl = match InstanceDecl::parse(&text) {
        Ok(s) => s,
        Err(e) => return fail(e.code(), e.to_string()),
    };
    if let Some(n) = cli.n_max {
        decl.options.n_max = n;
    }
    if let Some(w) = cli.window {
        decl.options.window = w;
    }
    if let Some(c) = cli.characteristic {
        decl.ring.characteristic = c;
    }
    if let Some(s) = cli.seed {
        decl.options.seed = s;
    }
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let outcome = match run(&decl, &name, command, !cli.no_meta) {
        Ok(o) => o,
        Err(e) => return report_error(&e),
    };
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &outcome.body) {
                return fail("IO_ERROR", format!("{}: {e}", p.display()));
            }
        }
        None => print!("{}", outcome.body),
    }
    if outcome.violation {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn report_error(e: &Error) -> ExitCode {
    fail(e.code(), e.to_string())
}
