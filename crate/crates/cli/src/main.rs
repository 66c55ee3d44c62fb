//! `chemfg` command-line tool.
//!
//! Exit status: 0 when every record was processed, 1 when some records
//! failed, 2 on configuration or I/O failure.

mod annotate;
mod build;
mod io;
mod score;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chemfg::catalog::{load_catalog, Catalog};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "chemfg", version, about = "Functional-group annotation and corpus tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Perceive functional groups for one SMILES per line.
    AnnotateMol(Annotate),
    /// Annotate functional-group changes for one mapped reaction per line.
    AnnotateRxn(Annotate),
    /// Build a corpus from a JSON configuration file.
    BuildCorpus(build::Args),
    /// Write the bundled catalog.
    ExportCatalog {
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Score {response, gold, task_kind} lines.
    Score(score::Args),
}

#[derive(clap::Args)]
struct Annotate {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Catalog file to use instead of the bundled one.
    #[arg(long)]
    catalog: Option<PathBuf>,
}

#[derive(Debug)]
pub enum Failure {
    Io { path: PathBuf, error: std::io::Error },
    Message(String),
}

impl Failure {
    pub fn io(path: &Path, error: std::io::Error) -> Failure {
        Failure::Io { path: path.to_path_buf(), error }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io { path, error } => write!(f, "{}: {error}", path.display()),
            Failure::Message(m) => f.write_str(m),
        }
    }
}

pub fn catalog(path: Option<&Path>) -> Result<Catalog, Failure> {
    load_catalog(path).map_err(|e| Failure::Message(e.to_string()))
}

fn export_catalog(output: Option<&Path>) -> Result<usize, Failure> {
    let mut out = io::writer(output)?;
    out.write_all(chemfg::catalog::DEFAULT_CATALOG.as_bytes())
        .map_err(|e| Failure::io(output.unwrap_or(Path::new("<stdout>")), e))?;
    io::finish(out)?;
    Ok(0)
}


fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::AnnotateMol(a) => annotate::molecules(a.input.as_deref(), a.output.as_deref(), a.catalog.as_deref()),
        Command::AnnotateRxn(a) => annotate::reactions(a.input.as_deref(), a.output.as_deref(), a.catalog.as_deref()),
        Command::BuildCorpus(args) => build::run(args),
        Command::ExportCatalog { output } => export_catalog(output.as_deref()),
        Command::Score(args) => score::run(args),
    };
    match result {
        Ok(0) => ExitCode::SUCCESS,
        Ok(errors) => {
            eprintln!("{errors} record(s) failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
