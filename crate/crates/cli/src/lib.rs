//! Argument parsing and dispatch for the `modlie` binary.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use modlie::io::{AlgebraFile, ModuleFile};
use modlie::report::{self, Options, Report};
use modlie::{Caps, Error, Result};

#[derive(Debug, Parser)]
#[command(name = "modlie", version, about = "Faithful irreducible modules for Lie algebras over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal ideals, abelian socle and isomorphism classes.
    Analyze(Common),
    /// Construct a faithful irreducible module with its certificate.
    BuildFaithful(Common),
    /// Compare each multiplicity with the dimension of its ideal.
    CheckCriterion(Common),
    /// Re-check a module file against an algebra.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Module file, or a build-faithful report.
        #[arg(long)]
        module: PathBuf,
    },
    /// Faithful module and split extension built from one irreducible per minimal ideal.
    Cover(Common),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Algebra file (JSON).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest field size p^degree that may be built.
    #[arg(long)]
    pub field_cap: Option<u64>,
    /// Largest reduced enveloping algebra dimension p^n.
    #[arg(long)]
    pub env_cap: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Leave out the timings block so reports compare byte for byte.
    #[arg(long)]
    pub no_timings: bool,
}

impl Common {
    pub fn options(&self) -> Options {
        let mut caps = Caps::default();
        if let Some(c) = self.field_cap {
            caps.field_size = c;
        }
        if let Some(c) = self.env_cap {
            caps.env_dim = c;
        }
        Options { seed: self.seed, caps }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Analyze(c) | Command::BuildFaithful(c) | Command::CheckCriterion(c) | Command::Cover(c) => c,
            Command::Verify { common, .. } => common,
        }
    }

    pub fn execute(&self) -> Result<Report> {
        let common = self.common();
        let opts = common.options();
        let file = AlgebraFile::parse(&read(&common.input)?)?;
        match self {
            Command::Analyze(_) => report::analyze_cmd(&file, &opts),
            Command::BuildFaithful(_) => report::build_faithful_cmd(&file, &opts),
            Command::CheckCriterion(_) => report::check_criterion_cmd(&file, &opts),
            Command::Cover(_) => report::cover_cmd(&file, &opts),
            Command::Verify { module, .. } => {
                let m = ModuleFile::parse(&read(module)?)?;
                report::verify_cmd(&file, &m, &opts)
            }
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let common = cli.command.common();
    let report = match cli.command.execute() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let text = match common.format {
        Format::Json => report.to_json(!common.no_timings),
    };
    match &common.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    report.exit_code
}
