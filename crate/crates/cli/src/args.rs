use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lscat_core::Group;

#[derive(Debug, Parser)]
#[command(name = "lscat", version, about = "Category-weight invariants of the exceptional Lie groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Largest total degree for bar and cobar homology.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_degree: u32,

    /// Also require that the witness product survives the differentials.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Scan witness levels above the certified one (results are not certified).
    #[arg(long, global = true)]
    pub exploratory: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cup length, weight and the certified lower bound for one entry.
    Invariants(Source),
    /// Bar or cobar homology dimensions compared with the stored presentations.
    Homology {
        #[arg(long, value_enum)]
        mode: Mode,
        #[command(flatten)]
        source: Source,
    },
    /// Cross-check catalog entries against live computation.
    Verify(VerifySelection),
    /// Both summary tables, computed live next to the published values.
    Report,
    /// Print a catalog entry as JSON.
    Export(Selector),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Bar homology of the cohomology algebra.
    Tor,
    /// Cobar homology of the loop-space coalgebra.
    Cotor,
}

#[derive(Debug, Args)]
pub struct Selector {
    #[arg(long, value_parser = parse_group)]
    pub group: Group,
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=3))]
    pub prime: u32,
}

/// A catalog entry or a JSON presentation on disk.
#[derive(Debug, Args)]
#[group(required = true, multiple = true)]
pub struct Source {
    #[arg(long, value_parser = parse_group, requires = "prime", conflicts_with = "input")]
    pub group: Option<Group>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=3), requires = "group")]
    pub prime: Option<u32>,
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = true)]
pub struct VerifySelection {
    /// Every built-in entry.
    #[arg(long, conflicts_with_all = ["group", "prime", "input"])]
    pub all: bool,
    #[arg(long, value_parser = parse_group, conflicts_with = "input")]
    pub group: Option<Group>,
    /// Restrict to one prime; both primes when omitted.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=3), conflicts_with = "input")]
    pub prime: Option<u32>,
    #[arg(long)]
    pub input: Option<PathBuf>,
}

fn parse_group(s: &str) -> Result<Group, String> {
    s.parse().map_err(|_| format!("unknown group {s:?}; expected one of G2, F4, E6, E7, E8"))
}
