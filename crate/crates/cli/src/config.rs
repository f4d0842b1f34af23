//! Command-line grammar and the resolved run configuration.

use std::path::PathBuf;

use clap::{ArgMatches, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub const DEFAULT_COSET_LIMIT: usize = 100_000;
pub const DEFAULT_BOUND: usize = 64;
pub const DEFAULT_PRECISION: u32 = 30;
pub const DEFAULT_INDEX: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "rigidity-lab", version, about = "Exact computations for small Kleinian groups and their finite quotients")]
pub struct Cli {
    /// Store the result envelope in this directory (content-addressed).
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Worker threads for independent tasks.
    #[arg(long, global = true, value_name = "K", value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
    /// Do not print the envelope to stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eliminate the two-relator representation variety and check the result numerically.
    #[command(name = "rigidity-gamma4")]
    RigidityGamma4 {
        /// Decimal digits for the numeric residual check.
        #[arg(long, default_value_t = DEFAULT_PRECISION, value_parser = clap::value_parser!(u32).range(1..=1000))]
        precision: u32,
        /// Produce the symbolic certificate only.
        #[arg(long)]
        skip_numeric: bool,
    },
    /// Character-variety report for the orbifold group with meridian order n.
    Charvar {
        #[arg(long, value_name = "K", value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Computations on a finitely presented group.
    Group(GroupArgs),
    /// Finite quotients of a group up to a bound, or a comparison of two groups.
    Fingerprint(FingerprintArgs),
    /// Re-read an envelope and validate its checksum.
    Verify {
        path: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupOp {
    Abelianize,
    Cosets,
    Subgroups,
    Rs,
    Luck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum StrategyArg {
    #[default]
    Hlt,
    Felsch,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Named fixture (see `fixtures/`; also delta<n>, fib<m>, free<r>).
    #[arg(long, value_name = "NAME")]
    pub fixture: Vec<String>,
    /// Presentation file.
    #[arg(long, value_name = "PATH")]
    pub file: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    pub op: GroupOp,
    #[command(flatten)]
    pub input: InputArgs,
    /// Maximum subgroup index.
    #[arg(long, default_value_t = DEFAULT_INDEX, value_name = "K", value_parser = positive)]
    pub index: usize,
    /// Coset limit for enumeration.
    #[arg(long, default_value_t = DEFAULT_COSET_LIMIT, value_name = "K", value_parser = positive)]
    pub limit: usize,
    #[arg(long, value_enum, default_value_t)]
    pub strategy: StrategyArg,
    /// Subgroup generator word (repeatable); the trivial subgroup if absent.
    #[arg(long = "subgroup", value_name = "WORD")]
    pub subgroup: Vec<String>,
    /// List normal subgroups only.
    #[arg(long)]
    pub normal: bool,
    /// Search-node budget for subgroup listings.
    #[arg(long, value_name = "K", value_parser = positive_u64)]
    pub node_limit: Option<u64>,
    /// Cyclic cover moduli for `luck`, a divisibility chain such as 2,4,8.
    #[arg(long, value_delimiter = ',', value_name = "LIST", value_parser = positive_u64)]
    pub moduli: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct FingerprintArgs {
    /// Two inputs: the group, then the subgroup.
    #[command(flatten)]
    pub input: InputArgs,
    /// Largest quotient order.
    #[arg(long, default_value_t = DEFAULT_BOUND, value_name = "N", value_parser = positive)]
    pub bound: usize,
    #[arg(long, value_name = "K", value_parser = positive_u64)]
    pub node_limit: Option<u64>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_u64(s: &str) -> Result<u64, String> {
    positive(s).map(|v| v as u64)
}

/// One input, as given on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputSpec {
    Fixture(String),
    File(PathBuf),
}

impl std::fmt::Display for InputSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputSpec::Fixture(n) => write!(f, "fixture:{n}"),
            InputSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Inputs in command-line order. Clap groups repeated flags by name, so the
/// original interleaving is recovered from argument indices.
pub fn ordered_inputs(input: &InputArgs, matches: Option<&ArgMatches>) -> Vec<InputSpec> {
    let mut tagged: Vec<(usize, InputSpec)> = Vec::new();
    let idx = |name: &str, n: usize| -> Vec<usize> {
        matches.and_then(|m| m.indices_of(name)).map(|i| i.collect()).unwrap_or_else(|| (0..n).collect())
    };
    let fixture_idx = idx("fixture", input.fixture.len());
    let file_idx = idx("file", input.file.len());
    for (i, f) in fixture_idx.iter().zip(&input.fixture) {
        tagged.push((*i, InputSpec::Fixture(f.clone())));
    }
    for (i, f) in file_idx.iter().zip(&input.file) {
        // Without matches, fixtures come first.
        let key = if matches.is_some() { *i } else { i + input.fixture.len() };
        tagged.push((key, InputSpec::File(f.clone())));
    }
    tagged.sort_by_key(|(i, _)| *i);
    tagged.into_iter().map(|(_, s)| s).collect()
}

/// Everything that determines a result, echoed into the envelope.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subcommand: Option<GroupOp>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub inputs: Vec<InputSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coset_limit: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub node_limit: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub precision: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub skip_numeric: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub strategy: Option<StrategyArg>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub subgroup: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normal_only: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub moduli: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub workers: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub out: Option<PathBuf>,
}
