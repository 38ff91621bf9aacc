//! The `cactus` command line. [`run`] does the work so tests can drive it
//! in-process; `main` only wires it to the real streams.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use cactus_core::format::{parse_network, write_edgelist, FormatError};
use cactus_core::invariants::{compare, compute, qu_factored, Invariant, InvariantError, Labelling, ProductBudget};
use cactus_core::oracle::{enumerate_small, enumerate_undirected_small, random_cactus, GenConfig, OracleError};
use cactus_core::transform::TransformError;
use cactus_core::{Network, RootedCactus, UndirectedCactus};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use thiserror::Error;

pub const EXIT_DISTINCT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "cactus", version, about = "Polynomial invariants of cactus networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical polynomial of one network.
    Compute {
        #[arg(long, value_enum, ignore_case = true)]
        invariant: InvariantArg,
        /// Network file (edge list or extended Newick); `-` reads stdin.
        #[arg(long)]
        input: PathBuf,
        /// Use the species labels on the leaves.
        #[arg(long)]
        labelled: bool,
        #[arg(long)]
        json: bool,
        /// For Qu, print the product of rooted factors without expanding it.
        #[arg(long)]
        factored: bool,
    },
    /// Decide whether two networks share an invariant value.
    Compare {
        #[arg(long, value_enum, ignore_case = true)]
        invariant: CompareArg,
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        labelled: bool,
    },
    /// Check a network file and print its classification.
    Validate { file: PathBuf },
    /// Emit a random rooted cactus as an edge list.
    Generate {
        #[arg(long)]
        leaves: usize,
        #[arg(long)]
        rets: usize,
        #[arg(long, default_value_t = 0.0)]
        elementary: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Stream every cactus up to a vertex count, one edge list per record.
    Enumerate {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        no_elementary: bool,
        /// Enumerate undirected cactuses instead of rooted ones.
        #[arg(long, conflicts_with = "no_elementary")]
        undirected: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InvariantArg {
    #[value(name = "B")]
    B,
    #[value(name = "Bl")]
    Bl,
    #[value(name = "F")]
    F,
    #[value(name = "Q")]
    Q,
    #[value(name = "Qu")]
    Qu,
}

impl From<InvariantArg> for Invariant {
    fn from(arg: InvariantArg) -> Self {
        match arg {
            InvariantArg::B => Invariant::B,
            InvariantArg::Bl => Invariant::Bl,
            InvariantArg::F => Invariant::F,
            InvariantArg::Q => Invariant::Q,
            InvariantArg::Qu => Invariant::Qu,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CompareArg {
    #[value(name = "F")]
    F,
    #[value(name = "Q")]
    Q,
    #[value(name = "Qu")]
    Qu,
}

impl From<CompareArg> for Invariant {
    fn from(arg: CompareArg) -> Self {
        match arg {
            CompareArg::F => Invariant::F,
            CompareArg::Q => Invariant::Q,
            CompareArg::Qu => Invariant::Qu,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("--factored applies only to Qu")]
    FactoredNeedsQu,
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invariant(
                InvariantError::ProductBudgetExceeded { .. }
                | InvariantError::Transform(TransformError::BudgetExceeded { .. }),
            )
            | CliError::Oracle(OracleError::TooLarge { .. }) => EXIT_BUDGET,
            CliError::Oracle(OracleError::InvalidConfig(_)) | CliError::FactoredNeedsQu => EXIT_USAGE,
            _ => EXIT_INPUT,
        }
    }
}

/// Runs one invocation and returns its exit status. `args` includes the
/// program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_network(path: &Path) -> Result<Network, CliError> {
    let shown = path.display().to_string();
    let mut text = String::new();
    let read = if shown == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_network(&text).map_err(|source| CliError::Format { path: shown, source })
}

fn labelling(labelled: bool) -> Labelling {
    if labelled {
        Labelling::Species
    } else {
        Labelling::Unlabelled
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    match command {
        Command::Compute {
            invariant,
            input,
            labelled,
            json,
            factored,
        } => {
            let net = read_network(&input)?;
            let invariant = Invariant::from(invariant);
            if factored {
                let Network::Unrooted(g) = &net else {
                    return Err(InvariantError::Unsupported {
                        invariant,
                        kind: net.kind().to_string(),
                    }
                    .into());
                };
                if invariant != Invariant::Qu {
                    return Err(CliError::FactoredNeedsQu);
                }
                let product = qu_factored::<BigInt>(g, labelling(labelled), ProductBudget::default())?;
                writeln!(out, "{product}")?;
                return Ok(0);
            }
            let report = compute::<BigInt>(&net, invariant, labelling(labelled))?;
            if !report.complete {
                writeln!(err, "note: {invariant} is not known to be complete for this network")?;
            }
            let canonical = report.polynomial.to_canonical_string();
            if json {
                let value = serde_json::json!({
                    "invariant": report.invariant.to_string(),
                    "canonical": canonical,
                    "degree": report.degree,
                    "variables": report.variables.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "n_leaves": report.n_leaves,
                    "k_reticulations": report.k_reticulations,
                });
                writeln!(out, "{value}")?;
            } else {
                writeln!(out, "{canonical}")?;
            }
            Ok(0)
        }
        Command::Compare {
            invariant,
            a,
            b,
            labelled,
        } => {
            let na = read_network(&a)?;
            let nb = read_network(&b)?;
            let verdict = compare::<BigInt>(&na, &nb, invariant.into(), labelling(labelled))?;
            writeln!(out, "{}", if verdict.equal { "EQUAL" } else { "DISTINCT" })?;
            writeln!(out, "{}", verdict.left)?;
            writeln!(out, "{}", verdict.right)?;
            Ok(if verdict.equal { 0 } else { EXIT_DISTINCT })
        }
        Command::Validate { file } => {
            match read_network(&file)? {
                Network::Rooted(n) => describe_rooted(&n, out)?,
                Network::Unrooted(g) => describe_unrooted(&g, out)?,
            }
            Ok(0)
        }
        Command::Generate {
            leaves,
            rets,
            elementary,
            seed,
        } => {
            let n = random_cactus(&GenConfig::new(leaves, rets, elementary, seed))?;
            out.write_all(write_edgelist(&n.into()).as_bytes())?;
            Ok(0)
        }
        Command::Enumerate {
            max_vertices,
            no_elementary,
            undirected,
        } => {
            let nets: Vec<Network> = if undirected {
                enumerate_undirected_small(max_vertices)?
                    .into_iter()
                    .map(Network::from)
                    .collect()
            } else {
                enumerate_small(max_vertices, !no_elementary)?
                    .into_iter()
                    .map(Network::from)
                    .collect()
            };
            for (i, net) in nets.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                out.write_all(write_edgelist(net).as_bytes())?;
            }
            Ok(0)
        }
    }
}

fn describe_rooted(n: &RootedCactus, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "valid rooted cactus")?;
    writeln!(out, "vertices: {}", n.vertex_count())?;
    writeln!(out, "arcs: {}", n.arc_count())?;
    writeln!(out, "n: {}", n.leaf_count())?;
    writeln!(out, "k: {}", n.reticulation_count())?;
    writeln!(out, "binary: {}", n.is_binary())?;
    writeln!(out, "elementary: {}", n.has_elementary())?;
    writeln!(out, "tree: {}", n.is_tree())
}

fn describe_unrooted(g: &UndirectedCactus, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "valid undirected cactus")?;
    writeln!(out, "vertices: {}", g.vertex_count())?;
    writeln!(out, "edges: {}", g.edges().len())?;
    writeln!(out, "n: {}", g.leaf_count())?;
    writeln!(out, "k: {}", g.cycle_count())?;
    writeln!(out, "tree: {}", g.cycle_count() == 0)
}
