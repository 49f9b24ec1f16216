use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cylmob::channel::Bias;
use cylmob::construction::Family;
use cylmob::decoder::TieBreak;
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "cylmob", version, about = "Cylindrical, Möbius and surface CSS codes: construction, enumerators, MWPM decoding and simulation")]
pub struct Cli {
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for sharded work. Results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct CodeArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    /// Sets both L_c and L_f.
    #[arg(long = "L")]
    #[serde(default, rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[arg(long = "Lc")]
    #[serde(default, rename = "Lc", skip_serializing_if = "Option::is_none")]
    pub lc: Option<usize>,
    #[arg(long = "Lf")]
    #[serde(default, rename = "Lf", skip_serializing_if = "Option::is_none")]
    pub lf: Option<usize>,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct Stopping {
    #[arg(long, default_value_t = 100)]
    pub min_failures: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_shots: u64,
    /// Shots between checks of the stopping rule.
    #[arg(long, default_value_t = 10_000)]
    pub batch_size: u64,
    /// Master seed; generated and recorded when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Direct,
    Macwilliams,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Polynomial {
    /// Undetectable errors.
    #[value(name = "L")]
    L,
    /// Stabilizer group.
    #[value(name = "S")]
    S,
    /// Normalizer.
    #[value(name = "N")]
    N,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixName {
    Hx,
    Hz,
    Lx,
    Lz,
}

#[derive(Subcommand, Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Check matrices in the text format and the parameter record.
    Build {
        #[command(flatten)]
        #[serde(flatten)]
        code: CodeArgs,
    },
    /// [[n,k,dX/dZ]] as JSON.
    Params {
        #[command(flatten)]
        #[serde(flatten)]
        code: CodeArgs,
    },
    /// Logical operator basis in X1X7X10 notation.
    Logicals {
        #[command(flatten)]
        #[serde(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Weight enumerators L(z), S(z), N(z).
    Enumerate {
        #[command(flatten)]
        #[serde(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value = "macwilliams")]
        route: Route,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Polynomial written in CSV mode.
        #[arg(long, value_enum, default_value = "L")]
        polynomial: Polynomial,
    },
    /// Decodes a syndrome `[X checks | Z checks]` or the syndrome of an error.
    Decode {
        #[command(flatten)]
        #[serde(flatten)]
        code: CodeArgs,
        #[arg(long, conflicts_with = "error", required_unless_present = "error")]
        syndrome: Option<String>,
        /// Error in X1Z3Y7 notation; the residual is classified as well.
        #[arg(long)]
        error: Option<String>,
        #[arg(long, value_parser = parse_tie_break, default_value = "lexicographic")]
        tie_break: TieBreak,
        /// Also dump both matching graphs as edge lists.
        #[arg(long)]
        debug: bool,
    },
    /// Exhaustive per-class failure fractions at weight j.
    Fractions {
        #[command(flatten)]
        #[serde(flatten)]
        code: CodeArgs,
        #[arg(long)]
        j: usize,
        #[arg(long, value_parser = parse_tie_break, default_value = "lexicographic")]
        tie_break: TieBreak,
        /// Maximum decode calls.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Correctable fraction β_j from exhaustive fractions.
    Beta {
        #[command(flatten)]
        #[serde(flatten)]
        code: CodeArgs,
        #[arg(long = "A", value_parser = parse_bias)]
        #[serde(rename = "A")]
        bias: Bias,
        /// Defaults to t + 1.
        #[arg(long)]
        j: Option<usize>,
        #[arg(long, value_parser = parse_tie_break, default_value = "lexicographic")]
        tie_break: TieBreak,
        /// Maximum decode calls.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Analytic lower bound on β_{t+1} and, with --p, the p_L upper bound.
    Bound {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        d: usize,
        #[arg(long = "A", value_parser = parse_bias)]
        #[serde(rename = "A")]
        bias: Bias,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Monte Carlo estimate of p_L at one channel.
    Simulate {
        #[command(flatten)]
        #[serde(flatten)]
        code: CodeArgs,
        #[arg(long = "A", value_parser = parse_bias)]
        #[serde(rename = "A")]
        bias: Bias,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        #[serde(flatten)]
        stop: Stopping,
        #[arg(long, value_parser = parse_tie_break, default_value = "lexicographic")]
        tie_break: TieBreak,
    },
    /// p_L over a grid of physical error rates.
    Sweep {
        #[command(flatten)]
        #[serde(flatten)]
        code: CodeArgs,
        #[arg(long = "A", value_parser = parse_bias)]
        #[serde(rename = "A")]
        bias: Bias,
        #[arg(long, value_delimiter = ',', required = true)]
        p_grid: Vec<f64>,
        #[command(flatten)]
        #[serde(flatten)]
        stop: Stopping,
    },
    /// Crossing of p_L curves of square codes.
    Threshold {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long = "A", value_parser = parse_bias)]
        #[serde(rename = "A")]
        bias: Bias,
        #[arg(long, value_delimiter = ',', default_value = "3,5")]
        distances: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0.06,0.08,0.1,0.12,0.14,0.16,0.18,0.2")]
        p_grid: Vec<f64>,
        /// Fixed shots per grid point.
        #[arg(long, default_value_t = 50_000)]
        shots: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Runs the published-value checks and prints a pass/fail matrix.
    ReproducePaper {
        /// Skip Monte Carlo and weight-3 sweeps.
        #[arg(long)]
        skip_slow: bool,
        #[arg(long, value_parser = parse_tie_break, default_value = "lexicographic")]
        tie_break: TieBreak,
        #[arg(long, default_value_t = 20_240_601)]
        seed: u64,
    },
    /// One matrix in the text format.
    Export {
        #[command(flatten)]
        #[serde(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum)]
        matrix: MatrixName,
    },
    /// Re-runs the configuration recorded in an artifact's provenance header.
    Rerun { file: PathBuf },
}

impl Command {
    /// Seed slot of randomized commands.
    pub fn seed_mut(&mut self) -> Option<&mut Option<u64>> {
        match self {
            Command::Simulate { stop, .. } | Command::Sweep { stop, .. } => Some(&mut stop.seed),
            Command::Threshold { seed, .. } => Some(seed),
            _ => None,
        }
    }
}

fn parse_family(s: &str) -> Result<Family, cylmob::Error> {
    s.parse()
}

fn parse_bias(s: &str) -> Result<Bias, cylmob::Error> {
    s.parse()
}

fn parse_tie_break(s: &str) -> Result<TieBreak, cylmob::Error> {
    s.parse()
}
