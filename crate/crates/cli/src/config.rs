//! Command-line arguments and the resolved run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Debug, Parser)]
#[command(
    name = "matcorr",
    version,
    about = "Exact basis-correlation checks, certificates and entropy bounds for small matroids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Machine output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker threads for enumeration (default: all cores). Never changes any output.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Seed for `--weights random`, in hexadecimal.
    #[arg(long, global = true, default_value = "0xC0FFEE", value_parser = parse_seed)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON object per line.
    Json,
    /// A header row followed by one row per record.
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recompute the four published example partitions and compare them bit for bit.
    VerifyExamples {
        /// Check a single catalog entry.
        #[arg(long)]
        only: Option<String>,
        /// Corrupt the first embedded expectation (negative control).
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Weighted basis partition and correlation ratio of element pairs.
    Ratio(PairArgs),
    /// Check s_both·s_neither ≤ 2(1−1/d)·s_i_only·s_j_only.
    Theorem1(PairArgs),
    /// Check s_both·s_neither ≤ (1−1/d)·s_i_only·s_j_only for pairs of free elements.
    Theorem2(PairArgs),
    /// Log-concavity forms of the independence profile.
    Mason(SourceArgs),
    /// The H_ij and H_0 certificate matrices with their exact signatures.
    Hodge(PairArgs),
    /// Entropy of the size of a uniformly random independent set against its bounds.
    Entropy(SourceArgs),
    /// Spike (or transversal family) partitions from closed forms and enumeration.
    Spike(SpikeArgs),
    /// Certified lower bound on the correlation constant by weight search.
    Alpha(AlphaArgs),
}

#[derive(Clone, Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Matroid description file (JSON).
    #[arg(long)]
    pub matroid: Option<PathBuf>,
    /// Built-in matroid: simplicial, graphic, transversal, steiner, s8, spike-P-D,
    /// transversal-M-D.
    #[arg(long)]
    pub catalog: Option<String>,
}

#[derive(Clone, Debug, Args)]
pub struct PairArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long = "i", requires = "j")]
    pub i: Option<usize>,
    #[arg(long = "j", requires = "i")]
    pub j: Option<usize>,
    /// Sweep every eligible pair even when the catalog entry pins one.
    #[arg(long, conflicts_with_all = ["i", "j"])]
    pub all_pairs: bool,
    /// `unit`, `random` (seeded by `--seed`), or a JSON file of weights.
    #[arg(long, default_value = "unit")]
    pub weights: String,
}

#[derive(Clone, Debug, Args)]
pub struct SpikeArgs {
    /// Points per leg of the spike (over GF(p) when p is prime, else over Q).
    #[arg(long, conflicts_with = "m", required_unless_present = "m")]
    pub p: Option<u64>,
    /// Points per leg of the transversal family.
    #[arg(long)]
    pub m: Option<u64>,
    /// Rank.
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub closed_form: bool,
    #[arg(long)]
    pub enumerate: bool,
    /// Compare closed form and enumeration (implies both).
    #[arg(long)]
    pub compare: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyName {
    Unit,
    Grid,
    Ascent,
}

#[derive(Clone, Debug, Args)]
pub struct AlphaArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value_t = StrategyName::Unit)]
    pub strategy: StrategyName,
    /// Grid ladder 1, 2, …, 2^levels.
    #[arg(long, default_value_t = 4)]
    pub levels: u32,
    /// Relative improvement below which the ascent stops.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 20)]
    pub max_iter: usize,
}

/// Everything a command needs besides its own arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub format: Format,
    pub workers: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Self {
        let workers = cli.workers.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        });
        RunConfig {
            format: cli.format,
            workers: workers.max(1),
            seed: cli.seed,
        }
    }
}

/// Accepts `0xC0FFEE`, `C0FFEE` or `c0ffee`.
pub fn parse_seed(s: &str) -> Result<u64, String> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|e| format!("seed must be hexadecimal: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_hex() {
        assert_eq!(parse_seed("0xC0FFEE"), Ok(DEFAULT_SEED));
        assert_eq!(parse_seed("c0ffee"), Ok(DEFAULT_SEED));
        assert!(parse_seed("0xZZ").is_err());
    }

    #[test]
    fn argument_rules() {
        Cli::command_for_tests().debug_assert();
        let parse = |args: &[&str]| {
            Cli::try_parse_from(std::iter::once("matcorr").chain(args.iter().copied()))
        };
        assert!(parse(&["ratio"]).is_err());
        assert!(parse(&["ratio", "--catalog", "s8", "--matroid", "x.json"]).is_err());
        assert!(parse(&["ratio", "--catalog", "s8", "--i", "1"]).is_err());
        assert!(parse(&["spike", "--p", "2", "--m", "2", "--d", "3"]).is_err());
        let cli = parse(&[
            "theorem1",
            "--catalog",
            "steiner",
            "--weights",
            "unit",
            "--workers",
            "3",
        ])
        .unwrap();
        assert_eq!(RunConfig::from_cli(&cli).workers, 3);
        assert_eq!(cli.seed, DEFAULT_SEED);
    }

    impl Cli {
        fn command_for_tests() -> clap::Command {
            <Cli as clap::CommandFactory>::command()
        }
    }
}
