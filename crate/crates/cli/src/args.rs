//! Command-line grammar.

use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};

#[derive(Debug, Parser)]
#[command(name = "burnside-lab", version, about = "Exact kernels, spectra, distances and samples of the Burnside process")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Exact transition matrix on C_k^n.
    Kernel(KernelArgs),
    /// Eigenvalues with multiplicities.
    Spectrum(KernelArgs),
    /// The orthogonal eigenbasis of the binary kernel.
    Basis(BasisArgs),
    /// Chi-square distance to stationarity along a range of steps.
    Chi2(CurveArgs),
    /// Total variation distance to stationarity along a range of steps.
    Tv(CurveArgs),
    /// Chi-square distance averaged over orbit starts, from the closed form.
    AvgChi2(AvgArgs),
    /// Averaged chi-square at multiples of the cutoff time.
    CutoffScan(ScanArgs),
    /// A seeded trajectory of the sampler.
    Sample(SampleArgs),
    /// Exact moments of the number of ones and of alternations.
    Stats(StatsArgs),
    /// Histogram of sampled stationary alternations.
    Hist(HistArgs),
    /// Runs a verification suite.
    Verify(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Kernel(_) => "kernel",
            Command::Spectrum(_) => "spectrum",
            Command::Basis(_) => "basis",
            Command::Chi2(_) => "chi2",
            Command::Tv(_) => "tv",
            Command::AvgChi2(_) => "avg-chi2",
            Command::CutoffScan(_) => "cutoff-scan",
            Command::Sample(_) => "sample",
            Command::Stats(_) => "stats",
            Command::Hist(_) => "hist",
            Command::Verify(_) => "verify",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Command::Sample(a) => Some(a.seed),
            Command::Hist(a) => Some(a.seed),
            _ => None,
        }
    }

    pub fn output(&self) -> &OutArgs {
        match self {
            Command::Kernel(a) | Command::Spectrum(a) => &a.output,
            Command::Basis(a) => &a.output,
            Command::Chi2(a) | Command::Tv(a) => &a.output,
            Command::AvgChi2(a) => &a.output,
            Command::CutoffScan(a) => &a.output,
            Command::Sample(a) => &a.output,
            Command::Stats(a) => &a.output,
            Command::Hist(a) => &a.output,
            Command::Verify(a) => &a.output,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Log,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[default]
    Refined,
    Plain,
}

#[derive(Debug, Args, Serialize)]
pub struct OutArgs {
    /// Output file; standard output when absent. A manifest is written
    /// beside it as `<out>.manifest.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Also write a gnuplot script plotting the CSV output (needs `--out`).
    #[arg(long, requires = "out")]
    pub gnuplot: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct KernelArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub k: u8,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct BasisArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct CurveArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub k: u8,
    /// A digit string, or zeros, one-one, half, orbit:i, avg.
    #[arg(long, default_value = "zeros")]
    pub start: StartSpec,
    #[arg(long, default_value = "1..10")]
    pub steps: Steps,
    #[arg(long, value_enum, default_value_t)]
    pub mode: Mode,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct AvgArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value = "1..10")]
    pub steps: Steps,
    #[arg(long, value_enum, default_value_t)]
    pub mode: Mode,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    /// Comma-separated values of n.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<u64>,
    /// Comma-separated multiples of the cutoff time.
    #[arg(long, value_delimiter = ',', default_value = "0.8,0.9,1.0,1.1,1.2")]
    pub factors: Vec<f64>,
    #[arg(long, value_enum, default_value_t)]
    pub variant: Variant,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub k: u8,
    #[arg(long, default_value = "zeros")]
    pub start: StartSpec,
    /// Number of steps in the trajectory.
    #[arg(long, default_value = "10")]
    pub steps: Steps,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct StatsArgs {
    #[arg(long)]
    pub n: usize,
    /// Start state; the stationary law when absent.
    #[arg(long)]
    pub start: Option<StartSpec>,
    #[arg(long, requires = "start")]
    pub steps: Option<Steps>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct HistArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = statistics::DEFAULT_BINS)]
    pub bins: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(verifier::Suite::NAMES))]
    pub suite: String,
    /// Lowers every per-n cap of the suite.
    #[arg(long)]
    pub max_n: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutArgs,
}

/// A single step count `a` or the inclusive range `a..b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Steps(pub RangeInclusive<u64>);

impl Steps {
    /// The step count when a single value was given.
    pub fn single(&self) -> Option<u64> {
        (self.0.start() == self.0.end()).then_some(*self.0.start())
    }
}

impl FromStr for Steps {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad step count {t:?}"));
        match s.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(format!("empty step range {s}"));
                }
                Ok(Steps(a..=b))
            }
            None => {
                let a = num(s)?;
                Ok(Steps(a..=a))
            }
        }
    }
}

impl fmt::Display for Steps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.single() {
            Some(a) => write!(f, "{a}"),
            None => write!(f, "{}..{}", self.0.start(), self.0.end()),
        }
    }
}

impl Serialize for Steps {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A start as written on the command line. Resolving it needs `n` and `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StartSpec {
    Literal(String),
    Zeros,
    OneOne,
    Half,
    Orbit(usize),
    Average,
}

impl FromStr for StartSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "zeros" => StartSpec::Zeros,
            "one-one" => StartSpec::OneOne,
            "half" => StartSpec::Half,
            "avg" => StartSpec::Average,
            _ => match s.strip_prefix("orbit:") {
                Some(i) => StartSpec::Orbit(i.parse().map_err(|_| format!("bad orbit index {i:?}"))?),
                None if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric()) => StartSpec::Literal(s.to_string()),
                None => return Err(format!("unknown start {s:?}")),
            },
        })
    }
}

impl fmt::Display for StartSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StartSpec::Literal(s) => f.write_str(s),
            StartSpec::Zeros => f.write_str("zeros"),
            StartSpec::OneOne => f.write_str("one-one"),
            StartSpec::Half => f.write_str("half"),
            StartSpec::Orbit(i) => write!(f, "orbit:{i}"),
            StartSpec::Average => f.write_str("avg"),
        }
    }
}

impl Serialize for StartSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
