//! Command-line grammar.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cohprobe",
    version,
    about = "Coherence susceptibility of exactly solvable spin models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep coherence and χ over a parameter range.
    #[command(args_override_self = true)]
    Scan(ScanArgs),
    /// Coherence and χ at a single parameter value.
    #[command(args_override_self = true)]
    Point(PointArgs),
    /// λ_M(T) of the Ising Gibbs χ maximum with a two-segment fit.
    #[command(args_override_self = true)]
    Locus(LocusArgs),
    /// Quantum discord of nearest-neighbour Ising Gibbs states.
    #[command(args_override_self = true)]
    Discord(DiscordArgs),
    /// Exact diagonalization of a finite chain against the closed forms.
    #[command(args_override_self = true)]
    Oracle(OracleArgs),
    /// Data behind the six figures.
    #[command(args_override_self = true)]
    Figures(FiguresArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Scan(_) => "scan",
            Self::Point(_) => "point",
            Self::Locus(_) => "locus",
            Self::Discord(_) => "discord",
            Self::Oracle(_) => "oracle",
            Self::Figures(_) => "figures",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Tfim,
    Xx,
    Kitaev,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum State {
    Symbroken,
    Thermalground,
    Gibbs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum XxYy {
    Symmetric,
    Omitted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundaryArg {
    Open,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    All,
}

/// Flags shared by every command.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// `key = value` file mirroring flag names, or a previous output file to
    /// replay; flags given on the command line win.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, default_value_t = 1e-10)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 2000)]
    pub max_subdivisions: usize,
}

/// Model selection for the coherence commands.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    /// TFIM state; defaults to gibbs when --kbt is given, symbroken otherwise.
    #[arg(long, value_enum)]
    pub state: Option<State>,
    /// Temperature of the TFIM Gibbs state.
    #[arg(long)]
    pub kbt: Option<f64>,
    /// ⟨σʸσʸ⟩ treatment of the XX pair (default symmetric).
    #[arg(long, value_enum)]
    pub xx_yy: Option<XxYy>,
}

/// Differentiation settings for χ.
#[derive(Debug, Clone, Args)]
pub struct DiffArgs {
    /// Finite-difference step; defaults to min(1e-4, grid step).
    #[arg(long)]
    pub diff_step: Option<f64>,
    /// Richardson-extrapolated central differences.
    #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
    pub refine: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Parameter grid `min:max:step` (λ, or J_x for kitaev).
    #[arg(long, visible_alias = "jx", default_value = "0:2:0.01")]
    pub lambda: Range,
    #[command(flatten)]
    pub diff: DiffArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Parameter value (λ, or J_x for kitaev).
    #[arg(long, visible_alias = "jx")]
    pub lambda: f64,
    #[command(flatten)]
    pub diff: DiffArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct LocusArgs {
    /// Only the Ising chain has a thermal locus.
    #[arg(long, value_enum, default_value_t = Model::Tfim)]
    pub model: Model,
    /// Temperatures as `min:max:step` or a comma list.
    #[arg(long, default_value = "0.05:0.6:0.05")]
    pub kbt: Grid,
    /// λ window `min:max:step` searched at each temperature.
    #[arg(long, default_value = "0.5:2:0.01")]
    pub lambda: Range,
    #[arg(long, default_value_t = 1e-4)]
    pub diff_step: f64,
    /// JSON file for the fitted slope and knee; `<output>.fit.json` by default.
    #[arg(long, value_name = "FILE")]
    pub fit: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct DiscordArgs {
    /// Temperatures as `min:max:step` or a comma list.
    #[arg(long, default_value = "0.1,0.3,0.5")]
    pub kbt: Grid,
    #[arg(long, default_value = "0:2:0.01")]
    pub lambda: Range,
    /// Emit the λ of maximal discord per temperature instead of the curves.
    #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
    pub maximum: bool,
    /// Golden-section tolerance for --maximum.
    #[arg(long, default_value_t = 1e-5)]
    pub refine_tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum, default_value_t = Model::Tfim)]
    pub model: Model,
    /// Chain length.
    #[arg(long, default_value_t = 12)]
    pub n: usize,
    #[arg(long)]
    pub lambda: f64,
    /// Gibbs temperature (tfim only; xx compares ground states).
    #[arg(long)]
    pub kbt: Option<f64>,
    /// Boundary; periodic except for two sites.
    #[arg(long, value_enum)]
    pub boundary: Option<BoundaryArg>,
    /// Deviations above this are flagged.
    #[arg(long, default_value_t = 2e-2)]
    pub threshold: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct FiguresArgs {
    #[arg(long, value_enum, default_value_t = Figure::All)]
    pub which: Figure,
    /// Directory for the figure files (ignored when --output names a single figure).
    #[arg(long, default_value = ".")]
    pub outdir: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

/// `min:max:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl Range {
    /// `min + i·step`, with the last node snapped onto `max` when rounding
    /// leaves it a hair above.
    pub fn nodes(&self) -> Vec<f64> {
        let n = ((self.max - self.min) / self.step + 1e-9).floor() as usize;
        (0..=n)
            .map(|i| (self.min + i as f64 * self.step).min(self.max))
            .collect()
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, step] = parts.as_slice() else {
            return Err(format!("expected min:max:step, got {s:?}"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        let r = Range {
            min: num(min)?,
            max: num(max)?,
            step: num(step)?,
        };
        if !(r.min.is_finite() && r.max.is_finite() && r.min < r.max && r.step > 0.0 && r.step.is_finite()) {
            return Err(format!("range needs finite min < max and step > 0, got {s:?}"));
        }
        Ok(r)
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.step)
    }
}

/// A `min:max:step` range or an explicit comma-separated list.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Range(Range),
    List(Vec<f64>),
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Self::Range(r) => r.nodes(),
            Self::List(v) => v.clone(),
        }
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.contains(':') {
            return s.parse().map(Self::Range);
        }
        let values = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(format!("expected finite values, got {s:?}"));
        }
        Ok(Self::List(values))
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Range(r) => r.fmt(f),
            Self::List(v) => {
                let parts: Vec<String> = v.iter().map(f64::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}
