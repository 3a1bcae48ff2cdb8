//! Argument parsing and validation into a [`RunConfig`].

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use orthoglide::explorer::Clipping;
use orthoglide::{BoundF64, DexterityBound, LengthUnit, Strategy};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "orthoglide", version, about = "Orthoglide design synthesis and workspace analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Size a manipulator for a cubic workspace and a dexterity bound.
    Synthesize(SynthesizeArgs),
    /// Re-run the numerical oracles against the closed forms.
    Verify(VerifyArgs),
    /// Estimate dextrous and singularity-free workspace volumes.
    Explore(ExploreArgs),
    /// Write global transmission-factor bounds over the joint-limit plane as CSV.
    Contour(ContourArgs),
    /// Print the Q-axis landmark table and the unit-cube design table.
    Tables(TablesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("bound").required(true).args(["mu", "condition", "manipulability", "transmission"])))]
struct SynthesizeArgs {
    /// Cube edge: a bare number (normalized) or a value with `mm` or `m`.
    #[arg(long, default_value = "1")]
    cube: String,
    /// Symmetric transmission factor bound [mu, 1/mu].
    #[arg(long)]
    mu: Option<f64>,
    /// Upper bound on the Jacobian condition number.
    #[arg(long)]
    condition: Option<f64>,
    /// Lower bound on the manipulability.
    #[arg(long)]
    manipulability: Option<f64>,
    /// Transmission factor interval; `0` or `inf` leave a side free.
    #[arg(long, value_name = "MIN,MAX")]
    transmission: Option<String>,
    /// `all` or a comma-separated list of strategy ids.
    #[arg(long, default_value = "all")]
    strategy: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Joint-space grid nodes per axis for the global-bound scans.
    #[arg(long, default_value_t = 41)]
    resolution: usize,
    /// Number of random joint-limit pairs scanned.
    #[arg(long, default_value_t = 20)]
    pairs: usize,
    /// Random points for the kinematic round-trip checks.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct ExploreArgs {
    /// Dextrous volume by ray spanning (default when nothing is selected).
    #[arg(long)]
    volume: bool,
    /// Monte-Carlo fraction of the ball free of singularities.
    #[arg(long)]
    singularity_free: bool,
    /// `lower:MU`, `upper:MU`, `two-sided:MU`, `two-sided:MIN,MAX`,
    /// `manipulability:D` or `condition:D`; repeatable.
    #[arg(long = "bound", value_name = "KIND:VALUE")]
    bounds: Vec<String>,
    #[arg(long, default_value_t = 5000)]
    rays: usize,
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ClippingArg::Workspace)]
    clipping: ClippingArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClippingArg {
    Workspace,
    DexterityOnly,
}

#[derive(Debug, Args)]
struct ContourArgs {
    /// Grid nodes per axis.
    #[arg(long, default_value_t = 101)]
    grid: usize,
    /// CSV destination; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TablesArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CommandConfig {
    Synthesize(SynthesizeConfig),
    Verify(VerifyConfig),
    Explore(ExploreConfig),
    Contour(ContourConfig),
    Tables(TablesConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthesizeConfig {
    pub cube_edge: f64,
    pub unit: LengthUnit,
    pub bound: BoundF64,
    pub strategies: Vec<Strategy>,
    /// Strategies were requested with `all`; inapplicable ones are skipped.
    pub all: bool,
    pub format: Format,
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub resolution: usize,
    pub pairs: usize,
    pub samples: usize,
    pub seed: u64,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedBound {
    pub label: String,
    pub bound: BoundF64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExploreConfig {
    pub volume: bool,
    pub singularity_free: bool,
    pub bounds: Vec<NamedBound>,
    pub rays: usize,
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
    pub clipping: Clipping,
    pub format: Format,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContourConfig {
    pub grid: usize,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TablesConfig {
    pub format: Format,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_args<I, S>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let command = match cli.command {
        Command::Synthesize(a) => CommandConfig::Synthesize(synthesize_config(a)?),
        Command::Verify(a) => {
            if a.resolution < 21 {
                return Err(usage(format!("--resolution must be at least 21, got {}", a.resolution)));
            }
            if a.pairs == 0 || a.samples == 0 {
                return Err(usage("--pairs and --samples must be positive"));
            }
            if a.format == Format::Csv {
                return Err(usage("--format csv is not available for verify"));
            }
            CommandConfig::Verify(VerifyConfig {
                resolution: a.resolution,
                pairs: a.pairs,
                samples: a.samples,
                seed: a.seed,
                format: a.format,
            })
        }
        Command::Explore(a) => CommandConfig::Explore(explore_config(a)?),
        Command::Contour(a) => {
            if a.grid < 2 {
                return Err(usage(format!("--grid must be at least 2, got {}", a.grid)));
            }
            CommandConfig::Contour(ContourConfig { grid: a.grid, output: a.output })
        }
        Command::Tables(a) => {
            if a.format == Format::Csv {
                return Err(usage("--format csv is not available for tables"));
            }
            CommandConfig::Tables(TablesConfig { format: a.format })
        }
    };
    Ok(RunConfig { command })
}

fn synthesize_config(a: SynthesizeArgs) -> Result<SynthesizeConfig, CliError> {
    let (cube_edge, unit) = parse_cube(&a.cube)?;
    let bound = if let Some(mu) = a.mu {
        DexterityBound::SymmetricFactor(mu)
    } else if let Some(d) = a.condition {
        DexterityBound::ConditionCeiling(d)
    } else if let Some(d) = a.manipulability {
        DexterityBound::ManipulabilityFloor(d)
    } else {
        let raw = a.transmission.as_deref().unwrap_or_default();
        let (min, max) = parse_pair(raw).ok_or_else(|| usage(format!("--transmission expects MIN,MAX, got `{raw}`")))?;
        DexterityBound::TransmissionInterval { min, max }
    };
    check_bound(&bound)?;
    let (strategies, all) = parse_strategies(&a.strategy)?;
    Ok(SynthesizeConfig { cube_edge, unit, bound, strategies, all, format: a.format, json: a.json })
}

fn explore_config(a: ExploreArgs) -> Result<ExploreConfig, CliError> {
    if a.rays < 1000 {
        return Err(usage(format!("--rays must be at least 1000, got {}", a.rays)));
    }
    if !(a.tol > 0.0 && a.tol <= 1e-3) {
        return Err(usage(format!("--tol must lie in (0, 1e-3], got {}", a.tol)));
    }
    if a.singularity_free && a.samples < 1_000_000 {
        return Err(usage(format!("--samples must be at least 1000000, got {}", a.samples)));
    }
    let bounds = if a.bounds.is_empty() {
        volume_bounds()
    } else {
        a.bounds.iter().map(|s| parse_named_bound(s)).collect::<Result<_, _>>()?
    };
    Ok(ExploreConfig {
        volume: a.volume || !a.singularity_free,
        singularity_free: a.singularity_free,
        bounds,
        rays: a.rays,
        tol: a.tol,
        samples: a.samples,
        seed: a.seed,
        clipping: match a.clipping {
            ClippingArg::Workspace => Clipping::Workspace,
            ClippingArg::DexterityOnly => Clipping::DexterityOnly,
        },
        format: a.format,
        output: a.output,
    })
}

/// The three transmission-factor bounds of the dextrous volume comparison.
pub fn volume_bounds() -> Vec<NamedBound> {
    let third = 1.0 / 3.0;
    vec![
        NamedBound { label: "mu >= 1/3".into(), bound: DexterityBound::TransmissionInterval { min: third, max: f64::INFINITY } },
        NamedBound { label: "1/3 <= mu <= 3".into(), bound: DexterityBound::SymmetricFactor(third) },
        NamedBound { label: "mu <= 3".into(), bound: DexterityBound::TransmissionInterval { min: 0.0, max: 3.0 } },
    ]
}

fn check_bound(b: &BoundF64) -> Result<(), CliError> {
    b.validate().map_err(|e| usage(e.to_string()))
}

/// Parses `200mm`, `0.2m` or a bare normalized number.
pub fn parse_cube(s: &str) -> Result<(f64, LengthUnit), CliError> {
    let s = s.trim();
    let (num, unit) = if let Some(v) = s.strip_suffix("mm") {
        (v, LengthUnit::Millimeter)
    } else if let Some(v) = s.strip_suffix('m') {
        (v, LengthUnit::Meter)
    } else {
        (s, LengthUnit::Normalized)
    };
    match num.trim().parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok((v, unit)),
        _ => Err(usage(format!("--cube expects a positive length such as 1, 200mm or 0.2m, got `{s}`"))),
    }
}

fn parse_value(s: &str) -> Option<f64> {
    match s.trim() {
        "inf" | "infinity" => Some(f64::INFINITY),
        v => v.parse().ok(),
    }
}

fn parse_pair(s: &str) -> Option<(f64, f64)> {
    let (a, b) = s.split_once(',')?;
    Some((parse_value(a)?, parse_value(b)?))
}

pub fn parse_strategies(s: &str) -> Result<(Vec<Strategy>, bool), CliError> {
    if s.trim() == "all" {
        return Ok((Strategy::ALL.to_vec(), true));
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let id: u8 = part.trim().parse().map_err(|_| usage(format!("unknown strategy `{part}`")))?;
        out.push(Strategy::from_id(id).ok_or_else(|| usage(format!("unknown strategy `{part}`")))?);
    }
    out.sort();
    out.dedup();
    Ok((out, false))
}

pub fn parse_named_bound(s: &str) -> Result<NamedBound, CliError> {
    let bad = || usage(format!("cannot parse bound `{s}`"));
    let (kind, value) = s.split_once(':').ok_or_else(bad)?;
    let bound = match kind.trim() {
        "lower" => DexterityBound::TransmissionInterval { min: parse_value(value).ok_or_else(bad)?, max: f64::INFINITY },
        "upper" => DexterityBound::TransmissionInterval { min: 0.0, max: parse_value(value).ok_or_else(bad)? },
        "two-sided" => match parse_pair(value) {
            Some((min, max)) => DexterityBound::TransmissionInterval { min, max },
            None => DexterityBound::SymmetricFactor(parse_value(value).ok_or_else(bad)?),
        },
        "mu" => DexterityBound::SymmetricFactor(parse_value(value).ok_or_else(bad)?),
        "manipulability" => DexterityBound::ManipulabilityFloor(parse_value(value).ok_or_else(bad)?),
        "condition" => DexterityBound::ConditionCeiling(parse_value(value).ok_or_else(bad)?),
        _ => return Err(bad()),
    };
    check_bound(&bound)?;
    Ok(NamedBound { label: s.to_string(), bound })
}
