//! Command-line arguments.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hilbert_coth::quad::QuadConfig;
use hilbert_coth::specfun::ProblemParams;
use serde::Serialize;

/// Numerical checks of the Hilbert-type inequality with the coth − 1 kernel.
#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "hilbert-coth", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,

    #[command(flatten)]
    pub quad: QuadArgs,

    /// Seed for the Monte-Carlo oracles.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long = "output-format", alias = "format", global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Write the report here instead of standard output. Relative paths are
    /// resolved against $HCOTH_OUT_DIR when it is set.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Human,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Human => "txt",
        }
    }
}

/// Overrides of the base quadrature configuration.
#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct QuadArgs {
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long, global = true, default_value_t = 1e-14)]
    pub abs_tol: f64,
    #[arg(long, global = true, default_value_t = 2000)]
    pub max_subdivisions: usize,
}

impl QuadArgs {
    pub fn config(&self) -> QuadConfig {
        let mut cfg = QuadConfig::default().with_tolerances(self.rel_tol, self.abs_tol);
        cfg.max_subdivisions = self.max_subdivisions;
        cfg
    }
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Closed-form constants M(σ), K₁, K₂, K per σ, with M checked by quadrature.
    Constants(ConstantsArgs),
    /// Weight functions ω or ϖ against their constant values.
    Weights(WeightsArgs),
    /// Inequality batteries on admissible profile pairs.
    Verify(VerifyArgs),
    /// Ratio of the extremal family against K as ε → 0.
    Sharpness(SharpnessArgs),
    /// Rayleigh-ratio search for the operator norm.
    Opnorm(OpnormArgs),
    /// The full acceptance battery.
    Suite(SuiteArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Constants(_) => "constants",
            Command::Weights(_) => "weights",
            Command::Verify(_) => "verify",
            Command::Sharpness(_) => "sharpness",
            Command::Opnorm(_) => "opnorm",
            Command::Suite(_) => "suite",
        }
    }
}

/// Comma-separated numbers; the empty string is an empty list.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct List<T>(pub Vec<T>);

impl<T: FromStr> FromStr for List<T>
where
    T::Err: std::fmt::Display,
{
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<T>().map_err(|e| format!("{t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(List)
    }
}

/// Dimensions and norm parameters of the two spaces.
#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct SpaceArgs {
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
}

impl SpaceArgs {
    pub fn params(&self, sigma: f64, p: f64) -> hilbert_coth::Result<ProblemParams> {
        ProblemParams::new(self.m, self.n, self.alpha, self.beta, sigma, p)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConstantsArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value = "1.5,2,3,5")]
    pub sigma: List<f64>,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub p: f64,
    /// Relative tolerance for the quadrature of M(σ).
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    /// ω(σ, y) over the x-space (m, α).
    Omega,
    /// ϖ(σ, x) over the y-space (n, β).
    Varpi,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WeightsArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value = "2")]
    pub sigma: List<f64>,
    /// Point norms ‖y‖ (for ω) or ‖x‖ (for ϖ).
    #[arg(long, alias = "xnorm", alias = "norm", default_value = "0.01,1,100")]
    pub ynorm: List<f64>,
    #[arg(long, value_enum, default_value_t = WeightKind::Omega)]
    pub weight: WeightKind,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Test fixture: compare ϖ against K₁ with α in place of β.
    #[arg(long, hide = true)]
    pub inject_k1_typo: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// p > 1, the three forward pairs per grid point.
    Forward,
    /// 0 < p < 1 (default p = 1/2), one DoublePower pair per grid point.
    ReversePHalf,
    /// p < 0 (default p = −1), one DoublePower pair per grid point.
    ReversePNeg,
    /// Coth-kernel forms on five pairs with finite ℓ¹ norms.
    Corollary,
}

impl Preset {
    pub fn default_p(self) -> Vec<f64> {
        match self {
            Preset::Forward => vec![1.5, 2.0, 3.0],
            Preset::ReversePHalf => vec![0.5],
            Preset::ReversePNeg => vec![-1.0],
            Preset::Corollary => vec![2.0],
        }
    }

    pub fn accepts(self, p: f64) -> bool {
        match self {
            Preset::Forward | Preset::Corollary => p > 1.0,
            Preset::ReversePHalf => p > 0.0 && p < 1.0,
            Preset::ReversePNeg => p < 0.0,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Preset::Forward)]
    pub preset: Preset,
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value = "1.5,2")]
    pub sigma: List<f64>,
    /// Defaults to the preset's regime.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<List<f64>>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SharpnessArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value_t = 2.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Strictly decreasing ε values in (0, p(σ − 1)).
    #[arg(long, default_value = "0.2,0.02,0.002")]
    pub eps: List<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// The extremal ε-family; approaches K.
    Epsilon,
    /// Concentrated DoublePower(t, −t) profiles; stays well below K.
    Concentrated,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OpnormArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value = "2")]
    pub sigma: List<f64>,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, value_enum, default_value_t = Family::Epsilon)]
    pub family: Family,
    #[arg(long, default_value_t = 40)]
    pub max_iter: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SuiteArgs {
    /// Subset of criteria 1–10; all by default.
    #[arg(long)]
    pub criteria: Option<List<u32>>,
    /// Test fixture: misprinted K₁ in the weight criterion.
    #[arg(long, hide = true)]
    pub inject_k1_typo: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn lists() {
        assert_eq!("1.5, 2,3".parse::<List<f64>>().unwrap().0, [1.5, 2.0, 3.0]);
        assert!("".parse::<List<f64>>().unwrap().0.is_empty());
        assert!("1,x".parse::<List<f64>>().is_err());
    }

    #[test]
    fn negative_p() {
        let cli = Cli::try_parse_from(["hilbert-coth", "verify", "--preset", "reverse-p-neg", "--p", "-1,-2"]).unwrap();
        match cli.command {
            Command::Verify(v) => assert_eq!(v.p.unwrap().0, [-1.0, -2.0]),
            _ => unreachable!(),
        }
    }
}
