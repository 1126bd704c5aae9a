//! Integrals of radial functions F(‖x‖_γ) over the positive orthant ℝ₊^s.
//!
//! For any nonnegative F,
//!
//! ```text
//! ∫_{ℝ₊^s} F(‖x‖_γ) dx = C(s, γ) ∫₀^∞ F(r) r^{s−1} dr,   C(s, γ) = Γ(1/γ)^s / (γ^{s−1} Γ(s/γ)),
//! ```
//!
//! which is the unbounded-domain limit of the Dirichlet-type reduction on
//! {x ≥ 0 : ‖x‖_γ ≤ M}. Bounded domains are recovered by restricting the
//! support of F.
//!
//! [`mc_oracle`] estimates the left side by sampling x directly in ℝ₊^s, so it
//! validates C(s, γ) without using it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate_span, QuadConfig, QuadResult, Span};
use crate::specfun::{ln_gamma, surface_constant};

/// Where the profile F may be nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Support {
    Full,
    /// ‖x‖_γ ≥ radius.
    Exterior(f64),
    /// ‖x‖_γ ≤ radius.
    Interior(f64),
}

impl Support {
    pub const UNIT_BALL_EXTERIOR: Support = Support::Exterior(1.0);
    pub const UNIT_BALL_INTERIOR: Support = Support::Interior(1.0);

    pub fn contains(&self, r: f64) -> bool {
        match *self {
            Support::Full => r > 0.0,
            Support::Exterior(r0) => r >= r0,
            Support::Interior(r0) => r > 0.0 && r <= r0,
        }
    }

    fn span(&self) -> Span {
        match *self {
            Support::Full => Span::half_line(0.0),
            Support::Exterior(r0) => Span::half_line(r0),
            Support::Interior(r0) => Span::finite(0.0, r0),
        }
    }
}

/// x ↦ F(‖x‖_γ) on ℝ₊^s.
#[derive(Clone)]
pub struct RadialIntegrand<F> {
    pub s: u32,
    pub gamma_param: f64,
    pub profile: F,
    pub support: Support,
    /// Points where F is not smooth, passed on to the quadrature.
    pub breakpoints: Vec<f64>,
}

impl<F: Fn(f64) -> f64> RadialIntegrand<F> {
    pub fn new(s: u32, gamma_param: f64, profile: F, support: Support) -> Self {
        Self {
            s,
            gamma_param,
            profile,
            support,
            breakpoints: Vec::new(),
        }
    }

    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(points);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.s == 0 || !(self.gamma_param > 0.0) {
            return Err(Error::InvalidParams(format!(
                "radial integrand needs s ≥ 1 and γ > 0, got s = {}, γ = {}",
                self.s, self.gamma_param
            )));
        }
        match self.support {
            Support::Exterior(r0) | Support::Interior(r0) if !(r0 > 0.0 && r0.is_finite()) => {
                Err(Error::InvalidParams(format!("support radius {r0} must be positive")))
            }
            _ => Ok(()),
        }
    }
}

/// C(s, γ)·∫ F(r) r^{s−1} dr over the support.
///
/// `cfg` describes the one-dimensional integrand F(r)·r^{s−1}; in particular
/// the tail hint must match its decay.
pub fn reduce_radial<F: Fn(f64) -> f64>(ri: &RadialIntegrand<F>, cfg: &QuadConfig) -> Result<QuadResult> {
    ri.validate()?;
    let c = surface_constant(ri.s, ri.gamma_param)?;
    let power = ri.s as f64 - 1.0;
    let span = ri.support.span().with_breakpoints(ri.breakpoints.iter().copied());
    let integrand = |r: f64| {
        let f = (ri.profile)(r);
        if f == 0.0 {
            0.0
        } else {
            f * r.powf(power)
        }
    };
    Ok(integrate_span(integrand, &span, cfg)?.scale(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McOptions {
    pub samples: usize,
    pub seed: u64,
    /// Independent substreams; each gets `samples / strata` draws.
    pub strata: usize,
    /// Pareto-type tail index of the radial proposal on exterior supports.
    /// Profiles decaying like r^{−s−ε} need `tail_index < 2ε` for finite
    /// variance.
    pub tail_index: f64,
    /// Largest tolerated ratio between stratum variances.
    pub max_variance_ratio: f64,
}

impl Default for McOptions {
    fn default() -> Self {
        Self {
            samples: 1_000_000,
            seed: 0x5eed,
            strata: 16,
            tail_index: 0.2,
            max_variance_ratio: 1e3,
        }
    }
}

/// Monte-Carlo estimate of ∫_{ℝ₊^s} F(‖x‖_γ) dx with default options.
pub fn mc_oracle<F: Fn(f64) -> f64 + Sync>(ri: &RadialIntegrand<F>, samples: usize, seed: u64) -> Result<McEstimate> {
    mc_oracle_with(
        ri,
        &McOptions {
            samples,
            seed,
            ..McOptions::default()
        },
    )
}

/// Monte-Carlo estimate of ∫_{ℝ₊^s} F(‖x‖_γ) dx.
///
/// Proposal: independent coordinates X_i = G_i^{1/γ} with G_i ~ Gamma(1/γ),
/// whose joint density (γ/Γ(1/γ))^s·e^{−‖x‖_γ^γ} is explicit. Each draw is
/// moved radially, y = φ(‖x‖)·x/‖x‖, to put the samples where F lives; the
/// Jacobian of a radial map, (φ(r)/r)^{s−1}φ'(r), follows from homogeneity of
/// the norm alone. Neither the density nor the Jacobian involves C(s, γ).
pub fn mc_oracle_with<F: Fn(f64) -> f64 + Sync>(ri: &RadialIntegrand<F>, opts: &McOptions) -> Result<McEstimate> {
    ri.validate()?;
    if ri.s > 4 {
        return Err(Error::InvalidParams(format!("Monte-Carlo oracle supports s ≤ 4, got {}", ri.s)));
    }
    if opts.strata == 0 || opts.samples < opts.strata {
        return Err(Error::InvalidParams("need at least one sample per stratum".into()));
    }
    if !(opts.tail_index > 0.0) {
        return Err(Error::InvalidParams("tail_index must be > 0".into()));
    }
    let s = ri.s as f64;
    let g = ri.gamma_param;
    let shape = 1.0 / g;
    let coord = Gamma::new(shape, 1.0).map_err(|e| Error::InvalidParams(e.to_string()))?;
    // −ln of the proposal density, without the e^{−u} factor.
    let ln_norm = s * (ln_gamma(shape)? - g.ln());
    let map = RadialMap::new(ri.support, s, g, opts.tail_index);
    let per_stratum = opts.samples / opts.strata;

    let stats: Vec<(f64, f64)> = (0..opts.strata)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(k as u64);
            let mut mean = 0.0;
            let mut m2 = 0.0;
            for i in 0..per_stratum {
                // u = ‖x‖_γ^γ is the sum of the Gamma draws.
                let u: f64 = (0..ri.s).map(|_| coord.sample(&mut rng)).sum();
                let w = map.weight(u, &ri.profile, ri.support, ln_norm);
                let delta = w - mean;
                mean += delta / (i + 1) as f64;
                m2 += delta * (w - mean);
            }
            (mean, m2 / (per_stratum.max(2) - 1) as f64)
        })
        .collect();

    let count = opts.strata as f64;
    let estimate = stats.iter().map(|(m, _)| m).sum::<f64>() / count;
    let variance: f64 = stats.iter().map(|(_, v)| v / per_stratum as f64).sum::<f64>() / (count * count);
    let (lo, hi) = stats
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), (_, v)| (lo.min(*v), hi.max(*v)));
    // A (near) zero-variance estimator has only rounding noise to compare.
    if hi > 1e-12 * estimate * estimate {
        let ratio = if lo > 0.0 { hi / lo } else { f64::INFINITY };
        if ratio > opts.max_variance_ratio {
            return Err(Error::InsufficientDecay { ratio });
        }
    }
    Ok(McEstimate {
        estimate,
        // Floor for the rounding accumulated by the running means, which is
        // all that is left when the proposal matches the integrand exactly.
        std_error: variance.sqrt().max(64.0 * f64::EPSILON * estimate.abs()),
        samples: per_stratum * opts.strata,
    })
}

/// Radial transport ρ = φ(r) of proposal draws, parametrized by u = r^γ.
struct RadialMap {
    kind: MapKind,
    s: f64,
    g: f64,
}

enum MapKind {
    /// ρ = λ·u.
    Spread { lambda: f64 },
    /// ρ = λ·r.
    Scale { lambda: f64 },
    /// ρ = R₀·exp(h(u)/k), h(u) = u^a/(1+u)^{a−1}, a = s/γ.
    ///
    /// h ~ u^a near 0 keeps the density of ρ positive at R₀; h ~ u at ∞ gives
    /// a Pareto-type tail with index k.
    Exterior { r0: f64, k: f64 },
}

impl RadialMap {
    fn new(support: Support, s: f64, g: f64, tail_index: f64) -> Self {
        let kind = match support {
            Support::Full => MapKind::Spread { lambda: 1.0 },
            Support::Interior(r0) => MapKind::Scale {
                lambda: r0 / (s / g + 1.0).powf(1.0 / g),
            },
            Support::Exterior(r0) => MapKind::Exterior { r0, k: tail_index },
        };
        Self { kind, s, g }
    }

    /// Importance weight of one draw, F(ρ)·(ρ/r)^{s−1}·(dρ/dr) / density(x).
    ///
    /// Everything depends on x only through u; with r = u^{1/γ} the Jacobian
    /// is ρ^{s−1}·(dρ/du)·γ·u^{1−s/γ}, and 1/density = exp(ln_norm + u).
    fn weight<F: Fn(f64) -> f64>(&self, u: f64, profile: &F, support: Support, ln_norm: f64) -> f64 {
        if !(u > 0.0) {
            return 0.0;
        }
        let (s, g) = (self.s, self.g);
        let (rho, ln_drho_du) = match self.kind {
            MapKind::Spread { lambda } => (lambda * u, lambda.ln()),
            MapKind::Scale { lambda } => (
                lambda * u.powf(1.0 / g),
                (lambda / g).ln() + (1.0 / g - 1.0) * u.ln(),
            ),
            MapKind::Exterior { r0, k } => {
                let a = s / g;
                let h = u.powf(a) / (1.0 + u).powf(a - 1.0);
                let ln_dh = (a - 1.0) * u.ln() + (a + u).ln() - a * u.ln_1p();
                let ln_rho = r0.ln() + h / k;
                (ln_rho.exp(), ln_rho + ln_dh - k.ln())
            }
        };
        if !rho.is_finite() || !support.contains(rho) {
            return 0.0;
        }
        let f = profile(rho);
        if f == 0.0 {
            return 0.0;
        }
        let ln_jac = (s - 1.0) * rho.ln() + ln_drho_du + g.ln() + (1.0 - s / g) * u.ln();
        f * (ln_jac + ln_norm + u).exp()
    }
}

/// Logarithmic growth of ∫_{1 ≤ ‖x‖_γ ≤ R} ‖x‖_γ^{−s} dx.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceWitness {
    pub radii: Vec<f64>,
    pub partials: Vec<f64>,
    /// Least-squares slope of the partial integrals against ln R.
    pub slope: f64,
    pub surface_constant: f64,
}

impl DivergenceWitness {
    pub fn slope_rel_error(&self) -> f64 {
        (self.slope - self.surface_constant).abs() / self.surface_constant
    }

    /// The partials grow without bound at the predicted rate (within 1%).
    pub fn confirms(&self) -> bool {
        self.slope_rel_error() <= 0.01 && self.partials.windows(2).all(|w| w[1] > w[0])
    }
}

/// Shows that the ε = 0 member of the power family is not integrable: the
/// partial integrals over 1 ≤ ‖x‖_γ ≤ R for R ∈ {10², 10⁴, 10⁶} grow like
/// C(s, γ)·ln R.
pub fn divergence_witness(s: u32, gamma_param: f64) -> Result<DivergenceWitness> {
    let radii = vec![1e2, 1e4, 1e6];
    let exponent = -(s as f64);
    let mut partials = Vec::with_capacity(radii.len());
    for &r in &radii {
        // Profile r^{−s} on [1, R]; zero inside the unit ball.
        let profile = move |t: f64| if t >= 1.0 { t.powf(exponent) } else { 0.0 };
        let clipped = RadialIntegrand::new(s, gamma_param, profile, Support::Interior(r))
            .with_breakpoints((0..=6).map(|k| 10f64.powi(k)));
        partials.push(reduce_radial(&clipped, &QuadConfig::default())?.require_converged()?.value);
    }
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, partials.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&partials).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(DivergenceWitness {
        radii,
        partials,
        slope: sxy / sxx,
        surface_constant: surface_constant(s, gamma_param)?,
    })
}
