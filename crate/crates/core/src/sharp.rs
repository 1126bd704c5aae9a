//! Sharpness of the constant: the ε-extremal family and a direct search for
//! the norm of T.
//!
//! For f̃ = r^{σ̃−m} and g̃ = ρ^{−σ−ε/q−n} on the exteriors of the unit balls,
//! with σ̃ = σ − ε/p,
//!
//! ```text
//! Ĩ = ∫_{‖y‖≥1} ‖y‖^{−n−ε} w(σ̃, y) dy,   ‖f̃‖·‖g̃‖ = C(m,α)^{1/p}C(n,β)^{1/q}/ε,
//! ```
//!
//! so Ĩ/(K‖f̃‖‖g̃‖) → 1 as ε → 0⁺ exactly when K cannot be lowered.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate_span, QuadConfig, Span};
use crate::specfun::{best_constant_k, surface_constant, ProblemParams};
use crate::verify::{bilinear_i, norm_p_phi, RadialProfile};
use crate::weights::truncated_weight_value;

pub use crate::verify::{apply_t, psi_one_minus_p_exponent, tf_norm};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharpnessPoint {
    pub eps: f64,
    pub sigma_tilde: f64,
    pub i_tilde: f64,
    pub i_tilde_error: f64,
    /// ‖f̃‖_{p,Φ}·‖g̃‖_{q,Ψ}, in closed form.
    pub product_norms: f64,
    /// Ĩ / (K·product_norms).
    pub ratio: f64,
    /// 1 − ratio.
    pub gap: f64,
}

/// Ĩ recomputed as a raw double integral at one ε.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoubleIntegralCheck {
    pub eps: f64,
    pub reduced: f64,
    pub direct: f64,
    pub rel_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessSweep {
    pub params: ProblemParams,
    pub k: f64,
    pub points: Vec<SharpnessPoint>,
    /// At the largest ε, the cheapest point for the double integral.
    pub cross_check: Option<DoubleIntegralCheck>,
}

impl SharpnessSweep {
    /// Gaps shrink along the sweep, allowing ties within `tie`.
    pub fn gap_is_decreasing(&self, tie: f64) -> bool {
        self.points.windows(2).all(|w| w[1].gap < w[0].gap + tie)
    }

    pub fn ratios_below_one(&self) -> bool {
        self.points.iter().all(|p| p.ratio > 0.0 && p.ratio < 1.0)
    }

    /// Log-log slope of gap against ε between the first and last point.
    pub fn gap_slope(&self) -> Option<f64> {
        let (a, b) = (self.points.first()?, self.points.last()?);
        if self.points.len() < 2 {
            return None;
        }
        Some((b.gap / a.gap).ln() / (b.eps / a.eps).ln())
    }

    pub fn extrapolation(&self) -> Option<Extrapolation> {
        Extrapolation::from_points(&self.points)
    }
}

/// Linear extrapolation of ratio(ε) to ε = 0.
///
/// The line through the two smallest ε gives the intercept. The residual is
/// how far the smallest-ε ratio sits from the line through the two points
/// before it, i.e. the size of the curvature the linear model ignores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    pub intercept: f64,
    pub residual: f64,
    /// |intercept − 1| ≤ 2·residual.
    pub identifies_limit: bool,
}

impl Extrapolation {
    pub fn from_points(points: &[SharpnessPoint]) -> Option<Self> {
        let n = points.len();
        if n < 3 {
            return None;
        }
        let line = |a: &SharpnessPoint, b: &SharpnessPoint, eps: f64| {
            a.ratio + (b.ratio - a.ratio) / (b.eps - a.eps) * (eps - a.eps)
        };
        let (x, y, z) = (&points[n - 3], &points[n - 2], &points[n - 1]);
        let intercept = line(y, z, 0.0);
        let residual = (z.ratio - line(x, y, z.eps)).abs();
        Some(Self {
            intercept,
            residual,
            identifies_limit: (intercept - 1.0).abs() <= 2.0 * residual,
        })
    }
}

fn check_forward(params: &ProblemParams) -> Result<()> {
    params.validate()?;
    if params.p > 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("sharpness needs p > 1, got {}", params.p)))
    }
}

fn check_eps_range(params: &ProblemParams, eps: f64) -> Result<()> {
    let top = params.p * (params.sigma - 1.0);
    if eps > 0.0 && eps < top {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("ε = {eps} outside (0, p(σ − 1)) = (0, {top})")))
    }
}

/// ‖f̃‖_{p,Φ}·‖g̃‖_{q,Ψ} = C(m,α)^{1/p}·C(n,β)^{1/q}/ε.
pub fn product_norms(params: &ProblemParams, eps: f64) -> Result<f64> {
    let cm = surface_constant(params.m, params.alpha)?;
    let cn = surface_constant(params.n, params.beta)?;
    Ok(cm.powf(1.0 / params.p) * cn.powf(1.0 / params.q()) / eps)
}

/// One point of the sweep, Ĩ through the one-dimensional reduction.
pub fn sharpness_point(params: &ProblemParams, eps: f64, cfg: &QuadConfig) -> Result<SharpnessPoint> {
    check_forward(params)?;
    check_eps_range(params, eps)?;
    let st = params.sigma - eps / params.p;
    let inner = cfg.with_tolerances(cfg.rel_tol * 1e-2, f64::MIN_POSITIVE);
    let failure = std::cell::Cell::new(None);
    let integrand = |rho: f64| match truncated_weight_value(st, rho, params.m, params.alpha, &inner) {
        Ok(w) => rho.powf(-1.0 - eps) * w.value,
        Err(e) => {
            failure.set(Some(e));
            f64::NAN
        }
    };
    // w rises from 0 to K₂(σ̃) around ρ ≈ 1; the ρ^{−1−ε} tail is algebraic.
    let span = Span::half_line(1.0).with_breakpoints([2.0, 4.0, 8.0, 16.0, 64.0]);
    let tail_cfg = cfg
        .with_tolerances(cfg.rel_tol, f64::MIN_POSITIVE)
        .with_regular_left()
        .with_algebraic_tail(eps)
        .with_pivot(128.0);
    let res = integrate_span(integrand, &span, &tail_cfg);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let res = res?.require_converged()?.scale(surface_constant(params.n, params.beta)?);
    let k = best_constant_k(params)?;
    let pn = product_norms(params, eps)?;
    let ratio = res.value / (k * pn);
    Ok(SharpnessPoint {
        eps,
        sigma_tilde: st,
        i_tilde: res.value,
        i_tilde_error: res.abs_error_estimate,
        product_norms: pn,
        ratio,
        gap: 1.0 - ratio,
    })
}

/// Ratios along a strictly decreasing list of ε.
pub fn sharpness_sweep(params: &ProblemParams, eps_list: &[f64], cfg: &QuadConfig) -> Result<SharpnessSweep> {
    sweep_impl(params, eps_list, cfg, true)
}

/// As [`sharpness_sweep`] without the double-integral cross-check.
pub fn sharpness_sweep_reduced(params: &ProblemParams, eps_list: &[f64], cfg: &QuadConfig) -> Result<SharpnessSweep> {
    sweep_impl(params, eps_list, cfg, false)
}

fn sweep_impl(params: &ProblemParams, eps_list: &[f64], cfg: &QuadConfig, cross_check: bool) -> Result<SharpnessSweep> {
    check_forward(params)?;
    if eps_list.is_empty() {
        return Err(Error::InvalidParams("empty ε list".into()));
    }
    if eps_list.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidParams("ε list must be strictly decreasing".into()));
    }
    for &eps in eps_list {
        check_eps_range(params, eps)?;
    }
    use rayon::prelude::*;
    let points = eps_list
        .par_iter()
        .map(|&eps| sharpness_point(params, eps, cfg))
        .collect::<Result<Vec<_>>>()?;
    let cross_check = if cross_check {
        let first = points[0];
        let direct = bilinear_i(
            &RadialProfile::eps_f(params, first.eps),
            &RadialProfile::eps_g(params, first.eps),
            params,
            cfg,
        )?
        .value;
        Some(DoubleIntegralCheck {
            eps: first.eps,
            reduced: first.i_tilde,
            direct,
            rel_deviation: (direct - first.i_tilde).abs() / first.i_tilde,
        })
    } else {
        None
    };
    Ok(SharpnessSweep {
        params: *params,
        k: best_constant_k(params)?,
        points,
        cross_check,
    })
}

/// ‖Tf‖_{p,Ψ^{1−p}} / ‖f‖_{p,Φ}.
pub fn rayleigh_ratio(f: &RadialProfile, params: &ProblemParams, cfg: &QuadConfig) -> Result<f64> {
    check_forward(params)?;
    let norm = norm_p_phi(f, params, cfg)?;
    if !norm.is_admissible() {
        return Err(Error::Divergent(format!("‖f‖_{{p,Φ}} = {} is not in (0, ∞)", norm.value)));
    }
    Ok(tf_norm(f, params, cfg)?.value / norm.value)
}

/// One-parameter families searched for the operator norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum OpNormFamily {
    /// f̃_ε, ε in [lo, hi].
    Epsilon { lo: f64, hi: f64 },
    /// r^a below 1 and r^{−a} above, a spike on the unit sphere of relative
    /// width ~ 1/a; a in [lo, hi]. Mass concentrated on one sphere pairs
    /// badly with a kernel that spreads over all scales.
    Concentrated { lo: f64, hi: f64 },
}

impl OpNormFamily {
    /// The ε-family over [10⁻³, 0.9]·p(σ − 1).
    pub fn epsilon(params: &ProblemParams) -> Self {
        let top = params.p * (params.sigma - 1.0);
        OpNormFamily::Epsilon {
            lo: 1e-3 * top,
            hi: 0.9 * top,
        }
    }

    pub fn concentrated() -> Self {
        OpNormFamily::Concentrated { lo: 1e1, hi: 1e3 }
    }

    pub fn id(&self) -> &'static str {
        match self {
            OpNormFamily::Epsilon { .. } => "eps",
            OpNormFamily::Concentrated { .. } => "concentrated",
        }
    }

    fn bounds(&self) -> (f64, f64) {
        match *self {
            OpNormFamily::Epsilon { lo, hi } | OpNormFamily::Concentrated { lo, hi } => (lo, hi),
        }
    }

    pub fn member(&self, params: &ProblemParams, t: f64) -> RadialProfile {
        match self {
            OpNormFamily::Epsilon { .. } => RadialProfile::eps_f(params, t),
            OpNormFamily::Concentrated { .. } => RadialProfile::double_power(params.m, params.alpha, t, -t, 1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpNormEstimate {
    pub family_id: String,
    pub best_ratio: f64,
    /// Family parameter at the maximum.
    pub argmax: f64,
    pub k_value: f64,
    pub evaluations: usize,
    /// Bracket shrank to the requested width.
    pub converged: bool,
}

impl OpNormEstimate {
    /// best_ratio ≤ K·(1 + 1e-8).
    pub fn within_bound(&self) -> bool {
        self.best_ratio <= self.k_value * (1.0 + 1e-8)
    }
}

/// Golden-section maximization of the Rayleigh ratio over the family
/// parameter, in log scale. Stops when the bracket is narrower than 10⁻³ in
/// ln t or after `max_iter` steps.
pub fn opnorm_search(params: &ProblemParams, family: &OpNormFamily, cfg: &QuadConfig) -> Result<OpNormEstimate> {
    opnorm_search_with(params, family, 40, cfg)
}

pub fn opnorm_search_with(params: &ProblemParams, family: &OpNormFamily, max_iter: usize, cfg: &QuadConfig) -> Result<OpNormEstimate> {
    check_forward(params)?;
    let (lo, hi) = family.bounds();
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidParams(format!("family bracket [{lo}, {hi}] is empty")));
    }
    if let OpNormFamily::Epsilon { .. } = family {
        check_eps_range(params, lo)?;
        check_eps_range(params, hi)?;
    }
    let mut evaluations = 0;
    let mut ratio_at = |s: f64| -> Result<f64> {
        evaluations += 1;
        rayleigh_ratio(&family.member(params, s.exp()), params, cfg)
    };
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let mut best = (f64::NEG_INFINITY, a);
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let (mut fc, mut fd) = (ratio_at(c)?, ratio_at(d)?);
    let mut iterations = 0;
    while b - a > 1e-3 && iterations < max_iter {
        iterations += 1;
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = ratio_at(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = ratio_at(d)?;
        }
    }
    for (s, v) in [(c, fc), (d, fd)] {
        if v > best.0 {
            best = (v, s);
        }
    }
    // The maximum often sits on the bracket's edge.
    for s in [lo.ln(), hi.ln()] {
        let v = ratio_at(s)?;
        if v > best.0 {
            best = (v, s);
        }
    }
    Ok(OpNormEstimate {
        family_id: family.id().to_string(),
        best_ratio: best.0,
        argmax: best.1.exp(),
        k_value: best_constant_k(params)?,
        evaluations,
        converged: b - a <= 1e-3,
    })
}
