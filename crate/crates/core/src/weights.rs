//! The weight functions ω(σ, y), ϖ(σ, x), the truncated weight w(σ̃, y) and
//! its normalized defect θ_σ̃.
//!
//! Each weight is integrated in its original variable at a fixed point norm,
//! not after the scaling substitution that makes it constant, so that
//! constancy is something the computation can fail to show.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::coth_minus_one_unchecked;
use crate::quad::{integrate_finite, integrate_semi_infinite, QuadConfig, QuadResult};
use crate::radial::{reduce_radial, RadialIntegrand, Support};
use crate::specfun::{k1_with, k2_at, mellin_coth_constant, surface_constant, K1Convention, ProblemParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightReport {
    pub sigma: f64,
    pub point_norm: f64,
    pub computed: f64,
    pub closed_form: f64,
    pub rel_deviation: f64,
    pub abs_error_estimate: f64,
}

impl WeightReport {
    fn new(sigma: f64, point_norm: f64, quad: QuadResult, closed_form: f64) -> Self {
        Self {
            sigma,
            point_norm,
            computed: quad.value,
            closed_form,
            rel_deviation: (quad.value - closed_form).abs() / closed_form,
            abs_error_estimate: quad.abs_error_estimate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaPoint {
    pub sigma_tilde: f64,
    pub t: f64,
    pub theta: f64,
    pub eta_tilde: f64,
}

fn check_sigma(sigma: f64, what: &str) -> Result<()> {
    if sigma > 1.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{what} must be > 1, got {sigma}")))
    }
}

fn check_norm(norm: f64) -> Result<()> {
    if norm > 0.0 && norm.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("point norm must be positive, got {norm}")))
    }
}

/// Quadrature settings for r ↦ (coth(r/t) − 1)·r^{σ−1} on (0, ∞): a
/// r^{σ−2} singularity at the origin and an e^{−2r/t} tail.
fn kernel_power_cfg(base: &QuadConfig, sigma: f64, t: f64) -> QuadConfig {
    let cfg = base.with_exponential_tail(2.0 / t);
    if sigma == 2.0 {
        cfg.with_regular_left()
    } else {
        cfg.with_left_singularity(sigma - 2.0)
    }
}

/// ω(σ, y) = ‖y‖^{−σ}·∫_{ℝ₊^m} (coth(‖x‖_α/‖y‖) − 1)·‖x‖_α^{σ−m} dx,
/// compared with K₂(σ).
pub fn omega(sigma: f64, y_norm: f64, m: u32, alpha: f64, cfg: &QuadConfig) -> Result<WeightReport> {
    check_sigma(sigma, "σ")?;
    check_norm(y_norm)?;
    let power = sigma - m as f64;
    let profile = move |r: f64| coth_minus_one_unchecked(r / y_norm) * r.powf(power);
    let ri = RadialIntegrand::new(m, alpha, profile, Support::Full);
    let quad_cfg = kernel_power_cfg(cfg, sigma, y_norm).with_abs_scale(y_norm.powf(sigma));
    let quad = reduce_radial(&ri, &quad_cfg)?
        .require_converged()?
        .scale(y_norm.powf(-sigma));
    Ok(WeightReport::new(sigma, y_norm, quad, k2_at(m, alpha, sigma)?))
}

/// ϖ(σ, x) = ‖x‖^σ·∫_{ℝ₊^n} (coth(‖x‖/‖y‖_β) − 1)·‖y‖_β^{−n−σ} dy,
/// compared with K₁(σ).
pub fn varpi(sigma: f64, x_norm: f64, n: u32, beta: f64, cfg: &QuadConfig) -> Result<WeightReport> {
    let params = ProblemParams::new(1, n, 1.0, beta, sigma, 2.0)?;
    varpi_with(&params, x_norm, K1Convention::Corrected, cfg)
}

/// [`varpi`] with the closed form taken in the given K₁ convention. Only the
/// (n, β, σ) of `params` enter the integral; α enters the misprinted
/// constant.
pub fn varpi_with(params: &ProblemParams, x_norm: f64, convention: K1Convention, cfg: &QuadConfig) -> Result<WeightReport> {
    params.validate()?;
    check_norm(x_norm)?;
    let (n, sigma) = (params.n, params.sigma);
    let power = -(n as f64) - sigma;
    let profile = move |rho: f64| {
        let h = coth_minus_one_unchecked(x_norm / rho);
        if h == 0.0 {
            0.0
        } else {
            h * rho.powf(power)
        }
    };
    // In ρ the kernel vanishes faster than any power at 0 and behaves like
    // ρ/x at ∞, so the reduced integrand decays like ρ^{−σ}.
    let ri = RadialIntegrand::new(n, params.beta, profile, Support::Full).with_breakpoints([x_norm]);
    let quad_cfg = cfg
        .with_regular_left()
        .with_algebraic_tail(sigma - 1.0)
        .with_pivot(4.0 * x_norm)
        .with_abs_scale(x_norm.powf(-sigma));
    let quad = reduce_radial(&ri, &quad_cfg)?.require_converged()?.scale(x_norm.powf(sigma));
    Ok(WeightReport::new(sigma, x_norm, quad, k1_with(params, convention)?))
}

/// ∫₀^∞ (coth v − 1)·v^{σ−1} dv by quadrature, for comparison with
/// [`mellin_coth_constant`]. Near 0 the integrand behaves like v^{σ−2}.
pub fn mellin_integral(sigma: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    check_sigma(sigma, "σ")?;
    let power = sigma - 1.0;
    let integrand = move |v: f64| coth_minus_one_unchecked(v) * v.powf(power);
    let cfg = if (sigma - sigma.round()).abs() < 1e-12 {
        cfg.with_regular_left()
    } else {
        cfg.with_left_singularity(sigma - 2.0)
    };
    integrate_semi_infinite(integrand, 0.0, &cfg.with_exponential_tail(2.0))?.require_converged()
}

/// ∫₀^{1/t} (coth v − 1)·v^{σ̃−1} dv.
fn lower_mellin(sigma_tilde: f64, t: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    let power = sigma_tilde - 1.0;
    let integrand = move |v: f64| coth_minus_one_unchecked(v) * v.powf(power);
    let cfg = if sigma_tilde == 2.0 {
        cfg.with_regular_left()
    } else {
        cfg.with_left_singularity(sigma_tilde - 2.0)
    };
    integrate_finite(integrand, 0.0, 1.0 / t, &cfg)?.require_converged()
}

/// θ_σ̃(t) = 2^{σ̃−1}/(Γ(σ̃)ζ(σ̃))·∫₀^{1/t} (coth v − 1) v^{σ̃−1} dv.
///
/// `eta_tilde` is filled with σ̃ − 1, the exponent the defect actually decays
/// with (see [`theta_decay_fit`]).
pub fn theta(sigma_tilde: f64, t: f64, cfg: &QuadConfig) -> Result<ThetaPoint> {
    check_sigma(sigma_tilde, "σ̃")?;
    check_norm(t)?;
    let lower = lower_mellin(sigma_tilde, t, cfg)?;
    Ok(ThetaPoint {
        sigma_tilde,
        t,
        theta: lower.value / mellin_coth_constant(sigma_tilde)?,
        eta_tilde: sigma_tilde - 1.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncatedWeight {
    pub sigma_tilde: f64,
    pub y_norm: f64,
    /// Quadrature over ‖x‖_α ≥ 1 at fixed y.
    pub direct: f64,
    /// K₂(σ̃)·(1 − θ_σ̃(‖y‖)).
    pub via_theta: f64,
    pub k2: f64,
}

impl TruncatedWeight {
    /// |direct − via_theta| / K₂(σ̃).
    pub fn deviation(&self) -> f64 {
        (self.direct - self.via_theta).abs() / self.k2
    }
}

/// w(σ̃, y) = ‖y‖^{−σ̃}·∫_{‖x‖_α ≥ 1} (coth(‖x‖_α/‖y‖) − 1)·‖x‖_α^{σ̃−m} dx,
/// computed directly and through θ.
pub fn truncated_weight(sigma_tilde: f64, y_norm: f64, m: u32, alpha: f64, cfg: &QuadConfig) -> Result<TruncatedWeight> {
    check_sigma(sigma_tilde, "σ̃")?;
    check_norm(y_norm)?;
    let power = sigma_tilde - m as f64;
    let profile = move |r: f64| coth_minus_one_unchecked(r / y_norm) * r.powf(power);
    let ri = RadialIntegrand::new(m, alpha, profile, Support::UNIT_BALL_EXTERIOR);
    let tail_cfg = cfg
        .with_regular_left()
        .with_exponential_tail(2.0 / y_norm)
        .with_abs_scale(y_norm.powf(sigma_tilde));
    let direct = reduce_radial(&ri, &tail_cfg)?.require_converged()?.value * y_norm.powf(-sigma_tilde);
    let k2 = k2_at(m, alpha, sigma_tilde)?;
    let th = theta(sigma_tilde, y_norm, cfg)?;
    Ok(TruncatedWeight {
        sigma_tilde,
        y_norm,
        direct,
        via_theta: k2 * (1.0 - th.theta),
        k2,
    })
}

/// w(σ̃, y) after the substitution v = r/‖y‖:
/// C(m, α)·∫_{1/‖y‖}^∞ (coth v − 1)·v^{σ̃−1} dv. Unlike K₂(σ̃)·(1 − θ) this
/// keeps full relative accuracy when w is tiny.
pub fn truncated_weight_value(sigma_tilde: f64, y_norm: f64, m: u32, alpha: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    check_sigma(sigma_tilde, "σ̃")?;
    check_norm(y_norm)?;
    let power = sigma_tilde - 1.0;
    let integrand = move |v: f64| coth_minus_one_unchecked(v) * v.powf(power);
    let start = 1.0 / y_norm;
    let tail_cfg = cfg.with_regular_left().with_exponential_tail(2.0);
    let tail = crate::quad::integrate_semi_infinite(integrand, start, &tail_cfg)?.require_converged()?;
    Ok(tail.scale(surface_constant(m, alpha)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaDecayFit {
    pub sigma_tilde: f64,
    pub points: Vec<ThetaPoint>,
    /// t values where θ underflowed and were left out of the fit.
    pub censored: Vec<f64>,
    pub slope: f64,
}

impl ThetaDecayFit {
    /// The slope is at least as steep as −(σ̃ − γ'), the guaranteed rate for
    /// a kernel bound coth v − 1 ≤ L·v^{−γ'}.
    pub fn meets_guaranteed_rate(&self, gamma_prime: f64) -> bool {
        self.slope <= -(self.sigma_tilde - gamma_prime)
    }
}

/// Least-squares slope of ln θ against ln t.
pub fn theta_decay_fit(sigma_tilde: f64, t_grid: &[f64], cfg: &QuadConfig) -> Result<ThetaDecayFit> {
    if t_grid.len() < 2 || t_grid.iter().any(|t| !(*t >= 1.0)) {
        return Err(Error::InvalidParams("theta_decay_fit needs at least two points, all ≥ 1".into()));
    }
    let mut points = Vec::new();
    let mut censored = Vec::new();
    for &t in t_grid {
        let p = theta(sigma_tilde, t, cfg)?;
        if p.theta > f64::MIN_POSITIVE {
            points.push(p);
        } else {
            censored.push(t);
        }
    }
    if points.len() < 2 {
        return Err(Error::InvalidParams("θ underflowed on all but one grid point".into()));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.t.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.theta.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(ThetaDecayFit {
        sigma_tilde,
        points,
        censored,
        slope: sxy / sxx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn omega_one_dimensional() {
        let r = omega(2.0, 1.0, 1, 1.0, &QuadConfig::default()).unwrap();
        assert_relative_eq!(r.computed, 0.82246703342411321824, max_relative = 1e-10);
        assert!(r.rel_deviation < 1e-10);
    }

    #[test]
    fn theta_limits() {
        let cfg = QuadConfig::default();
        assert!(theta(2.0, 1e8, &cfg).unwrap().theta < 1e-7);
        assert!(theta(2.0, 1e-3, &cfg).unwrap().theta > 1.0 - 1e-12);
        // ∫₀¹ (coth v − 1) v dv / (π²/12)
        let t = theta(2.0, 1.0, &cfg).unwrap().theta;
        assert_relative_eq!(t, 0.60694728460981007205 / 0.82246703342411321824, max_relative = 1e-12);
    }

    #[test]
    fn truncated_weight_limits() {
        let cfg = QuadConfig::default();
        let far = truncated_weight(2.0, 1e6, 1, 1.0, &cfg).unwrap();
        assert_relative_eq!(far.direct, far.k2, max_relative = 1e-5);
        let near = truncated_weight(2.0, 1e-3, 1, 1.0, &cfg).unwrap();
        assert!(near.direct < 1e-200);
    }

    #[test]
    fn rejects_bad_sigma() {
        assert!(omega(1.0, 1.0, 1, 1.0, &QuadConfig::default()).is_err());
        assert!(theta(0.5, 1.0, &QuadConfig::default()).is_err());
        assert!(theta_decay_fit(2.0, &[0.5, 10.0], &QuadConfig::default()).is_err());
    }
}
