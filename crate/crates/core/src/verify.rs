//! Both sides of the inequality, its equivalent form, the reverses, the
//! intermediate chain and the coth-kernel corollaries, for radial test
//! functions.
//!
//! With f(x) = F(‖x‖_α) on ℝ₊^m and g(y) = G(‖y‖_β) on ℝ₊^n every quantity
//! reduces to one- or two-dimensional integrals:
//!
//! ```text
//! ‖f‖_{p,Φ}^p = C(m,α) ∫ F(r)^p r^{p(m−σ)−1} dr
//! ‖g‖_{q,Ψ}^q = C(n,β) ∫ G(ρ)^q ρ^{q(n+σ)−1} dρ
//! (Tf)(ρ)     = C(m,α) ∫ (coth(r/ρ) − 1) F(r) r^{m−1} dr
//! I           = C(n,β) ∫ G(ρ) ρ^{n−1} (Tf)(ρ) dρ
//! J^p         = C(n,β) ∫ ρ^{−pσ−1} (Tf)(ρ)^p dρ
//! ```
//!
//! All of these are integrals of positive functions, so accuracy is
//! controlled by the relative tolerance alone.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use crate::asymptotics::{log_breakpoints, Asymptotics, AtInfinity, AtZero};
use crate::error::{Error, Result};
use crate::kernel::coth_minus_one_unchecked;
use crate::quad::{integrate_double_with, integrate_span, probe_tail_divergence, Plan, QuadConfig, QuadResult, TruncationProbe};
use crate::specfun::{best_constant_k, k1, k2, surface_constant, ProblemParams};
use crate::weights::{omega, varpi};

/// Closed family of radial profiles F(r), r = ‖x‖.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ProfileKind {
    /// r^a on [cut, ∞), zero below.
    TruncatedPower { exponent: f64, cut: f64 },
    /// (r/knee)^{a_inner} below the knee, (r/knee)^{a_outer} above.
    DoublePower { a_inner: f64, a_outer: f64, knee: f64 },
    /// r^a·e^{−rate·r}.
    ExpPower { exponent: f64, rate: f64 },
    /// r^{σ − ε/p − m} on [1, ∞): the near-extremal x-profile.
    EpsFamilyF { sigma: f64, eps: f64, p: f64 },
    /// ρ^{−σ − ε/q − n} on [1, ∞): the near-extremal y-profile.
    EpsFamilyG { sigma: f64, eps: f64, q: f64 },
}

/// r ↦ amplitude·F(r/dilation) on ℝ₊^dim with the ℓ^{norm_param} norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub kind: ProfileKind,
    pub dim: u32,
    pub norm_param: f64,
    pub amplitude: f64,
    pub dilation: f64,
}

impl RadialProfile {
    pub fn new(kind: ProfileKind, dim: u32, norm_param: f64) -> Self {
        Self {
            kind,
            dim,
            norm_param,
            amplitude: 1.0,
            dilation: 1.0,
        }
    }

    pub fn exp_power(dim: u32, norm_param: f64, exponent: f64, rate: f64) -> Self {
        Self::new(ProfileKind::ExpPower { exponent, rate }, dim, norm_param)
    }

    pub fn double_power(dim: u32, norm_param: f64, a_inner: f64, a_outer: f64, knee: f64) -> Self {
        Self::new(ProfileKind::DoublePower { a_inner, a_outer, knee }, dim, norm_param)
    }

    pub fn truncated_power(dim: u32, norm_param: f64, exponent: f64, cut: f64) -> Self {
        Self::new(ProfileKind::TruncatedPower { exponent, cut }, dim, norm_param)
    }

    /// f̃ on the x-space of `params`.
    pub fn eps_f(params: &ProblemParams, eps: f64) -> Self {
        Self::new(
            ProfileKind::EpsFamilyF {
                sigma: params.sigma,
                eps,
                p: params.p,
            },
            params.m,
            params.alpha,
        )
    }

    /// g̃ on the y-space of `params`.
    pub fn eps_g(params: &ProblemParams, eps: f64) -> Self {
        Self::new(
            ProfileKind::EpsFamilyG {
                sigma: params.sigma,
                eps,
                q: params.q(),
            },
            params.n,
            params.beta,
        )
    }

    /// c·F.
    pub fn scaled(mut self, c: f64) -> Self {
        self.amplitude *= c;
        self
    }

    /// r ↦ F(r/c).
    pub fn dilated(mut self, c: f64) -> Self {
        self.dilation *= c;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.amplitude == 0.0
    }

    fn base(&self, u: f64) -> f64 {
        let m = self.dim as f64;
        match self.kind {
            ProfileKind::TruncatedPower { exponent, cut } => {
                if u >= cut {
                    u.powf(exponent)
                } else {
                    0.0
                }
            }
            ProfileKind::DoublePower { a_inner, a_outer, knee } => {
                let t = u / knee;
                t.powf(if t < 1.0 { a_inner } else { a_outer })
            }
            ProfileKind::ExpPower { exponent, rate } => u.powf(exponent) * (-rate * u).exp(),
            ProfileKind::EpsFamilyF { sigma, eps, p } => {
                if u >= 1.0 {
                    u.powf(sigma - eps / p - m)
                } else {
                    0.0
                }
            }
            ProfileKind::EpsFamilyG { sigma, eps, q } => {
                if u >= 1.0 {
                    u.powf(-sigma - eps / q - m)
                } else {
                    0.0
                }
            }
        }
    }

    pub fn value(&self, r: f64) -> f64 {
        if self.amplitude == 0.0 {
            0.0
        } else {
            self.amplitude * self.base(r / self.dilation)
        }
    }

    /// Positive on all of (0, ∞), as negative-exponent norms require.
    pub fn is_strictly_positive(&self) -> bool {
        self.amplitude > 0.0 && matches!(self.kind, ProfileKind::DoublePower { .. } | ProfileKind::ExpPower { .. })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.dim == 0 || !(self.norm_param > 0.0) {
            return bad(format!("profile space needs dim ≥ 1 and γ > 0, got {}, {}", self.dim, self.norm_param));
        }
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) || !(self.dilation > 0.0 && self.dilation.is_finite()) {
            return bad(format!(
                "profile amplitude {} must be ≥ 0 and dilation {} > 0",
                self.amplitude, self.dilation
            ));
        }
        match self.kind {
            ProfileKind::TruncatedPower { cut, .. } if !(cut > 0.0) => bad(format!("cut {cut} must be > 0")),
            ProfileKind::DoublePower { knee, .. } if !(knee > 0.0) => bad(format!("knee {knee} must be > 0")),
            ProfileKind::ExpPower { rate, .. } if !(rate > 0.0) => bad(format!("rate {rate} must be > 0")),
            ProfileKind::EpsFamilyF { sigma, eps, p } => check_eps(sigma, eps, p),
            ProfileKind::EpsFamilyG { sigma, eps, q } => check_eps(sigma, eps, q / (q - 1.0)),
            _ => Ok(()),
        }
    }

    /// Support, leading powers and breakpoints.
    pub fn asymptotics(&self) -> Asymptotics {
        let d = self.dilation;
        let m = self.dim as f64;
        let (start, at_zero, at_infinity, breakpoints, scale) = match self.kind {
            ProfileKind::TruncatedPower { exponent, cut } => {
                (cut * d, AtZero::Flat, AtInfinity::Power(exponent), vec![], cut * d)
            }
            ProfileKind::DoublePower { a_inner, a_outer, knee } => (
                0.0,
                AtZero::Power(a_inner),
                AtInfinity::Power(a_outer),
                vec![knee * d],
                knee * d,
            ),
            ProfileKind::ExpPower { exponent, rate } => {
                (0.0, AtZero::Power(exponent), AtInfinity::Exponential(rate / d), vec![], d / rate)
            }
            ProfileKind::EpsFamilyF { sigma, eps, p } => {
                (d, AtZero::Flat, AtInfinity::Power(sigma - eps / p - m), vec![], d)
            }
            ProfileKind::EpsFamilyG { sigma, eps, q } => {
                (d, AtZero::Flat, AtInfinity::Power(-sigma - eps / q - m), vec![], d)
            }
        };
        Asymptotics {
            start,
            at_zero,
            at_infinity,
            breakpoints,
            scale,
        }
    }
}

fn check_eps(sigma: f64, eps: f64, p: f64) -> Result<()> {
    if p > 1.0 && sigma > 1.0 && eps > 0.0 && eps < p * (sigma - 1.0) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "extremal family needs p > 1 and 0 < ε < p(σ − 1); got p = {p}, σ = {sigma}, ε = {eps}"
        )))
    }
}

fn check_space(f: &RadialProfile, dim: u32, norm_param: f64, which: &str) -> Result<()> {
    f.validate()?;
    if f.dim != dim || f.norm_param != norm_param {
        return Err(Error::InvalidParams(format!(
            "{which} lives on ℝ₊^{} with ℓ^{}, expected ℝ₊^{dim} with ℓ^{norm_param}",
            f.dim, f.norm_param
        )));
    }
    Ok(())
}

/// Only the relative tolerance counts for the positive integrals here.
fn relative(cfg: &QuadConfig) -> QuadConfig {
    QuadConfig {
        abs_tol: 1e-300,
        ..*cfg
    }
}

/// Inner-level configuration of nested integrals.
fn inner_cfg(cfg: &QuadConfig) -> QuadConfig {
    relative(cfg).with_tolerances((cfg.rel_tol * 1e-2).max(1e-13), 1e-300)
}

/// A weighted norm {C·∫F^k r^c dr}^{1/k}, or a divergence marker.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormValue {
    /// The norm; +∞ (k > 0) or 0 (k < 0) when the integral diverges.
    pub value: f64,
    /// C·∫F^k r^c dr.
    pub integral: f64,
    pub rel_error: f64,
    pub divergent: bool,
}

impl NormValue {
    fn divergent(k: f64) -> Self {
        Self {
            value: if k > 0.0 { f64::INFINITY } else { 0.0 },
            integral: f64::INFINITY,
            rel_error: 0.0,
            divergent: true,
        }
    }

    /// 0 < value < ∞.
    pub fn is_admissible(&self) -> bool {
        !self.divergent && self.value > 0.0 && self.value.is_finite()
    }
}

/// ∫ F(r)^k·r^c dr over the support of F.
pub fn power_integral(f: &RadialProfile, k: f64, c: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    let asym = f.asymptotics().pow_times(k, c)?;
    let (span, qcfg) = asym.plan(&relative(cfg))?;
    let integrand = |r: f64| {
        let v = f.value(r);
        if v == 0.0 {
            0.0
        } else {
            (k * v.ln() + c * r.ln()).exp()
        }
    };
    integrate_span(integrand, &span, &qcfg)?.require_converged()
}

fn weighted_norm(f: &RadialProfile, k: f64, c: f64, cfg: &QuadConfig) -> Result<NormValue> {
    if f.is_zero() {
        return Ok(if k > 0.0 {
            NormValue {
                value: 0.0,
                integral: 0.0,
                rel_error: 0.0,
                divergent: false,
            }
        } else {
            NormValue::divergent(k)
        });
    }
    let surface = surface_constant(f.dim, f.norm_param)?;
    match power_integral(f, k, c, cfg) {
        Ok(q) => {
            let integral = surface * q.value;
            Ok(NormValue {
                value: integral.powf(1.0 / k),
                integral,
                rel_error: q.rel_error() / k.abs(),
                divergent: false,
            })
        }
        Err(Error::Divergent(_)) => Ok(NormValue::divergent(k)),
        Err(e) => Err(e),
    }
}

/// Truncation-growth probe of ∫ F^k r^c dr at infinity, independent of the
/// profile's metadata.
pub fn probe_power_integral(f: &RadialProfile, k: f64, c: f64, tolerance: f64, cfg: &QuadConfig) -> Result<TruncationProbe> {
    let start = f.asymptotics().start.max(1.0);
    probe_tail_divergence(
        |r: f64| {
            let v = f.value(r);
            if v == 0.0 {
                0.0
            } else {
                (k * v.ln() + c * r.ln()).exp()
            }
        },
        start,
        tolerance,
        &relative(cfg),
    )
}

/// ‖f‖_{p,Φ} with Φ(x) = ‖x‖_α^{p(m−σ)−m}.
pub fn norm_p_phi(f: &RadialProfile, params: &ProblemParams, cfg: &QuadConfig) -> Result<NormValue> {
    params.validate()?;
    check_space(f, params.m, params.alpha, "f")?;
    let p = params.p;
    weighted_norm(f, p, p * (params.m as f64 - params.sigma) - 1.0, cfg)
}

/// ‖g‖_{q,Ψ} with Ψ(y) = ‖y‖_β^{q(n+σ)−n}.
pub fn norm_q_psi(g: &RadialProfile, params: &ProblemParams, cfg: &QuadConfig) -> Result<NormValue> {
    params.validate()?;
    check_space(g, params.n, params.beta, "g")?;
    let q = params.q();
    weighted_norm(g, q, q * (params.n as f64 + params.sigma) - 1.0, cfg)
}

/// ‖f‖₁ = ∫ f over the profile's own space.
pub fn l1_norm(f: &RadialProfile, cfg: &QuadConfig) -> Result<NormValue> {
    f.validate()?;
    weighted_norm(f, 1.0, f.dim as f64 - 1.0, cfg)
}

/// Behavior of ρ ↦ (Tf)(ρ).
///
/// Near 0, Tf(ρ) ≈ ρ^{a+m}·M(a + m) for f ~ r^a; near ∞ it grows like ρ
/// (kernel ≈ ρ/r on the bulk of f) or like ρ^{a+m} if f's own tail dominates.
pub fn tf_asymptotics(f: &RadialProfile) -> Result<Asymptotics> {
    let fa = f.asymptotics();
    let m = f.dim as f64;
    let at_zero = match fa.at_zero {
        _ if fa.start > 0.0 => AtZero::Flat,
        AtZero::Flat => AtZero::Flat,
        AtZero::Power(a) if a + m > 1.0 => AtZero::Power(a + m),
        AtZero::Power(a) => {
            return Err(Error::Divergent(format!(
                "Tf is infinite: f ~ r^{a} at the origin needs exponent > {}",
                1.0 - m
            )))
        }
    };
    let at_infinity = match fa.at_infinity {
        AtInfinity::Exponential(_) => AtInfinity::Power(1.0),
        AtInfinity::Power(a) => AtInfinity::Power((a + m).max(1.0)),
    };
    Ok(Asymptotics {
        start: 0.0,
        at_zero,
        at_infinity,
        breakpoints: fa.breakpoints,
        scale: fa.scale,
    })
}

/// Integration plan for r ↦ k(r/ρ)·F(r)·r^{m−1}, with k = coth − 1 or coth.
fn kernel_plan(f: &RadialProfile, rho: f64, full_coth: bool, cfg: &QuadConfig) -> Result<Plan> {
    let fa = f.asymptotics();
    let m = f.dim as f64;
    let at_zero = match fa.at_zero {
        AtZero::Power(a) => AtZero::Power(a + m - 2.0),
        AtZero::Flat => AtZero::Flat,
    };
    let own_rate = match fa.at_infinity {
        AtInfinity::Exponential(rate) => rate,
        AtInfinity::Power(_) => 0.0,
    };
    let at_infinity = if full_coth {
        fa.pow_times(1.0, m - 1.0)?.at_infinity
    } else {
        // 2/ρ overflows for subnormal ρ, where the outer substitutions reach.
        AtInfinity::Exponential((2.0 / rho).min(1e300) + own_rate)
    };
    let mut breakpoints = fa.breakpoints.clone();
    // Resolve the kernel's own scale, and the decades between the profile's
    // scale and ρ where the kernel behaves like ρ/r.
    breakpoints.extend((0..7).map(|k| rho * 2f64.powi(k)));
    breakpoints.extend(log_breakpoints(fa.scale, rho, 1e3));
    let asym = Asymptotics {
        start: fa.start,
        at_zero,
        at_infinity,
        breakpoints,
        scale: fa.scale.max(rho),
    };
    let (span, qcfg) = asym.plan(cfg)?;
    Ok(Plan::new(span, qcfg))
}

fn kernel_value(v: f64, full_coth: bool) -> f64 {
    let h = coth_minus_one_unchecked(v);
    if full_coth {
        h + 1.0
    } else {
        h
    }
}

fn transform(f: &RadialProfile, rho: f64, full_coth: bool, cfg: &QuadConfig) -> Result<QuadResult> {
    let plan = kernel_plan(f, rho, full_coth, cfg)?;
    let power = f.dim as f64 - 1.0;
    let integrand = |r: f64| {
        let v = f.value(r);
        if v == 0.0 {
            0.0
        } else {
            kernel_value(r / rho, full_coth) * v * r.powf(power)
        }
    };
    let mut res = integrate_span(integrand, &plan.span, &plan.cfg)?;
    // `cfg` is an inner-level target, a hundred times tighter than required.
    if !res.converged && res.rel_error() <= 1e2 * cfg.rel_tol {
        res.converged = true;
    }
    Ok(res.require_converged()?.scale(surface_constant(f.dim, f.norm_param)?))
}

/// (Tf)(ρ) = ∫_{ℝ₊^m} (coth(‖x‖_α/ρ) − 1) f(x) dx.
pub fn apply_t(f: &RadialProfile, y_norm: f64, params: &ProblemParams, cfg: &QuadConfig) -> Result<QuadResult> {
    params.validate()?;
    check_space(f, params.m, params.alpha, "f")?;
    if !(y_norm > 0.0) {
        return Err(Error::InvalidParams(format!("point norm must be positive, got {y_norm}")));
    }
    if f.is_zero() {
        return Ok(QuadResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        });
    }
    transform(f, y_norm, false, &inner_cfg(cfg))
}

/// ∫_{ℝ₊^m} coth(‖x‖_α/ρ) f(x) dx, with the full kernel.
pub fn apply_coth(f: &RadialProfile, y_norm: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    f.validate()?;
    transform(f, y_norm, true, &inner_cfg(cfg))
}

/// Outer adaptive integral of a function whose values come from inner
/// quadratures. `point` returns the value and its relative error.
fn integrate_outer<P>(asym: &Asymptotics, cfg: &QuadConfig, point: P) -> Result<QuadResult>
where
    P: Fn(f64) -> Result<(f64, f64)>,
{
    let (span, qcfg) = asym.plan(&relative(cfg))?;
    let worst = Cell::new(0.0f64);
    let failure: Cell<Option<Error>> = Cell::new(None);
    let integrand = |x: f64| match point(x) {
        Ok((v, rel)) => {
            worst.set(worst.get().max(rel));
            v
        }
        Err(e) => {
            failure.set(Some(e));
            f64::NAN
        }
    };
    let result = integrate_span(integrand, &span, &qcfg);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let res = result?;
    let abs_error_estimate = res.abs_error_estimate + worst.get() * res.value.abs();
    Ok(QuadResult {
        abs_error_estimate,
        converged: res.converged,
        ..res
    })
    .and_then(QuadResult::require_converged)
}

fn zero_result() -> QuadResult {
    QuadResult {
        value: 0.0,
        abs_error_estimate: 0.0,
        evaluations: 0,
        converged: true,
    }
}

/// C(n,β)·∫ ρ^{−pσ−1}·(Tf)(ρ)^p dρ, i.e. J^p.
fn j_power_integral(f: &RadialProfile, params: &ProblemParams, cfg: &QuadConfig) -> Result<QuadResult> {
    let p = params.p;
    let c = -p * params.sigma - 1.0;
    let asym = tf_asymptotics(f)?.pow_times(p, c)?;
    let inner = inner_cfg(cfg);
    let res = integrate_outer(&asym, cfg, |rho| {
        let t = transform(f, rho, false, &inner)?;
        if t.value <= 0.0 {
            if p > 0.0 {
                return Ok((0.0, 0.0));
            }
            return Err(Error::Divergent(format!("(Tf)({rho}) = 0 under a negative power")));
        }
        Ok(((p * t.value.ln() + c * rho.ln()).exp(), p.abs() * t.rel_error()))
    })?;
    Ok(res.scale(surface_constant(params.n, params.beta)?))
}

/// J = {∫_{ℝ₊^n} ‖y‖_β^{−pσ−n}·(Tf)(y)^p dy}^{1/p}.
pub fn equivalent_j(f: &RadialProfile, params: &ProblemParams, cfg: &QuadConfig) -> Result<QuadResult> {
    params.validate()?;
    check_space(f, params.m, params.alpha, "f")?;
    if f.is_zero() {
        return Ok(zero_result());
    }
    let integral = j_power_integral(f, params, cfg)?;
    let j = integral.value.powf(1.0 / params.p);
    Ok(QuadResult {
        value: j,
        abs_error_estimate: j * integral.rel_error() / params.p.abs(),
        ..integral
    })
}

/// ‖Tf‖_{p,Ψ^{1−p}}, with the weight built from Ψ(y) = ‖y‖^{q(n+σ)−n}.
/// Since (q(n+σ) − n)(1 − p) = −pσ − n this equals J; the two are computed
/// separately so that the identity is checked rather than assumed.
pub fn tf_norm(f: &RadialProfile, params: &ProblemParams, cfg: &QuadConfig) -> Result<QuadResult> {
    params.validate()?;
    if !(params.p > 1.0) {
        return Err(Error::InvalidParams("‖Tf‖ is defined for p > 1".into()));
    }
    check_space(f, params.m, params.alpha, "f")?;
    if f.is_zero() {
        return Ok(zero_result());
    }
    let p = params.p;
    let n = params.n as f64;
    let psi = params.q() * (n + params.sigma) - n;
    let radial = n - 1.0;
    let asym = tf_asymptotics(f)?.pow_times(p, psi * (1.0 - p) + radial)?;
    let inner = inner_cfg(cfg);
    let res = integrate_outer(&asym, cfg, |rho| {
        let t = transform(f, rho, false, &inner)?;
        if t.value <= 0.0 {
            return Ok((0.0, 0.0));
        }
        let ln_rho = rho.ln();
        let ln = (1.0 - p) * (psi * ln_rho) + p * t.value.ln() + radial * ln_rho;
        Ok((ln.exp(), p * t.rel_error()))
    })?
    .scale(surface_constant(params.n, params.beta)?);
    let norm = res.value.powf(1.0 / p);
    Ok(QuadResult {
        value: norm,
        abs_error_estimate: norm * res.rel_error() / p,
        ..res
    })
}

/// The exponent of ‖y‖ in Ψ^{1−p}, i.e. (q(n+σ) − n)(1 − p).
pub fn psi_one_minus_p_exponent(params: &ProblemParams) -> f64 {
    (params.q() * (params.n as f64 + params.sigma) - params.n as f64) * (1.0 - params.p)
}

fn double_integral(f: &RadialProfile, g: &RadialProfile, full_coth: bool, cfg: &QuadConfig) -> Result<QuadResult> {
    let n = g.dim as f64;
    let m = f.dim as f64;
    let inner = inner_cfg(cfg);
    // Fails for every ρ alike if it fails at all.
    kernel_plan(f, 1.0, full_coth, &inner)?;
    let tfa = if full_coth {
        let t = tf_asymptotics(f)?;
        Asymptotics {
            at_zero: AtZero::Power(0.0),
            ..t
        }
    } else {
        tf_asymptotics(f)?
    };
    let outer_asym = g.asymptotics().pow_times(1.0, n - 1.0)?.product(&tfa);
    let (span, qcfg) = outer_asym.plan(&relative(cfg))?;
    let k = |r: f64, rho: f64| {
        let fv = f.value(r);
        let gv = g.value(rho);
        if fv == 0.0 || gv == 0.0 {
            0.0
        } else {
            kernel_value(r / rho, full_coth) * fv * r.powf(m - 1.0) * gv * rho.powf(n - 1.0)
        }
    };
    let res = integrate_double_with(k, &Plan::new(span, qcfg), |rho| {
        kernel_plan(f, rho, full_coth, &inner).expect("plan validated above")
    })?
    .require_converged()?;
    let c = surface_constant(f.dim, f.norm_param)? * surface_constant(g.dim, g.norm_param)?;
    Ok(res.scale(c))
}

/// I = ∫∫ (coth(‖x‖_α/‖y‖_β) − 1) f(x) g(y) dx dy.
pub fn bilinear_i(f: &RadialProfile, g: &RadialProfile, params: &ProblemParams, cfg: &QuadConfig) -> Result<QuadResult> {
    params.validate()?;
    check_space(f, params.m, params.alpha, "f")?;
    check_space(g, params.n, params.beta, "g")?;
    if f.is_zero() || g.is_zero() {
        return Ok(zero_result());
    }
    double_integral(f, g, false, cfg)
}

/// ∫∫ coth(‖x‖_α/‖y‖_β) f(x) g(y) dx dy.
pub fn bilinear_coth(f: &RadialProfile, g: &RadialProfile, params: &ProblemParams, cfg: &QuadConfig) -> Result<QuadResult> {
    params.validate()?;
    check_space(f, params.m, params.alpha, "f")?;
    check_space(g, params.n, params.beta, "g")?;
    if f.is_zero() || g.is_zero() {
        return Ok(zero_result());
    }
    double_integral(f, g, true, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Reverse,
}

impl Direction {
    pub fn of(params: &ProblemParams) -> Self {
        if params.is_forward() {
            Direction::Forward
        } else {
            Direction::Reverse
        }
    }

    /// lhs < rhs (forward) or lhs > rhs (reverse).
    pub fn holds(self, lhs: f64, rhs: f64) -> bool {
        match self {
            Direction::Forward => lhs < rhs,
            Direction::Reverse => lhs > rhs,
        }
    }

    /// As [`Direction::holds`], allowing lhs to exceed the bound by `slack`
    /// (relative) in the wrong direction.
    pub fn holds_within(self, lhs: f64, rhs: f64, slack: f64) -> bool {
        match self {
            Direction::Forward => lhs <= rhs * (1.0 + slack),
            Direction::Reverse => lhs >= rhs * (1.0 - slack),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub direction: Direction,
    pub i: f64,
    pub i_error: f64,
    pub j: f64,
    pub j_error: f64,
    pub f_norm: f64,
    pub g_norm: f64,
    pub k: f64,
    /// K·‖f‖·‖g‖.
    pub bound: f64,
    /// K·‖f‖.
    pub bound_j: f64,
    /// I / bound.
    pub ratio: f64,
    /// J / bound_j.
    pub ratio_j: f64,
    pub holds_i: bool,
    pub holds_j: bool,
    pub holds: bool,
    /// J·‖g‖, the Hölder bound on I.
    pub holder_bound: f64,
    pub holder_holds: bool,
    pub f_l1: Option<f64>,
    pub g_l1: Option<f64>,
}

impl VerifyReport {
    /// Ratio's distance from 1 in the direction the inequality claims.
    pub fn margin(&self) -> f64 {
        match self.direction {
            Direction::Forward => 1.0 - self.ratio,
            Direction::Reverse => self.ratio - 1.0,
        }
    }
}

fn admissible_norm(name: &str, n: &NormValue) -> Result<f64> {
    if n.divergent {
        Err(Error::Divergent(format!("{name} is not finite")))
    } else if n.is_admissible() {
        Ok(n.value)
    } else {
        Err(Error::InvalidParams(format!("{name} = {} is not in (0, ∞)", n.value)))
    }
}

/// Both the bilinear and the equivalent form, forward for p > 1 and reversed
/// for 0 < p < 1 or p < 0.
pub fn check_theorem1(f: &RadialProfile, g: &RadialProfile, params: &ProblemParams, cfg: &QuadConfig) -> Result<VerifyReport> {
    let nf = norm_p_phi(f, params, cfg)?;
    let ng = norm_q_psi(g, params, cfg)?;
    let f_norm = admissible_norm("‖f‖_{p,Φ}", &nf)?;
    let g_norm = admissible_norm("‖g‖_{q,Ψ}", &ng)?;
    let (i, j) = rayon::join(|| bilinear_i(f, g, params, cfg), || equivalent_j(f, params, cfg));
    let (i, j) = (i?, j?);
    let k = best_constant_k(params)?;
    let direction = Direction::of(params);
    let bound = k * f_norm * g_norm;
    let bound_j = k * f_norm;
    let holds_i = i.value > 0.0 && direction.holds(i.value, bound);
    let holds_j = j.value > 0.0 && direction.holds(j.value, bound_j);
    let holder_bound = j.value * g_norm;
    let slack = i.rel_error() + j.rel_error() + ng.rel_error + 1e-12;
    Ok(VerifyReport {
        direction,
        i: i.value,
        i_error: i.abs_error_estimate,
        j: j.value,
        j_error: j.abs_error_estimate,
        f_norm,
        g_norm,
        k,
        bound,
        bound_j,
        ratio: i.value / bound,
        ratio_j: j.value / bound_j,
        holds_i,
        holds_j,
        holds: holds_i && holds_j,
        holder_bound,
        holder_holds: direction.holds_within(i.value, holder_bound, slack),
        f_l1: None,
        g_l1: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub theorem: VerifyReport,
    /// ∫∫ coth(‖x‖/‖y‖) f g, computed with the full kernel.
    pub i_coth: f64,
    pub i_coth_error: f64,
    pub f_l1: f64,
    pub g_l1: f64,
    /// |I_coth − I − ‖f‖₁‖g‖₁|.
    pub decomposition_residual: f64,
    /// Summed error estimates of the three sides.
    pub decomposition_tolerance: f64,
    pub decomposition_holds: bool,
    /// ‖f‖₁‖g‖₁ + K‖f‖‖g‖.
    pub coth_bound: f64,
    pub coth_holds: bool,
    /// {∫ ‖y‖^{−pσ−n}(∫coth(‖x‖/‖y‖) f dx − ‖f‖₁)^p dy}^{1/p}, with the
    /// subtraction carried out inside the kernel.
    pub j_coth: f64,
    pub j_coth_holds: bool,
    /// Largest |∫coth f dx − ‖f‖₁ − Tf| / ‖f‖₁ at the sample radii.
    pub pointwise_deviation: f64,
    pub pointwise_holds: bool,
    /// Parameters are the one-dimensional specialization m = n = α = β = 1.
    pub one_dimensional: bool,
}

impl CorollaryReport {
    pub fn holds(&self) -> bool {
        self.theorem.holds && self.decomposition_holds && self.coth_holds && self.j_coth_holds && self.pointwise_holds
    }
}

/// Radii (in units of the profile's scale) for the pointwise check of the
/// subtracted form.
pub const POINTWISE_RADII: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

/// The coth-kernel forms: I_coth against ‖f‖₁‖g‖₁ + K‖f‖‖g‖ and the
/// subtracted equivalent form against K‖f‖.
///
/// Only the forward regime is ever admissible: for 0 < p < 1, Hölder's
/// inequality on (0, 1) shows that g > 0 with ∫Ψg^q < ∞ (q < 0) forces
/// ‖g‖₁ = ∞, and for p < 0 the same argument on (1, ∞) applies to f. The
/// reverse case therefore ends in a divergence error.
pub fn check_corollary_coth(f: &RadialProfile, g: &RadialProfile, params: &ProblemParams, cfg: &QuadConfig) -> Result<CorollaryReport> {
    let lf = l1_norm(f, cfg)?;
    let lg = l1_norm(g, cfg)?;
    let f_l1 = admissible_norm("‖f‖₁", &lf)?;
    let g_l1 = admissible_norm("‖g‖₁", &lg)?;
    let (theorem, i_coth) = rayon::join(
        || check_theorem1(f, g, params, cfg),
        || bilinear_coth(f, g, params, cfg),
    );
    let mut theorem = theorem?;
    theorem.f_l1 = Some(f_l1);
    theorem.g_l1 = Some(g_l1);
    let i_coth = i_coth?;
    let product = f_l1 * g_l1;
    let decomposition_residual = (i_coth.value - theorem.i - product).abs();
    let decomposition_tolerance = i_coth.abs_error_estimate
        + theorem.i_error
        + product * (lf.rel_error + lg.rel_error)
        + 8.0 * f64::EPSILON * (i_coth.value + theorem.i + product);
    let coth_bound = product + theorem.bound;
    let direction = theorem.direction;

    let scale = f.asymptotics().scale;
    let mut pointwise_deviation = 0.0f64;
    for r in POINTWISE_RADII {
        let rho = r * scale;
        let full = apply_coth(f, rho, cfg)?.value;
        let t = apply_t(f, rho, params, cfg)?.value;
        pointwise_deviation = pointwise_deviation.max((full - f_l1 - t).abs() / f_l1);
    }

    Ok(CorollaryReport {
        theorem,
        i_coth: i_coth.value,
        i_coth_error: i_coth.abs_error_estimate,
        f_l1,
        g_l1,
        decomposition_residual,
        decomposition_tolerance,
        decomposition_holds: decomposition_residual <= decomposition_tolerance,
        coth_bound,
        coth_holds: direction.holds(i_coth.value, coth_bound),
        j_coth: theorem.j,
        j_coth_holds: direction.holds(theorem.j, theorem.bound_j),
        pointwise_deviation,
        pointwise_holds: pointwise_deviation <= 1e-8,
        one_dimensional: params.m == 1 && params.n == 1 && params.alpha == 1.0 && params.beta == 1.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma4Report {
    pub direction: Direction,
    /// {∫ ‖y‖^{−pσ−n}·ω^{1−p}·(Tf)^p dy}^{1/p} with ω computed by quadrature.
    pub j1: f64,
    /// {∫ ϖ·Φ·f^p dx}^{1/p} with ϖ computed by quadrature.
    pub rhs: f64,
    pub holds: bool,
    pub j: f64,
    /// |J/J₁ − K₂^{1/q}| / K₂^{1/q}, K₂ in closed form.
    pub identity_deviation: f64,
    /// |ϖ^{1/p}‖f‖ − K₁^{1/p}‖f‖| / K₁^{1/p}‖f‖.
    pub rhs_deviation: f64,
}

/// The weighted chain J₁ < {∫ϖΦf^p}^{1/p} (reversed outside p > 1), using
/// numerically computed weights.
pub fn check_lemma4_chain(f: &RadialProfile, params: &ProblemParams, cfg: &QuadConfig) -> Result<Lemma4Report> {
    let nf = norm_p_phi(f, params, cfg)?;
    let f_norm = admissible_norm("‖f‖_{p,Φ}", &nf)?;
    let p = params.p;
    let q = params.q();
    let omega_num = omega(params.sigma, 1.0, params.m, params.alpha, cfg)?.computed;
    let varpi_num = varpi(params.sigma, 1.0, params.n, params.beta, cfg)?.computed;
    let jp = j_power_integral(f, params, cfg)?;
    let j = jp.value.powf(1.0 / p);
    let j1 = (jp.value * omega_num.powf(1.0 - p)).powf(1.0 / p);
    let rhs = (varpi_num * nf.integral).powf(1.0 / p);
    let direction = Direction::of(params);
    let expected = k2(params)?.powf(1.0 / q);
    let rhs_closed = (k1(params)? * nf.integral).powf(1.0 / p);
    Ok(Lemma4Report {
        direction,
        j1,
        rhs,
        holds: direction.holds(j1, rhs),
        j,
        identity_deviation: (j / j1 - expected).abs() / expected,
        rhs_deviation: (rhs - rhs_closed).abs() / rhs_closed.max(f_norm * f64::MIN_POSITIVE),
    })
}

/// Exponent windows for strictly positive DoublePower profiles (knee 1) in
/// the reverse regimes. Each value sits 1/2 inside the open interval that
/// makes ‖f‖_{p,Φ}, ‖g‖_{q,Ψ}, I and J finite:
///
/// 0 < p < 1 (q < 0):
/// * f: a_inner > σ − m (‖f‖ at 0); a_outer < min(σ, 1) − m (‖f‖ at ∞, and
///   Tf ~ ρ so J converges);
/// * g: b_inner < −n − σ (g^q at 0, q < 0); −n − σ < b_outer < −n − 1
///   (g^q at ∞, and I at ∞ where Tf ~ ρ).
///
/// p < 0 (0 < q < 1):
/// * f: 1 − m < a_inner < σ − m (Tf finite; f^p at 0 with p < 0);
///   a_outer > σ − m (f^p at ∞, and Tf ~ ρ^{a+m} with a + m > σ for J);
/// * g: b_inner > −n − σ; b_outer < −n − σ (‖g‖), leaving I finite since
///   b_outer + n + a_outer + m < 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReverseWindow {
    pub a_inner: f64,
    pub a_outer: f64,
    pub b_inner: f64,
    pub b_outer: f64,
}

pub fn reverse_window(params: &ProblemParams) -> Result<ReverseWindow> {
    params.validate()?;
    let (m, n, s, p) = (params.m as f64, params.n as f64, params.sigma, params.p);
    if p > 0.0 && p < 1.0 {
        Ok(ReverseWindow {
            a_inner: s - m + 1.5,
            a_outer: (s - m).min(1.0 - m) - 0.5,
            b_inner: -(n + s) - 0.5,
            b_outer: -(n + (s + 1.0) / 2.0),
        })
    } else if p < 0.0 {
        Ok(ReverseWindow {
            a_inner: 1.0 - m + (s - 1.0) / 2.0,
            a_outer: s - m + 0.5,
            b_inner: -n,
            b_outer: -(n + s) - 1.0,
        })
    } else {
        Err(Error::InvalidParams(format!("p = {p} is not a reverse regime")))
    }
}

/// Strictly positive DoublePower pair from [`reverse_window`].
pub fn reverse_profiles(params: &ProblemParams) -> Result<(RadialProfile, RadialProfile)> {
    let w = reverse_window(params)?;
    Ok((
        RadialProfile::double_power(params.m, params.alpha, w.a_inner, w.a_outer, 1.0),
        RadialProfile::double_power(params.n, params.beta, w.b_inner, w.b_outer, 1.0),
    ))
}

/// Labelled admissible pairs for the forward regime.
///
/// ExpPower needs exponent > max(σ − m, 1 − m) on x (‖f‖ and Tf finite at 0)
/// and > −n − σ on y; DoublePower needs a_inner > σ − m > a_outer and
/// b_inner > −n − σ > b_outer.
pub fn forward_pairs(params: &ProblemParams) -> Vec<(String, RadialProfile, RadialProfile)> {
    let (m, n, s) = (params.m as f64, params.n as f64, params.sigma);
    let (x, y) = ((params.m, params.alpha), (params.n, params.beta));
    let a = (s - m).max(1.0 - m) + 0.5;
    vec![
        (
            "exp/exp".into(),
            RadialProfile::exp_power(x.0, x.1, a, 1.0),
            RadialProfile::exp_power(y.0, y.1, 0.5, 1.0),
        ),
        (
            "double/double".into(),
            RadialProfile::double_power(x.0, x.1, s - m + 1.0, s - m - 1.0, 1.0),
            RadialProfile::double_power(y.0, y.1, -n - s + 1.0, -n - s - 1.0, 1.0),
        ),
        (
            "exp/double".into(),
            RadialProfile::exp_power(x.0, x.1, a + 1.0, 2.0),
            RadialProfile::double_power(y.0, y.1, -n - s + 0.5, -n - s - 2.0, 3.0),
        ),
    ]
}

/// Five pairs with finite ‖·‖₁ for the coth-kernel forms.
pub fn corollary_pairs(params: &ProblemParams) -> Vec<(String, RadialProfile, RadialProfile)> {
    let (m, s) = (params.m as f64, params.sigma);
    let a = (s - m).max(1.0 - m) + 0.5;
    let (x, y) = ((params.m, params.alpha), (params.n, params.beta));
    [(0.0, 1.0, 0.5, 1.0), (0.5, 1.0, 0.0, 2.0), (1.0, 0.5, 1.0, 1.0), (0.25, 3.0, 2.0, 0.5), (2.0, 1.0, 0.5, 4.0)]
        .iter()
        .map(|&(da, rf, b, rg)| {
            (
                format!("exp(a+{da},{rf})/exp({b},{rg})"),
                RadialProfile::exp_power(x.0, x.1, a + da, rf),
                RadialProfile::exp_power(y.0, y.1, b, rg),
            )
        })
        .collect()
}
