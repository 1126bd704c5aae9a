//! Adaptive one-dimensional quadrature on finite and semi-infinite intervals.
//!
//! The engine is a globally adaptive 10/21-point Gauss–Kronrod scheme with the
//! QUADPACK error heuristics: the panel with the largest error estimate is
//! bisected until the summed estimate meets the tolerance. Endpoint behavior
//! that a plain bisection handles poorly is absorbed by substitutions chosen
//! from [`EndpointBehavior`]:
//!
//! * a left endpoint singularity `(v − a)^λ`, λ > −1, is removed with
//!   `v = a + (b − a)·s^{1/(λ+1)}`;
//! * an exponentially decaying tail `e^{−c v}` is mapped to `(0, 1]` with
//!   `v = pivot − ln(t)/c`;
//! * an algebraic tail `v^{−1−κ}` is mapped with `v = pivot·t^{−1/κ}` up to a
//!   cap, beyond which the remainder is the exact power-law integral, using the
//!   locally measured exponent.
//!
//! Results are summed in panel order with pairwise reduction, so a given
//! integrand and configuration always yield the same bits.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadResult {
    fn zero() -> Self {
        Self {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        }
    }

    /// Sum of two independent pieces.
    pub fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    pub fn scale(self, factor: f64) -> QuadResult {
        QuadResult {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.abs(),
            ..self
        }
    }

    /// Relative error estimate, |error| / |value|.
    pub fn rel_error(&self) -> f64 {
        if self.value == 0.0 {
            if self.abs_error_estimate == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.abs_error_estimate / self.value.abs()
        }
    }

    /// Turns a non-converged result into [`Error::NonConvergence`].
    pub fn require_converged(self) -> Result<QuadResult> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                value: self.value,
                abs_error: self.abs_error_estimate,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub enum LeftEndpoint {
    #[default]
    Regular,
    /// Integrand behaves like (v − a)^exponent near the left end, exponent > −1.
    IntegrableSingularity { exponent: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RightTail {
    /// Integrand decays like e^{−rate·v}.
    ExponentialDecay { rate: f64 },
    /// Integrand decays like v^{−1−excess}.
    Algebraic { excess: f64 },
}

impl Default for RightTail {
    fn default() -> Self {
        RightTail::Algebraic { excess: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EndpointBehavior {
    pub left: LeftEndpoint,
    pub right: RightTail,
    /// Where a semi-infinite range is split into head and tail. Derived from
    /// the tail hint when absent.
    pub pivot: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub endpoint_behavior: EndpointBehavior,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
            endpoint_behavior: EndpointBehavior::default(),
        }
    }
}

impl QuadConfig {
    pub fn with_tolerances(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    /// Multiplies the absolute tolerance, for integrals whose natural size is
    /// far from 1.
    pub fn with_abs_scale(mut self, scale: f64) -> Self {
        if scale > 0.0 && scale.is_finite() {
            self.abs_tol *= scale;
        }
        self
    }

    pub fn with_left_singularity(mut self, exponent: f64) -> Self {
        self.endpoint_behavior.left = LeftEndpoint::IntegrableSingularity { exponent };
        self
    }

    pub fn with_regular_left(mut self) -> Self {
        self.endpoint_behavior.left = LeftEndpoint::Regular;
        self
    }

    pub fn with_exponential_tail(mut self, rate: f64) -> Self {
        self.endpoint_behavior.right = RightTail::ExponentialDecay { rate };
        self
    }

    pub fn with_algebraic_tail(mut self, excess: f64) -> Self {
        self.endpoint_behavior.right = RightTail::Algebraic { excess };
        self
    }

    pub fn with_pivot(mut self, pivot: f64) -> Self {
        self.endpoint_behavior.pivot = Some(pivot);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::InvalidParams("quadrature tolerances must be > 0".into()));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidParams("max_subdivisions must be ≥ 1".into()));
        }
        if let LeftEndpoint::IntegrableSingularity { exponent } = self.endpoint_behavior.left {
            if !(exponent > -1.0) {
                return Err(Error::InvalidParams(format!(
                    "left singularity exponent {exponent} is not integrable"
                )));
            }
        }
        match self.endpoint_behavior.right {
            RightTail::ExponentialDecay { rate } if !(rate > 0.0 && rate.is_finite()) => {
                Err(Error::InvalidParams(format!("decay rate {rate} must be > 0")))
            }
            RightTail::Algebraic { excess } if !(excess > 0.0 && excess.is_finite()) => {
                Err(Error::InvalidParams(format!("algebraic tail excess {excess} must be > 0")))
            }
            _ => Ok(()),
        }
    }
}

// Kronrod abscissae (descending) and weights; Gauss nodes sit at odd indices.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_223_048,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn eval<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NanIntegrand { at: x })
    }
}

fn gauss_kronrod_21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = eval(f, center)?;
    let mut res_gauss = 0.0;
    let mut res_kronrod = WGK[10] * f_center;
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let lo = eval(f, center - dx)?;
        let hi = eval(f, center + dx)?;
        fv1[j] = lo;
        fv2[j] = hi;
        res_kronrod += WGK[j] * (lo + hi);
        res_abs += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (lo + hi);
        }
    }
    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_kronrod - res_gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Panel { a, b, value, error })
}

fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n => pairwise_sum(&values[..n / 2]) + pairwise_sum(&values[n / 2..]),
    }
}

/// Globally adaptive Gauss–Kronrod on a finite interval, no substitutions.
pub fn adaptive_gk21<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult::zero());
    }
    let first = gauss_kronrod_21(f, a, b)?;
    let mut evaluations = 21;
    let mut heap = BinaryHeap::new();
    let mut total = first.value;
    let mut total_err = first.error;
    heap.push(first);
    let mut converged = total_err <= abs_tol.max(rel_tol * total.abs());
    let mut subdivisions = 1;
    while !converged && subdivisions < max_subdivisions {
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // Panel can no longer be split in floating point.
            heap.push(worst);
            break;
        }
        let left = gauss_kronrod_21(f, worst.a, mid)?;
        let right = gauss_kronrod_21(f, mid, worst.b)?;
        evaluations += 42;
        subdivisions += 1;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if subdivisions % 64 == 0 {
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
        }
        converged = total_err <= abs_tol.max(rel_tol * total.abs());
    }
    let mut panels = heap.into_vec();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let values: Vec<f64> = panels.iter().map(|p| p.value).collect();
    let errors: Vec<f64> = panels.iter().map(|p| p.error).collect();
    let value = pairwise_sum(&values);
    let abs_error_estimate = pairwise_sum(&errors);
    Ok(QuadResult {
        value,
        abs_error_estimate,
        evaluations,
        converged: abs_error_estimate <= abs_tol.max(rel_tol * value.abs()),
    })
}

/// ∫_a^b f, honoring the configured left endpoint behavior.
pub fn integrate_finite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::InvalidParams(format!("integrate_finite: need finite a ≤ b, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadResult::zero());
    }
    match cfg.endpoint_behavior.left {
        LeftEndpoint::IntegrableSingularity { exponent } if exponent != 0.0 => {
            let power = 1.0 / (exponent + 1.0);
            let width = b - a;
            let mapped = |s: f64| {
                let v = a + width * s.powf(power);
                if v <= a {
                    return 0.0;
                }
                let fv = f(v.min(b));
                // Near s = 0 the Jacobian can overflow while f underflows.
                if fv == 0.0 {
                    return 0.0;
                }
                fv * width * power * s.powf(power - 1.0)
            };
            adaptive_gk21(&mapped, 0.0, 1.0, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions)
        }
        _ => adaptive_gk21(&f, a, b, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions),
    }
}

/// Ratio between the tail pivot and the point where the algebraic map stops.
const ALGEBRAIC_CAP_FACTOR: f64 = 1e60;

/// Default head/tail split for a semi-infinite range starting at `a`.
pub fn default_pivot(a: f64, tail: RightTail) -> f64 {
    match tail {
        RightTail::ExponentialDecay { rate } => a + 10.0 / rate,
        RightTail::Algebraic { .. } => {
            if a > 0.0 {
                2.0 * a
            } else {
                1.0
            }
        }
    }
}

/// ∫_a^∞ f. The range is split at a pivot; the head goes to
/// [`integrate_finite`], the tail is mapped onto a finite interval according
/// to the configured [`RightTail`].
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, a: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    cfg.validate()?;
    if !a.is_finite() {
        return Err(Error::InvalidParams(format!("integrate_semi_infinite: start {a} must be finite")));
    }
    let tail = cfg.endpoint_behavior.right;
    let pivot = cfg
        .endpoint_behavior
        .pivot
        .filter(|p| *p > a)
        .unwrap_or_else(|| default_pivot(a, tail));
    let head = integrate_finite(&f, a, pivot, cfg)?;
    let tail_result = integrate_tail(&f, pivot, tail, cfg)?;
    Ok(head.combine(tail_result))
}

fn integrate_tail<F: Fn(f64) -> f64>(f: &F, pivot: f64, tail: RightTail, cfg: &QuadConfig) -> Result<QuadResult> {
    match tail {
        RightTail::ExponentialDecay { rate } => {
            let mapped = |t: f64| {
                let v = pivot - t.ln() / rate;
                if !v.is_finite() {
                    return 0.0;
                }
                f(v) / (rate * t)
            };
            adaptive_gk21(&mapped, 0.0, 1.0, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions)
        }
        RightTail::Algebraic { excess } => algebraic_tail(f, pivot, excess, cfg),
    }
}

fn algebraic_tail<F: Fn(f64) -> f64>(f: &F, pivot: f64, excess: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    let cap = pivot * ALGEBRAIC_CAP_FACTOR;
    let ln_ratio = ALGEBRAIC_CAP_FACTOR.ln();
    let t_cap = (-excess * ln_ratio).exp();
    let inv = 1.0 / excess;
    let mapped = |t: f64| {
        let v = pivot * t.powf(-inv);
        if !v.is_finite() {
            return 0.0;
        }
        f(v) * pivot * inv * t.powf(-inv - 1.0)
    };
    let body = adaptive_gk21(&mapped, t_cap, 1.0, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions)?;

    // Remainder beyond the cap from the locally measured power law.
    let e = std::f64::consts::E;
    let f0 = eval(f, cap)?;
    if f0 == 0.0 {
        return Ok(body);
    }
    let f1 = eval(f, cap / e)?;
    let f2 = eval(f, cap / (e * e))?;
    let local = |hi: f64, lo: f64| (lo / hi).ln() - 1.0;
    let kappa = local(f0, f1);
    let kappa_prev = local(f1, f2);
    if !(kappa > 0.0) || f0.signum() != f1.signum() {
        return Err(Error::Divergent(format!(
            "tail does not decay faster than 1/v (local excess {kappa:.3e} at v = {cap:.3e})"
        )));
    }
    let remainder = f0 * cap / kappa;
    let remainder_err = remainder.abs() * ((kappa - kappa_prev).abs() / kappa + 1e-14);
    Ok(QuadResult {
        value: body.value + remainder,
        abs_error_estimate: body.abs_error_estimate + remainder_err,
        evaluations: body.evaluations + 3,
        converged: body.converged
            && remainder_err <= cfg.abs_tol.max(cfg.rel_tol * (body.value + remainder).abs()),
    })
}

/// Where to integrate: `[start, end]`, or `[start, ∞)` when `end` is `None`,
/// split at the given interior breakpoints.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Span {
    pub start: f64,
    pub end: Option<f64>,
    pub breakpoints: Vec<f64>,
}

impl Span {
    pub fn half_line(start: f64) -> Self {
        Self {
            start,
            end: None,
            breakpoints: Vec::new(),
        }
    }

    pub fn finite(start: f64, end: f64) -> Self {
        Self {
            start,
            end: Some(end),
            breakpoints: Vec::new(),
        }
    }

    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(points);
        self
    }

    fn pieces(&self) -> Vec<f64> {
        let upper = self.end.unwrap_or(f64::INFINITY);
        let mut cuts: Vec<f64> = self
            .breakpoints
            .iter()
            .copied()
            .filter(|x| x.is_finite() && *x > self.start && *x < upper)
            .collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut out = Vec::with_capacity(cuts.len() + 2);
        out.push(self.start);
        out.extend(cuts);
        if let Some(end) = self.end {
            out.push(end);
        }
        out
    }
}

/// Integrates over a [`Span`]. The left endpoint behavior applies to the first
/// piece only, the tail behavior to the last piece of a half-line.
pub fn integrate_span<F: Fn(f64) -> f64>(f: F, span: &Span, cfg: &QuadConfig) -> Result<QuadResult> {
    cfg.validate()?;
    let cuts = span.pieces();
    let interior = cfg.with_regular_left();
    let mut total = QuadResult::zero();
    for (i, pair) in cuts.windows(2).enumerate() {
        let piece_cfg = if i == 0 { cfg } else { &interior };
        total = total.combine(integrate_finite(&f, pair[0], pair[1], piece_cfg)?);
    }
    if span.end.is_none() {
        let last = *cuts.last().expect("span has a start");
        let tail_cfg = if cuts.len() == 1 { *cfg } else { interior };
        let mut tail_cfg = tail_cfg;
        if tail_cfg.endpoint_behavior.pivot.is_some_and(|p| p <= last) {
            tail_cfg.endpoint_behavior.pivot = None;
        }
        total = total.combine(integrate_semi_infinite(&f, last, &tail_cfg)?);
    }
    Ok(total)
}

/// Integration plan for one level of a nested integral.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub span: Span,
    pub cfg: QuadConfig,
}

impl Plan {
    pub fn new(span: Span, cfg: QuadConfig) -> Self {
        Self { span, cfg }
    }
}

/// ∫₀^∞∫₀^∞ k(r, ρ) dr dρ with default plans on both levels.
///
/// The inner tolerance is a hundred times tighter than the outer one.
pub fn integrate_double_radial<K: Fn(f64, f64) -> f64>(k: K, cfg: &QuadConfig) -> Result<QuadResult> {
    let inner_cfg = cfg.with_tolerances(cfg.rel_tol * 1e-2, cfg.abs_tol * 1e-2);
    integrate_double_with(
        k,
        &Plan::new(Span::half_line(0.0), *cfg),
        |_| Plan::new(Span::half_line(0.0), inner_cfg),
    )
}

/// Nested quadrature: outer over ρ with `outer`, inner over r with the plan
/// returned by `inner` for each ρ.
///
/// The combined error estimate is the outer estimate plus the worst inner
/// relative estimate applied to the magnitude of the result. The outer rule
/// runs to half the requested tolerance, leaving the other half for the inner
/// errors that are added once it stops.
pub fn integrate_double_with<K, P>(k: K, outer: &Plan, inner: P) -> Result<QuadResult>
where
    K: Fn(f64, f64) -> f64,
    P: Fn(f64) -> Plan,
{
    let worst_inner_rel = Cell::new(0.0f64);
    let inner_evals = Cell::new(0usize);
    let inner_ok = Cell::new(true);
    let failure: Cell<Option<Error>> = Cell::new(None);
    let outer_integrand = |rho: f64| -> f64 {
        let plan = inner(rho);
        match integrate_span(|r| k(r, rho), &plan.span, &plan.cfg) {
            Ok(res) => {
                inner_evals.set(inner_evals.get() + res.evaluations);
                // The inner target is tighter than needed; what matters is
                // that each inner value is good to the outer tolerance.
                if !res.converged && res.rel_error() > outer.cfg.rel_tol {
                    inner_ok.set(false);
                }
                if res.value != 0.0 {
                    worst_inner_rel.set(worst_inner_rel.get().max(res.rel_error()));
                }
                res.value
            }
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        }
    };
    let outer_cfg = outer.cfg.with_tolerances(0.5 * outer.cfg.rel_tol, 0.5 * outer.cfg.abs_tol);
    let result = integrate_span(outer_integrand, &outer.span, &outer_cfg);
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let res = result?;
    let abs_error_estimate = res.abs_error_estimate + worst_inner_rel.get() * res.value.abs();
    Ok(QuadResult {
        value: res.value,
        abs_error_estimate,
        evaluations: res.evaluations + inner_evals.get(),
        converged: res.converged
            && inner_ok.get()
            && abs_error_estimate <= outer.cfg.abs_tol.max(outer.cfg.rel_tol * res.value.abs()),
    })
}

/// Outcome of a truncation-growth probe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationProbe {
    pub partial_short: f64,
    pub partial_long: f64,
    pub divergent: bool,
}

/// Detects divergence of ∫_a^∞ f by comparing partial integrals up to 10³ and
/// 10⁶: the integral is declared divergent when the extension changes the
/// value by more than `tolerance` (relative) and keeps growing in the same
/// direction between 10³ → 10⁴·⁵ → 10⁶.
pub fn probe_tail_divergence<F: Fn(f64) -> f64>(f: F, a: f64, tolerance: f64, cfg: &QuadConfig) -> Result<TruncationProbe> {
    let finite_cfg = cfg.with_regular_left();
    let upto = |end: f64| -> Result<f64> {
        let span = Span::finite(a, end).with_breakpoints((0..=6).map(|k| 10f64.powi(k)));
        Ok(integrate_span(&f, &span, &finite_cfg)?.value)
    };
    let short = upto(1e3)?;
    let mid = upto(10f64.powf(4.5))?;
    let long = upto(1e6)?;
    let step1 = mid - short;
    let step2 = long - mid;
    let scale = short.abs().max(f64::MIN_POSITIVE);
    let divergent = (long - short).abs() > tolerance * scale && step1.signum() == step2.signum() && step2.abs() > 0.5 * step1.abs();
    Ok(TruncationProbe {
        partial_short: short,
        partial_long: long,
        divergent,
    })
}
