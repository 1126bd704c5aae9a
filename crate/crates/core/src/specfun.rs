//! Real-argument Gamma and Riemann zeta functions, and the closed-form
//! constants of the coth inequality built from them.
//!
//! The central constant is the Mellin-type integral of the kernel,
//!
//! ```text
//! M(σ) = ∫₀^∞ (coth v − 1) v^{σ−1} dv = Γ(σ) ζ(σ) / 2^{σ−1},   σ > 1,
//! ```
//!
//! and the surface factor of the ℓ^γ "sphere" in the positive orthant,
//!
//! ```text
//! C(s, γ) = Γ(1/γ)^s / (γ^{s−1} Γ(s/γ)),
//! ```
//!
//! which turns an s-dimensional integral of a function of ‖x‖_γ into a
//! one-dimensional integral against r^{s−1}.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters (m, n, α, β, σ, p) of one inequality instance; q is derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    /// Dimension of x-space.
    pub m: u32,
    /// Dimension of y-space.
    pub n: u32,
    /// ℓ^α norm parameter on x.
    pub alpha: f64,
    /// ℓ^β norm parameter on y.
    pub beta: f64,
    /// Kernel and weight exponent, σ > 1.
    pub sigma: f64,
    /// Hölder exponent, p ∉ {0, 1}.
    pub p: f64,
}

impl ProblemParams {
    pub fn new(m: u32, n: u32, alpha: f64, beta: f64, sigma: f64, p: f64) -> Result<Self> {
        let params = Self {
            m,
            n,
            alpha,
            beta,
            sigma,
            p,
        };
        params.validate()?;
        Ok(params)
    }

    /// The one-dimensional case m = n = α = β = 1.
    pub fn one_dimensional(sigma: f64, p: f64) -> Result<Self> {
        Self::new(1, 1, 1.0, 1.0, sigma, p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::InvalidParams("dimensions m, n must be ≥ 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidParams(format!("alpha = {} must be > 0", self.alpha)));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::InvalidParams(format!("beta = {} must be > 0", self.beta)));
        }
        if !(self.sigma > 1.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidParams(format!("sigma = {} must be > 1", self.sigma)));
        }
        if !self.p.is_finite() || self.p == 0.0 || self.p == 1.0 {
            return Err(Error::InvalidParams(format!("p = {} must not be 0 or 1", self.p)));
        }
        Ok(())
    }

    /// Conjugate exponent, 1/p + 1/q = 1.
    pub fn q(&self) -> f64 {
        self.p / (self.p - 1.0)
    }

    /// `true` for p > 1, where the inequalities hold in the forward direction.
    pub fn is_forward(&self) -> bool {
        self.p > 1.0
    }

    /// The same instance with the roles of x and y exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            m: self.n,
            n: self.m,
            alpha: self.beta,
            beta: self.alpha,
            sigma: self.sigma,
            p: self.q(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulaId {
    K,
    K1,
    K2,
    MellinCoth,
    SurfaceC,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormConstant {
    pub formula: FormulaId,
    pub value: f64,
}

/// All closed-form constants of one instance, in a fixed order.
pub fn constants_table(params: &ProblemParams) -> Result<Vec<ClosedFormConstant>> {
    params.validate()?;
    Ok(vec![
        ClosedFormConstant {
            formula: FormulaId::MellinCoth,
            value: mellin_coth_constant(params.sigma)?,
        },
        ClosedFormConstant {
            formula: FormulaId::K1,
            value: k1(params)?,
        },
        ClosedFormConstant {
            formula: FormulaId::K2,
            value: k2(params)?,
        },
        ClosedFormConstant {
            formula: FormulaId::K,
            value: best_constant_k(params)?,
        },
    ])
}

// Lanczos approximation, g = 10.900511, eleven terms (Pugh 2004).
const LANCZOS_G: f64 = 10.900511;
const LANCZOS_COEFFS: [f64; 11] = [
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];
const TWO_SQRT_E_OVER_PI: f64 = 1.860_382_734_205_265_7;

/// Largest argument with a finite Γ.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain {
            function: "gamma",
            value: x,
            expected: "x > 0",
        });
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow {
            function: "gamma",
            value: x,
        });
    }
    if x.fract() == 0.0 {
        // (x−1)! exactly while the product fits in 53 bits.
        return Ok((2..x as u32).fold(1.0, |acc, k| acc * k as f64));
    }
    if x < 1.0 {
        return Ok(lanczos(x + 1.0) / x);
    }
    // Reduce to [1, 2), where the Lanczos sum is accurate to a few ulp, and
    // climb back with the recurrence.
    let mut shifted = x;
    let mut factor = 1.0;
    while shifted >= 2.0 {
        shifted -= 1.0;
        factor *= shifted;
    }
    Ok(lanczos(shifted) * factor)
}

fn lanczos(x: f64) -> f64 {
    let sum = LANCZOS_COEFFS
        .iter()
        .enumerate()
        .skip(1)
        .fold(LANCZOS_COEFFS[0], |acc, (k, c)| acc + c / (x + k as f64 - 1.0));
    let base = (x - 0.5 + LANCZOS_G) / std::f64::consts::E;
    sum * TWO_SQRT_E_OVER_PI * base.powf(x - 0.5)
}

/// ln Γ(x) for x > 0, valid beyond the overflow threshold of [`gamma`].
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain {
            function: "ln_gamma",
            value: x,
            expected: "x > 0",
        });
    }
    if x < 0.5 {
        return Ok((lanczos(x + 1.0) / x).ln());
    }
    let sum = LANCZOS_COEFFS
        .iter()
        .enumerate()
        .skip(1)
        .fold(LANCZOS_COEFFS[0], |acc, (k, c)| acc + c / (x + k as f64 - 1.0));
    let base = (x - 0.5 + LANCZOS_G) / std::f64::consts::E;
    Ok((sum * TWO_SQRT_E_OVER_PI).ln() + (x - 0.5) * base.ln())
}

// B_{2j} / (2j)! for j = 1..=14.
const BERNOULLI_OVER_FACTORIAL: [f64; 14] = [
    8.333_333_333_333_333e-2,
    -1.388_888_888_888_889e-3,
    3.306_878_306_878_307e-5,
    -8.267_195_767_195_767e-7,
    2.087_675_698_786_81e-8,
    -5.284_190_138_687_493e-10,
    1.338_253_653_068_468e-11,
    -3.389_680_296_322_583e-13,
    8.586_062_056_277_845e-15,
    -2.174_868_698_558_062e-16,
    5.509_002_828_360_23e-18,
    -1.395_446_468_581_252e-19,
    3.534_707_039_629_467e-21,
    -8.953_517_427_037_547e-23,
];

/// ζ(σ) together with a bound on the Euler–Maclaurin remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub value: f64,
    pub remainder_bound: f64,
}

/// Riemann zeta for real σ > 1.
pub fn zeta(sigma: f64) -> Result<f64> {
    zeta_with_bound(sigma).map(|z| z.value)
}

/// Riemann zeta by Euler–Maclaurin summation with an explicit remainder bound.
///
/// Direct terms k < N are summed smallest first; the tail is the integral,
/// the half end-point term and Bernoulli corrections until they drop below
/// 1e-17 relative. For real σ the remainder is bounded by the first omitted
/// correction.
pub fn zeta_with_bound(sigma: f64) -> Result<ZetaValue> {
    if sigma.is_nan() || sigma <= 1.0 {
        return Err(Error::Domain {
            function: "zeta",
            value: sigma,
            expected: "sigma > 1",
        });
    }
    if sigma > 120.0 {
        // 2^{-120} is far below one ulp of 1.
        return Ok(ZetaValue {
            value: 1.0 + 2f64.powf(-sigma),
            remainder_bound: 3f64.powf(-sigma),
        });
    }
    let n_direct = (10.0 + sigma / 2.0).ceil() as u32;
    let big_n = n_direct as f64;

    let mut direct = 0.0;
    for k in (1..n_direct).rev() {
        direct += (k as f64).powf(-sigma);
    }
    let n_pow = big_n.powf(-sigma);
    let mut tail = big_n * n_pow / (sigma - 1.0) + 0.5 * n_pow;

    // Correction j carries s(s+1)...(s+2j-2) N^{-s-2j+1}.
    let mut rising = sigma;
    let mut n_factor = n_pow / big_n;
    let mut bound = f64::INFINITY;
    for (j, b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = b * rising * n_factor;
        if term.abs() < 1e-17 * (direct + tail).abs() {
            bound = term.abs();
            break;
        }
        tail += term;
        let k = (2 * j + 1) as f64;
        rising *= (sigma + k) * (sigma + k + 1.0);
        n_factor /= big_n * big_n;
    }
    if !bound.is_finite() {
        bound = (BERNOULLI_OVER_FACTORIAL[13] * rising * n_factor).abs();
    }
    Ok(ZetaValue {
        value: tail + direct,
        remainder_bound: bound,
    })
}

/// M(σ) = Γ(σ) ζ(σ) / 2^{σ−1}, the Mellin transform of coth v − 1 at σ.
pub fn mellin_coth_constant(sigma: f64) -> Result<f64> {
    if sigma.is_nan() || sigma <= 1.0 {
        return Err(Error::Domain {
            function: "mellin_coth_constant",
            value: sigma,
            expected: "sigma > 1",
        });
    }
    Ok(gamma(sigma)? * zeta(sigma)? / 2f64.powf(sigma - 1.0))
}

/// C(s, γ) = Γ(1/γ)^s / (γ^{s−1} Γ(s/γ)).
///
/// For radial integrands, ∫_{ℝ₊^s} F(‖x‖_γ) dx = C(s, γ) ∫₀^∞ F(r) r^{s−1} dr.
pub fn surface_constant(s: u32, gamma_param: f64) -> Result<f64> {
    if s == 0 {
        return Err(Error::InvalidParams("surface_constant: s must be ≥ 1".into()));
    }
    if gamma_param.is_nan() || gamma_param <= 0.0 {
        return Err(Error::Domain {
            function: "surface_constant",
            value: gamma_param,
            expected: "gamma > 0",
        });
    }
    if s == 1 {
        return Ok(1.0);
    }
    let s_f = s as f64;
    // Work in logs: Γ(1/γ)^s overflows quickly for small γ.
    let ln_c = s_f * ln_gamma(1.0 / gamma_param)?
        - (s_f - 1.0) * gamma_param.ln()
        - ln_gamma(s_f / gamma_param)?;
    if (1.0 / gamma_param) <= GAMMA_MAX_ARG && (s_f / gamma_param) <= GAMMA_MAX_ARG {
        let direct = gamma(1.0 / gamma_param)?.powi(s as i32)
            / (gamma_param.powi(s as i32 - 1) * gamma(s_f / gamma_param)?);
        if direct.is_finite() && direct > 0.0 {
            return Ok(direct);
        }
    }
    Ok(ln_c.exp())
}

/// Which denominator to use in K₁.
///
/// The constant is printed once with α^{n−1}, but the symmetric derivation
/// and the assembled best constant both require β^{n−1}. `AsPrinted` exists
/// only so that test fixtures can inject the misprint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum K1Convention {
    #[default]
    Corrected,
    AsPrinted,
}

/// K₁(σ) = C(n, β)·M(σ), the constant value of the weight ϖ(σ, x).
pub fn k1(params: &ProblemParams) -> Result<f64> {
    k1_with(params, K1Convention::Corrected)
}

pub fn k1_with(params: &ProblemParams, convention: K1Convention) -> Result<f64> {
    params.validate()?;
    let surface = surface_constant(params.n, params.beta)?;
    let surface = match convention {
        K1Convention::Corrected => surface,
        K1Convention::AsPrinted => {
            // Swap the β^{n−1} in the denominator for α^{n−1}.
            let exp = params.n as f64 - 1.0;
            surface * (params.beta / params.alpha).powf(exp)
        }
    };
    Ok(surface * mellin_coth_constant(params.sigma)?)
}

/// K₂(σ) = C(m, α)·M(σ), the constant value of the weight ω(σ, y).
pub fn k2(params: &ProblemParams) -> Result<f64> {
    params.validate()?;
    Ok(surface_constant(params.m, params.alpha)? * mellin_coth_constant(params.sigma)?)
}

/// K₂ evaluated at a shifted exponent σ̃ (used by the truncated weight).
pub fn k2_at(m: u32, alpha: f64, sigma_tilde: f64) -> Result<f64> {
    Ok(surface_constant(m, alpha)? * mellin_coth_constant(sigma_tilde)?)
}

/// The best constant K(σ) = C(n, β)^{1/p} C(m, α)^{1/q} M(σ).
///
/// The same formula serves the reverse regimes 0 < p < 1 and p < 0, where
/// one of the exponents 1/p, 1/q is negative.
pub fn best_constant_k(params: &ProblemParams) -> Result<f64> {
    params.validate()?;
    let c_y = surface_constant(params.n, params.beta)?;
    let c_x = surface_constant(params.m, params.alpha)?;
    Ok(c_y.powf(1.0 / params.p) * c_x.powf(1.0 / params.q()) * mellin_coth_constant(params.sigma)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    // Reference values: mpmath at 40 significant digits.
    const GAMMA_REF: &[(f64, f64)] = &[
        (0.001, 999.42377248459546611),
        (0.1, 9.5135076986687318363),
        (0.5, 1.7724538509055160273),
        (1.5, 0.88622692545275801365),
        (2.5, 1.3293403881791370205),
        (3.7, 4.1706517837966031654),
        (10.25, 639232.59877957679428),
        (33.3, 7.487577596522706608e35),
        (100.5, 9.3209631040827166083e156),
        (150.75, 1.6315459640751202293e262),
        (170.0, 4.2690680090047052749e304),
    ];

    const ZETA_REF: &[(f64, f64)] = &[
        (1.1, 10.584448464950809826),
        (1.5, 2.6123753486854883433),
        (2.0, 1.6449340668482264365),
        (3.0, 1.2020569031595942854),
        (4.0, 1.0823232337111381915),
        (5.0, 1.0369277551433699263),
        (10.0, 1.0009945751278180853),
        (50.0, 1.0000000000000008882),
    ];

    #[test]
    fn gamma_trivial_values() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert_relative_eq!(gamma(5.0).unwrap(), 24.0, max_relative = 1e-15);
        assert_relative_eq!(gamma(0.5).unwrap(), PI.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn gamma_matches_reference() {
        for &(x, want) in GAMMA_REF {
            let got = gamma(x).unwrap();
            assert!(((got - want) / want).abs() <= 1e-13, "gamma({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn gamma_factorials() {
        let mut fact = 1.0f64;
        for k in 1..=20u32 {
            assert_relative_eq!(gamma(k as f64 + 1.0).unwrap(), {
                fact *= k as f64;
                fact
            }, max_relative = 1e-14);
        }
    }

    #[test]
    fn gamma_domain_and_overflow() {
        assert!(matches!(gamma(0.0), Err(Error::Domain { .. })));
        assert!(matches!(gamma(-1.5), Err(Error::Domain { .. })));
        assert!(matches!(gamma(f64::NAN), Err(Error::Domain { .. })));
        assert!(matches!(gamma(172.0), Err(Error::Overflow { .. })));
        assert!(gamma(171.6).unwrap().is_finite());
    }

    #[test]
    fn ln_gamma_agrees_with_gamma() {
        for &(x, want) in GAMMA_REF {
            assert_relative_eq!(ln_gamma(x).unwrap(), want.ln(), epsilon = 1e-12, max_relative = 1e-13);
        }
    }

    #[test]
    fn zeta_matches_reference() {
        for &(s, want) in ZETA_REF {
            let got = zeta(s).unwrap();
            assert!(((got - want) / want).abs() <= 1e-13, "zeta({s}) = {got}, want {want}");
        }
        assert_relative_eq!(zeta(2.0).unwrap(), PI * PI / 6.0, max_relative = 1e-14);
        assert_relative_eq!(zeta(4.0).unwrap(), PI.powi(4) / 90.0, max_relative = 1e-14);
    }

    #[test]
    fn zeta_large_argument() {
        let z = zeta(50.0).unwrap();
        assert!(z > 1.0 && z < 1.0 + 1e-14);
        assert!(zeta(500.0).unwrap() >= 1.0);
    }

    /// Partial sums with the trapezoid-corrected integral tail, bracketed by
    /// the next Euler–Maclaurin term. Independent of the implementation's
    /// Bernoulli table.
    fn zeta_partial_sum_oracle(s: f64, n: u64) -> (f64, f64) {
        let mut sum = 0.0;
        for k in (1..n).rev() {
            sum += (k as f64).powf(-s);
        }
        let nf = n as f64;
        let est = sum + nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
        let slack = s * nf.powf(-s - 1.0) / 12.0;
        (est, slack * 1.01 + 1e-15 * est)
    }

    #[test]
    fn zeta_agrees_with_partial_sum_oracle() {
        for s in [1.5, 2.0, 3.0, 4.0, 7.5] {
            let (est, slack) = zeta_partial_sum_oracle(s, 200_000);
            let got = zeta(s).unwrap();
            assert!((got - est).abs() <= slack, "s = {s}: {got} vs {est} ± {slack}");
        }
    }

    #[test]
    fn zeta_remainder_bound_is_tiny() {
        for s in [1.01, 1.5, 2.0, 10.0, 60.0] {
            let z = zeta_with_bound(s).unwrap();
            assert!(z.remainder_bound <= 1e-14 * z.value, "s = {s}: {:?}", z);
        }
    }

    #[test]
    fn zeta_domain() {
        assert!(matches!(zeta(1.0), Err(Error::Domain { .. })));
        assert!(matches!(zeta(0.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn mellin_constant_values() {
        assert_relative_eq!(mellin_coth_constant(2.0).unwrap(), PI * PI / 12.0, max_relative = 1e-14);
        assert_relative_eq!(mellin_coth_constant(2.0).unwrap(), 0.82246703342411321824, max_relative = 1e-13);
        assert_relative_eq!(mellin_coth_constant(3.0).unwrap(), 0.6010284515797971427, max_relative = 1e-13);
        assert_relative_eq!(mellin_coth_constant(1.5).unwrap(), 1.6370634782410159931, max_relative = 1e-13);
        assert_relative_eq!(mellin_coth_constant(10.0).unwrap(), 709.45490512184106798, max_relative = 1e-13);
        assert!(mellin_coth_constant(1.0).is_err());
    }

    #[test]
    fn surface_constant_values() {
        for g in [0.3, 1.0, 2.0, 7.0] {
            assert_eq!(surface_constant(1, g).unwrap(), 1.0);
        }
        assert_relative_eq!(surface_constant(2, 1.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(surface_constant(2, 2.0).unwrap(), PI / 2.0, max_relative = 1e-14);
        // Γ(1/3)^3 / (9 Γ(1))
        let g13 = 2.6789385347077476337;
        assert_relative_eq!(surface_constant(3, 3.0).unwrap(), g13 * g13 * g13 / 9.0, max_relative = 1e-13);
        assert!(surface_constant(0, 1.0).is_err());
        assert!(surface_constant(2, 0.0).is_err());
        // Γ(1/γ) far beyond the direct range still yields a finite constant.
        assert!(surface_constant(2, 0.004).unwrap().is_finite());
    }

    #[test]
    fn best_constant_examples() {
        let p = ProblemParams::one_dimensional(2.0, 2.0).unwrap();
        assert_relative_eq!(best_constant_k(&p).unwrap(), 0.82246703342411321824, max_relative = 1e-13);
        for sigma in [1.2, 2.0, 4.5] {
            for pp in [1.5, 3.0, 0.5, -1.0] {
                let p = ProblemParams::one_dimensional(sigma, pp).unwrap();
                assert_relative_eq!(
                    best_constant_k(&p).unwrap(),
                    mellin_coth_constant(sigma).unwrap(),
                    max_relative = 1e-15
                );
            }
        }
        let p = ProblemParams::new(2, 1, 2.0, 1.0, 3.0, 2.0).unwrap();
        let want = (PI / 2.0).sqrt() * 2.0 * 1.2020569031595942854 / 4.0;
        assert_relative_eq!(best_constant_k(&p).unwrap(), want, max_relative = 1e-13);
    }

    #[test]
    fn k1_k2_examples() {
        let p = ProblemParams::new(1, 2, 1.0, 2.0, 2.0, 2.0).unwrap();
        assert_relative_eq!(k1(&p).unwrap(), (PI / 2.0) * PI * PI / 12.0, max_relative = 1e-14);
        assert_relative_eq!(k2(&p).unwrap(), mellin_coth_constant(2.0).unwrap(), max_relative = 1e-15);
        let p = ProblemParams::new(3, 2, 2.0, 3.0, 1.7, 1.4).unwrap();
        let k = k1(&p).unwrap().powf(1.0 / p.p) * k2(&p).unwrap().powf(1.0 / p.q());
        assert_relative_eq!(best_constant_k(&p).unwrap(), k, max_relative = 1e-14);
    }

    #[test]
    fn misprinted_k1_differs_only_when_alpha_ne_beta() {
        let same = ProblemParams::new(2, 3, 2.0, 2.0, 2.0, 2.0).unwrap();
        assert_eq!(
            k1_with(&same, K1Convention::AsPrinted).unwrap(),
            k1(&same).unwrap()
        );
        let diff = ProblemParams::new(2, 3, 1.0, 2.0, 2.0, 2.0).unwrap();
        let ratio = k1_with(&diff, K1Convention::AsPrinted).unwrap() / k1(&diff).unwrap();
        assert_relative_eq!(ratio, 4.0, max_relative = 1e-14);
    }

    #[test]
    fn params_validation() {
        assert!(ProblemParams::new(0, 1, 1.0, 1.0, 2.0, 2.0).is_err());
        assert!(ProblemParams::new(1, 1, 0.0, 1.0, 2.0, 2.0).is_err());
        assert!(ProblemParams::new(1, 1, 1.0, 1.0, 1.0, 2.0).is_err());
        assert!(ProblemParams::new(1, 1, 1.0, 1.0, 2.0, 1.0).is_err());
        assert!(ProblemParams::new(1, 1, 1.0, 1.0, 2.0, 0.0).is_err());
        let p = ProblemParams::new(1, 1, 1.0, 1.0, 2.0, 3.0).unwrap();
        assert_relative_eq!(1.0 / p.p + 1.0 / p.q(), 1.0, max_relative = 1e-15);
        let p = ProblemParams::new(1, 1, 1.0, 1.0, 2.0, 0.5).unwrap();
        assert_eq!(p.q(), -1.0);
    }
}
