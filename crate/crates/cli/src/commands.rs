//! One function per subcommand: grid in, [`Report`] out.

use hilbert_coth::quad::QuadConfig;
use hilbert_coth::sharp::{opnorm_search_with, sharpness_sweep, OpNormFamily};
use hilbert_coth::specfun::{best_constant_k, k1, k2, mellin_coth_constant, K1Convention, ProblemParams};
use hilbert_coth::verify::{
    check_corollary_coth, check_theorem1, corollary_pairs, forward_pairs, reverse_profiles, RadialProfile,
};
use hilbert_coth::weights::{mellin_integral, omega, varpi_with};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{ConstantsArgs, Family, OpnormArgs, Preset, SharpnessArgs, VerifyArgs, WeightKind, WeightsArgs};
use crate::report::{Check, Report, Row};
use crate::RunError;

pub const CONSTANTS_COLUMNS: &[&str] = &["sigma", "p", "q", "mellin", "mellin_quadrature", "k1", "k2", "k"];

pub const WEIGHTS_COLUMNS: &[&str] =
    &["weight", "sigma", "point_norm", "computed", "closed_form", "abs_error_estimate"];

pub const THEOREM_COLUMNS: &[&str] = &[
    "pair",
    "sigma",
    "p",
    "direction",
    "i",
    "i_error",
    "j",
    "j_error",
    "f_norm",
    "g_norm",
    "k",
    "ratio",
    "ratio_j",
    "holds_i",
    "holds_j",
    "holder_bound",
    "holder_holds",
];

pub const COROLLARY_COLUMNS: &[&str] = &[
    "pair",
    "sigma",
    "p",
    "i",
    "i_coth",
    "f_l1",
    "g_l1",
    "decomposition_residual",
    "decomposition_tolerance",
    "coth_bound",
    "coth_holds",
    "j_coth",
    "j_coth_holds",
    "pointwise_deviation",
    "one_dimensional",
];

pub const SHARPNESS_COLUMNS: &[&str] = &["eps", "sigma_tilde", "i_tilde", "i_tilde_error", "product_norms", "ratio", "gap"];

pub const OPNORM_COLUMNS: &[&str] =
    &["family", "sigma", "k", "best_ratio", "ratio_to_k", "argmax", "evaluations", "converged"];

fn nonempty<T: Copy>(name: &str, list: &[T]) -> Result<Vec<T>, RunError> {
    if list.is_empty() {
        Err(RunError::Config(format!("--{name}: empty grid")))
    } else {
        Ok(list.to_vec())
    }
}

fn config_error(e: hilbert_coth::Error) -> RunError {
    RunError::Config(e.to_string())
}

pub fn constants(a: &ConstantsArgs, cfg: &QuadConfig, echo: Value) -> Result<Report, RunError> {
    let grid = nonempty("sigma", &a.sigma.0)?;
    for &s in &grid {
        a.space.params(s, a.p).map_err(config_error)?;
    }
    let rows = grid
        .par_iter()
        .enumerate()
        .map(|(i, &sigma)| {
            let run = || {
                let params = a.space.params(sigma, a.p)?;
                let mellin = mellin_coth_constant(sigma)?;
                let quad = mellin_integral(sigma, cfg)?;
                let dev = (quad.value - mellin).abs() / mellin;
                let data = json!({
                    "p": params.p,
                    "q": params.q(),
                    "mellin": mellin,
                    "mellin_quadrature": quad.value,
                    "k1": k1(&params)?,
                    "k2": k2(&params)?,
                    "k": best_constant_k(&params)?,
                });
                Ok((data, dev <= a.tol, Some(dev)))
            };
            Row::from_result(i, json!({ "sigma": sigma }), run())
        })
        .collect();
    Ok(Report::new("constants", echo, CONSTANTS_COLUMNS, rows, vec![]))
}

pub fn weights(a: &WeightsArgs, cfg: &QuadConfig, echo: Value) -> Result<Report, RunError> {
    let sigmas = nonempty("sigma", &a.sigma.0)?;
    let norms = nonempty("ynorm", &a.ynorm.0)?;
    let grid: Vec<(f64, f64)> = sigmas.iter().flat_map(|&s| norms.iter().map(move |&y| (s, y))).collect();
    let convention = if a.inject_k1_typo {
        K1Convention::AsPrinted
    } else {
        K1Convention::Corrected
    };
    let label = match a.weight {
        WeightKind::Omega => "omega",
        WeightKind::Varpi => "varpi",
    };
    let rows = grid
        .par_iter()
        .enumerate()
        .map(|(i, &(sigma, norm))| {
            let run = || {
                let w = match a.weight {
                    WeightKind::Omega => omega(sigma, norm, a.space.m, a.space.alpha, cfg)?,
                    WeightKind::Varpi => varpi_with(&a.space.params(sigma, 2.0)?, norm, convention, cfg)?,
                };
                let data = json!({
                    "computed": w.computed,
                    "closed_form": w.closed_form,
                    "abs_error_estimate": w.abs_error_estimate,
                });
                Ok((data, w.rel_deviation <= a.tol, Some(w.rel_deviation)))
            };
            Row::from_result(i, json!({ "weight": label, "sigma": sigma, "point_norm": norm }), run())
        })
        .collect();
    Ok(Report::new("weights", echo, WEIGHTS_COLUMNS, rows, vec![]))
}

struct Case {
    label: String,
    params: ProblemParams,
    f: RadialProfile,
    g: RadialProfile,
}

fn verify_cases(a: &VerifyArgs) -> Result<Vec<Case>, RunError> {
    let sigmas = nonempty("sigma", &a.sigma.0)?;
    let ps = match &a.p {
        Some(list) => nonempty("p", &list.0)?,
        None => a.preset.default_p(),
    };
    if let Some(&p) = ps.iter().find(|&&p| !a.preset.accepts(p)) {
        return Err(RunError::Config(format!("p = {p} is outside the regime of preset {:?}", a.preset)));
    }
    let mut cases = Vec::new();
    for &sigma in &sigmas {
        for &p in &ps {
            let params = a.space.params(sigma, p).map_err(config_error)?;
            let pairs = match a.preset {
                Preset::Forward => forward_pairs(&params),
                Preset::Corollary => corollary_pairs(&params),
                Preset::ReversePHalf | Preset::ReversePNeg => {
                    let (f, g) = reverse_profiles(&params).map_err(config_error)?;
                    vec![("reverse-window".to_string(), f, g)]
                }
            };
            cases.extend(pairs.into_iter().map(|(label, f, g)| Case { label, params, f, g }));
        }
    }
    Ok(cases)
}

pub fn verify(a: &VerifyArgs, cfg: &QuadConfig, echo: Value) -> Result<Report, RunError> {
    let cases = verify_cases(a)?;
    let corollary = a.preset == Preset::Corollary;
    let rows = cases
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let grid = json!({ "pair": c.label, "sigma": c.params.sigma, "p": c.params.p });
            let run = || {
                if corollary {
                    let r = check_corollary_coth(&c.f, &c.g, &c.params, cfg)?;
                    let data = json!({
                        "i": r.theorem.i,
                        "i_coth": r.i_coth,
                        "f_l1": r.f_l1,
                        "g_l1": r.g_l1,
                        "decomposition_residual": r.decomposition_residual,
                        "decomposition_tolerance": r.decomposition_tolerance,
                        "coth_bound": r.coth_bound,
                        "coth_holds": r.coth_holds,
                        "j_coth": r.j_coth,
                        "j_coth_holds": r.j_coth_holds,
                        "pointwise_deviation": r.pointwise_deviation,
                        "one_dimensional": r.one_dimensional,
                    });
                    let dev = r.decomposition_residual / r.decomposition_tolerance;
                    Ok((data, r.holds(), Some(dev)))
                } else {
                    let r = check_theorem1(&c.f, &c.g, &c.params, cfg)?;
                    let data = json!({
                        "direction": r.direction,
                        "i": r.i,
                        "i_error": r.i_error,
                        "j": r.j,
                        "j_error": r.j_error,
                        "f_norm": r.f_norm,
                        "g_norm": r.g_norm,
                        "k": r.k,
                        "ratio": r.ratio,
                        "ratio_j": r.ratio_j,
                        "holds_i": r.holds_i,
                        "holds_j": r.holds_j,
                        "holder_bound": r.holder_bound,
                        "holder_holds": r.holder_holds,
                    });
                    // Closeness to equality: 1 − margin, so larger is worse.
                    Ok((data, r.holds && r.holder_holds, Some(1.0 - r.margin())))
                }
            };
            Row::from_result(i, grid, run())
        })
        .collect();
    let columns = if corollary { COROLLARY_COLUMNS } else { THEOREM_COLUMNS };
    Ok(Report::new("verify", echo, columns, rows, vec![]))
}

pub fn sharpness(a: &SharpnessArgs, cfg: &QuadConfig, echo: Value) -> Result<Report, RunError> {
    let eps = nonempty("eps", &a.eps.0)?;
    let params = a.space.params(a.sigma, a.p).map_err(config_error)?;
    let sweep = match sharpness_sweep(&params, &eps, cfg) {
        Ok(s) => s,
        Err(e) => {
            let rows = eps
                .iter()
                .enumerate()
                .map(|(i, &e_i)| Row::errored(i, json!({ "eps": e_i }), &e))
                .collect();
            return Ok(Report::new("sharpness", echo, SHARPNESS_COLUMNS, rows, vec![]));
        }
    };
    let rows = sweep
        .points
        .iter()
        .enumerate()
        .map(|(i, pt)| {
            let data = json!({
                "eps": pt.eps,
                "sigma_tilde": pt.sigma_tilde,
                "i_tilde": pt.i_tilde,
                "i_tilde_error": pt.i_tilde_error,
                "product_norms": pt.product_norms,
                "ratio": pt.ratio,
                "gap": pt.gap,
            });
            Row::checked(i, data, pt.ratio > 0.0 && pt.ratio < 1.0, Some(pt.gap))
        })
        .collect();
    let mut checks = Vec::new();
    let min_step = sweep
        .points
        .windows(2)
        .map(|w| w[1].ratio - w[0].ratio)
        .fold(f64::INFINITY, f64::min);
    if sweep.points.len() >= 2 {
        checks.push(Check::new("ratio increases as ε decreases", min_step > 0.0, min_step, "> 0"));
    }
    if let Some(x) = sweep.extrapolation() {
        checks.push(Check::new(
            "extrapolated limit",
            x.identifies_limit,
            (x.intercept - 1.0).abs(),
            format!("≤ 2 × residual = {:.3e}", 2.0 * x.residual),
        ));
    }
    if let Some(c) = sweep.cross_check {
        checks.push(Check::new("double-integral cross-check", c.rel_deviation <= 1e-8, c.rel_deviation, "≤ 1e-8"));
    }
    Ok(Report::new("sharpness", echo, SHARPNESS_COLUMNS, rows, checks))
}

pub fn opnorm(a: &OpnormArgs, cfg: &QuadConfig, echo: Value) -> Result<Report, RunError> {
    let sigmas = nonempty("sigma", &a.sigma.0)?;
    let mut all_params = Vec::new();
    for &s in &sigmas {
        let params = a.space.params(s, a.p).map_err(config_error)?;
        if params.p <= 1.0 {
            return Err(RunError::Config(format!("opnorm needs p > 1, got {}", params.p)));
        }
        all_params.push(params);
    }
    if a.max_iter == 0 {
        return Err(RunError::Config("--max-iter must be ≥ 1".into()));
    }
    let rows = all_params
        .par_iter()
        .enumerate()
        .map(|(i, params)| {
            let family = match a.family {
                Family::Epsilon => OpNormFamily::epsilon(params),
                Family::Concentrated => OpNormFamily::concentrated(),
            };
            let grid = json!({ "family": family.id(), "sigma": params.sigma });
            match opnorm_search_with(params, &family, a.max_iter, cfg) {
                Ok(est) => {
                    let data = json!({
                        "k": est.k_value,
                        "best_ratio": est.best_ratio,
                        "ratio_to_k": est.best_ratio / est.k_value,
                        "argmax": est.argmax,
                        "evaluations": est.evaluations,
                        "converged": est.converged,
                    });
                    let mut map = grid.as_object().cloned().unwrap_or_default();
                    map.extend(data.as_object().cloned().unwrap_or_default());
                    let mut row =
                        Row::checked(i, Value::Object(map), est.within_bound(), Some(est.best_ratio / est.k_value - 1.0));
                    if !est.converged {
                        row.status = crate::report::Status::NonConvergence;
                        row.message = Some("search bracket did not shrink to the requested width".into());
                    }
                    row
                }
                Err(e) => Row::errored(i, grid, &e),
            }
        })
        .collect();
    Ok(Report::new("opnorm", echo, OPNORM_COLUMNS, rows, vec![]))
}
