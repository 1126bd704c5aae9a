use approx::assert_relative_eq;
use hilbert_coth::quad::{integrate_span, QuadConfig, Span};
use hilbert_coth::specfun::{k2_at, ProblemParams};
use hilbert_coth::verify::*;
use hilbert_coth::weights::truncated_weight_value;
use hilbert_coth::Error;
use proptest::prelude::*;

const SPACES: [(u32, u32, f64, f64); 2] = [(1, 1, 1.0, 1.0), (2, 1, 2.0, 1.0)];

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

#[test]
fn forward_battery_is_strict() {
    for (m, n, a, b) in SPACES {
        for sigma in [1.5, 2.0] {
            for p in [1.5, 2.0, 3.0] {
                let params = ProblemParams::new(m, n, a, b, sigma, p).unwrap();
                for (label, f, g) in forward_pairs(&params) {
                    let r = check_theorem1(&f, &g, &params, &cfg()).unwrap();
                    assert_eq!(r.direction, Direction::Forward);
                    assert!(r.holds && r.holder_holds, "{label} {params:?}: {r:?}");
                    assert!(r.ratio > 0.0 && r.ratio <= 1.0 - 1e-6, "{label}: {}", r.ratio);
                    assert!(r.ratio_j <= 1.0 - 1e-6, "{label}: {}", r.ratio_j);
                    assert_eq!(r.holds_i, r.holds_j);
                }
            }
        }
    }
}

#[test]
fn exp_pair_matches_reference() {
    // f = r^{3/2}e^{−r}, g = ρ^{1/2}e^{−ρ}, m = n = 1, σ = p = 2. Reference via
    // r = tρ: I = Γ(4)∫(coth t − 1)t^{3/2}(1 + t)^{−4}dt, J by direct nesting.
    let params = ProblemParams::one_dimensional(2.0, 2.0).unwrap();
    let f = RadialProfile::exp_power(1, 1.0, 1.5, 1.0);
    let g = RadialProfile::exp_power(1, 1.0, 0.5, 1.0);
    let r = check_theorem1(&f, &g, &params, &cfg()).unwrap();
    assert_relative_eq!(r.i, 0.605_880_832_752_341_372, max_relative = 1e-9);
    assert_relative_eq!(r.j, 0.519_178_394_657_417_825, max_relative = 1e-9);
    assert_relative_eq!(r.f_norm, 0.5f64.sqrt(), max_relative = 1e-11);
    assert_relative_eq!(r.g_norm, (720.0f64 / 128.0).sqrt(), max_relative = 1e-11);
    assert_relative_eq!(r.ratio, 0.439_260_800_572_353_2, max_relative = 1e-9);
    assert_relative_eq!(r.ratio_j, 0.892_715_570_566_825_4, max_relative = 1e-9);
}

#[test]
fn reverse_regimes() {
    for (m, n, a, b) in SPACES {
        for sigma in [1.5, 2.0] {
            for p in [0.5, -1.0] {
                let params = ProblemParams::new(m, n, a, b, sigma, p).unwrap();
                let (f, g) = reverse_profiles(&params).unwrap();
                assert!(f.is_strictly_positive() && g.is_strictly_positive());
                let r = check_theorem1(&f, &g, &params, &cfg()).unwrap();
                assert_eq!(r.direction, Direction::Reverse);
                assert!(r.holds && r.holder_holds, "{params:?}: {r:?}");
                assert!(r.ratio > 1.0 && r.ratio_j > 1.0);
            }
        }
    }
}

#[test]
fn reverse_windows_are_inside_the_convergence_region() {
    for (m, n, a, b) in SPACES {
        for sigma in [1.2, 1.5, 2.0, 4.0] {
            for p in [0.5, 0.25, -1.0, -3.0] {
                let params = ProblemParams::new(m, n, a, b, sigma, p).unwrap();
                let (f, g) = reverse_profiles(&params).unwrap();
                assert!(norm_p_phi(&f, &params, &cfg()).unwrap().is_admissible(), "{params:?}");
                assert!(norm_q_psi(&g, &params, &cfg()).unwrap().is_admissible(), "{params:?}");
            }
        }
    }
    let forward = ProblemParams::one_dimensional(2.0, 2.0).unwrap();
    assert!(reverse_window(&forward).is_err());
}

#[test]
fn corollary_battery() {
    for params in [
        ProblemParams::one_dimensional(2.0, 2.0).unwrap(),
        ProblemParams::one_dimensional(1.5, 3.0).unwrap(),
        ProblemParams::new(2, 1, 2.0, 1.0, 2.0, 1.5).unwrap(),
    ] {
        for (label, f, g) in corollary_pairs(&params) {
            let r = check_corollary_coth(&f, &g, &params, &cfg()).unwrap();
            assert!(r.holds(), "{label} {params:?}: {r:?}");
            assert!(r.decomposition_residual <= r.decomposition_tolerance);
            assert!(r.pointwise_deviation <= 1e-8);
            assert_eq!(r.one_dimensional, params.m == 1 && params.n == 1);
            assert_eq!(r.theorem.f_l1, Some(r.f_l1));
        }
    }
}

#[test]
fn corollary_needs_the_forward_regime() {
    for p in [0.5, -1.0] {
        let params = ProblemParams::one_dimensional(2.0, p).unwrap();
        let (f, g) = reverse_profiles(&params).unwrap();
        let err = check_corollary_coth(&f, &g, &params, &cfg()).unwrap_err();
        assert!(matches!(err, Error::Divergent(_)), "{err}");
    }
}

#[test]
fn weighted_chain() {
    for (m, n, a, b) in SPACES {
        let params = ProblemParams::new(m, n, a, b, 2.0, 2.0).unwrap();
        for (label, f, _) in forward_pairs(&params) {
            let r = check_lemma4_chain(&f, &params, &cfg()).unwrap();
            assert!(r.holds, "{label}: {r:?}");
            assert!(r.identity_deviation <= 1e-8 && r.rhs_deviation <= 1e-8, "{r:?}");
        }
        for p in [0.5, -1.0] {
            let params = ProblemParams::new(m, n, a, b, 2.0, p).unwrap();
            let (f, _) = reverse_profiles(&params).unwrap();
            let r = check_lemma4_chain(&f, &params, &cfg()).unwrap();
            assert_eq!(r.direction, Direction::Reverse);
            assert!(r.holds && r.identity_deviation <= 1e-8, "{r:?}");
        }
    }
}

#[test]
fn extremal_family_norms() {
    for (sigma, p, eps) in [(2.0, 2.0, 0.1), (1.5, 3.0, 0.5), (3.0, 1.5, 0.01)] {
        let params = ProblemParams::one_dimensional(sigma, p).unwrap();
        let f = norm_p_phi(&RadialProfile::eps_f(&params, eps), &params, &cfg()).unwrap();
        let g = norm_q_psi(&RadialProfile::eps_g(&params, eps), &params, &cfg()).unwrap();
        assert_relative_eq!(f.integral, 1.0 / eps, max_relative = 1e-10);
        assert_relative_eq!(g.integral, 1.0 / eps, max_relative = 1e-10);
    }
    let params = ProblemParams::one_dimensional(2.0, 2.0).unwrap();
    assert!(RadialProfile::eps_f(&params, 2.5).validate().is_err());
    assert!(RadialProfile::eps_f(&params, 0.0).validate().is_err());
}

#[test]
fn truncated_power_closed_form() {
    // Exponent of the integrand is p(a − σ) − 1 = −1 − δ for a = σ − m − δ/p,
    // so ‖f‖^p = C/δ.
    for (m, alpha) in [(1, 1.0), (2, 2.0), (3, 1.0)] {
        let params = ProblemParams::new(m, 1, alpha, 1.0, 2.0, 2.0).unwrap();
        let delta = 0.3;
        let a = 2.0 - m as f64 - delta / 2.0;
        let f = RadialProfile::truncated_power(m, alpha, a, 1.0);
        let got = norm_p_phi(&f, &params, &cfg()).unwrap();
        let c = hilbert_coth::specfun::surface_constant(m, alpha).unwrap();
        assert_relative_eq!(got.integral, c / delta, max_relative = 1e-10);
    }
}

#[test]
fn nested_error_budget_includes_inner_errors() {
    // Both used to stop the outer rule just under tolerance, then fail once
    // the inner error was added.
    let params = ProblemParams::one_dimensional(2.0, 1.3).unwrap();
    let g = RadialProfile::exp_power(1, 1.0, 0.5, 2.0);
    for (a, tol) in [(1.978090796885016, 1e-10), (2.05, 1e-11)] {
        let f = RadialProfile::exp_power(1, 1.0, a, 1.0);
        let r = bilinear_i(&f, &g, &params, &QuadConfig::default().with_tolerances(tol, 1e-14)).unwrap();
        assert!(r.converged && r.rel_error() <= tol);
    }
}

#[test]
fn divergence_markers() {
    let params = ProblemParams::one_dimensional(2.0, 2.0).unwrap();
    // r^{1/2}e^{−r}: ∫ r e^{−2r} r^{−3} dr diverges at the origin.
    let f = RadialProfile::exp_power(1, 1.0, 0.5, 1.0);
    let n = norm_p_phi(&f, &params, &cfg()).unwrap();
    assert!(n.divergent && n.value.is_infinite());
    let g = RadialProfile::exp_power(1, 1.0, 0.5, 1.0);
    assert!(matches!(check_theorem1(&f, &g, &params, &cfg()), Err(Error::Divergent(_))));

    // q < 0 with g vanishing below its cut.
    let reverse = ProblemParams::one_dimensional(2.0, 0.5).unwrap();
    let g = RadialProfile::truncated_power(1, 1.0, -4.0, 1.0);
    let n = norm_q_psi(&g, &reverse, &cfg()).unwrap();
    assert!(n.divergent && n.value == 0.0);

    // Tail divergence, seen both by the metadata and by truncation growth.
    // The weighted integrand is F² r^{−3}, so exponents ≥ σ − m = 1 diverge.
    let slow = RadialProfile::truncated_power(1, 1.0, 1.25, 1.0);
    assert!(norm_p_phi(&slow, &params, &cfg()).unwrap().divergent);
    assert!(probe_power_integral(&slow, 2.0, -3.0, 1e-6, &cfg()).unwrap().divergent);
    let fast = RadialProfile::truncated_power(1, 1.0, 0.5, 1.0);
    assert!(!norm_p_phi(&fast, &params, &cfg()).unwrap().divergent);
    assert!(!probe_power_integral(&fast, 2.0, -3.0, 1e-6, &cfg()).unwrap().divergent);
}

#[test]
fn zero_profiles() {
    let params = ProblemParams::one_dimensional(2.0, 2.0).unwrap();
    let f = RadialProfile::exp_power(1, 1.0, 1.5, 1.0);
    let zero = f.scaled(0.0);
    assert_eq!(bilinear_i(&zero, &f, &params, &cfg()).unwrap().value, 0.0);
    assert_eq!(equivalent_j(&zero, &params, &cfg()).unwrap().value, 0.0);
    assert_eq!(norm_p_phi(&zero, &params, &cfg()).unwrap().value, 0.0);
    assert!(matches!(check_theorem1(&zero, &f, &params, &cfg()), Err(Error::InvalidParams(_))));
}

#[test]
fn extremal_pair_reduces_to_truncated_weight() {
    // ∬ over [1,∞)² collapses to ∫₁^∞ ρ^{−1−ε} w(σ̃, ρ) dρ.
    let (sigma, p, eps) = (2.0, 2.0, 0.1);
    let params = ProblemParams::one_dimensional(sigma, p).unwrap();
    let st = sigma - eps / p;
    let i = bilinear_i(&RadialProfile::eps_f(&params, eps), &RadialProfile::eps_g(&params, eps), &params, &cfg()).unwrap();
    let inner = cfg().with_tolerances(1e-12, 1e-300);
    let reduced = integrate_span(
        |rho: f64| rho.powf(-1.0 - eps) * truncated_weight_value(st, rho, 1, 1.0, &inner).unwrap().value,
        &Span::half_line(1.0),
        &cfg().with_algebraic_tail(eps).with_pivot(2.0),
    )
    .unwrap();
    assert_relative_eq!(i.value, reduced.value, max_relative = 1e-8);
    assert!(eps * i.value < k2_at(1, 1.0, st).unwrap());
}

#[test]
fn l1_norms_closed_form() {
    let f = RadialProfile::exp_power(1, 1.0, 1.0, 1.0);
    let g = RadialProfile::exp_power(1, 1.0, 2.0, 3.0);
    let l1f = l1_norm(&f, &cfg()).unwrap().value;
    let l1g = l1_norm(&g, &cfg()).unwrap().value;
    assert_relative_eq!(l1f, 1.0, max_relative = 1e-12);
    assert_relative_eq!(l1g, 2.0 / 27.0, max_relative = 1e-12);
}

#[test]
fn dilation_invariance() {
    for (m, n, a, b) in SPACES {
        let params = ProblemParams::new(m, n, a, b, 2.0, 2.0).unwrap();
        let (s, mf, nf) = (params.sigma, m as f64, n as f64);
        for (label, f, g) in forward_pairs(&params) {
            let base = check_theorem1(&f, &g, &params, &cfg()).unwrap();
            for c in [0.25, 3.0] {
                let fc = f.dilated(c).scaled(c.powf(s - mf));
                let gc = g.dilated(c).scaled(c.powf(-s - nf));
                let r = check_theorem1(&fc, &gc, &params, &cfg()).unwrap();
                assert_relative_eq!(r.i, base.i, max_relative = 1e-8);
                assert_relative_eq!(r.f_norm, base.f_norm, max_relative = 1e-8);
                assert_relative_eq!(r.g_norm, base.g_norm, max_relative = 1e-8);
                assert!((r.ratio - base.ratio).abs() <= 1e-8 * base.ratio, "{label} c={c}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn ratio_is_scale_invariant(c in 0.01f64..100.0, a in 1.2f64..3.0, p in 1.3f64..4.0) {
        let params = ProblemParams::one_dimensional(2.0, p).unwrap();
        let f = RadialProfile::exp_power(1, 1.0, a, 1.0);
        let g = RadialProfile::exp_power(1, 1.0, 0.5, 2.0);
        let base = check_theorem1(&f, &g, &params, &cfg()).unwrap();
        let scaled = check_theorem1(&f.scaled(c), &g, &params, &cfg()).unwrap();
        prop_assert!((scaled.ratio - base.ratio).abs() <= 1e-12 * base.ratio);
        prop_assert!((scaled.ratio_j - base.ratio_j).abs() <= 1e-12 * base.ratio_j);
        prop_assert_eq!(scaled.holds_i, scaled.holds_j);
    }
}
