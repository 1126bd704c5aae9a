use approx::assert_relative_eq;
use hilbert_coth::quad::QuadConfig;
use hilbert_coth::sharp::*;
use hilbert_coth::specfun::{best_constant_k, surface_constant, ProblemParams};
use hilbert_coth::verify::{equivalent_j, RadialProfile};
use hilbert_coth::weights::truncated_weight_value;
use rand::{Rng, SeedableRng};
use std::time::Instant;

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

#[test]
fn sweep_approaches_one() {
    let params = ProblemParams::one_dimensional(2.0, 2.0).unwrap();
    let t = Instant::now();
    let sweep = sharpness_sweep(&params, &[0.2, 0.02, 0.002], &cfg()).unwrap();
    println!("{:?} {:?}", t.elapsed(), sweep);
    // Reference ratios M(σ̃)/M(σ)·(1 − ε∫₁^∞ρ^{−1−ε}θ dρ) at 20 digits.
    let reference = [0.902_983_529_602_160_4, 0.989_396_050_933_667_4, 0.998_929_658_325_598_5];
    for (pt, r) in sweep.points.iter().zip(reference) {
        assert_relative_eq!(pt.ratio, r, max_relative = 1e-9);
        assert_relative_eq!(pt.product_norms * pt.eps, 1.0, max_relative = 1e-14);
    }
    assert!(sweep.ratios_below_one() && sweep.gap_is_decreasing(1e-10));
    let decay = sweep.points[2].gap / sweep.points[1].gap;
    assert!((0.05..=0.3).contains(&decay), "{decay}");
    let ex = sweep.extrapolation().unwrap();
    assert!(ex.identifies_limit, "{ex:?}");
    let cc = sweep.cross_check.unwrap();
    assert!(cc.rel_deviation <= 1e-8, "{cc:?}");
}

#[test]
fn sweep_rejects_bad_lists() {
    let params = ProblemParams::one_dimensional(2.0, 2.0).unwrap();
    assert!(sharpness_sweep(&params, &[0.02, 0.2], &cfg()).is_err());
    assert!(sharpness_sweep(&params, &[2.5], &cfg()).is_err());
    assert!(sharpness_sweep(&params, &[], &cfg()).is_err());
    let reverse = ProblemParams::one_dimensional(2.0, 0.5).unwrap();
    assert!(sharpness_sweep(&reverse, &[0.1], &cfg()).is_err());
}

#[test]
fn sweep_in_higher_dimensions() {
    let params = ProblemParams::new(2, 3, 2.0, 1.0, 2.0, 3.0).unwrap();
    let sweep = sharpness_sweep_reduced(&params, &[0.5, 0.05, 0.005], &cfg()).unwrap();
    let c = surface_constant(2, 2.0).unwrap().powf(1.0 / 3.0) * surface_constant(3, 1.0).unwrap().powf(2.0 / 3.0);
    for pt in &sweep.points {
        assert_relative_eq!(pt.product_norms * pt.eps, c, max_relative = 1e-14);
    }
    assert!(sweep.ratios_below_one() && sweep.gap_is_decreasing(1e-10));
    assert!(sweep.extrapolation().unwrap().identifies_limit);
}

#[test]
fn exponent_identity() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let p = rng.random_range(1.05..6.0);
        let sigma = rng.random_range(1.01..8.0);
        let n = rng.random_range(1..6);
        let params = ProblemParams::new(1, n, 1.0, 1.0, sigma, p).unwrap();
        let expected = -p * sigma - n as f64;
        assert!((psi_one_minus_p_exponent(&params) - expected).abs() <= 1e-12 * expected.abs());
    }
}

#[test]
fn tf_norm_is_the_equivalent_form() {
    let params = ProblemParams::new(2, 1, 2.0, 1.0, 2.0, 2.0).unwrap();
    let k = best_constant_k(&params).unwrap();
    for f in [
        RadialProfile::exp_power(2, 2.0, 0.5, 1.0),
        RadialProfile::double_power(2, 2.0, 1.0, -1.0, 1.0),
        RadialProfile::eps_f(&params, 0.3),
    ] {
        let a = tf_norm(&f, &params, &cfg()).unwrap().value;
        let b = equivalent_j(&f, &params, &cfg()).unwrap().value;
        assert!((a - b).abs() <= 1e-10 * b);
        assert!(rayleigh_ratio(&f, &params, &cfg()).unwrap() < k);
    }
    let zero = RadialProfile::exp_power(2, 2.0, 0.5, 1.0).scaled(0.0);
    assert_eq!(tf_norm(&zero, &params, &cfg()).unwrap().value, 0.0);
    let reverse = ProblemParams::one_dimensional(2.0, 0.5).unwrap();
    assert!(tf_norm(&RadialProfile::exp_power(1, 1.0, 2.0, 1.0), &reverse, &cfg()).is_err());
}

#[test]
fn t_on_the_extremal_profile() {
    // T f̃(ρ) = ρ^{σ̃}·w(σ̃, ρ).
    let params = ProblemParams::new(2, 1, 3.0, 1.0, 2.5, 2.0).unwrap();
    let eps = 0.4;
    let st = params.sigma - eps / params.p;
    let f = RadialProfile::eps_f(&params, eps);
    for rho in [0.1, 0.5, 1.0, 3.0, 30.0] {
        let t = apply_t(&f, rho, &params, &cfg()).unwrap().value;
        let w = truncated_weight_value(st, rho, 2, 3.0, &cfg()).unwrap().value;
        assert_relative_eq!(t, rho.powf(st) * w, max_relative = 1e-10);
    }
    // The kernel vanishes as ‖x‖/‖y‖ → ∞, so T f̃ dies at small ρ; at large ρ
    // it grows like ρ·C∫F r^{m−2}dr.
    let near = apply_t(&f, 1e-2, &params, &cfg()).unwrap().value;
    let unit = apply_t(&f, 1.0, &params, &cfg()).unwrap().value;
    assert!(near < 1e-10 * unit);
    let zero = f.scaled(0.0);
    assert_eq!(apply_t(&zero, 1.0, &params, &cfg()).unwrap().value, 0.0);

    let g = RadialProfile::exp_power(1, 1.0, 1.0, 1.0);
    let one = ProblemParams::one_dimensional(2.0, 2.0).unwrap();
    let big = 1e6;
    let t = apply_t(&g, big, &one, &cfg()).unwrap().value;
    // ∫ (ρ/r − 1 + O(r/ρ)) r e^{−r} dr = ρ − 1 + O(1/ρ).
    assert_relative_eq!(t, big - 1.0, max_relative = 1e-9);
}

#[test]
fn operator_norm_search() {
    let params = ProblemParams::one_dimensional(2.0, 2.0).unwrap();
    let k = best_constant_k(&params).unwrap();
    let t = Instant::now();
    let est = opnorm_search(&params, &OpNormFamily::epsilon(&params), &cfg()).unwrap();
    println!("{:?} {est:?}", t.elapsed());
    assert!(est.within_bound(), "{est:?}");
    assert!(est.best_ratio >= 0.99 * k, "{est:?}");
    let t = Instant::now();
    let bad = opnorm_search(&params, &OpNormFamily::concentrated(), &cfg()).unwrap();
    println!("{:?} {bad:?}", t.elapsed());
    assert!(bad.within_bound());
    assert!(bad.best_ratio < 0.5 * k, "{bad:?}");
}
