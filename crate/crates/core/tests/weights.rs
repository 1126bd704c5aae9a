use approx::assert_relative_eq;
use hilbert_coth::quad::QuadConfig;
use hilbert_coth::specfun::{k1, k2, ProblemParams};
use hilbert_coth::weights::{omega, theta, theta_decay_fit, truncated_weight, varpi};
use std::f64::consts::PI;

const SPACES: [(u32, f64); 4] = [(1, 1.0), (2, 1.0), (2, 2.0), (3, 2.0)];
const SIGMAS: [f64; 3] = [1.5, 2.0, 5.0];

fn norms() -> Vec<f64> {
    (-4..=4).map(|k| 10f64.powf(k as f64 / 2.0)).collect()
}

#[test]
fn omega_is_constant() {
    let cfg = QuadConfig::default();
    for (m, alpha) in SPACES {
        for sigma in SIGMAS {
            for y in norms() {
                let r = omega(sigma, y, m, alpha, &cfg).unwrap();
                assert!(r.rel_deviation <= 1e-8, "m={m} α={alpha} σ={sigma} y={y}: {r:?}");
            }
        }
    }
}

#[test]
fn varpi_is_constant() {
    let cfg = QuadConfig::default();
    for (n, beta) in SPACES {
        for sigma in SIGMAS {
            for x in norms() {
                let r = varpi(sigma, x, n, beta, &cfg).unwrap();
                assert!(r.rel_deviation <= 1e-8, "n={n} β={beta} σ={sigma} x={x}: {r:?}");
            }
        }
    }
}

#[test]
fn closed_forms() {
    let cfg = QuadConfig::default();
    let r = omega(3.0, 1.0, 2, 2.0, &cfg).unwrap();
    let zeta3 = 1.2020569031595942854;
    assert_relative_eq!(r.computed, PI / 2.0 * 2.0 * zeta3 / 4.0, max_relative = 1e-9);
    let r = varpi(2.0, 1.0, 2, 1.0, &cfg).unwrap();
    assert_relative_eq!(r.computed, PI * PI / 12.0, max_relative = 1e-9);
    let p = ProblemParams::new(1, 2, 1.0, 2.0, 2.0, 2.0).unwrap();
    assert_relative_eq!(k1(&p).unwrap(), PI / 2.0 * PI * PI / 12.0, max_relative = 1e-13);
    assert_relative_eq!(varpi(2.0, 3.0, 2, 2.0, &cfg).unwrap().computed, k1(&p).unwrap(), max_relative = 1e-9);
    assert_relative_eq!(omega(2.0, 0.3, 1, 1.0, &cfg).unwrap().computed, k2(&p).unwrap(), max_relative = 1e-9);
}

#[test]
fn truncated_weight_identity() {
    let cfg = QuadConfig::default();
    for (m, alpha) in SPACES {
        for sigma in SIGMAS {
            for y in norms() {
                let w = truncated_weight(sigma, y, m, alpha, &cfg).unwrap();
                assert!(w.deviation() <= 1e-9, "{w:?}");
            }
        }
    }
    let w = truncated_weight(2.0, 1.0, 1, 1.0, &cfg).unwrap();
    assert_relative_eq!(w.direct, w.via_theta, max_relative = 1e-9);
}

#[test]
fn theta_is_decreasing() {
    let cfg = QuadConfig::default();
    for sigma in [1.2, 2.0, 3.5] {
        let values: Vec<f64> = (0..40).map(|k| theta(sigma, 1.3f64.powi(k - 10), &cfg).unwrap().theta).collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]), "σ̃={sigma}: {values:?}");
        assert!(values.iter().all(|v| (0.0..1.0).contains(v)));
    }
}

#[test]
fn theta_decay_rate() {
    let cfg = QuadConfig::default();
    for sigma in [2.0, 3.0] {
        let fit = theta_decay_fit(sigma, &[10.0, 100.0, 1000.0], &cfg).unwrap();
        assert!((fit.slope + (sigma - 1.0)).abs() <= 0.05, "{fit:?}");
        assert!(fit.meets_guaranteed_rate(1.5));
        assert!(fit.censored.is_empty());
    }
}
