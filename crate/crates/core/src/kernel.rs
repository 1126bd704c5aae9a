//! The kernel h(v) = coth v − 1 = 2 / (e^{2v} − 1) on v > 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this argument the Laurent expansion is used.
pub const SERIES_SWITCH: f64 = 1e-4;
/// Above this argument the kernel is flushed to zero.
pub const UNDERFLOW_CLAMP: f64 = 350.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub v: f64,
    pub h: f64,
}

/// coth v − 1 without cancellation.
pub fn coth_minus_one(v: f64) -> Result<f64> {
    if v.is_nan() || v <= 0.0 {
        return Err(Error::Domain {
            function: "coth_minus_one",
            value: v,
            expected: "v > 0",
        });
    }
    Ok(coth_minus_one_unchecked(v))
}

/// [`coth_minus_one`] for callers that have already established v > 0.
///
/// Returns +∞ at v = 0, which integrators treat as an endpoint value.
#[inline]
pub fn coth_minus_one_unchecked(v: f64) -> f64 {
    if v < SERIES_SWITCH {
        laurent(v)
    } else if v > UNDERFLOW_CLAMP {
        0.0
    } else {
        2.0 / (2.0 * v).exp_m1()
    }
}

// 1/v − 1 + v/3 − v³/45
#[inline]
fn laurent(v: f64) -> f64 {
    let v2 = v * v;
    1.0 / v - 1.0 + v * (1.0 / 3.0 - v2 / 45.0)
}

/// coth v for v > 0.
pub fn coth(v: f64) -> Result<f64> {
    coth_minus_one(v).map(|h| h + 1.0)
}

pub fn evaluate(v: f64) -> Result<KernelValue> {
    Ok(KernelValue {
        v,
        h: coth_minus_one(v)?,
    })
}

/// Smallest L with coth v − 1 ≤ L·v^{−γ'} on [lo, hi], by grid search and
/// golden-section refinement of v ↦ (coth v − 1)·v^{γ'}.
pub fn decay_constant(gamma_prime: f64, lo: f64, hi: f64) -> Result<f64> {
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidParams(format!("decay_constant: need 0 < lo < hi, got [{lo}, {hi}]")));
    }
    let g = |v: f64| coth_minus_one_unchecked(v) * v.powf(gamma_prime);
    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    let steps = 2000;
    let at = |i: usize| (ln_lo + (ln_hi - ln_lo) * i as f64 / steps as f64).exp();
    let (best_i, _) = (0..=steps)
        .map(|i| (i, g(at(i))))
        .fold((0, f64::NEG_INFINITY), |acc, (i, val)| if val > acc.1 { (i, val) } else { acc });
    let mut a = at(best_i.saturating_sub(1));
    let mut b = at((best_i + 1).min(steps));
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - ratio * (b - a);
        let d = a + ratio * (b - a);
        if g(c) > g(d) {
            b = d;
        } else {
            a = c;
        }
        if b - a <= 1e-15 * b {
            break;
        }
    }
    let peak = g(0.5 * (a + b)).max(g(at(best_i)));
    Ok(peak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn known_values() {
        // mpmath, 40 digits
        assert_relative_eq!(coth_minus_one(1.0).unwrap(), 0.31303528549933130364, max_relative = 1e-15);
        assert_relative_eq!(coth(1.0).unwrap(), 1.31303528549933130364, max_relative = 1e-15);
        assert_relative_eq!(coth_minus_one(0.5).unwrap(), 1.1639534137386528488, max_relative = 1e-15);
        assert_eq!(coth(0.5).unwrap(), coth_minus_one(0.5).unwrap() + 1.0);
    }

    #[test]
    fn small_argument_limit() {
        let v = 1e-10;
        let scaled = coth_minus_one(v).unwrap() * v;
        assert!((1.0 - 1e-9..=1.0).contains(&scaled), "{scaled}");
    }

    #[test]
    fn clamp_and_asymptote() {
        assert_eq!(coth_minus_one(400.0).unwrap(), 0.0);
        assert_eq!(coth(400.0).unwrap(), 1.0);
        assert!(coth_minus_one(349.0).unwrap() > 0.0);
    }

    #[test]
    fn branches_agree_at_switch() {
        let v = SERIES_SWITCH;
        let series = laurent(v);
        let direct = 2.0 / (2.0 * v).exp_m1();
        assert_relative_eq!(series, direct, max_relative = 1e-12);
        // and just either side of the switch
        let below = coth_minus_one(v * (1.0 - 1e-12)).unwrap();
        let above = coth_minus_one(v * (1.0 + 1e-12)).unwrap();
        assert!(below > above);
        assert_relative_eq!(below, above, max_relative = 1e-11);
    }

    #[test]
    fn domain_errors() {
        assert!(coth_minus_one(0.0).is_err());
        assert!(coth_minus_one(-2.0).is_err());
        assert!(coth(f64::NAN).is_err());
    }

    #[test]
    fn decay_bound_at_three_halves() {
        let l = decay_constant(1.5, 1e-6, 50.0).unwrap();
        assert!(l.is_finite() && l > 0.0);
        let mut v = 1e-6;
        while v < 50.0 {
            assert!(coth_minus_one(v).unwrap() <= l * v.powf(-1.5) * (1.0 + 1e-12));
            v *= 1.001;
        }
    }
}
