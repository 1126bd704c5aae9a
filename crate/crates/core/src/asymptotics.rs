//! Power/exponential behavior of one-dimensional integrands at 0 and ∞.
//!
//! Every radial function handled by the verification code is described by its
//! support start, its leading power at the origin and its decay at infinity.
//! Products and powers of such functions are described the same way, which
//! decides convergence before any quadrature runs and picks the endpoint
//! substitutions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{QuadConfig, Span};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AtZero {
    /// ~ r^a as r → 0⁺.
    Power(f64),
    /// Vanishes faster than any power.
    Flat,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AtInfinity {
    /// ~ r^a as r → ∞.
    Power(f64),
    /// ~ e^{−rate·r} up to powers.
    Exponential(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Asymptotics {
    /// Left end of the support; the behavior at zero only matters when 0.
    pub start: f64,
    pub at_zero: AtZero,
    pub at_infinity: AtInfinity,
    /// Points where the function is not smooth.
    pub breakpoints: Vec<f64>,
    /// Typical length scale, used to place the head/tail split.
    pub scale: f64,
}

impl Asymptotics {
    /// Behavior of F^k·r^c.
    pub fn pow_times(&self, k: f64, c: f64) -> Result<Asymptotics> {
        if k < 0.0 && self.start > 0.0 {
            return Err(Error::Divergent(format!(
                "negative power {k} of a function vanishing on (0, {})",
                self.start
            )));
        }
        let at_zero = match self.at_zero {
            AtZero::Power(a) => AtZero::Power(k * a + c),
            AtZero::Flat if k > 0.0 || self.start > 0.0 => AtZero::Flat,
            AtZero::Flat => return Err(Error::Divergent(format!("negative power {k} of a flat function"))),
        };
        let at_infinity = match self.at_infinity {
            AtInfinity::Power(a) => AtInfinity::Power(k * a + c),
            AtInfinity::Exponential(rate) if k > 0.0 => AtInfinity::Exponential(rate * k),
            AtInfinity::Exponential(_) => {
                return Err(Error::Divergent(format!("negative power {k} of an exponentially decaying function")))
            }
        };
        Ok(Asymptotics {
            at_zero,
            at_infinity,
            ..self.clone()
        })
    }

    /// Behavior of the pointwise product.
    pub fn product(&self, other: &Asymptotics) -> Asymptotics {
        let at_zero = match (self.at_zero, other.at_zero) {
            (AtZero::Power(a), AtZero::Power(b)) => AtZero::Power(a + b),
            _ => AtZero::Flat,
        };
        let at_infinity = match (self.at_infinity, other.at_infinity) {
            (AtInfinity::Power(a), AtInfinity::Power(b)) => AtInfinity::Power(a + b),
            (AtInfinity::Exponential(a), AtInfinity::Exponential(b)) => AtInfinity::Exponential(a + b),
            (AtInfinity::Exponential(a), _) | (_, AtInfinity::Exponential(a)) => AtInfinity::Exponential(a),
        };
        let mut breakpoints = self.breakpoints.clone();
        breakpoints.extend(&other.breakpoints);
        Asymptotics {
            start: self.start.max(other.start),
            at_zero,
            at_infinity,
            breakpoints,
            scale: self.scale.max(other.scale),
        }
    }

    /// Is ∫ over the support finite? Returns the reason when it is not.
    pub fn check_integrable(&self) -> Result<()> {
        if self.start == 0.0 {
            if let AtZero::Power(a) = self.at_zero {
                if !(a > -1.0) {
                    return Err(Error::Divergent(format!("integrand ~ r^{a:.4} at the origin")));
                }
            }
        }
        if let AtInfinity::Power(a) = self.at_infinity {
            if !(a < -1.0) {
                return Err(Error::Divergent(format!("integrand ~ r^{a:.4} at infinity")));
            }
        }
        Ok(())
    }

    /// Integration span and endpoint configuration for ∫ over the support.
    pub fn plan(&self, base: &QuadConfig) -> Result<(Span, QuadConfig)> {
        self.check_integrable()?;
        let mut cfg = base.with_regular_left();
        if self.start == 0.0 {
            // Only singular or mildly non-smooth powers need the endpoint
            // substitution; for large powers it would crowd every node
            // against s = 0.
            if let AtZero::Power(a) = self.at_zero {
                if a < 4.0 && (a - a.round()).abs() > 1e-12 {
                    cfg = cfg.with_left_singularity(a);
                }
            }
        }
        cfg = match self.at_infinity {
            AtInfinity::Power(a) => cfg.with_algebraic_tail(-1.0 - a),
            AtInfinity::Exponential(rate) => cfg.with_exponential_tail(rate),
        };
        let last = self.breakpoints.iter().copied().fold(self.start, f64::max);
        if let AtInfinity::Power(_) = self.at_infinity {
            cfg = cfg.with_pivot(2.0 * last.max(self.scale));
        }
        let span = Span::half_line(self.start).with_breakpoints(self.breakpoints.iter().copied());
        Ok((span, cfg))
    }
}

/// Geometric grid strictly between `lo` and `hi` with ratio `factor`.
pub fn log_breakpoints(lo: f64, hi: f64, factor: f64) -> Vec<f64> {
    let mut out = Vec::new();
    if !(lo > 0.0 && hi > lo && factor > 1.0) {
        return out;
    }
    let mut x = lo * factor;
    while x < hi {
        out.push(x);
        x *= factor;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expo() -> Asymptotics {
        Asymptotics {
            start: 0.0,
            at_zero: AtZero::Power(0.5),
            at_infinity: AtInfinity::Exponential(1.0),
            breakpoints: vec![],
            scale: 1.0,
        }
    }

    #[test]
    fn powers_and_products() {
        let a = expo().pow_times(2.0, -1.0).unwrap();
        assert_eq!(a.at_zero, AtZero::Power(0.0));
        assert_eq!(a.at_infinity, AtInfinity::Exponential(2.0));
        assert!(expo().pow_times(-1.0, 0.0).is_err());
        let b = Asymptotics {
            start: 1.0,
            at_zero: AtZero::Flat,
            at_infinity: AtInfinity::Power(-3.0),
            breakpoints: vec![1.0],
            scale: 1.0,
        };
        assert!(b.pow_times(-0.5, 0.0).is_err());
        let p = expo().product(&b);
        assert_eq!(p.start, 1.0);
        assert_eq!(p.at_infinity, AtInfinity::Exponential(1.0));
    }

    #[test]
    fn integrability() {
        assert!(expo().pow_times(1.0, -1.4).unwrap().check_integrable().is_ok());
        assert!(expo().pow_times(1.0, -1.5).unwrap().check_integrable().is_err());
        let tail = Asymptotics {
            at_infinity: AtInfinity::Power(-1.0),
            ..expo()
        };
        assert!(tail.check_integrable().is_err());
    }

    #[test]
    fn geometric_grid() {
        assert_eq!(log_breakpoints(1.0, 1000.0, 10.0).len(), 2);
        assert!(log_breakpoints(1.0, 0.5, 10.0).is_empty());
    }
}
