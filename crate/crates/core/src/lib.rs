//! Numerical verification of a Hilbert-type inequality with the kernel
//! coth(‖x‖_α/‖y‖_β) − 1 on ℝ₊^m × ℝ₊^n.
//!
//! Closed-form constants live in [`specfun`], the kernel in [`kernel`] and
//! the quadrature engine in [`quad`]. [`radial`] reduces s-dimensional radial
//! integrals to one dimension. [`weights`] checks that the weight functions
//! are constant. [`verify`] evaluates both sides of the inequality, and
//! [`sharp`] probes whether the constant is best possible.
//!
//! ```
//! use hilbert_coth::specfun::{best_constant_k, ProblemParams};
//!
//! let params = ProblemParams::new(2, 1, 2.0, 1.0, 2.0, 2.0)?;
//! assert!(best_constant_k(&params)? > 0.0);
//! # Ok::<(), hilbert_coth::Error>(())
//! ```

pub mod asymptotics;
pub mod error;
pub mod kernel;
pub mod quad;
pub mod radial;
pub mod sharp;
pub mod specfun;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/constants.md")]
    mod constants {}
    #[doc = include_str!("../../../book/src/kernel.md")]
    mod kernel {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/radial.md")]
    mod radial {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/sharpness.md")]
    mod sharpness {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
