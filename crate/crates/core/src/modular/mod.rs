//! Modular functions at points of the upper half-plane in double-double precision:
//! Dedekind eta, the discriminant, the Weber functions, `lambda*`, the accessory
//! parameter `ap(t) = lambda*(i t)`, `j`, and the integral `q_2`-expansion of `lambda*`.
//!
//! Tolerances are relative: a [`ModularValue`] computed at tolerance `tol`
//! satisfies `trunc_bound <= tol * max(1, |value|)`. The bound covers truncation of
//! the defining products and series; double-double rounding (about `1e-31`
//! relative per operation) is not included.

pub mod dd;
mod functions;
pub mod qseries;
pub mod radical;
pub mod table1;

use std::fmt;

use thiserror::Error;

pub use dd::{CDd, Dd};
pub use functions::{
    ap, cm_from_weber, delta, eta, integrality_check, integrality_witness, j_from_lambda_star,
    j_oracle, lambda_star, lambda_star_expressions, weber_f, weber_f1, weber_f1_product, weber_f2,
    weber_f2_product, weber_f_product, CmValues, IntegralityWitness, LambdaStarExpressions,
};
pub use qseries::{lambda_star_qseries, QSeries};

pub const DEFAULT_TOL: f64 = 1e-20;

/// Smallest relative tolerance accepted; below this double-double rounding dominates.
pub const MIN_TOL: f64 = 1e-28;

/// Largest number of factors in one truncated product.
pub const MAX_TERMS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModularError {
    #[error("tau = {0} is not in the upper half-plane")]
    NotInUpperHalfPlane(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("tolerance {tol:e} unreachable at |q| = {q_abs} within {MAX_TERMS} terms")]
    ToleranceUnreachable { tol: f64, q_abs: f64 },
    #[error("lambda* expressions disagree: weber {weber}, eta {eta}, delta {delta} (allowed {allowed:e})")]
    ExpressionMismatch { weber: String, eta: String, delta: String, allowed: f64 },
    #[error("negative discriminant {0:e}")]
    NegativeDiscriminant(f64),
    #[error("pole of j at x = {0}")]
    Pole(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A point `tau` with `Im tau > 0`. Fractional powers of `q` are defined by the
/// exponentials `q^(k/48) = e^(pi i tau k / 24)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperHalfPoint {
    tau: CDd,
}

impl UpperHalfPoint {
    pub fn new(tau: CDd) -> Result<UpperHalfPoint, ModularError> {
        if !tau.is_finite() || tau.im.hi <= 0.0 {
            return Err(ModularError::NotInUpperHalfPlane(format!("{tau:.17}")));
        }
        Ok(UpperHalfPoint { tau })
    }

    pub fn from_f64(re: f64, im: f64) -> Result<UpperHalfPoint, ModularError> {
        UpperHalfPoint::new(CDd::from_f64(re, im))
    }

    /// `i t` for `t > 0`.
    pub fn imaginary(t: Dd) -> Result<UpperHalfPoint, ModularError> {
        UpperHalfPoint::new(CDd::new(Dd::ZERO, t))
    }

    pub fn tau(&self) -> CDd {
        self.tau
    }

    /// `e^(pi i tau x)`, so `q = q_pow(2)`, `q_2 = q_pow(1)`, `q^(1/24) = q_pow(1/12)`.
    pub fn q_pow(&self, x: Dd) -> CDd {
        (CDd::i() * self.tau).scale(dd::PI * x).exp()
    }

    pub fn q(&self) -> CDd {
        self.q_pow(Dd::from_f64(2.0))
    }

    pub fn q2(&self) -> CDd {
        self.q_pow(Dd::ONE)
    }

    /// `|q_2| = e^(-pi Im tau)`.
    pub fn q2_abs(&self) -> f64 {
        (-std::f64::consts::PI * self.tau.im.to_f64()).exp()
    }

    /// `(tau + 1) / 2`.
    pub fn half_shift(&self) -> UpperHalfPoint {
        let t = self.tau + Dd::ONE;
        UpperHalfPoint { tau: CDd::new(t.re.ldexp(-1), t.im.ldexp(-1)) }
    }

    /// `tau / 2`.
    pub fn half(&self) -> UpperHalfPoint {
        UpperHalfPoint { tau: CDd::new(self.tau.re.ldexp(-1), self.tau.im.ldexp(-1)) }
    }

    /// `2 tau`.
    pub fn double(&self) -> UpperHalfPoint {
        UpperHalfPoint { tau: CDd::new(self.tau.re.ldexp(1), self.tau.im.ldexp(1)) }
    }

    /// `tau + k`.
    pub fn translate(&self, k: i64) -> UpperHalfPoint {
        UpperHalfPoint { tau: self.tau + Dd::from_i64(k) }
    }
}

impl fmt::Display for UpperHalfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.20}", self.tau)
    }
}

/// A computed value with a bound on its truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularValue {
    pub value: CDd,
    pub trunc_bound: f64,
}

impl ModularValue {
    pub fn re(&self) -> Dd {
        self.value.re
    }

    pub fn im(&self) -> Dd {
        self.value.im
    }

    pub fn to_f64(&self) -> (f64, f64) {
        self.value.to_f64()
    }
}

impl fmt::Display for ModularValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(30);
        write!(f, "{:.*} (+/- {:.1e})", digits, self.value, self.trunc_bound)
    }
}

pub(crate) fn check_tol(tol: f64) -> Result<(), ModularError> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(ModularError::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if tol < MIN_TOL {
        return Err(ModularError::ToleranceUnreachable { tol, q_abs: f64::NAN });
    }
    Ok(())
}
