//! The expansion `lambda* = (prod_{m >= 0} (1 + q_2^(2m+1)) / (1 - q_2^(2m+1)))^8` in exact integers.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use super::dd::{CDd, Dd};
use super::{ModularError, UpperHalfPoint};

/// Integer coefficients `c_0 .. c_N` of a power series in `q_2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    pub coefficients: Vec<BigInt>,
}

/// Product of two series truncated to `len` terms.
fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of the `lambda*` expansion through order `n`.
pub fn lambda_star_qseries(n: usize) -> QSeries {
    let len = n + 1;
    let mut c = vec![BigInt::zero(); len];
    c[0] = BigInt::one();
    for k in (1..len).step_by(2) {
        // times (1 + x^k)
        for i in (k..len).rev() {
            let t = c[i - k].clone();
            c[i] += t;
        }
        // divided by (1 - x^k)
        for i in k..len {
            let t = c[i - k].clone();
            c[i] += t;
        }
    }
    let sq = mul_trunc(&c, &c, len);
    let fourth = mul_trunc(&sq, &sq, len);
    QSeries { coefficients: mul_trunc(&fourth, &fourth, len) }
}

pub(crate) fn bigint_to_dd(x: &BigInt) -> Dd {
    let hi = x.to_f64().unwrap_or(f64::NAN);
    if !hi.is_finite() {
        return Dd::from_f64(hi);
    }
    let rest = x - BigInt::from_f64(hi).unwrap_or_default();
    let lo = rest.to_f64().unwrap_or(0.0);
    Dd::from_f64(hi) + Dd::from_f64(lo)
}

impl QSeries {
    pub fn order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// Truncated sum at `q_2(tau)`.
    pub fn eval(&self, p: &UpperHalfPoint) -> CDd {
        let q2 = p.q2();
        self.coefficients
            .iter()
            .rev()
            .fold(CDd::ZERO, |acc, c| acc * q2 + bigint_to_dd(c))
    }

    /// Bound on the neglected terms at `|q_2| = r`.
    ///
    /// The coefficients are positive, so `c_k <= F(s) / s^k` for the series value
    /// `F(s)` at any `0 < s < 1`; with `s = sqrt r` the tail is at most
    /// `F(s) r^((N+1)/2) / (1 - sqrt r)`, and
    /// `log F(s) <= 16 s / ((1 - s)(1 - s^2))` bounds `F(s)`.
    pub fn tail_bound(&self, r: f64) -> f64 {
        if !(0.0..1.0).contains(&r) {
            return f64::INFINITY;
        }
        let s = r.sqrt();
        let log_f = 16.0 * s / ((1.0 - s) * (1.0 - s * s));
        let exponent = (self.order() + 1) as f64 / 2.0;
        (log_f + exponent * r.ln()).exp() / (1.0 - s)
    }

    /// Truncated sum and tail bound at `tau`.
    pub fn eval_bounded(&self, p: &UpperHalfPoint) -> Result<(CDd, f64), ModularError> {
        let bound = self.tail_bound(p.q2_abs());
        if !bound.is_finite() {
            return Err(ModularError::ToleranceUnreachable { tol: bound, q_abs: p.q2_abs().powi(2) });
        }
        Ok((self.eval(p), bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_terms() {
        let s = lambda_star_qseries(4);
        let c: Vec<i64> = s.coefficients.iter().map(|x| x.to_i64().unwrap()).collect();
        // (1 + 2x + 2x^2 + 4x^3 + 6x^4)^8 truncated
        assert_eq!(c[..2], [1, 16]);
        assert_eq!(c[2], 128);
        assert_eq!(lambda_star_qseries(0).coefficients, vec![BigInt::one()]);
    }

    #[test]
    fn bigint_conversion() {
        let x: BigInt = "123456789012345678901234567".parse().unwrap();
        let d = bigint_to_dd(&x);
        assert_eq!(d.to_string_digits(27), "123456789012345678901234567");
    }
}
