//! The one-parameter family of quartic covers
//!
//! `f_s(x) = 12/(2s-1) (x^4/4 - (s+1)/3 x^3 + s/2 x^2)`
//!
//! with critical points `0, 1, s` and critical values `0, 1, p(s)`, where
//! `p(s) = (2-s) s^3 / (2s-1)`. Over `a` in `(1, inf)` the four points `s`
//! with `p(s) = a` lie on four lifts `L1..L4` of that interval.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use super::roots::poly_roots;
use super::tracking::{numerical_monodromy, CoverSpec, TrackOptions};
use super::CoverError;
use crate::dessin::MonodromyTuple;

/// Tolerance for "real" and "inside an interval" when labelling lifts.
pub const LIFT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Lift {
    L1,
    L2,
    L3,
    L4,
}

impl Lift {
    pub const ALL: [Lift; 4] = [Lift::L1, Lift::L2, Lift::L3, Lift::L4];
}

impl fmt::Display for Lift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Lift {
    type Err = CoverError;

    fn from_str(s: &str) -> Result<Lift, CoverError> {
        match s.to_ascii_uppercase().as_str() {
            "L1" => Ok(Lift::L1),
            "L2" => Ok(Lift::L2),
            "L3" => Ok(Lift::L3),
            "L4" => Ok(Lift::L4),
            _ => Err(CoverError::Malformed(format!("unknown lift {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HurwitzPoint {
    pub s: Complex64,
    pub a: Complex64,
    pub lift: Option<Lift>,
}

fn check_pole(s: Complex64) -> Result<Complex64, CoverError> {
    let denom = 2.0 * s - 1.0;
    if denom.norm() < 1e-12 {
        return Err(CoverError::PoleAtHalf);
    }
    Ok(denom)
}

/// Ascending coefficients of `f_s`.
pub fn hurwitz_fs(s: Complex64) -> Result<Vec<Complex64>, CoverError> {
    let denom = check_pole(s)?;
    let zero = Complex64::new(0.0, 0.0);
    Ok(vec![zero, zero, 6.0 * s / denom, -4.0 * (s + 1.0) / denom, 3.0 / denom])
}

/// `p(s) = f_s(s)`.
pub fn hurwitz_projection(s: Complex64) -> Result<Complex64, CoverError> {
    let denom = check_pole(s)?;
    Ok((2.0 - s) * s * s * s / denom)
}

/// Ascending coefficients of `s^4 - 2 s^3 + 2a s - a`, whose roots are the fiber `p(s) = a`.
pub fn fiber_quartic(a: Complex64) -> Vec<Complex64> {
    vec![-a, 2.0 * a, Complex64::new(0.0, 0.0), Complex64::new(-2.0, 0.0), Complex64::new(1.0, 0.0)]
}

pub fn hurwitz_fiber(a: Complex64) -> Result<Vec<HurwitzPoint>, CoverError> {
    poly_roots(&fiber_quartic(a))?
        .into_iter()
        .map(|s| Ok(HurwitzPoint { s, a, lift: classify_lift(s)? }))
        .collect()
}

/// Which lift of `(1, inf)` the point `s` lies on; `None` if `p(s)` is not in `(1, inf)`.
pub fn classify_lift(s: Complex64) -> Result<Option<Lift>, CoverError> {
    let p = hurwitz_projection(s)?;
    if p.im.abs() > LIFT_TOL * p.norm().max(1.0) || p.re <= 1.0 {
        return Ok(None);
    }
    if s.im.abs() <= LIFT_TOL {
        if s.re < -1.0 {
            return Ok(Some(Lift::L3));
        }
        if s.re > 0.5 && s.re < 1.0 {
            return Ok(Some(Lift::L4));
        }
        return Err(CoverError::Ambiguous(format!("real s = {} on no lift", s.re)));
    }
    Ok(Some(if s.im > 0.0 { Lift::L1 } else { Lift::L2 }))
}

/// The cover `f_s` with colors `(inf, 0, 1, p(s))`.
pub fn hurwitz_cover(s: Complex64) -> Result<CoverSpec, CoverError> {
    let a = hurwitz_projection(s)?;
    CoverSpec::new(
        hurwitz_fs(s)?,
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), a],
    )
}

/// Canonical 4-dessin of the cover at the point of the fiber over `a` lying on `lift`.
pub fn hurwitz_dessin(a: f64, lift: Lift) -> Result<MonodromyTuple, CoverError> {
    hurwitz_dessin_with(a, lift, &TrackOptions::default())
}

pub fn hurwitz_point(a: f64, lift: Lift) -> Result<HurwitzPoint, CoverError> {
    if !(a.is_finite() && a > 1.0) {
        return Err(CoverError::Malformed(format!("a = {a} is not in (1, inf)")));
    }
    hurwitz_fiber(Complex64::new(a, 0.0))?
        .into_iter()
        .find(|p| p.lift == Some(lift))
        .ok_or(CoverError::NoSuchLift { a, lift: lift.to_string() })
}

pub fn hurwitz_dessin_with(a: f64, lift: Lift, opts: &TrackOptions) -> Result<MonodromyTuple, CoverError> {
    let point = hurwitz_point(a, lift)?;
    let t = numerical_monodromy(&hurwitz_cover(point.s)?, opts)?;
    t.canonical_form().map_err(CoverError::Dessin)
}

/// `27/4 (t^2 - t^3)`, branched over `inf, 0, 1`.
pub fn belyi_example() -> CoverSpec {
    let c = 27.0 / 4.0;
    CoverSpec::new(
        super::roots::real_coeffs(&[0.0, 0.0, c, -c]),
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    )
    .expect("fixed cover")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn fs_normalization() {
        for s in [c(0.3, 0.7), c(-2.0, 0.1), c(3.0, -1.0)] {
            let f = hurwitz_fs(s).unwrap();
            let df = super::super::roots::derivative(&f);
            let ev = super::super::roots::eval;
            assert!(ev(&f, c(0.0, 0.0)).norm() < 1e-14);
            assert!((ev(&f, c(1.0, 0.0)) - 1.0).norm() < 1e-13);
            for z in [c(0.0, 0.0), c(1.0, 0.0), s] {
                assert!(ev(&df, z).norm() < 1e-12);
            }
            assert!((ev(&f, s) - hurwitz_projection(s).unwrap()).norm() < 1e-12);
        }
        assert!(matches!(hurwitz_fs(c(0.5, 0.0)), Err(CoverError::PoleAtHalf)));
        assert!(matches!(hurwitz_projection(c(0.5, 0.0)), Err(CoverError::PoleAtHalf)));
        assert!((hurwitz_projection(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn classification() {
        assert_eq!(classify_lift(c(0.25, 0.0)).unwrap(), None);
        let labels: Vec<_> = hurwitz_fiber(c(5.0, 0.0)).unwrap().iter().map(|p| p.lift).collect();
        let mut sorted: Vec<_> = labels.into_iter().flatten().collect();
        sorted.sort();
        assert_eq!(sorted, Lift::ALL.to_vec());
    }
}
