//! Loop transport of the fiber `f(x) = y` and the resulting monodromy tuple.
//!
//! Color `0` is the point at infinity; colors `1..n` are the finite branch
//! points in the order given, which should be real and increasing (or at
//! least seen from the base point in that angular order). Each finite point
//! `b` is encircled once counterclockwise after a straight approach to a
//! circle of radius `radius_factor * dist(b, other branch points)`. The
//! permutation at infinity comes from the product constraint and is
//! cross-checked by a clockwise circle around all branch points.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::roots::{horner, poly_roots, relative_residual, sort_roots};
use super::CoverError;
use crate::dessin::MonodromyTuple;
use crate::perm::Perm;

/// A polynomial cover `x -> f(x)` of the sphere, branched over infinity and `branch_points`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverSpec {
    /// Ascending coefficients of `f`; the fiber over `y` is the zero set of `f - y`.
    pub f: Vec<Complex64>,
    /// Finite branch points, one color each after infinity.
    pub branch_points: Vec<Complex64>,
}

impl CoverSpec {
    pub fn new(f: Vec<Complex64>, branch_points: Vec<Complex64>) -> Result<CoverSpec, CoverError> {
        if f.len() < 2 || f.last().map_or(true, |c| *c == Complex64::new(0.0, 0.0)) {
            return Err(CoverError::DegenerateLeadingCoefficient);
        }
        if f.iter().chain(&branch_points).any(|c| !c.is_finite()) {
            return Err(CoverError::NonFinite("cover data".into()));
        }
        if branch_points.len() < 2 {
            return Err(CoverError::Malformed(
                "need at least two finite branch points (three colors with infinity)".into(),
            ));
        }
        for (i, a) in branch_points.iter().enumerate() {
            for b in &branch_points[i + 1..] {
                if (a - b).norm() < 1e-12 * (1.0 + a.norm()) {
                    return Err(CoverError::Malformed("branch points are not distinct".into()));
                }
            }
        }
        Ok(CoverSpec { f, branch_points })
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    /// Ascending coefficients of `f - y`.
    pub fn fiber_poly(&self, y: Complex64) -> Vec<Complex64> {
        let mut c = self.f.clone();
        c[0] -= y;
        c
    }

    pub fn fiber(&self, y: Complex64) -> Result<Vec<Complex64>, CoverError> {
        poly_roots(&self.fiber_poly(y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackOptions {
    pub base: Complex64,
    /// Loop radius as a fraction of the distance to the nearest other branch point.
    pub radius_factor: f64,
    /// Largest step, as a fraction of one path segment.
    pub max_step: f64,
    /// Smallest step before giving up.
    pub min_step: f64,
    /// Relative residual for corrected roots.
    pub tol: f64,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions {
            base: Complex64::new(0.0, 2.0),
            radius_factor: 0.25,
            max_step: 1.0 / 64.0,
            min_step: 1e-9,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Segment {
    Line { from: Complex64, to: Complex64 },
    Arc { center: Complex64, radius: f64, start: f64, sweep: f64 },
}

impl Segment {
    fn at(&self, t: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * t,
            Segment::Arc { center, radius, start, sweep } => {
                center + Complex64::from_polar(radius, start + sweep * t)
            }
        }
    }
}

/// Straight approach, one full circle (`sweep = +-2 pi`), straight return.
fn loop_around(base: Complex64, center: Complex64, radius: f64, sweep: f64) -> Vec<Segment> {
    let dir = base - center;
    let start = dir.im.atan2(dir.re);
    let entry = center + Complex64::from_polar(radius, start);
    vec![
        Segment::Line { from: base, to: entry },
        Segment::Arc { center, radius, start, sweep },
        Segment::Line { from: entry, to: base },
    ]
}

fn min_pairwise(z: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            m = m.min((z[i] - z[j]).norm());
        }
    }
    m
}

/// Newton correction of every root of `f - y` starting from `guess`.
fn correct(spec: &CoverSpec, y: Complex64, guess: &[Complex64], tol: f64) -> Option<Vec<Complex64>> {
    let poly = spec.fiber_poly(y);
    let mut out = Vec::with_capacity(guess.len());
    for &g in guess {
        let mut z = g;
        let mut ok = false;
        for _ in 0..12 {
            let (p, dp) = horner(&poly, z);
            let step = p / dp;
            if !step.is_finite() {
                return None;
            }
            z -= step;
            if step.norm() <= 1e-14 * (1.0 + z.norm()) {
                ok = true;
                break;
            }
        }
        if !ok && relative_residual(&poly, z) > tol {
            return None;
        }
        out.push(z);
    }
    Some(out)
}

/// Carries the roots along one segment with an adaptive step.
fn track_segment(
    spec: &CoverSpec,
    seg: &Segment,
    roots: Vec<Complex64>,
    opts: &TrackOptions,
    label: &str,
) -> Result<Vec<Complex64>, CoverError> {
    let df = super::roots::derivative(&spec.f);
    let mut t = 0.0;
    let mut h = opts.max_step;
    let mut current = roots;
    let mut y = seg.at(0.0);
    while t < 1.0 {
        let step = h.min(1.0 - t);
        let y_next = seg.at(t + step);
        let dy = y_next - y;
        // Euler predictor along dx/dy = 1/f'(x)
        let predicted: Vec<Complex64> = current
            .iter()
            .map(|&x| x + dy / horner(&df, x).0)
            .collect();
        let threshold = 0.5 * min_pairwise(&current);
        let accepted = correct(spec, y_next, &predicted, opts.tol).filter(|next| {
            next.iter().zip(&current).all(|(a, b)| (a - b).norm() < threshold)
                && min_pairwise(next) > 0.0
        });
        match accepted {
            Some(next) => {
                current = next;
                y = y_next;
                t += step;
                h = (h * 1.5).min(opts.max_step);
            }
            None => {
                h *= 0.5;
                if h < opts.min_step {
                    return Err(CoverError::PathTrackingFailure {
                        path: label.to_string(),
                        t,
                        y,
                    });
                }
            }
        }
    }
    Ok(current)
}

/// Matches transported roots to the base fiber: sheet `i` ends on sheet `perm[i]`.
fn match_fiber(start: &[Complex64], end: &[Complex64], label: &str) -> Result<Perm, CoverError> {
    let sep = min_pairwise(start);
    let mut images = Vec::with_capacity(start.len());
    for z in end {
        let (j, dist) = start
            .iter()
            .enumerate()
            .map(|(j, s)| (j, (z - s).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty fiber");
        if start.len() > 1 && dist > 0.25 * sep {
            return Err(CoverError::PathTrackingFailure {
                path: format!("{label} (endpoint matching)"),
                t: 1.0,
                y: Complex64::new(f64::NAN, f64::NAN),
            });
        }
        images.push(j);
    }
    Perm::from_images(images).map_err(|_| CoverError::PathTrackingFailure {
        path: format!("{label} (endpoint matching is not a bijection)"),
        t: 1.0,
        y: Complex64::new(f64::NAN, f64::NAN),
    })
}

fn transport(
    spec: &CoverSpec,
    segments: &[Segment],
    fiber: &[Complex64],
    opts: &TrackOptions,
    label: &str,
) -> Result<Perm, CoverError> {
    let mut roots = fiber.to_vec();
    for seg in segments {
        roots = track_segment(spec, seg, roots, opts, label)?;
    }
    match_fiber(fiber, &roots, label)
}

/// Monodromy tuple `(g_inf, g_1, .., g_k)` of the cover, before canonicalization.
pub fn numerical_monodromy(spec: &CoverSpec, opts: &TrackOptions) -> Result<MonodromyTuple, CoverError> {
    let base = opts.base;
    for b in &spec.branch_points {
        if (base - b).norm() < 1e-6 {
            return Err(CoverError::Malformed("base point lies on a branch point".into()));
        }
    }
    let d = spec.degree();
    let mut fiber = spec.fiber(base)?;
    sort_roots(&mut fiber);
    if d > 1 && min_pairwise(&fiber) < 1e-8 * (1.0 + fiber.iter().map(|z| z.norm()).fold(0.0, f64::max)) {
        return Err(CoverError::Malformed("fiber over the base point is not simple".into()));
    }

    let mut finite = Vec::with_capacity(spec.branch_points.len());
    for (k, &b) in spec.branch_points.iter().enumerate() {
        let nearest = spec
            .branch_points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, c)| (b - c).norm())
            .fold(f64::INFINITY, f64::min)
            .min((base - b).norm());
        let path = loop_around(base, b, opts.radius_factor * nearest, 2.0 * PI);
        finite.push(transport(spec, &path, &fiber, opts, &format!("loop around color {}", k + 1))?);
    }

    let around_all = finite.iter().fold(Perm::identity(d), |acc, g| acc.then(g));
    let g_inf = around_all.inverse();

    let big = 2.0 * spec
        .branch_points
        .iter()
        .map(|b| b.norm())
        .fold(base.norm(), f64::max);
    let outer = Complex64::new(0.0, big);
    let path = [
        Segment::Line { from: base, to: outer },
        Segment::Arc { center: Complex64::new(0.0, 0.0), radius: big, start: PI / 2.0, sweep: -2.0 * PI },
        Segment::Line { from: outer, to: base },
    ];
    let check = transport(spec, &path, &fiber, opts, "loop around infinity")?;
    if check != g_inf {
        return Err(CoverError::ProductConstraintViolation {
            from_product: g_inf.to_string(),
            from_loop: check.to_string(),
        });
    }

    let mut perms = vec![g_inf];
    perms.extend(finite);
    let t = MonodromyTuple::new(perms).map_err(CoverError::Dessin)?;
    t.require_valid().map_err(CoverError::Dessin)?;
    Ok(t)
}
