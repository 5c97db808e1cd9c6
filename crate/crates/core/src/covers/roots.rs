//! Polynomial roots by simultaneous Aberth-Ehrlich iteration with Newton polishing.
//!
//! Coefficients are in ascending order: `c[0] + c[1] x + .. + c[d] x^d`.

use num_complex::Complex64;

use super::CoverError;

/// Relative residual accepted for a computed root.
pub const ROOT_RESIDUAL: f64 = 1e-10;

const MAX_ITER: usize = 500;

/// `(F(z), F'(z))` by Horner's rule.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    horner(coeffs, z).0
}

/// `sum |c_k| |z|^k`, the natural scale for the residual at `z`.
pub fn residual_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

pub fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let scale = residual_scale(coeffs, z);
    if scale == 0.0 {
        return 0.0;
    }
    eval(coeffs, z).norm() / scale
}

pub fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect()
}

/// All roots with multiplicity, sorted by real part, then imaginary part.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, CoverError> {
    let Some(&lead) = coeffs.last() else {
        return Err(CoverError::DegenerateLeadingCoefficient);
    };
    if lead == Complex64::new(0.0, 0.0) || !lead.is_finite() {
        return Err(CoverError::DegenerateLeadingCoefficient);
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(CoverError::NonFinite("polynomial coefficient".into()));
    }
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| c / lead).collect();

    // Fujiwara-style bound for the starting circle.
    let radius = (0..deg)
        .map(|k| monic[k].norm().powf(1.0 / (deg - k) as f64))
        .fold(0.0_f64, f64::max)
        .max(1e-3)
        * 2.0;
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, angle)
        })
        .collect();

    for _ in 0..MAX_ITER {
        let mut moved = 0.0_f64;
        for i in 0..deg {
            let (p, dp) = horner(&monic, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let newton = p / dp;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = z[i] - z[j];
                    if diff == Complex64::new(0.0, 0.0) {
                        Complex64::new(0.0, 0.0)
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            } else {
                // a zero derivative at the iterate: perturb and continue
                let bump = Complex64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                z[i] += bump;
                moved = 1.0;
            }
        }
        if moved < 1e-15 {
            break;
        }
    }

    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *zi);
            if dp == Complex64::new(0.0, 0.0) {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            let candidate = *zi - step;
            if relative_residual(&monic, candidate) <= relative_residual(&monic, *zi) {
                *zi = candidate;
            } else {
                break;
            }
        }
    }

    for &zi in &z {
        let res = relative_residual(&monic, zi);
        if !res.is_finite() || res > ROOT_RESIDUAL {
            return Err(CoverError::RootsInaccurate { residual: res });
        }
    }
    sort_roots(&mut z);
    Ok(z)
}

pub fn sort_roots(z: &mut [Complex64]) {
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Convenience for real coefficients.
pub fn real_coeffs(c: &[f64]) -> Vec<Complex64> {
    c.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}
