use super::dd::{CDd, Dd, PI};
use super::{check_tol, ModularError, ModularValue, UpperHalfPoint, MAX_TERMS, MIN_TOL};

/// A value with a relative truncation bound: the exact quantity is `v (1 + delta)`, `|delta| <= r`.
#[derive(Debug, Clone, Copy)]
struct Rel {
    v: CDd,
    r: f64,
}

impl Rel {
    fn div(self, o: Rel) -> Rel {
        let r = if o.r < 1.0 { (self.r + o.r) / (1.0 - o.r) } else { f64::INFINITY };
        Rel { v: self.v / o.v, r }
    }

    fn powi(self, k: u32) -> Rel {
        Rel { v: self.v.powi(k as i32), r: (k as f64 * self.r.ln_1p()).exp_m1() }
    }

    fn add(self, o: Rel) -> Rel {
        let v = self.v + o.v;
        let abs = self.v.abs_f64() * self.r + o.v.abs_f64() * o.r;
        let m = v.abs_f64();
        let r = if abs == 0.0 { 0.0 } else if m == 0.0 { f64::INFINITY } else { abs / m };
        Rel { v, r }
    }

    fn scale(self, c: CDd) -> Rel {
        Rel { v: self.v * c, r: self.r }
    }

    fn neg(self) -> Rel {
        Rel { v: -self.v, r: self.r }
    }

    fn value(self) -> ModularValue {
        ModularValue { value: self.v, trunc_bound: self.v.abs_f64() * self.r }
    }

    fn within(&self, tol: f64) -> bool {
        self.r.is_finite() && self.v.abs_f64() * self.r <= tol * self.v.abs_f64().max(1.0)
    }
}

fn frac(num: i64, den: i64) -> Dd {
    Dd::from_i64(num) / Dd::from_i64(den)
}

/// `prod_{k >= 0} (1 + sign q_2^(a + b k))`, truncated once the relative tail bound is at most `target`.
///
/// With `rho = |q_2|^a` and `sigma = |q_2|^b`, the neglected factors satisfy
/// `sum |log(1 + x_k)| <= rho sigma^N / ((1 - sigma)(1 - rho)) = eps`, so the
/// relative error is at most `e^eps - 1`.
fn q2_product(p: &UpperHalfPoint, a: u32, b: u32, plus: bool, target: f64) -> Result<Rel, ModularError> {
    let r2 = p.q2_abs();
    let rho = r2.powi(a as i32);
    let sigma = r2.powi(b as i32);
    let unreachable = || ModularError::ToleranceUnreachable { tol: target, q_abs: r2 * r2 };
    if !(sigma < 1.0 - 1e-12) {
        return Err(unreachable());
    }
    let denom = (1.0 - sigma) * (1.0 - rho);
    let mut x = p.q_pow(Dd::from_f64(a as f64));
    let step = p.q_pow(Dd::from_f64(b as f64));
    let mut prod = CDd::ONE;
    let mut sigma_n = 1.0;
    for _ in 0..MAX_TERMS {
        prod = if plus { prod + prod * x } else { prod - prod * x };
        x = x * step;
        sigma_n *= sigma;
        let eps = rho * sigma_n / denom;
        let r = eps.exp_m1();
        if r <= target {
            return Ok(Rel { v: prod, r });
        }
    }
    Err(unreachable())
}

/// Runs `f` with shrinking relative targets until its bound meets `tol`.
fn refine(tol: f64, f: impl Fn(f64) -> Result<Rel, ModularError>) -> Result<Rel, ModularError> {
    check_tol(tol)?;
    let mut target = tol / 4.0;
    loop {
        let rel = f(target)?;
        if rel.within(tol) {
            return Ok(rel);
        }
        target *= 1e-4;
        if target < MIN_TOL * 1e-6 {
            return Err(ModularError::ToleranceUnreachable { tol, q_abs: f64::NAN });
        }
    }
}

fn eta_rel(p: &UpperHalfPoint, t: f64) -> Result<Rel, ModularError> {
    Ok(q2_product(p, 2, 2, false, t)?.scale(p.q_pow(frac(1, 12))))
}

/// `q prod (1 - q^n)^24`, the discriminant without its `(2 pi)^12` factor.
fn delta_normalized(p: &UpperHalfPoint, t: f64) -> Result<Rel, ModularError> {
    Ok(q2_product(p, 2, 2, false, t / 48.0)?.powi(24).scale(p.q()))
}

fn f_eta(p: &UpperHalfPoint, t: f64) -> Result<Rel, ModularError> {
    let pref = CDd::cis(-PI * frac(1, 24));
    Ok(eta_rel(&p.half_shift(), t / 4.0)?.div(eta_rel(p, t / 4.0)?).scale(pref))
}

fn f1_eta(p: &UpperHalfPoint, t: f64) -> Result<Rel, ModularError> {
    Ok(eta_rel(&p.half(), t / 4.0)?.div(eta_rel(p, t / 4.0)?))
}

fn f2_eta(p: &UpperHalfPoint, t: f64) -> Result<Rel, ModularError> {
    let sqrt2 = CDd::real(Dd::from_f64(2.0).sqrt());
    Ok(eta_rel(&p.double(), t / 4.0)?.div(eta_rel(p, t / 4.0)?).scale(sqrt2))
}

fn f_product(p: &UpperHalfPoint, t: f64) -> Result<Rel, ModularError> {
    Ok(q2_product(p, 1, 2, true, t)?.scale(p.q_pow(-frac(1, 24))))
}

fn f1_product(p: &UpperHalfPoint, t: f64) -> Result<Rel, ModularError> {
    Ok(q2_product(p, 1, 2, false, t)?.scale(p.q_pow(-frac(1, 24))))
}

fn f2_product(p: &UpperHalfPoint, t: f64) -> Result<Rel, ModularError> {
    let sqrt2 = CDd::real(Dd::from_f64(2.0).sqrt());
    Ok(q2_product(p, 2, 2, true, t)?.scale(p.q_pow(frac(1, 12)) * sqrt2))
}

/// Dedekind eta `q^(1/24) prod (1 - q^n)`.
pub fn eta(p: &UpperHalfPoint, tol: f64) -> Result<ModularValue, ModularError> {
    Ok(refine(tol, |t| eta_rel(p, t))?.value())
}

/// The discriminant `(2 pi)^12 q prod (1 - q^n)^24`.
pub fn delta(p: &UpperHalfPoint, tol: f64) -> Result<ModularValue, ModularError> {
    let two_pi_12 = CDd::real(PI.ldexp(1).powi(12));
    Ok(refine(tol, |t| Ok(delta_normalized(p, t)?.scale(two_pi_12)))?.value())
}

/// Weber `f = e^(-pi i / 24) eta((tau + 1) / 2) / eta(tau)`.
pub fn weber_f(p: &UpperHalfPoint, tol: f64) -> Result<ModularValue, ModularError> {
    Ok(refine(tol, |t| f_eta(p, t))?.value())
}

/// Weber `f_1 = eta(tau / 2) / eta(tau)`.
pub fn weber_f1(p: &UpperHalfPoint, tol: f64) -> Result<ModularValue, ModularError> {
    Ok(refine(tol, |t| f1_eta(p, t))?.value())
}

/// Weber `f_2 = sqrt 2 eta(2 tau) / eta(tau)`.
pub fn weber_f2(p: &UpperHalfPoint, tol: f64) -> Result<ModularValue, ModularError> {
    Ok(refine(tol, |t| f2_eta(p, t))?.value())
}

/// `f = q^(-1/48) prod (1 + q^(n - 1/2))`.
pub fn weber_f_product(p: &UpperHalfPoint, tol: f64) -> Result<ModularValue, ModularError> {
    Ok(refine(tol, |t| f_product(p, t))?.value())
}

/// `f_1 = q^(-1/48) prod (1 - q^(n - 1/2))`.
pub fn weber_f1_product(p: &UpperHalfPoint, tol: f64) -> Result<ModularValue, ModularError> {
    Ok(refine(tol, |t| f1_product(p, t))?.value())
}

/// `f_2 = sqrt 2 q^(1/24) prod (1 + q^n)`.
pub fn weber_f2_product(p: &UpperHalfPoint, tol: f64) -> Result<ModularValue, ModularError> {
    Ok(refine(tol, |t| f2_product(p, t))?.value())
}

/// The three expressions for `lambda*`, evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaStarExpressions {
    /// `f^8 / f_1^8` from the Weber products.
    pub weber: ModularValue,
    /// `e^(-pi i / 3) eta((tau + 1) / 2)^8 / eta(tau / 2)^8`.
    pub eta: ModularValue,
    /// `-(Delta((tau + 1) / 2) + 16 Delta(tau)) / (Delta(tau / 2) + 16 Delta(tau))`.
    pub delta: ModularValue,
}

impl LambdaStarExpressions {
    /// Largest pairwise distance between the three values.
    pub fn spread(&self) -> f64 {
        let [a, b, c] = [self.weber.value, self.eta.value, self.delta.value];
        (a - b).abs_f64().max((a - c).abs_f64()).max((b - c).abs_f64())
    }
}

pub fn lambda_star_expressions(p: &UpperHalfPoint, tol: f64) -> Result<LambdaStarExpressions, ModularError> {
    let weber = refine(tol, |t| {
        Ok(f_product(p, t / 32.0)?.powi(8).div(f1_product(p, t / 32.0)?.powi(8)))
    })?;
    let eta = refine(tol, |t| {
        let pref = CDd::cis(-PI * frac(1, 3));
        let ratio = eta_rel(&p.half_shift(), t / 32.0)?.div(eta_rel(&p.half(), t / 32.0)?);
        Ok(ratio.powi(8).scale(pref))
    })?;
    let delta = refine(tol, |t| {
        let sixteen = CDd::real(Dd::from_f64(16.0));
        let d = delta_normalized(p, t / 8.0)?.scale(sixteen);
        let num = delta_normalized(&p.half_shift(), t / 8.0)?.add(d);
        let den = delta_normalized(&p.half(), t / 8.0)?.add(d);
        Ok(num.div(den).neg())
    })?;
    Ok(LambdaStarExpressions { weber: weber.value(), eta: eta.value(), delta: delta.value() })
}

/// `lambda*(tau)` as `f^8 / f_1^8`, after checking it against the eta and
/// discriminant expressions to `10 tol`.
pub fn lambda_star(p: &UpperHalfPoint, tol: f64) -> Result<ModularValue, ModularError> {
    let e = lambda_star_expressions(p, tol)?;
    let magnitude = e.weber.value.abs_f64();
    let allowed = 10.0 * tol * magnitude.max(1.0) + 1e-26 * magnitude;
    if !(e.spread() <= allowed) {
        return Err(ModularError::ExpressionMismatch {
            weber: format!("{:.25}", e.weber.value),
            eta: format!("{:.25}", e.eta.value),
            delta: format!("{:.25}", e.delta.value),
            allowed,
        });
    }
    Ok(e.weber)
}

/// The accessory parameter `ap(t) = lambda*(i t)`.
pub fn ap(t: Dd, tol: f64) -> Result<ModularValue, ModularError> {
    if !t.is_finite() || t.hi <= 0.0 {
        return Err(ModularError::InvalidArgument(format!("ap needs t > 0, got {t}")));
    }
    lambda_star(&UpperHalfPoint::imaginary(t)?, tol)
}

/// `256 (x^2 - x + 1)^3 / (x^2 (x - 1)^2)`.
pub fn j_from_lambda_star(x: CDd) -> Result<CDd, ModularError> {
    let x1 = x - Dd::ONE;
    let den = x * x * x1 * x1;
    if den == CDd::ZERO {
        return Err(ModularError::Pole(format!("{x:.17}")));
    }
    let s = x * x - x + Dd::ONE;
    Ok((s * s * s).scale(Dd::from_f64(256.0)) / den)
}

/// `E_4 = 1 + 240 sum n^3 q^n / (1 - q^n)` with a relative truncation bound.
fn e4_rel(p: &UpperHalfPoint, target: f64) -> Result<Rel, ModularError> {
    let q = p.q();
    let r = p.q2_abs().powi(2);
    let unreachable = || ModularError::ToleranceUnreachable { tol: target, q_abs: r };
    if !(r < 1.0 - 1e-12) {
        return Err(unreachable());
    }
    let mut qn = CDd::ONE;
    let mut sum = CDd::ZERO;
    let mut rn = 1.0;
    for n in 1..=MAX_TERMS {
        qn = qn * q;
        rn *= r;
        let n3 = Dd::from_f64((n as f64).powi(3));
        sum = sum + (qn / (CDd::ONE - qn)).scale(n3);
        // sum_{m > n} m^3 r^m / (1 - r^m) <= (n+1)^3 r^(n+1) / ((1 - ratio)(1 - r))
        let m = (n + 1) as f64;
        let ratio = ((m + 1.0) / m).powi(3) * r;
        if ratio < 1.0 {
            let tail = 240.0 * m.powi(3) * rn * r / ((1.0 - ratio) * (1.0 - r));
            let e4 = CDd::ONE + sum.scale(Dd::from_f64(240.0));
            let size = e4.abs_f64();
            if tail < size && tail / size <= target {
                return Ok(Rel { v: e4, r: tail / size });
            }
        }
    }
    Err(unreachable())
}

/// `j = E_4^3 / (q prod (1 - q^n)^24)`, independent of `lambda*`.
pub fn j_oracle(p: &UpperHalfPoint, tol: f64) -> Result<ModularValue, ModularError> {
    Ok(refine(tol, |t| Ok(e4_rel(p, t / 8.0)?.powi(3).div(delta_normalized(p, t / 4.0)?)))?.value())
}

/// Roots of `x^2 - f8 x + 16 / f8` assigned to `f_1^8`, `f_2^8`, and the resulting `ap`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmValues {
    pub f1_8: Dd,
    pub f2_8: Dd,
    pub ap: Dd,
}

/// Recovers `f_1^8`, `f_2^8` and `ap = f8 / f_1^8` from a known value `f8 = f(tau)^8`,
/// telling the two roots apart by a direct evaluation of `f_1` at `point`.
pub fn cm_from_weber(f8: Dd, point: &UpperHalfPoint, tol: f64) -> Result<CmValues, ModularError> {
    check_tol(tol)?;
    if !f8.is_finite() || f8.hi <= 0.0 {
        return Err(ModularError::InvalidArgument(format!("f8 must be positive, got {f8}")));
    }
    let sixteen = Dd::from_f64(16.0);
    let product = sixteen / f8;
    let mut disc = f8.sqr() - product.ldexp(2);
    if disc.hi < 0.0 {
        if disc.abs().hi <= tol * f8.sqr().hi {
            disc = Dd::ZERO;
        } else {
            return Err(ModularError::NegativeDiscriminant(disc.to_f64()));
        }
    }
    let big = (f8 + disc.sqrt()).ldexp(-1);
    let small = product / big;
    let direct = weber_f1(point, tol)?.value.powi(8);
    let dist = |x: Dd| (CDd::real(x) - direct).abs_f64();
    let (u, v) = if dist(small) <= dist(big) { (small, big) } else { (big, small) };
    Ok(CmValues { f1_8: u, f2_8: v, ap: f8 / u })
}

/// Evidence that `y = 16 ap(sqrt n)` satisfies the monic relation
/// `(y^2 - 16 y + 256)^3 - j y^2 (y - 16)^2 = 0` with `j = j(i sqrt n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralityWitness {
    pub n: u64,
    pub y: Dd,
    pub j: Dd,
    pub residual: f64,
    pub scale: f64,
    pub holds: bool,
}

/// Internal precision for the integrality relation, independent of the check tolerance.
const WITNESS_TOL: f64 = 1e-27;

pub fn integrality_witness(n: u64, tol: f64) -> Result<IntegralityWitness, ModularError> {
    check_tol(tol)?;
    if n == 0 {
        return Err(ModularError::InvalidArgument("n must be at least 1".into()));
    }
    let root = Dd::from_i64(n as i64).sqrt();
    let y = ap(root, WITNESS_TOL)?.re() * Dd::from_f64(16.0);
    let j = j_oracle(&UpperHalfPoint::imaginary(root)?, WITNESS_TOL)?.re();
    let sixteen = Dd::from_f64(16.0);
    let lhs = (y.sqr() - sixteen * y + Dd::from_f64(256.0)).powi(3);
    let rhs = j * y.sqr() * (y - sixteen).sqr();
    let residual = (lhs - rhs).abs().to_f64();
    let scale = lhs.abs().to_f64() + rhs.abs().to_f64();
    Ok(IntegralityWitness { n, y, j, residual, scale, holds: residual <= tol * scale })
}

/// Whether `16 ap(sqrt n)` satisfies its integral relation with `j(i sqrt n)` to `tol`.
pub fn integrality_check(n: u64, tol: f64) -> Result<bool, ModularError> {
    Ok(integrality_witness(n, tol)?.holds)
}
