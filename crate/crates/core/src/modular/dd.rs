//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64` values,
//! giving about 106 bits of mantissa. Real [`Dd`] and complex [`CDd`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub const PI: Dd = Dd { hi: 3.141592653589793, lo: 1.2246467991473532e-16 };
pub const LN2: Dd = Dd { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };

/// Relative precision of one double-double operation.
pub const EPS: f64 = 4.93e-32;

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_i64(n: i64) -> Dd {
        let hi = n as f64;
        let lo = (n - hi as i64) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn signum(self) -> f64 {
        if self.hi > 0.0 {
            1.0
        } else if self.hi < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    pub fn floor(self) -> Dd {
        let hi = self.hi.floor();
        if hi == self.hi {
            let (hi, lo) = quick_two_sum(hi, self.lo.floor());
            Dd { hi, lo }
        } else {
            Dd { hi, lo: 0.0 }
        }
    }

    pub fn round(self) -> Dd {
        (self + Dd::from_f64(0.5)).floor()
    }

    pub fn sqr(self) -> Dd {
        self * self
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    /// Multiplication by a power of two, exact.
    pub fn ldexp(self, k: i32) -> Dd {
        let f = 2f64.powi(k);
        Dd { hi: self.hi * f, lo: self.lo * f }
    }

    /// Square root by one Newton step from the `f64` root. `NaN` for negative input.
    pub fn sqrt(self) -> Dd {
        if self.hi < 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = Dd::from_f64(self.hi * x);
        let (p, e) = two_prod(ax.hi, ax.hi);
        let diff = (self - Dd { hi: p, lo: e }).hi * (x * 0.5);
        let (hi, lo) = two_sum(ax.hi, diff);
        Dd { hi, lo }
    }

    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// `e^x` by reduction modulo `ln 2`, scaling by `2^-10`, Taylor series and
    /// ten squarings of `expm1`.
    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2 * Dd::from_f64(k)).ldexp(-10);
        // expm1(r) by Taylor series
        let mut term = r;
        let mut sum = r;
        let mut n = 1.0;
        loop {
            n += 1.0;
            term = term * r / Dd::from_f64(n);
            sum += term;
            if term.hi.abs() <= 1e-36 * sum.hi.abs() {
                break;
            }
        }
        for _ in 0..10 {
            sum = sum.ldexp(1) + sum.sqr();
        }
        (sum + Dd::ONE).ldexp(k as i32)
    }

    /// Natural logarithm by Newton iteration on `exp`.
    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        let mut y = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// `(sin x, cos x)`, reducing modulo `pi/2`.
    pub fn sin_cos(self) -> (Dd, Dd) {
        let half_pi = PI.ldexp(-1);
        let k = (self / half_pi).round();
        let r = self - half_pi * k;
        let r2 = r.sqr();
        // Taylor series on |r| <= pi/4
        let mut s = r;
        let mut c = Dd::ONE;
        let mut ts = r;
        let mut tc = Dd::ONE;
        let mut n = 0.0;
        loop {
            n += 2.0;
            tc = -tc * r2 / Dd::from_f64((n - 1.0) * n);
            ts = -ts * r2 / Dd::from_f64(n * (n + 1.0));
            c += tc;
            s += ts;
            if tc.hi.abs() < 1e-36 && ts.hi.abs() < 1e-36 {
                break;
            }
        }
        match (k.hi.rem_euclid(4.0)) as i64 {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    /// Decimal string with `digits` significant digits.
    pub fn to_string_digits(self, digits: usize) -> String {
        if !self.is_finite() {
            return format!("{}", self.hi);
        }
        if self.hi == 0.0 {
            return "0".into();
        }
        let neg = self.hi < 0.0;
        let x = self.abs();
        let mut e = x.hi.log10().floor() as i32;
        let mut m = x * Dd::from_f64(10.0).powi(-e);
        if m.hi >= 10.0 {
            m = m / Dd::from_f64(10.0);
            e += 1;
        } else if m.hi < 1.0 {
            m = m * Dd::from_f64(10.0);
            e -= 1;
        }
        let mut ds = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let d = m.hi.floor().clamp(0.0, 9.0);
            ds.push(d as u8);
            m = (m - Dd::from_f64(d)) * Dd::from_f64(10.0);
        }
        // round on the extra digit
        if ds[digits] >= 5 {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    e += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        ds.truncate(digits);
        let mantissa: String = ds.iter().map(|d| char::from(b'0' + d)).collect();
        let sign = if neg { "-" } else { "" };
        if (-5..digits as i32).contains(&e) {
            if e >= 0 {
                let (int, frac) = mantissa.split_at(e as usize + 1);
                let frac = frac.trim_end_matches('0');
                if frac.is_empty() {
                    format!("{sign}{int}")
                } else {
                    format!("{sign}{int}.{frac}")
                }
            } else {
                let zeros = "0".repeat((-e - 1) as usize);
                format!("{sign}0.{zeros}{}", mantissa.trim_end_matches('0'))
            }
        } else {
            let (lead, rest) = mantissa.split_at(1);
            let rest = rest.trim_end_matches('0');
            if rest.is_empty() {
                format!("{sign}{lead}e{e}")
            } else {
                format!("{sign}{lead}.{rest}e{e}")
            }
        }
    }

    /// Parses a plain decimal literal such as `-12.5e-3` exactly up to double-double rounding.
    pub fn parse_decimal(s: &str) -> Option<Dd> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (mant, exp) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
            None => (body, 0),
        };
        let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut acc = Dd::ZERO;
        let ten = Dd::from_f64(10.0);
        for b in int.bytes().chain(frac.bytes()) {
            acc = acc * ten + Dd::from_f64((b - b'0') as f64);
        }
        let e = exp.checked_sub(frac.len() as i32)?;
        if e.abs() > 400 {
            return None;
        }
        acc = if e >= 0 { acc * ten.powi(e) } else { acc / ten.powi(-e) };
        Some(if neg { -acc } else { acc })
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(32).max(1);
        f.pad(&self.to_string_digits(digits))
    }
}

/// Complex double-double.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: CDd = CDd { re: Dd::ONE, im: Dd::ZERO };

    pub fn new(re: Dd, im: Dd) -> CDd {
        CDd { re, im }
    }

    pub fn real(re: Dd) -> CDd {
        CDd { re, im: Dd::ZERO }
    }

    pub fn from_f64(re: f64, im: f64) -> CDd {
        CDd { re: Dd::from_f64(re), im: Dd::from_f64(im) }
    }

    pub fn i() -> CDd {
        CDd { re: Dd::ZERO, im: Dd::ONE }
    }

    pub fn conj(self) -> CDd {
        CDd { re: self.re, im: -self.im }
    }

    pub fn norm_sqr(self) -> Dd {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(self) -> Dd {
        self.norm_sqr().sqrt()
    }

    pub fn abs_f64(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn scale(self, k: Dd) -> CDd {
        CDd { re: self.re * k, im: self.im * k }
    }

    pub fn recip(self) -> CDd {
        let d = self.norm_sqr();
        CDd { re: self.re / d, im: -self.im / d }
    }

    /// `e^(r + i t) = e^r (cos t + i sin t)`.
    pub fn exp(self) -> CDd {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        CDd { re: m * c, im: m * s }
    }

    /// `e^(i theta)`.
    pub fn cis(theta: Dd) -> CDd {
        let (s, c) = theta.sin_cos();
        CDd { re: c, im: s }
    }

    pub fn powi(self, n: i32) -> CDd {
        if n == 0 {
            return CDd::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = CDd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// Principal square root.
    pub fn sqrt(self) -> CDd {
        let r = self.abs();
        if r.hi == 0.0 {
            return CDd::ZERO;
        }
        if self.re.hi >= 0.0 {
            let re = ((r + self.re).ldexp(-1)).sqrt();
            CDd { re, im: self.im / re.ldexp(1) }
        } else {
            let im = ((r - self.re).ldexp(-1)).sqrt();
            let im = if self.im.hi < 0.0 { -im } else { im };
            CDd { re: self.im / im.ldexp(1), im }
        }
    }

    pub fn to_f64(self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Neg for CDd {
    type Output = CDd;
    fn neg(self) -> CDd {
        CDd { re: -self.re, im: -self.im }
    }
}

impl Add for CDd {
    type Output = CDd;
    fn add(self, b: CDd) -> CDd {
        CDd { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Sub for CDd {
    type Output = CDd;
    fn sub(self, b: CDd) -> CDd {
        CDd { re: self.re - b.re, im: self.im - b.im }
    }
}

impl Mul for CDd {
    type Output = CDd;
    fn mul(self, b: CDd) -> CDd {
        CDd {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl Div for CDd {
    type Output = CDd;
    fn div(self, b: CDd) -> CDd {
        let d = b.norm_sqr();
        let n = self * b.conj();
        CDd { re: n.re / d, im: n.im / d }
    }
}

impl Mul<Dd> for CDd {
    type Output = CDd;
    fn mul(self, k: Dd) -> CDd {
        self.scale(k)
    }
}

impl Add<Dd> for CDd {
    type Output = CDd;
    fn add(self, k: Dd) -> CDd {
        CDd { re: self.re + k, im: self.im }
    }
}

impl Sub<Dd> for CDd {
    type Output = CDd;
    fn sub(self, k: Dd) -> CDd {
        CDd { re: self.re - k, im: self.im }
    }
}

impl fmt::Display for CDd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(32).max(1);
        let im = self.im;
        let sign = if im.hi < 0.0 { "-" } else { "+" };
        write!(
            f,
            "{} {} {}i",
            self.re.to_string_digits(digits),
            sign,
            im.abs().to_string_digits(digits)
        )
    }
}
