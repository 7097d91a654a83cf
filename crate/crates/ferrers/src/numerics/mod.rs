//! Extended-precision substrate.
//!
//! Real numbers are MPFR floats ([`ExtReal`]), complex numbers are pairs of
//! them ([`ExtComplex`]) and exact rationals are GMP rationals ([`Rational`]).
//! Precision is never global: every operation receives a [`Ctx`] or inherits
//! the precision of its operands.
//!
//! ```
//! use ferrers::numerics::{Ctx, log_gamma};
//!
//! let ctx = Ctx::new(40);
//! let half = ctx.parse("0.5").unwrap();
//! let lg = log_gamma(&ctx, &half).unwrap();
//! let ln_sqrt_pi = ctx.pi().sqrt().ln();
//! assert!((lg - ln_sqrt_pi).abs() < 1e-38);
//! ```

mod complex;
mod quad;
mod roots;

use std::cmp::Ordering;

pub use complex::ExtComplex;
pub use quad::quad_adaptive;
pub use roots::{newton_bisect, newton_solve};
pub use rug::Float as ExtReal;
pub use rug::Rational;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float, Integer};

use crate::{Error, Result};

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Working precision, in significant decimal digits.
///
/// A handful of guard bits are added on top of the requested digits so that
/// correctly rounded MPFR results carry the advertised accuracy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ctx {
    digits: u32,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx::new(Ctx::DEFAULT_DIGITS)
    }
}

impl Ctx {
    /// Default working precision.
    pub const DEFAULT_DIGITS: u32 = 40;

    /// Creates a context with `digits` significant decimal digits (at least 5).
    pub fn new(digits: u32) -> Self {
        Ctx { digits: digits.max(5) }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Mantissa size in bits.
    pub fn bits(&self) -> u32 {
        (self.digits as f64 * BITS_PER_DIGIT).ceil() as u32 + 8
    }

    /// A context carrying `extra` more digits.
    pub fn boosted(&self, extra: u32) -> Ctx {
        Ctx::new(self.digits + extra)
    }

    /// A float at this precision.
    pub fn real<T>(&self, v: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits(), v)
    }

    pub fn zero(&self) -> Float {
        Float::new(self.bits())
    }

    pub fn one(&self) -> Float {
        self.real(1)
    }

    /// Parses a decimal string at this precision.
    pub fn parse(&self, s: &str) -> Result<Float> {
        let parsed = Float::parse(s.trim()).map_err(|e| Error::Domain(format!("cannot parse {s:?}: {e}")))?;
        Ok(self.real(parsed))
    }

    /// Exact rational `num/den` rounded to this precision.
    pub fn ratio(&self, num: i64, den: i64) -> Float {
        self.real(Rational::from((num, den)))
    }

    pub fn pi(&self) -> Float {
        self.real(Constant::Pi)
    }

    /// `10^(-digits)`.
    pub fn eps(&self) -> Float {
        self.tenth_power(-(self.digits as i32))
    }

    /// `10^k`.
    pub fn tenth_power(&self, k: i32) -> Float {
        let ten = self.real(10);
        ten.pow(k)
    }

    pub fn complex(&self, re: Float, im: Float) -> ExtComplex {
        ExtComplex::new(self.real(re), self.real(im))
    }

    /// Rounds `x` to this precision.
    pub fn round(&self, x: &Float) -> Float {
        self.real(x)
    }

    pub fn round_c(&self, z: &ExtComplex) -> ExtComplex {
        ExtComplex::new(self.real(&z.re), self.real(&z.im))
    }
}

/// ln Γ(x) for x > 0, correctly rounded by MPFR.
pub fn log_gamma(ctx: &Ctx, x: &Float) -> Result<Float> {
    if x.cmp0() != Some(Ordering::Greater) {
        return Err(Error::Domain(format!("log_gamma needs x > 0, got {}", x.to_f64())));
    }
    Ok(ctx.real(x).ln_gamma())
}

/// `sin(π x)` with exact zeros at the integers.
pub fn sin_pi(x: &Float) -> Float {
    let prec = x.prec();
    let n = Float::with_val(prec, x.round_ref());
    let r = Float::with_val(prec, x - &n);
    let mut s = (r * Float::with_val(prec, Constant::Pi)).sin();
    let odd = n.to_integer().map(|k| k.is_odd()).unwrap_or(false);
    if odd {
        s = -s;
    }
    s
}

/// `cos(π x)` with exact zeros at the half-integers.
pub fn cos_pi(x: &Float) -> Float {
    let half = Float::with_val(x.prec(), 0.5);
    sin_pi(&(half + x))
}

/// `1/Γ(x)` for any real `x`, exactly zero at the poles of Γ.
pub fn recip_gamma(x: &Float) -> Float {
    let prec = x.prec();
    if x.cmp0() == Some(Ordering::Greater) {
        return Float::with_val(prec, x.gamma_ref()).recip();
    }
    // 1/Γ(x) = Γ(1 - x) sin(πx) / π
    let one_minus = Float::with_val(prec, 1 - x);
    let g = one_minus.gamma();
    g * sin_pi(x) / Float::with_val(prec, Constant::Pi)
}

/// Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`), exact.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::from(1));
    for m in 1..=n {
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            let c = Integer::from(Integer::binomial_u(m as u32 + 1, k as u32));
            acc += Rational::from(bk * c);
        }
        b.push(-acc / Rational::from(m as u32 + 1));
    }
    b
}

/// `log10 |x|` as an `f64`, or `-inf` for zero.
pub fn log10_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = x.to_f64_exp();
    m.abs().log10() + e as f64 * std::f64::consts::LOG10_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[1], Rational::from((-1, 2)));
        assert_eq!(b[2], Rational::from((1, 6)));
        assert_eq!(b[4], Rational::from((-1, 30)));
        assert_eq!(b[6], Rational::from((1, 42)));
        assert_eq!(b[8], Rational::from((-1, 30)));
        assert_eq!(b[7], Rational::new());
    }

    #[test]
    fn sin_pi_exact_zeros() {
        let ctx = Ctx::new(30);
        assert!(sin_pi(&ctx.real(7)).is_zero());
        assert!(sin_pi(&ctx.real(-3)).is_zero());
        let s = sin_pi(&ctx.parse("0.5").unwrap());
        assert_eq!(s, 1);
        let s = sin_pi(&ctx.parse("1.5").unwrap());
        assert_eq!(s, -1);
    }

    #[test]
    fn recip_gamma_poles_and_values() {
        let ctx = Ctx::new(30);
        assert!(recip_gamma(&ctx.real(-4)).is_zero());
        assert!(recip_gamma(&ctx.real(0)).is_zero());
        let r = recip_gamma(&ctx.parse("-0.5").unwrap());
        // Γ(-1/2) = -2 sqrt(π)
        let want = -(ctx.pi().sqrt() * 2u32).recip();
        assert!((r - want).abs() < 1e-28);
    }

    #[test]
    fn log_gamma_rejects_nonpositive() {
        let ctx = Ctx::new(30);
        assert!(log_gamma(&ctx, &ctx.real(0)).is_err());
        assert!(log_gamma(&ctx, &ctx.real(1)).unwrap().is_zero());
    }

    #[test]
    fn ctx_bits_grow_with_digits() {
        assert!(Ctx::new(40).bits() >= 133);
        assert_eq!(Ctx::new(40).boosted(10).digits(), 50);
        assert_eq!(Ctx::new(1).digits(), 5);
    }
}
