use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::Float;

/// A complex number with MPFR real and imaginary parts.
///
/// Multi-valued functions use principal branches with the cut on the negative
/// real axis. A signed zero imaginary part selects the side of the cut, so
/// `sqrt(-1 + 0i) = i` while `sqrt(-1 - 0i) = -i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtComplex {
    pub re: Float,
    pub im: Float,
}

impl ExtComplex {
    pub fn new(re: Float, im: Float) -> Self {
        ExtComplex { re, im }
    }

    /// A real number as a complex one with `+0` imaginary part.
    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        ExtComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        ExtComplex::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        ExtComplex::new(Float::with_val(prec, 1), Float::new(prec))
    }

    pub fn i(prec: u32) -> Self {
        ExtComplex::new(Float::new(prec), Float::with_val(prec, 1))
    }

    /// `r e^{iθ}`.
    pub fn from_polar(r: &Float, theta: &Float) -> Self {
        let prec = r.prec().max(theta.prec());
        let (s, c) = Float::with_val(prec, theta).sin_cos(Float::new(prec));
        ExtComplex::new(c * r, s * r)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// The same value rounded to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        ExtComplex::new(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
    }

    pub fn conj(&self) -> Self {
        ExtComplex::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        ExtComplex::new(Float::with_val(self.prec(), &self.re / &n), -(Float::with_val(self.prec(), &self.im / &n)))
    }

    pub fn scale(&self, r: &Float) -> Self {
        let p = self.prec().max(r.prec());
        ExtComplex::new(Float::with_val(p, &self.re * r), Float::with_val(p, &self.im * r))
    }

    pub fn scale_i(&self, k: i32) -> Self {
        ExtComplex::new(self.re.clone() * k, self.im.clone() * k)
    }

    pub fn div_real(&self, r: &Float) -> Self {
        let p = self.prec().max(r.prec());
        ExtComplex::new(Float::with_val(p, &self.re / r), Float::with_val(p, &self.im / r))
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        ExtComplex::new(-self.im.clone(), self.re.clone())
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return ExtComplex::zero(p);
        }
        let r = self.abs();
        if self.re.cmp0() != Some(std::cmp::Ordering::Less) {
            let t = Float::with_val(p, &r + &self.re) / 2u32;
            let t = t.sqrt();
            let im = Float::with_val(p, &self.im / &t) / 2u32;
            ExtComplex::new(t, im)
        } else {
            let t = Float::with_val(p, &r - &self.re) / 2u32;
            let t = t.sqrt();
            let re = Float::with_val(p, self.im.abs_ref()) / &t / 2u32;
            let im = if self.im.is_sign_negative() { -t } else { t };
            ExtComplex::new(re, im)
        }
    }

    /// Principal fourth root.
    pub fn fourth_root(&self) -> Self {
        self.sqrt().sqrt()
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let re = self.abs().ln();
        let im = Float::with_val(p, self.im.atan2_ref(&self.re));
        ExtComplex::new(re, im)
    }

    /// `ln(1 + self)`, accurate for small arguments.
    pub fn ln_1p(&self) -> Self {
        let p = self.prec();
        // |1+v|² - 1 = 2 Re v + |v|²
        let m = Float::with_val(p, &self.re * 2u32) + self.norm_sqr();
        let re = m.ln_1p() / 2u32;
        let one_re = Float::with_val(p, &self.re + 1u32);
        let im = Float::with_val(p, self.im.atan2_ref(&one_re));
        ExtComplex::new(re, im)
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        ExtComplex::new(c * &m, s * m)
    }

    /// `self^e` on the principal branch.
    pub fn powf(&self, e: &Float) -> Self {
        if self.is_zero() {
            return ExtComplex::zero(self.prec());
        }
        self.ln().scale(e).exp()
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = ExtComplex::one(self.prec());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn cosh(&self) -> Self {
        let e = self.exp();
        let ei = e.recip();
        (&e + &ei).div_real(&Float::with_val(self.prec(), 2))
    }

    pub fn sinh(&self) -> Self {
        let e = self.exp();
        let ei = e.recip();
        (&e - &ei).div_real(&Float::with_val(self.prec(), 2))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for ExtComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = Some(20);
        write!(
            f,
            "({} {} {}i)",
            self.re.to_string_radix(10, digits),
            if self.im.is_sign_negative() { "-" } else { "+" },
            Float::with_val(self.im.prec(), self.im.abs_ref()).to_string_radix(10, digits)
        )
    }
}

impl From<Float> for ExtComplex {
    fn from(re: Float) -> Self {
        ExtComplex::from_real(re)
    }
}

fn prec2(a: &ExtComplex, b: &ExtComplex) -> u32 {
    a.prec().max(b.prec())
}

impl Add<&ExtComplex> for &ExtComplex {
    type Output = ExtComplex;
    fn add(self, o: &ExtComplex) -> ExtComplex {
        let p = prec2(self, o);
        ExtComplex::new(Float::with_val(p, &self.re + &o.re), Float::with_val(p, &self.im + &o.im))
    }
}

impl Sub<&ExtComplex> for &ExtComplex {
    type Output = ExtComplex;
    fn sub(self, o: &ExtComplex) -> ExtComplex {
        let p = prec2(self, o);
        ExtComplex::new(Float::with_val(p, &self.re - &o.re), Float::with_val(p, &self.im - &o.im))
    }
}

impl Mul<&ExtComplex> for &ExtComplex {
    type Output = ExtComplex;
    fn mul(self, o: &ExtComplex) -> ExtComplex {
        let p = prec2(self, o);
        let rr = Float::with_val(p, &self.re * &o.re);
        let ii = Float::with_val(p, &self.im * &o.im);
        let ri = Float::with_val(p, &self.re * &o.im);
        let ir = Float::with_val(p, &self.im * &o.re);
        ExtComplex::new(rr - ii, ri + ir)
    }
}

impl Div<&ExtComplex> for &ExtComplex {
    type Output = ExtComplex;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &ExtComplex) -> ExtComplex {
        self * &o.recip()
    }
}

impl Neg for &ExtComplex {
    type Output = ExtComplex;
    fn neg(self) -> ExtComplex {
        ExtComplex::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for ExtComplex {
    type Output = ExtComplex;
    fn neg(self) -> ExtComplex {
        ExtComplex::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExtComplex> for ExtComplex {
            type Output = ExtComplex;
            fn $m(self, o: ExtComplex) -> ExtComplex {
                (&self).$m(&o)
            }
        }
        impl $tr<&ExtComplex> for ExtComplex {
            type Output = ExtComplex;
            fn $m(self, o: &ExtComplex) -> ExtComplex {
                (&self).$m(o)
            }
        }
        impl $tr<ExtComplex> for &ExtComplex {
            type Output = ExtComplex;
            fn $m(self, o: ExtComplex) -> ExtComplex {
                self.$m(&o)
            }
        }
        impl $tr<&Float> for &ExtComplex {
            type Output = ExtComplex;
            fn $m(self, o: &Float) -> ExtComplex {
                self.$m(&ExtComplex::from_real(o.clone()))
            }
        }
        impl $tr<&Float> for ExtComplex {
            type Output = ExtComplex;
            fn $m(self, o: &Float) -> ExtComplex {
                (&self).$m(&ExtComplex::from_real(o.clone()))
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);
