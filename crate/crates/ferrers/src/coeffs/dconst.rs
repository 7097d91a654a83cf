use rug::ops::Pow;
use rug::{Float, Rational};

use crate::numerics::{bernoulli_numbers, log_gamma, Ctx};
use crate::{Error, Result};

/// Largest odd index for which `d_s` is provided.
pub const D_MAX: usize = 7;

/// The odd-index constants `d_1, d_3, d_5, d_7` at one value of α.
///
/// They are the coefficients of `½ ln(C_1/C_2) ~ Σ d_{2k+1} u^{-2k-1}` and come
/// from Stirling's series for the gamma functions in `C_1/C_2`:
///
/// ```text
/// d_{2k-1}(α) = -B_{2k}/(2k(2k-1)) + B_{2k}(½)/(4k(2k-1)) · (2/(4-α²))^{2k-1}
/// ```
#[derive(Clone, Debug)]
pub struct DConstants {
    pub alpha2: Float,
    values: Vec<Float>,
}

impl DConstants {
    /// `d_s` for odd `s <= 7`.
    pub fn d(&self, s: usize) -> Option<&Float> {
        if s % 2 == 1 && s <= D_MAX {
            self.values.get(s / 2)
        } else {
            None
        }
    }

    pub fn d1(&self) -> &Float {
        &self.values[0]
    }

    pub fn d3(&self) -> &Float {
        &self.values[1]
    }

    pub fn d5(&self) -> &Float {
        &self.values[2]
    }
}

/// Exact `d_s(α)` for odd `s <= 7` at rational α².
pub fn d_rational(s: usize, alpha2: &Rational) -> Result<Rational> {
    if s.is_multiple_of(2) || s > D_MAX {
        return Err(Error::Range(format!("d_{s} is not provided (odd s <= {D_MAX} only)")));
    }
    let k = s.div_ceil(2);
    let b = bernoulli_numbers(2 * k);
    let b2k = b[2 * k].clone();
    // B_{2k}(½) = -(1 - 2^{1-2k}) B_{2k}
    let pow2 = Rational::from((1, 1u64 << (2 * k - 1)));
    let b_half = -(Rational::from(1) - pow2) * &b2k;
    let two_k = Rational::from(2 * k as u32);
    let denom1 = &two_k * Rational::from(2 * k as u32 - 1);
    let first = -(b2k / &denom1);
    let ratio = Rational::from(2) / (Rational::from(4) - alpha2);
    let mut pw = Rational::from(1);
    for _ in 0..(2 * k - 1) {
        pw *= &ratio;
    }
    let second = b_half / (denom1 * 2u32) * pw;
    Ok(first + second)
}

/// The constants at a float value of α.
pub fn d_constants(alpha: &Float) -> DConstants {
    let prec = alpha.prec();
    let alpha2 = Float::with_val(prec, alpha.square_ref());
    let ratio = Float::with_val(prec, 2) / Float::with_val(prec, 4 - &alpha2);
    let b = bernoulli_numbers(2 * D_MAX.div_ceil(2));
    let mut values = Vec::new();
    for k in 1..=D_MAX.div_ceil(2) {
        let b2k = &b[2 * k];
        let pow2 = Rational::from((1, 1u64 << (2 * k - 1)));
        let b_half = -(Rational::from(1) - pow2) * b2k;
        let denom1 = (2 * k * (2 * k - 1)) as u32;
        let first = Float::with_val(prec, -Rational::from(b2k / denom1));
        let coef = Float::with_val(prec, b_half / (2 * denom1));
        let pw = Float::with_val(prec, (&ratio).pow(2 * k as u32 - 1));
        values.push(first + coef * pw);
    }
    DConstants { alpha2, values }
}

/// `½ ln(C_1/C_2) - (d_1/u + d_3/u³ + d_5/u⁵)` at `μ = (1 - α²/2) u`.
///
/// The residual is `O(u^{-7})`; the logarithm is computed with enough extra
/// digits to resolve it.
pub fn d_check(ctx: &Ctx, u: &Float, alpha: &Float) -> Result<Float> {
    let mag = u.to_f64().abs().max(1.0).log10();
    let work = ctx.boosted((7.0 * mag).ceil() as u32 + 15);
    let u = work.real(u);
    let alpha = work.real(alpha);
    let alpha2 = Float::with_val(work.bits(), alpha.square_ref());
    let mu = Float::with_val(work.bits(), 1 - Float::with_val(work.bits(), &alpha2 / 2u32)) * &u;
    let u_plus_mu = Float::with_val(work.bits(), &u + &mu);
    // ln(C1/C2) = ½ln2 + ½lnπ + (μ - u) + (2u - 1) ln u - (u+μ) ln(u+μ) - 2 lnΓ(u) + lnΓ(u+μ+½)
    let mut l = work.real(2).ln() / 2u32;
    l += work.pi().ln() / 2u32;
    l += Float::with_val(work.bits(), &mu - &u);
    l += (Float::with_val(work.bits(), &u * 2u32) - 1u32) * Float::with_val(work.bits(), u.ln_ref());
    l -= Float::with_val(work.bits(), &u_plus_mu * Float::with_val(work.bits(), u_plus_mu.ln_ref()));
    l -= log_gamma(&work, &u)? * 2u32;
    l += log_gamma(&work, &(Float::with_val(work.bits(), &u_plus_mu + 0.5)))?;
    let half = l / 2u32;
    let d = d_constants(&alpha);
    let u2 = Float::with_val(work.bits(), u.square_ref());
    let mut series = Float::with_val(work.bits(), d.d5() / &u2);
    series += d.d3();
    series /= &u2;
    series += d.d1();
    series /= &u;
    Ok(ctx.real(half - series))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_values_at_zero() {
        let z = Rational::new();
        assert_eq!(d_rational(1, &z).unwrap(), Rational::from((-3, 32)));
        assert_eq!(d_rational(3, &z).unwrap(), Rational::from((3, 1024)));
        assert!(d_rational(2, &z).is_err());
        assert!(d_rational(9, &z).is_err());
    }

    #[test]
    fn float_and_rational_agree() {
        let ctx = Ctx::new(40);
        let alpha2 = Rational::from((3, 7));
        let alpha = ctx.real(&alpha2).sqrt();
        let d = d_constants(&alpha);
        for s in [1, 3, 5, 7] {
            let exact = ctx.real(d_rational(s, &alpha2).unwrap());
            let diff = Float::with_val(ctx.bits(), d.d(s).unwrap() - &exact).abs();
            assert!(diff < 1e-38, "s = {s}");
        }
        assert!(d.d(4).is_none());
    }
}
