//! Parabolic cylinder functions `U(b, x)`, `V(b, x)` of real argument.
//!
//! Both solve Weber's equation `y'' = (x²/4 + b) y`. For `|x| <= 100` they are
//! summed from Maclaurin series whose coefficients obey
//! `(k+2)(k+1) c_{k+2} = b c_k + ¼ c_{k-2}`, seeded with the standard values
//! at `x = 0`. For large positive `x` the series cancels badly, so
//! [`pcf_eval`] refuses once the cancellation exceeds the working precision
//! and [`pcf_eval_boosted`] adds the digits that the cancellation consumes.
//!
//! [`pcf_lg`] is the Liouville–Green expansion in the turning-point variable,
//! with coefficients `e_s`, `ẽ_s` from [`crate::coeffs`].

use std::cmp::Ordering;

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::coeffs::tables;
use crate::numerics::{recip_gamma, sin_pi, Ctx, ExtComplex};
use crate::{Error, Result};

/// Largest `|x|` summed by the Maclaurin series.
pub const SERIES_LIMIT: f64 = 100.0;

/// Largest `|b|` accepted.
pub const B_LIMIT: f64 = 1e4;

/// Smallest `ζ - α` accepted by [`pcf_lg`].
pub const LG_MARGIN: f64 = 0.25;

/// `U`, `U'` and optionally `V`, `V'` at one point; primes are `d/dx`.
#[derive(Clone, Debug)]
pub struct PcfValue {
    pub b: Float,
    pub x: Float,
    pub u: Float,
    pub up: Float,
    pub v: Option<Float>,
    pub vp: Option<Float>,
}

/// `U(b,0)`, `U'(b,0)`, `V(b,0)`, `V'(b,0)`.
fn initial_values(bits: u32, b: &Float) -> [Float; 4] {
    let hb = Float::with_val(bits, b / 2u32);
    let sqrt_pi = Float::with_val(bits, Constant::Pi).sqrt();
    let two = Float::with_val(bits, 2);
    let pw = |e: f64| -> Float { two.clone().pow(Float::with_val(bits, &hb + e)) };
    let u0 = Float::with_val(bits, &sqrt_pi * recip_gamma(&Float::with_val(bits, &hb + 0.75))) / pw(0.25);
    let u1 = -(Float::with_val(bits, &sqrt_pi * recip_gamma(&Float::with_val(bits, &hb + 0.25))) / pw(-0.25));
    let c = Float::with_val(bits, 0.75 - Float::with_val(bits, &hb));
    let v0 = pw(0.25) * sin_pi(&c) * recip_gamma(&c);
    let c = Float::with_val(bits, 0.25 - Float::with_val(bits, &hb));
    let v1 = pw(0.75) * sin_pi(&c) * recip_gamma(&c);
    [u0, u1, v0, v1]
}

struct SeriesSum {
    value: Float,
    deriv: Float,
    /// Sum of term magnitudes relative to the final magnitude, the larger of
    /// value and derivative. Rounding in the seeds is amplified by the same
    /// factor, which the largest partial sum can understate.
    loss: f64,
}

/// Sums `Σ c_k x^k` and its derivative from `c_0 = y0`, `c_1 = y1`.
fn maclaurin(bits: u32, b: &Float, x: &Float, y0: &Float, y1: &Float) -> SeriesSum {
    let eps = Float::with_val(bits, Float::i_exp(1, -(bits as i32)));
    let xf = x.to_f64().abs();
    let min_terms = (xf * xf / 2.0 + 2.0 * b.to_f64().abs().sqrt() * xf + 10.0).ceil() as usize;
    // c[k-3..=k] window
    let mut c: [Float; 4] = [Float::new(bits), Float::new(bits), y0.clone(), y1.clone()];
    let mut xk = Float::with_val(bits, 1);
    let mut value = Float::with_val(bits, y0);
    let mut deriv = Float::with_val(bits, y1);
    value += Float::with_val(bits, y1 * x);
    xk *= x; // x^1
    let mut abs_v = Float::with_val(bits, y0.abs_ref()) + Float::with_val(bits, &value - y0).abs();
    let mut abs_d = Float::with_val(bits, deriv.abs_ref());
    let mut quiet = 0;
    let mut k = 1usize;
    loop {
        // c_{k+1} from c_{k-1} and c_{k-3}
        let mut next = Float::with_val(bits, b * &c[2]);
        next += Float::with_val(bits, &c[0] / 4u32);
        next /= ((k + 1) * k) as f64;
        c.rotate_left(1);
        c[3] = next;
        k += 1;
        // term c_k x^k; derivative term k c_k x^{k-1}
        let dterm = Float::with_val(bits, &c[3] * &xk) * k as u32;
        xk *= x;
        let term = Float::with_val(bits, &c[3] * &xk);
        value += &term;
        deriv += &dterm;
        abs_v += Float::with_val(bits, term.abs_ref());
        abs_d += Float::with_val(bits, dterm.abs_ref());
        let small =
            |t: &Float, m: &Float| t.is_zero() || Float::with_val(bits, t.abs_ref()) <= Float::with_val(bits, m * &eps);
        if k > min_terms && small(&term, &abs_v) && small(&dterm, &abs_d) {
            quiet += 1;
            if quiet >= 4 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    let ratio = |m: &Float, v: &Float| -> f64 {
        if m.is_zero() {
            1.0
        } else if v.is_zero() {
            f64::INFINITY
        } else {
            (Float::with_val(bits, m / v).abs()).to_f64()
        }
    };
    let loss = ratio(&abs_v, &value).max(ratio(&abs_d, &deriv));
    SeriesSum { value, deriv, loss }
}

fn check_envelope(b: &Float, x: &Float) -> Result<()> {
    if !b.is_finite() || !x.is_finite() {
        return Err(Error::Domain("non-finite PCF argument".into()));
    }
    if b.to_f64().abs() > B_LIMIT {
        return Err(Error::Range(format!("|b| = {} exceeds {B_LIMIT}", b.to_f64().abs())));
    }
    if x.to_f64().abs() > SERIES_LIMIT {
        return Err(Error::Range(format!("|x| = {} exceeds {SERIES_LIMIT}", x.to_f64().abs())));
    }
    Ok(())
}

fn eval_at(ctx: &Ctx, b: &Float, x: &Float, with_v: bool) -> Result<(PcfValue, f64)> {
    let bits = ctx.bits();
    let b = ctx.real(b);
    let x = ctx.real(x);
    let [u0, u1, v0, v1] = initial_values(bits, &b);
    let us = maclaurin(bits, &b, &x, &u0, &u1);
    let mut loss = us.loss;
    let (v, vp) = if with_v {
        let vs = maclaurin(bits, &b, &x, &v0, &v1);
        loss = loss.max(vs.loss);
        (Some(vs.value), Some(vs.deriv))
    } else {
        (None, None)
    };
    Ok((PcfValue { b, x, u: us.value, up: us.deriv, v, vp }, loss))
}

fn guard(ctx: &Ctx, loss: f64) -> Result<()> {
    let limit = 10f64.powi(ctx.digits() as i32 - 8);
    if loss > limit {
        return Err(Error::Precision(format!(
            "series cancellation of {:.1} digits exceeds the {} digits available",
            loss.log10(),
            ctx.digits() as i32 - 8
        )));
    }
    Ok(())
}

/// `U`, `U'`, `V`, `V'` at the working precision of `ctx`.
///
/// Fails with a precision error when the series cancellation would leave
/// fewer than 8 correct digits.
pub fn pcf_eval(ctx: &Ctx, b: &Float, x: &Float) -> Result<PcfValue> {
    check_envelope(b, x)?;
    let (v, loss) = eval_at(ctx, b, x, true)?;
    guard(ctx, loss)?;
    Ok(v)
}

/// Digits lost to cancellation when summing at `x`, estimated from the
/// exponential growth `exp(∫ (t²/4 + |b|)^{1/2} dt)` of the terms.
pub(crate) fn cancellation_digits(b: &Float, x: &Float) -> u32 {
    let x = x.to_f64().abs();
    let k = 4.0 * b.to_f64().abs();
    let r = (x * x + k).sqrt();
    let j = if k > 0.0 { 0.25 * (x * r + k * ((x + r) / k.sqrt()).ln()) } else { 0.25 * x * x };
    (2.0 * j / std::f64::consts::LN_10).ceil() as u32 + 10
}

/// As [`pcf_eval`], but summing with enough extra digits to absorb the
/// cancellation; results are rounded back to `ctx`. `V` is skipped unless
/// `with_v` is set.
pub fn pcf_eval_boosted(ctx: &Ctx, b: &Float, x: &Float, with_v: bool) -> Result<PcfValue> {
    check_envelope(b, x)?;
    let mut extra = cancellation_digits(b, x);
    for _ in 0..4 {
        let work = ctx.boosted(extra);
        let (v, loss) = eval_at(&work, b, x, with_v)?;
        // keep at least two digits beyond the target precision
        if loss.log10() <= (work.digits() as f64 - ctx.digits() as f64 - 2.0) {
            return Ok(PcfValue {
                b: ctx.real(&v.b),
                x: ctx.real(&v.x),
                u: ctx.real(&v.u),
                up: ctx.real(&v.up),
                v: v.v.map(|t| ctx.real(t)),
                vp: v.vp.map(|t| ctx.real(t)),
            });
        }
        extra *= 2;
    }
    Err(Error::Precision("PCF series did not settle after boosting".into()))
}

/// `U(-½uα², √(2u)ζ)` and `U'` from `n` Liouville–Green terms (`1 <= n <= 7`).
///
/// Requires `ζ >= α + 0.25`; the truncation error is `O(u^{-n-1})`.
pub fn pcf_lg(ctx: &Ctx, u: &Float, alpha: &Float, zeta: &Float, n: usize) -> Result<PcfValue> {
    let t = tables();
    if n == 0 || n > t.max_s() {
        return Err(Error::Range(format!("pcf_lg takes 1..={} terms, got {n}", t.max_s())));
    }
    let bits = ctx.bits();
    let u = ctx.real(u);
    let alpha = ctx.real(alpha);
    let zeta = ctx.real(zeta);
    if Float::with_val(bits, &zeta - &alpha).to_f64() < LG_MARGIN {
        return Err(Error::Range(format!(
            "ζ = {} is inside the turning-point region of α = {}",
            zeta.to_f64(),
            alpha.to_f64()
        )));
    }
    let alpha2 = Float::with_val(bits, alpha.square_ref());
    let y = Float::with_val(bits, Float::with_val(bits, &zeta - &alpha) * Float::with_val(bits, &zeta + &alpha)).sqrt();
    let mut xi_hat = Float::with_val(bits, &zeta * &y) / 2u32;
    if !alpha.is_zero() {
        xi_hat -= Float::with_val(bits, &alpha2 * Float::with_val(bits, &zeta / &alpha).acosh()) / 2u32;
    }
    let betahat = ExtComplex::from_real(if alpha.is_zero() {
        Float::with_val(bits, zeta.square_ref()).recip() / 2u32
    } else {
        Float::with_val(bits, &y * Float::with_val(bits, &zeta + &y)).recip()
    });
    let mut sum_e = Float::new(bits);
    let mut sum_et = Float::new(bits);
    let mut upow = Float::with_val(bits, 1);
    for s in 1..=n {
        upow /= &u;
        let sign = if s % 2 == 0 { 1 } else { -1 };
        let e = t.e[s - 1].eval(&alpha2, &betahat).re;
        let et = t.etilde[s - 1].eval(&alpha2, &betahat).re;
        sum_e += Float::with_val(bits, &e * &upow) * sign;
        sum_et += Float::with_val(bits, &et * &upow) * sign;
    }
    let ua2 = Float::with_val(bits, &u * &alpha2);
    let lead = if ua2.is_zero() {
        Float::new(bits)
    } else {
        let e = Float::with_val(bits, 1).exp();
        let base = Float::with_val(bits, &ua2 / (e * 2u32));
        Float::with_val(bits, &ua2 / 4u32) * base.ln()
    };
    let ux = Float::with_val(bits, &u * &xi_hat);
    let y2u = Float::with_val(bits, y.square_ref()) * &u;
    let val = (Float::with_val(bits, &lead - &ux) + &sum_e).exp()
        * Float::with_val(bits, Float::with_val(bits, &y2u * 2u32).sqrt().sqrt()).recip();
    let der =
        -((Float::with_val(bits, &lead - &ux) + &sum_et).exp() * Float::with_val(bits, &y2u / 8u32).sqrt().sqrt());
    let sqrt2u = Float::with_val(bits, &u * 2u32).sqrt();
    Ok(PcfValue { b: -(Float::with_val(bits, &ua2 / 2u32)), x: sqrt2u * &zeta, u: val, up: der, v: None, vp: None })
}

/// Largest normalized residual of the connection identities at `(b, x)`:
///
/// * `W{U(b,·), V(b,·)} = (2/π)^{1/2}`,
/// * `W{U(-b,·), U(-b,-·)} = (2π)^{1/2}/Γ(½ - b)`,
/// * `U(b,-x) = (-1)^n U(b,x)` when `b = -n - ½`.
///
/// Each residual is divided by the largest product entering it.
pub fn pcf_connection_check(ctx: &Ctx, b: &Float, x: &Float) -> Result<Float> {
    let bits = ctx.bits();
    let b = ctx.real(b);
    let x = ctx.real(x);
    let pi = ctx.pi();
    let scaled = |res: Float, scale: Float| -> Float {
        let s = scale.max(&Float::with_val(bits, 1e-300));
        Float::with_val(bits, res.abs_ref()) / s
    };

    let w = pcf_eval_boosted(ctx, &b, &x, true)?;
    let (v, vp) = (w.v.expect("V requested"), w.vp.expect("V' requested"));
    let p1 = Float::with_val(bits, &w.u * &vp);
    let p2 = Float::with_val(bits, &w.up * &v);
    let target = Float::with_val(bits, Float::with_val(bits, 2) / &pi).sqrt();
    let scale = Float::with_val(bits, p1.abs_ref()).max(&Float::with_val(bits, p2.abs_ref())).max(&target);
    let mut worst = scaled(Float::with_val(bits, &p1 - &p2) - &target, scale);

    let nb = -b.clone();
    let up = pcf_eval_boosted(ctx, &nb, &x, false)?;
    let um = pcf_eval_boosted(ctx, &nb, &(-x.clone()), false)?;
    // W = U(x)·d/dx[U(-x)] - U'(x)·U(-x), with d/dx U(-x) = -U'(-x)
    let q1 = -Float::with_val(bits, &up.u * &um.up);
    let q2 = Float::with_val(bits, &up.up * &um.u);
    let two_pi = Float::with_val(bits, &pi * 2u32).sqrt();
    let target = two_pi * recip_gamma(&Float::with_val(bits, &nb + 0.5));
    let scale = Float::with_val(bits, q1.abs_ref())
        .max(&Float::with_val(bits, q2.abs_ref()))
        .max(&Float::with_val(bits, target.abs_ref()));
    worst.max_mut(&scaled(Float::with_val(bits, &q1 - &q2) - &target, scale));

    let n = -Float::with_val(bits, &b + 0.5);
    if n.is_integer() && n.cmp0() != Some(Ordering::Less) {
        let odd = n.to_integer().map(|k| k.is_odd()).unwrap_or(false);
        let pos = pcf_eval_boosted(ctx, &b, &x, false)?;
        let neg = pcf_eval_boosted(ctx, &b, &(-x.clone()), false)?;
        let res = if odd { Float::with_val(bits, &neg.u + &pos.u) } else { Float::with_val(bits, &neg.u - &pos.u) };
        let scale = Float::with_val(bits, pos.u.abs_ref()).max(&Float::with_val(bits, neg.u.abs_ref()));
        worst.max_mut(&scaled(res, scale));
    }
    Ok(worst)
}
