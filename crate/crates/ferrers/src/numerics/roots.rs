use std::cmp::Ordering;

use rug::Float;

use super::{Ctx, ExtComplex};
use crate::{Error, Result};

const MAX_ITER: usize = 200;

/// Newton iteration for a complex root of `f`, given `f` and `f'` together.
///
/// A step that increases the residual is halved (at most 30 times) before it
/// is accepted. Succeeds once `|f| <= tol`.
pub fn newton_solve<F>(ctx: &Ctx, f: F, x0: &ExtComplex, tol: &Float) -> Result<ExtComplex>
where
    F: Fn(&ExtComplex) -> Result<(ExtComplex, ExtComplex)>,
{
    let mut x = x0.with_prec(ctx.bits());
    let (mut fx, mut dfx) = f(&x)?;
    let mut res = fx.abs();
    for _ in 0..MAX_ITER {
        if res <= *tol {
            return Ok(x);
        }
        if dfx.is_zero() {
            break;
        }
        let mut step = &fx / &dfx;
        let mut accepted = false;
        for _ in 0..30 {
            let trial = &x - &step;
            let (ft, dft) = f(&trial)?;
            let rt = ft.abs();
            if rt < res || rt <= *tol {
                x = trial;
                fx = ft;
                dfx = dft;
                res = rt;
                accepted = true;
                break;
            }
            step = step.div_real(&ctx.real(2));
        }
        if !accepted {
            break;
        }
    }
    if res <= *tol {
        return Ok(x);
    }
    Err(Error::RootNotFound { last: x.to_string() })
}

/// Safeguarded Newton iteration for a real root bracketed by `[lo, hi]`.
///
/// `f` returns the value and derivative. Newton steps that leave the current
/// bracket fall back to bisection. Succeeds once `|f| <= tol` or once the
/// bracket has shrunk to the working precision.
pub fn newton_bisect<F>(ctx: &Ctx, f: F, lo: &Float, hi: &Float, x0: &Float, tol: &Float) -> Result<Float>
where
    F: Fn(&Float) -> Result<(Float, Float)>,
{
    let mut lo = ctx.real(lo);
    let mut hi = ctx.real(hi);
    let (flo, _) = f(&lo)?;
    let (fhi, _) = f(&hi)?;
    if flo.is_zero() {
        return Ok(lo);
    }
    if fhi.is_zero() {
        return Ok(hi);
    }
    if sign(&flo) == sign(&fhi) {
        return Err(Error::RootNotFound {
            last: format!("bracket [{}, {}] has no sign change", lo.to_f64(), hi.to_f64()),
        });
    }
    let lo_negative = sign(&flo) == Ordering::Less;
    let mut x = ctx.real(x0);
    if x <= lo || x >= hi {
        x = Float::with_val(ctx.bits(), &lo + &hi) / 2u32;
    }
    let width_floor = ctx.tenth_power(-(ctx.digits() as i32) + 1);
    for _ in 0..(MAX_ITER * 4) {
        let (fx, dfx) = f(&x)?;
        if fx.clone().abs() <= *tol {
            return Ok(x);
        }
        if (sign(&fx) == Ordering::Less) == lo_negative {
            lo = x.clone();
        } else {
            hi = x.clone();
        }
        let width = Float::with_val(ctx.bits(), &hi - &lo);
        let scale =
            Float::with_val(ctx.bits(), lo.abs_ref()).max(&Float::with_val(ctx.bits(), hi.abs_ref())).max(&ctx.one());
        if width <= Float::with_val(ctx.bits(), &width_floor * &scale) {
            return Ok(x);
        }
        let mut next = None;
        if !dfx.is_zero() {
            let cand = Float::with_val(ctx.bits(), &x - Float::with_val(ctx.bits(), &fx / &dfx));
            if cand > lo && cand < hi {
                next = Some(cand);
            }
        }
        x = next.unwrap_or_else(|| Float::with_val(ctx.bits(), &lo + &hi) / 2u32);
    }
    Err(Error::RootNotFound { last: x.to_string_radix(10, Some(20)) })
}

fn sign(x: &Float) -> Ordering {
    x.cmp0().unwrap_or(Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_complex() {
        let ctx = Ctx::new(40);
        let tol = ctx.tenth_power(-35);
        let x0 = ExtComplex::one(ctx.bits());
        let two = ExtComplex::from_real(ctx.real(2));
        let r = newton_solve(&ctx, |x| Ok((&x.square() - &two, x.scale_i(2))), &x0, &tol).unwrap();
        let want = ctx.real(2).sqrt();
        assert!((r.re - want).abs() < 1e-35);
        assert!(r.im.abs() < 1e-35);
    }

    #[test]
    fn sqrt_two_bracketed() {
        let ctx = Ctx::new(40);
        let tol = ctx.tenth_power(-35);
        let r = newton_bisect(
            &ctx,
            |x| Ok((Float::with_val(x.prec(), x.square_ref()) - 2u32, Float::with_val(x.prec(), x * 2u32))),
            &ctx.zero(),
            &ctx.real(2),
            &ctx.one(),
            &tol,
        )
        .unwrap();
        assert!((r - ctx.real(2).sqrt()).abs() < 1e-35);
    }

    #[test]
    fn no_root_reports_last_iterate() {
        let ctx = Ctx::new(30);
        let tol = ctx.tenth_power(-25);
        let x0 = ExtComplex::from_real(ctx.real(3));
        let one = ExtComplex::one(ctx.bits());
        // z² + 1 with a real start never leaves the real axis
        let r = newton_solve(&ctx, |x| Ok((&x.square() + &one, x.scale_i(2))), &x0, &tol);
        assert!(matches!(r, Err(Error::RootNotFound { .. })));
    }

    #[test]
    fn bracket_without_sign_change_is_rejected() {
        let ctx = Ctx::new(30);
        let tol = ctx.tenth_power(-25);
        let r = newton_bisect(
            &ctx,
            |x| Ok((Float::with_val(x.prec(), x.square_ref()) + 1u32, Float::with_val(x.prec(), x * 2u32))),
            &ctx.zero(),
            &ctx.one(),
            &ctx.ratio(1, 2),
            &tol,
        );
        assert!(r.is_err());
    }
}
