use ferrers::numerics::{bernoulli_numbers, log_gamma, newton_bisect, newton_solve, quad_adaptive, Ctx, ExtComplex};
use ferrers::Error;
use proptest::prelude::*;
use rug::ops::Pow;
use rug::Float;

fn sq(x: &Float) -> Float {
    Float::with_val(x.prec(), x.square_ref())
}

fn close(a: &Float, b: &Float, tol: f64) -> bool {
    Float::with_val(a.prec(), a - b).abs().to_f64() <= tol
}

#[test]
fn quadrature_of_polynomial() {
    let ctx = Ctx::new(40);
    let v = quad_adaptive(&ctx, sq, &ctx.zero(), &ctx.one(), &ctx.tenth_power(-30)).unwrap();
    assert!(close(&v, &ctx.ratio(1, 3), 1e-30));
}

fn inner_integrand(a: Float) -> impl Fn(&Float) -> Float {
    move |t: &Float| {
        let prec = t.prec();
        let num = Float::with_val(prec, sq(&a) - sq(t)).sqrt();
        num / (1 - sq(t))
    }
}

#[test]
fn quadrature_defines_alpha_at_exact_point() {
    let ctx = Ctx::new(40);
    let a = ctx.parse("0.8").unwrap();
    let lo = Float::with_val(ctx.bits(), -&a);
    let v = quad_adaptive(&ctx, inner_integrand(a.clone()), &lo, &a, &ctx.tenth_power(-32)).unwrap();
    let want = ctx.pi() * ctx.parse("0.4").unwrap();
    assert!(close(&v, &want, 1e-30), "{v}");
    assert!((v.to_f64() - 1.2566371).abs() < 1e-7);
}

#[test]
fn quadrature_of_outer_integrand_matches_closed_form() {
    let ctx = Ctx::new(40);
    let a = ctx.parse("0.5").unwrap();
    let x = ctx.parse("0.9").unwrap();
    let ac = a.clone();
    let f = move |t: &Float| {
        let prec = t.prec();
        let num = Float::with_val(prec, sq(t) - sq(&ac)).sqrt();
        num / (1 - sq(t))
    };
    let v = quad_adaptive(&ctx, f, &a, &x, &ctx.tenth_power(-32)).unwrap();
    // s·artanh(X/(s x)) - arcosh(x/a), X = sqrt(x² - a²)
    let s = Float::with_val(ctx.bits(), 1 - sq(&a)).sqrt();
    let big_x = Float::with_val(ctx.bits(), sq(&x) - sq(&a)).sqrt();
    let t = Float::with_val(ctx.bits(), &big_x / Float::with_val(ctx.bits(), &s * &x)).atanh();
    let want = Float::with_val(ctx.bits(), &s * t) - Float::with_val(ctx.bits(), &x / &a).acosh();
    assert!(close(&v, &want, 1e-28), "{v} vs {want}");
}

#[test]
fn quadrature_reports_unreachable_tolerance() {
    let ctx = Ctx::new(30);
    let f = |t: &Float| Float::with_val(t.prec(), t.recip_ref());
    let lo = ctx.tenth_power(-25);
    let r = quad_adaptive(&ctx, f, &lo, &ctx.one(), &ctx.tenth_power(-60));
    assert!(matches!(r, Err(Error::Tolerance { .. })), "{r:?}");
}

#[test]
fn newton_finds_square_root_of_two() {
    let ctx = Ctx::new(40);
    let tol = ctx.tenth_power(-38);
    let f = |z: &ExtComplex| {
        let two = ExtComplex::from_real(Float::with_val(z.prec(), 2));
        Ok((&z.square() - &two, z.scale(&Float::with_val(z.prec(), 2))))
    };
    let r = newton_solve(&ctx, f, &ExtComplex::one(ctx.bits()), &tol).unwrap();
    let want = ctx.real(2).sqrt();
    assert!(close(&r.re, &want, 1e-37));
    assert!(r.im.to_f64().abs() < 1e-37);
    assert!(r.re.to_string().starts_with("1.41421356"));
}

#[test]
fn bracketed_newton_residual_within_tolerance() {
    let ctx = Ctx::new(40);
    let tol = ctx.tenth_power(-36);
    let f = |x: &Float| {
        let c = Float::with_val(x.prec(), x.cos_ref());
        Ok((Float::with_val(x.prec(), &c - x), -Float::with_val(x.prec(), x.sin_ref()) - 1u32))
    };
    let r = newton_bisect(&ctx, f, &ctx.zero(), &ctx.one(), &ctx.ratio(1, 2), &tol).unwrap();
    let res = Float::with_val(ctx.bits(), r.cos_ref()) - &r;
    assert!(res.abs() <= tol);
}

#[test]
fn log_gamma_special_values() {
    let ctx = Ctx::new(40);
    assert!(log_gamma(&ctx, &ctx.one()).unwrap().is_zero());
    let half = log_gamma(&ctx, &ctx.ratio(1, 2)).unwrap();
    let want = ctx.pi().sqrt().ln();
    assert!(close(&half, &want, 1e-39));
    assert!((half.to_f64() - 0.5723649429).abs() < 1e-10);
    assert!(matches!(log_gamma(&ctx, &ctx.zero()), Err(Error::Domain(_))));
    assert!(matches!(log_gamma(&ctx, &ctx.real(-2.5)), Err(Error::Domain(_))));
}

/// Stirling series at `y` with `terms` Bernoulli corrections.
fn stirling(ctx: &Ctx, y: &Float, terms: usize) -> Float {
    let bits = ctx.bits();
    let mut v = Float::with_val(bits, y - 0.5f64) * Float::with_val(bits, y.ln_ref()) - y;
    v += Float::with_val(bits, ctx.pi() * 2u32).ln() / 2u32;
    let bn = bernoulli_numbers(2 * terms);
    for k in 1..=terms {
        let den = Float::with_val(bits, y.pow((2 * k - 1) as u32)) * (2 * k * (2 * k - 1)) as u32;
        v += Float::with_val(bits, &bn[2 * k]) / den;
    }
    v
}

#[test]
fn log_gamma_matches_shifted_stirling_series() {
    let ctx = Ctx::new(40);
    let x = ctx.parse("94.734283").unwrap();
    let shifted = Float::with_val(ctx.bits(), &x + 20u32);
    let mut want = stirling(&ctx, &shifted, 20);
    for k in 0..20u32 {
        want -= Float::with_val(ctx.bits(), &x + k).ln();
    }
    let got = log_gamma(&ctx, &x).unwrap();
    assert!(close(&got, &want, 1e-28), "{got} vs {want}");
    assert!((got.to_f64() - 335.05291435855947).abs() < 1e-10);
}

#[test]
fn precision_monotonicity_of_log_gamma() {
    for p in [30u32, 40, 60] {
        let lo = Ctx::new(p);
        let hi = Ctx::new(p + 10);
        let x = lo.parse("94.734283").unwrap();
        let a = log_gamma(&lo, &x).unwrap();
        let b = log_gamma(&hi, &hi.real(&x)).unwrap();
        let rel = Float::with_val(hi.bits(), &a - &b) / &b;
        assert!(rel.abs().to_f64() < 10f64.powi(2 - p as i32));
    }
}

#[test]
fn complex_principal_branch_on_negative_axis() {
    let ctx = Ctx::new(30);
    let above = ExtComplex::new(ctx.real(-4), ctx.zero());
    let below = ExtComplex::new(ctx.real(-4), -ctx.zero());
    assert!(close(&above.sqrt().im, &ctx.real(2), 1e-29));
    assert!(close(&below.sqrt().im, &ctx.real(-2), 1e-29));
    let l = above.ln();
    assert!(close(&l.im, &ctx.pi(), 1e-29));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn quadrature_matches_alpha_closed_form(a in 0.05f64..0.95) {
        let ctx = Ctx::new(30);
        let a = ctx.real(a);
        let lo = Float::with_val(ctx.bits(), -&a);
        let tol = ctx.tenth_power(-26);
        let v = quad_adaptive(&ctx, inner_integrand(a.clone()), &lo, &a, &tol).unwrap();
        let s = Float::with_val(ctx.bits(), 1 - sq(&a)).sqrt();
        let want = ctx.pi() / 2u32 * (2 - s * 2u32);
        prop_assert!(close(&v, &want, 1e-25));
    }

    #[test]
    fn complex_field_axioms(re in -5.0f64..5.0, im in -5.0f64..5.0, re2 in 0.1f64..3.0, im2 in -3.0f64..3.0) {
        let ctx = Ctx::new(30);
        let z = ExtComplex::new(ctx.real(re), ctx.real(im));
        let w = ExtComplex::new(ctx.real(re2), ctx.real(im2));
        let back = &(&z * &w) / &w;
        prop_assert!((&back - &z).abs().to_f64() <= 1e-27 * (1.0 + z.abs().to_f64()));
        let r = w.sqrt();
        prop_assert!((&r.square() - &w).abs().to_f64() <= 1e-27 * w.abs().to_f64());
        prop_assert!(r.re.is_sign_positive());
    }
}
