use ferrers::numerics::Ctx;
use ferrers::oracle::pcf_ode_ref;
use ferrers::pcf::{pcf_connection_check, pcf_eval, pcf_eval_boosted, pcf_lg, PcfValue};
use ferrers::tpgeom::{zeta_real, Params};
use ferrers::Error;
use proptest::prelude::*;
use rug::Float;

fn rel(a: &Float, b: &Float) -> f64 {
    (Float::with_val(a.prec(), a - b) / b).abs().to_f64()
}

#[test]
fn gaussian_value() {
    let ctx = Ctx::new(40);
    let v = pcf_eval(&ctx, &ctx.real(-0.5), &ctx.real(2)).unwrap();
    let want = ctx.real(-1).exp();
    assert!(rel(&v.u, &want) < 1e-38);
    assert!((v.u.to_f64() - 0.3678794412).abs() < 1e-10);
}

#[test]
fn reflection_wronskian() {
    let ctx = Ctx::new(40);
    let bits = ctx.bits();
    // W{U(-b,x), U(-b,-x)} at b = 0.3
    let a = ctx.parse("-0.3").unwrap();
    let x = ctx.parse("0.7").unwrap();
    let p = pcf_eval(&ctx, &a, &x).unwrap();
    let m = pcf_eval(&ctx, &a, &Float::with_val(bits, -&x)).unwrap();
    let w = -Float::with_val(bits, &p.u * &m.up) - Float::with_val(bits, &p.up * &m.u);
    let want = Float::with_val(bits, ctx.pi() * 2u32).sqrt() / ctx.parse("0.2").unwrap().gamma();
    assert!(rel(&w, &want) < 1e-36);
}

#[test]
fn matches_ode_oracle_at_legendre_parameter() {
    let ctx = Ctx::new(40);
    let b = ctx.parse("-6.765717").unwrap();
    let x = ctx.parse("1.3").unwrap();
    let s = pcf_eval(&ctx, &b, &x).unwrap();
    let o = pcf_ode_ref(&ctx, &b, &x).unwrap();
    assert!(rel(&s.u, &o.u) < 1e-25);
    assert!(rel(&s.up, &o.up) < 1e-25);
    assert!(rel(s.v.as_ref().unwrap(), o.v.as_ref().unwrap()) < 1e-25);
}

#[test]
fn envelope_and_guard() {
    let ctx = Ctx::new(40);
    assert!(matches!(pcf_eval(&ctx, &ctx.real(2e4), &ctx.one()), Err(Error::Range(_))));
    assert!(matches!(pcf_eval(&ctx, &ctx.one(), &ctx.real(2e3)), Err(Error::Range(_))));
    let low = Ctx::new(10);
    let r = pcf_eval(&low, &low.parse("-6.765717").unwrap(), &low.real(10));
    assert!(matches!(r, Err(Error::Precision(_))), "{r:?}");
    assert!(pcf_eval_boosted(&low, &low.parse("-6.765717").unwrap(), &low.real(10), false).is_ok());
}

#[test]
fn parity_identities() {
    let ctx = Ctx::new(40);
    let tol = ctx.tenth_power(5 - 40).to_f64();
    let u = |b: f64, x: f64| pcf_eval(&ctx, &ctx.real(b), &ctx.real(x)).unwrap().u;
    let d0 = Float::with_val(ctx.bits(), u(-0.5, -2.0) - u(-0.5, 2.0));
    assert!(d0.abs().to_f64() <= tol);
    let d1 = Float::with_val(ctx.bits(), u(-1.5, -1.0) + u(-1.5, 1.0));
    assert!(d1.abs().to_f64() <= tol);
    for n in 0..=5 {
        let b = -(n as f64) - 0.5;
        for x in [0.3, 1.7, 4.2] {
            let r = pcf_connection_check(&ctx, &ctx.real(b), &ctx.real(x)).unwrap();
            assert!(r.to_f64() <= tol, "n = {n}, x = {x}: {r}");
        }
    }
    let r = pcf_connection_check(&ctx, &ctx.real(2.5), &ctx.real(0.4)).unwrap();
    assert!(r.to_f64() <= tol);
}

#[test]
fn weber_equation_by_finite_differences() {
    // values carry 60 digits so that the stencil, not the rounding, limits the check
    let ctx = Ctx::new(60);
    let bits = ctx.bits();
    let h = ctx.tenth_power(-6);
    let w = [ctx.ratio(1, 90), ctx.ratio(-3, 20), ctx.ratio(3, 2), ctx.ratio(-49, 18)];
    let b = ctx.parse("-6.765717").unwrap();
    for k in 0..12 {
        let x = ctx.ratio(k, 2) - 2.7f64;
        let at = |j: i32| {
            let t = Float::with_val(bits, &x + Float::with_val(bits, &h * j));
            pcf_eval(&ctx, &b, &t).unwrap().u
        };
        let mut d2 = Float::with_val(bits, &w[3] * at(0));
        for j in 1..=3 {
            let pair = Float::with_val(bits, at(j) + at(-j));
            d2 += Float::with_val(bits, &w[3 - j as usize] * pair);
        }
        d2 /= Float::with_val(bits, h.square_ref());
        let coef = Float::with_val(bits, x.square_ref()) / 4u32 + &b;
        let rhs = coef * at(0);
        let scale = Float::with_val(bits, rhs.abs_ref()).max(&Float::with_val(bits, d2.abs_ref()));
        let res = Float::with_val(bits, &d2 - &rhs).abs() / scale;
        assert!(res.to_f64() <= 1e-32, "x = {}: {res}", x.to_f64());
    }
}

fn lg_point(p: &Params, x: &str) -> (Float, PcfValue) {
    let zeta = zeta_real(p, &p.ctx.parse(x).unwrap()).unwrap();
    let bits = p.ctx.bits();
    let arg = Float::with_val(bits, &p.u * 2u32).sqrt() * &zeta;
    let series = pcf_eval_boosted(&p.ctx, &p.b, &arg, false).unwrap();
    (zeta, series)
}

#[test]
fn lg_against_series_near_the_endpoint() {
    let p = Params::from_strs(Ctx::new(40), "50", "0.5").unwrap();
    let (zeta, series) = lg_point(&p, "0.95");
    let lg = pcf_lg(&p.ctx, &p.u, &p.alpha, &zeta, 4).unwrap();
    assert!(rel(&lg.x, &series.x) < 1e-38);
    assert!(rel(&lg.b, &p.b) < 1e-38);
    // the four-term truncation error at u = 50.5 is about 1.2e-9 here
    let r = rel(&lg.u, &series.u);
    assert!(r < 2e-9, "{r:e}");
    assert!(rel(&lg.up, &series.up) < 2e-9);
}

#[test]
fn lg_improves_with_terms_in_overlap() {
    let p = Params::from_strs(Ctx::new(40), "50", "0.5").unwrap();
    let bits = p.ctx.bits();
    for off in [0.5, 1.0, 2.0] {
        let zeta = Float::with_val(bits, &p.alpha + off);
        let arg = Float::with_val(bits, &p.u * 2u32).sqrt() * &zeta;
        let series = pcf_eval_boosted(&p.ctx, &p.b, &arg, false).unwrap();
        let errs: Vec<f64> =
            (2..=4).map(|n| rel(&pcf_lg(&p.ctx, &p.u, &p.alpha, &zeta, n).unwrap().u, &series.u)).collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "ζ - α = {off}: {errs:?}");
    }
}

#[test]
fn lg_log_derivative_leading_order() {
    let p = Params::from_strs(Ctx::new(40), "50", "0.5").unwrap();
    let bits = p.ctx.bits();
    let u = p.u.to_f64();
    for off in [0.5, 1.0, 3.0] {
        let zeta = Float::with_val(bits, &p.alpha + off);
        let v = pcf_lg(&p.ctx, &p.u, &p.alpha, &zeta, 4).unwrap();
        let ratio = Float::with_val(bits, &v.up / &v.u).to_f64();
        let z = zeta.to_f64();
        let lead = -(u / 2.0).sqrt() * (z * z - p.alpha2.to_f64()).sqrt();
        assert!(ratio < 0.0);
        assert!((ratio / lead - 1.0).abs() < 2.0 / u);
    }
    let near = Float::with_val(bits, &p.alpha + 0.1);
    assert!(matches!(pcf_lg(&p.ctx, &p.u, &p.alpha, &near, 4), Err(Error::Range(_))));
}

#[test]
fn lg_without_corrections_is_pure_exponential() {
    // with α = 0 and large ζ, β̂ → 0 and U ≈ (2uζ²)^{-1/4} e^{-uζ²/2}
    let ctx = Ctx::new(40);
    let bits = ctx.bits();
    let u = ctx.real(50.5);
    let zeta = ctx.real(300);
    let v = pcf_lg(&ctx, &u, &ctx.zero(), &zeta, 1).unwrap();
    let expo = -(Float::with_val(bits, &u * Float::with_val(bits, zeta.square_ref())) / 2u32);
    let pref = Float::with_val(bits, Float::with_val(bits, zeta.square_ref()) * &u * 2u32).sqrt().sqrt().recip();
    let bare = pref * expo.exp();
    assert!(rel(&v.u, &bare) < 1e-7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn wronskians_hold(b in -20.0f64..20.0, x in -8.0f64..8.0) {
        let ctx = Ctx::new(40);
        let r = pcf_connection_check(&ctx, &ctx.real(b), &ctx.real(x)).unwrap();
        prop_assert!(r.to_f64() <= 1e-34);
    }

    #[test]
    fn u_decays_for_large_positive_argument(b in -5.0f64..5.0, x in 6.0f64..12.0) {
        let ctx = Ctx::new(30);
        let v = pcf_eval_boosted(&ctx, &ctx.real(b), &ctx.real(x), false).unwrap();
        prop_assert!(v.u.is_sign_positive());
        prop_assert!(v.up.is_sign_negative());
    }
}
