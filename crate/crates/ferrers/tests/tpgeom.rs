use ferrers::numerics::{Ctx, ExtComplex};
use ferrers::oracle::{alpha_quad_ref, xi_quad_ref, zeta_bisect_ref};
use ferrers::tpgeom::{
    alpha_from_a, round_trip_residual, xi, zeta, zeta_at_real, zeta_real, zeta_series, zeta_taylor, Params, Side,
    TaylorCenter,
};
use ferrers::Error;
use proptest::prelude::*;
use rug::Float;

fn ctx() -> Ctx {
    Ctx::new(40)
}

fn params(a: &str) -> Params {
    Params::from_strs(ctx(), "50", a).unwrap()
}

fn diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(a.prec(), a - b).abs().to_f64()
}

#[test]
fn alpha_values() {
    let c = ctx();
    assert!(alpha_from_a(&c, &c.zero()).unwrap().is_zero());
    let al = alpha_from_a(&c, &c.parse("0.8").unwrap()).unwrap();
    assert!(diff(&Float::with_val(c.bits(), al.square_ref()), &c.parse("0.8").unwrap()) < 1e-40);
    assert!((al.to_f64() - 0.8944271910).abs() < 1e-10);
    let a = c.parse("0.5").unwrap();
    let al = alpha_from_a(&c, &a).unwrap();
    assert!(diff(&al, &alpha_quad_ref(&c, &a).unwrap()) < 1e-28);
    assert!((al.to_f64() - 0.5176380902).abs() < 1e-10);
}

#[test]
fn alpha_rejects_a_at_or_beyond_one() {
    let c = ctx();
    for a in ["1", "1.2", "-0.1"] {
        assert!(matches!(alpha_from_a(&c, &c.parse(a).unwrap()), Err(Error::Domain(_))), "{a}");
    }
    assert!(Params::from_strs(c, "50", "1.2").is_err());
}

#[test]
fn alpha_increases_with_a() {
    let c = ctx();
    let mut prev = c.zero();
    for k in 1..20 {
        let al = alpha_from_a(&c, &c.ratio(k, 20)).unwrap();
        assert!(al > prev);
        prev = al;
    }
}

#[test]
fn params_identities() {
    let p = params("0.5");
    let c = p.ctx;
    let half = Float::with_val(c.bits(), &p.u * &p.alpha2) / 2u32;
    let want = Float::with_val(c.bits(), &p.nu - &p.mu) + 0.5;
    assert!(diff(&half, &want) < 1e-36);
    let r = Float::with_val(c.bits(), &p.mu / &p.u);
    assert!(diff(&Float::with_val(c.bits(), r.square_ref()), &Float::with_val(c.bits(), 1 - &p.a2)) < 1e-39);
    let q = Params::from_mu(c, &p.nu, &p.mu).unwrap();
    assert!(diff(&q.a, &p.a) < 1e-38);
}

#[test]
fn xi_examples() {
    let p = params("0.5");
    let c = p.ctx;
    let at_a = xi(&p, &ExtComplex::from_real(p.a.clone()), None).unwrap();
    assert!(at_a.abs().to_f64() < 1e-39);

    let p0 = params("0");
    let v = xi(&p0, &ExtComplex::from_real(c.parse("0.6").unwrap()), None).unwrap();
    let want = -(c.parse("0.64").unwrap().ln() / 2u32);
    assert!(diff(&v.re, &want) < 1e-39);
    assert!((v.re.to_f64() - 0.2231435513).abs() < 1e-10);

    let x = c.parse("0.9").unwrap();
    let v = xi(&p, &ExtComplex::from_real(x.clone()), None).unwrap();
    assert!(diff(&v.re, &xi_quad_ref(&p, &x).unwrap()) < 1e-28);
}

#[test]
fn xi_on_cut_needs_a_side() {
    let p = params("0.5");
    let z = ExtComplex::from_real(p.ctx.parse("0.2").unwrap());
    assert!(matches!(xi(&p, &z, None), Err(Error::BranchAmbiguity(_))));
    let up = xi(&p, &z, Some(Side::Above)).unwrap();
    let down = xi(&p, &z, Some(Side::Below)).unwrap();
    assert!((&up - &down.conj()).abs().to_f64() < 1e-38);
    assert!(up.im.to_f64().abs() > 1e-3);
}

#[test]
fn zeta_examples() {
    let p = params("0.5");
    let c = p.ctx;
    assert!(zeta_real(&p, &c.zero()).unwrap().is_zero());
    let at_a = zeta_real(&p, &p.a).unwrap();
    assert!(diff(&at_a, &p.alpha) < 1e-25);
    let neg_a = Float::with_val(c.bits(), -&p.a);
    let at_neg = zeta_real(&p, &neg_a).unwrap();
    assert!(diff(&at_neg, &Float::with_val(c.bits(), -&p.alpha)) < 1e-25);

    let p0 = params("0");
    let z = zeta_real(&p0, &c.parse("0.6").unwrap()).unwrap();
    let want = -(c.parse("0.64").unwrap().ln());
    assert!(diff(&z, &want.sqrt()) < 1e-38);
    assert!((z.to_f64() - 0.6680472308).abs() < 1e-10);

    let x = c.parse("0.7").unwrap();
    let tp = zeta_at_real(&p, &x).unwrap();
    assert!(round_trip_residual(&p, &tp).to_f64() <= 1e-28);
    assert!(diff(&tp.zeta.re, &zeta_bisect_ref(&p, &x).unwrap()) < 1e-28);
}

#[test]
fn zeta_real_branches() {
    let p = params("0.5");
    let c = p.ctx;
    for (x, lo, hi) in [("0.3", -1.0, 1.0), ("-0.45", -1.0, 1.0), ("0.8", 1.0, f64::INFINITY)] {
        let tp = zeta_at_real(&p, &c.parse(x).unwrap()).unwrap();
        let r = tp.zeta.re.to_f64() / p.alpha.to_f64();
        assert!(r > lo && r < hi, "x = {x}: ζ/α = {r}");
        if r > 1.0 {
            assert!(tp.xi.re.is_sign_positive());
        }
    }
    let x = c.parse("0.3").unwrap();
    let tp = zeta_at_real(&p, &x).unwrap();
    assert!(diff(&tp.zeta.re, &zeta_bisect_ref(&p, &x).unwrap()) < 1e-28);
}

#[test]
fn zeta_taylor_examples() {
    let p = params("0.5");
    let c = p.ctx;
    let z0 = zeta_taylor(&p, &ExtComplex::zero(c.bits()), TaylorCenter::Origin).unwrap();
    assert!(z0.is_zero());

    let p0 = params("0");
    let s = zeta_series(&p0, TaylorCenter::Origin, 0.3).unwrap();
    let want = [(0, 0, 1), (1, 1, 1), (2, 0, 1), (3, 1, 4), (4, 0, 1), (5, 13, 96)];
    for (k, num, den) in want {
        assert!(diff(&s.coeffs[k], &c.ratio(num, den)) < 1e-38, "coefficient {k}");
    }

    let z = ExtComplex::from_real(c.parse("0.52").unwrap());
    let series = zeta_taylor(&p, &z, TaylorCenter::TurningPoint).unwrap();
    let solved = zeta_bisect_ref(&p, &z.re).unwrap();
    assert!(diff(&series.re, &solved) < 1e-24);

    let far = ExtComplex::from_real(c.parse("0.7").unwrap());
    assert!(matches!(zeta_taylor(&p, &far, TaylorCenter::TurningPoint), Err(Error::Range(_))));
}

#[test]
fn zeta_strictly_increasing() {
    let c = ctx();
    for a in ["0", "0.1", "0.5", "0.9"] {
        let p = params(a);
        let mut prev: Option<Float> = None;
        for k in 0..200 {
            let x = c.real(-0.99 + 1.98 * (k as f64 + 0.5) / 200.0);
            let z = zeta_real(&p, &x).unwrap();
            if let Some(q) = &prev {
                assert!(z > *q, "a = {a}, x = {}", x.to_f64());
            }
            prev = Some(z);
        }
    }
}

#[test]
fn betahat_vanishes_far_from_turning_point() {
    let p = params("0.5");
    let c = p.ctx;
    let mut prev = f64::INFINITY;
    for x in ["0.8", "0.9", "0.99", "0.999"] {
        let tp = zeta_at_real(&p, &c.parse(x).unwrap()).unwrap();
        let b = tp.betahat.abs().to_f64();
        let z = tp.zeta.re.to_f64();
        assert!(b < prev);
        // β̂ ~ 1/(2ζ²) for large ζ
        assert!((b * 2.0 * z * z - 1.0).abs() < 2.0 * (p.alpha.to_f64() / z).powi(2));
        prev = b;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugate_symmetry(re in 0.0f64..0.85, im in 0.02f64..0.4) {
        let p = Params::from_strs(Ctx::new(30), "50", "0.5").unwrap();
        let z = ExtComplex::new(p.ctx.real(re), p.ctx.real(im));
        let up = zeta(&p, &z, None).unwrap();
        let down = zeta(&p, &z.conj(), None).unwrap();
        prop_assert!((&up.zeta - &down.zeta.conj()).abs().to_f64() < 1e-26);
        prop_assert!(round_trip_residual(&p, &up).to_f64() < 1e-24);
    }

    #[test]
    fn real_zeta_is_odd(x in 0.0f64..0.98) {
        let p = Params::from_strs(Ctx::new(30), "50", "0.3").unwrap();
        let x = p.ctx.real(x);
        let pos = zeta_real(&p, &x).unwrap();
        let neg = zeta_real(&p, &Float::with_val(p.ctx.bits(), -&x)).unwrap();
        prop_assert!(diff(&pos, &Float::with_val(p.ctx.bits(), -&neg)) < 1e-27);
    }
}
