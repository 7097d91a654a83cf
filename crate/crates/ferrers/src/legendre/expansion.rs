//! The slowly varying coefficients away from the turning points.
//!
//! With `c_s = ℰ̃_s` (plus `d_s` for odd `s`) the expansion of 𝒜 is
//! `exp{Σ c_{2s}/u^{2s}} cosh{Σ c_{2s+1}/u^{2s+1}}`, and similarly for ℬ with
//! `ℰ_s` and `sinh`. Both are re-expanded here as power series in `1/u`,
//! whose coefficients `A_{2s}`, `B_{2s}` are analytic at the turning points.
//! Each of them is a sum of large terms of opposite sign near `z = ±a`, so
//! callers supply geometry computed with [`guard_digits`] extra digits.

use rug::Float;

use super::jet::Jet;
use crate::coeffs::{tables, BiPoly, DConstants};
use crate::numerics::{Ctx, ExtComplex};
use crate::tpgeom::{Params, TpPoint};
use crate::{Error, Result};

/// Largest number of terms supported (needs coefficients up to index 7).
pub const MAX_TERMS: usize = 4;

/// Geometry at one point, with z-derivatives where available.
#[derive(Clone, Debug)]
pub(crate) struct PointGeom {
    pub z: ExtComplex,
    pub zeta: ExtComplex,
    pub dzeta: ExtComplex,
    pub x_root: ExtComplex,
    pub y_root: ExtComplex,
    pub beta: ExtComplex,
    pub betahat: ExtComplex,
}

impl From<&TpPoint> for PointGeom {
    fn from(tp: &TpPoint) -> Self {
        PointGeom {
            z: tp.z.clone(),
            zeta: tp.zeta.clone(),
            dzeta: tp.dzeta.clone(),
            x_root: tp.x_root.clone(),
            y_root: tp.y_root.clone(),
            beta: tp.beta.clone(),
            betahat: tp.betahat.clone(),
        }
    }
}

/// `A_{2s}(a, z)` and `B_{2s}(a, z)` for `s < n`, and the factor
/// `((ζ² - α²)/(z² - a²))^{1/4}`.
#[derive(Clone, Debug)]
pub struct CoeffFunctions {
    pub a: Vec<Jet>,
    pub b: Vec<Jet>,
    pub pref: Jet,
}

pub(crate) fn check_terms(n: usize) -> Result<()> {
    if n == 0 || n > MAX_TERMS {
        return Err(Error::Range(format!("number of terms must be in 1..={MAX_TERMS}, got {n}")));
    }
    Ok(())
}

/// Extra digits that absorb the cancellation among coefficients of degree up
/// to `3(2n - 1)` in variables of size `mag`.
pub fn guard_digits(mag: f64, n: usize) -> u32 {
    let m = (2 * n - 1) as f64;
    (3.0 * m * mag.max(1.0).log10()).ceil() as u32 + 5
}

/// Rough `max(|β|, |β̂|)` from z alone.
pub(crate) fn beta_magnitude(p: &Params, z: &ExtComplex) -> f64 {
    let low = Ctx::new(20);
    let z = z.with_prec(low.bits());
    let x = crate::tpgeom::split_root(&z, &low.real(&p.a));
    let prod = &x * &(&z + &x);
    let m = prod.abs().to_f64();
    // β̂ is of the same order near the turning points; allow for it
    if m == 0.0 {
        f64::INFINITY
    } else {
        4.0 / m
    }
}

fn poly_jet(poly: &BiPoly, param: &Float, x: &Jet) -> Jet {
    let (v, d) = crate::coeffs::horner_jet(&poly.at_param(param), &x.v);
    Jet::new(v, &d * &x.d)
}

/// `G = β(a²β + 2)(a²(1-a²)β² + 2(1-a²)β - 1)`.
fn g_leg(p: &Params, beta: &ExtComplex) -> ExtComplex {
    let bits = beta.prec();
    let one_m = Float::with_val(bits, 1 - &p.a2);
    let f1 = &beta.scale(&p.a2) + &Float::with_val(bits, 2);
    let q = &(&beta.square().scale(&Float::with_val(bits, &p.a2 * &one_m)) + &beta.scale(&(one_m.clone() * 2u32)))
        - &Float::with_val(bits, 1);
    &(beta * &f1) * &q
}

/// `β̂²(α²β̂ + 2)²`.
fn g_pcf(p: &Params, bh: &ExtComplex) -> ExtComplex {
    let bits = bh.prec();
    let f = &(bh * &(&bh.scale(&p.alpha2) + &Float::with_val(bits, 2))).clone();
    f.square()
}

/// Coefficient functions at one point, for the ring sampler and the direct
/// path alike. `p` must carry the precision of `g`.
pub(crate) fn coefficient_functions(p: &Params, g: &PointGeom, n: usize, d: &DConstants) -> Result<CoeffFunctions> {
    check_terms(n)?;
    let m = 2 * n - 1;
    let bits = g.z.prec();
    let t = tables();
    let one = ExtComplex::one(bits);

    let one_minus_z2 = &one - &g.z.square();
    let dbeta = -(&(&g_leg(p, &g.beta) * &g.x_root) / &one_minus_z2);
    let dbetahat = -(&(&g_pcf(p, &g.betahat) * &g.y_root) * &g.dzeta);
    let beta = Jet::new(g.beta.clone(), dbeta);
    let betahat = Jet::new(g.betahat.clone(), dbetahat);

    // c_s for 𝒜 (tilde) and ℬ (plain), s = 1..=m
    let mut ct = vec![Jet::zero(bits)];
    let mut cp = vec![Jet::zero(bits)];
    for s in 1..=m {
        let big = poly_jet(&t.big_e[s - 1].poly, &p.a2, &beta);
        let et = poly_jet(&t.etilde[s - 1].poly, &p.alpha2, &betahat);
        let e = poly_jet(&t.e[s - 1].poly, &p.alpha2, &betahat);
        let (mut a, mut b) = if s % 2 == 0 { (&big + &et, &big + &e) } else { (&big - &et, &big - &e) };
        if s % 2 == 1 {
            let ds = ExtComplex::from_real(Float::with_val(bits, d.d(s).expect("odd s <= 7")));
            a.v = &a.v + &ds;
            b.v = &b.v + &ds;
        }
        ct.push(a);
        cp.push(b);
    }

    let (a_even, _) = split_exp(&ct, m, bits);
    let (_, b_odd) = split_exp(&cp, m, bits);

    let dy = &(&g.zeta * &g.dzeta) / &g.y_root;
    let dx = &g.z / &g.x_root;
    let y = Jet::new(g.y_root.clone(), dy);
    let x = Jet::new(g.x_root.clone(), dx);
    let pref = y.div(&x).sqrt();

    let a: Vec<Jet> = (0..n).map(|s| a_even[2 * s].clone()).collect();
    let b: Vec<Jet> = (0..n).map(|s| b_odd[2 * s + 1].div(&y)).collect();
    Ok(CoeffFunctions { a, b, pref })
}

/// Power-series exponentials of `Σ c_s w^s` and `Σ (-1)^s c_s w^s`, returned
/// as their even (cosh-like) and odd (sinh-like) halves.
fn split_exp(c: &[Jet], m: usize, bits: u32) -> (Vec<Jet>, Vec<Jet>) {
    let neg: Vec<Jet> = c
        .iter()
        .enumerate()
        .map(|(s, j)| if s % 2 == 1 { Jet::new(-j.v.clone(), -j.d.clone()) } else { j.clone() })
        .collect();
    let rp = exp_series(c, m, bits);
    let rm = exp_series(&neg, m, bits);
    let half = Float::with_val(bits, 0.5);
    let even = (0..=m).map(|k| (&rp[k] + &rm[k]).scale(&half)).collect();
    let odd = (0..=m).map(|k| (&rp[k] - &rm[k]).scale(&half)).collect();
    (even, odd)
}

/// `r = exp(Σ_{s>=1} c_s w^s)` through `r_k = (1/k) Σ_j j c_j r_{k-j}`.
fn exp_series(c: &[Jet], m: usize, bits: u32) -> Vec<Jet> {
    let mut r = vec![Jet::constant(ExtComplex::one(bits))];
    for k in 1..=m {
        let mut acc = Jet::zero(bits);
        for j in 1..=k {
            let term = (&c[j] * &r[k - j]).scale(&Float::with_val(bits, j));
            acc = &acc + &term;
        }
        r.push(acc.scale(&(Float::with_val(bits, 1) / k as u32)));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::d_constants;
    use crate::tpgeom::zeta_at_real;

    #[test]
    fn leading_terms() {
        let p = Params::from_strs(Ctx::new(40), "50", "0.5").unwrap();
        let tp = zeta_at_real(&p, &p.ctx.parse("0.8").unwrap()).unwrap();
        let d = d_constants(&p.alpha);
        let cf = coefficient_functions(&p, &PointGeom::from(&tp), 2, &d).unwrap();
        assert!((&cf.a[0].v - &ExtComplex::one(p.ctx.bits())).abs() < 1e-38);
        // A₂ = ℰ̃₂ + ½(ℰ̃₁ + d₁)²
        let t = tables();
        let e1 = t.big_e[0].eval(&p.a2, &tp.beta) - &t.etilde[0].eval(&p.alpha2, &tp.betahat);
        let e2 = &t.big_e[1].eval(&p.a2, &tp.beta) + &t.etilde[1].eval(&p.alpha2, &tp.betahat);
        let c1 = &e1 + d.d1();
        let half = Float::with_val(p.ctx.bits(), 0.5);
        let a2 = &e2 + &c1.square().scale(&half);
        assert!((&cf.a[1].v - &a2).abs() < 1e-36);
    }

    #[test]
    fn guard_grows_with_terms() {
        assert_eq!(guard_digits(0.5, 4), 5);
        assert!(guard_digits(100.0, 4) > guard_digits(100.0, 2));
    }
}
