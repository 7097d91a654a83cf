//! Cauchy-integral evaluation of 𝒜 and ℬ inside a circle `|t| = ρ`.
//!
//! The trapezoidal rule with `N` equally spaced nodes converges
//! geometrically for a periodic analytic integrand, so
//! `𝒜(z) ≈ (1/N) Σ 𝒜(t_j) t_j/(t_j - z)` and
//! `𝒜'(z) ≈ (1/N) Σ 𝒜(t_j) t_j/(t_j - z)²`. The nodes are offset by half a
//! step so that none lies on the real axis, and ζ is continued around the
//! upper half circle from its real value at `t = ρ`; the lower half follows by
//! conjugation.

use rug::float::Constant;
use rug::Float;

use super::expansion::{beta_magnitude, coefficient_functions, guard_digits, PointGeom};
use super::{assemble, normalization, AbMethod, AbPair};
use crate::coeffs::d_constants;
use crate::numerics::ExtComplex;
use crate::tpgeom::{zeta, zeta_real, Params};
use crate::{Error, Result};

/// Smallest gap between the contour and the turning points, and between the
/// contour and the evaluation point.
pub const CONTOUR_MARGIN: f64 = 0.05;

/// 𝒜, ℬ and their z-derivatives at `z` from `points` nodes on `|t| = radius`.
pub fn ab_contour(p: &Params, z: &ExtComplex, n: usize, radius: f64, points: usize) -> Result<AbPair> {
    let a = p.a.to_f64();
    if !(radius > a + CONTOUR_MARGIN && radius <= 1.0 - CONTOUR_MARGIN) {
        return Err(Error::Geometry(format!(
            "radius {radius} must lie in ({}, {}]",
            a + CONTOUR_MARGIN,
            1.0 - CONTOUR_MARGIN
        )));
    }
    if points < 16 || points % 2 == 1 {
        return Err(Error::Geometry(format!("need an even number of at least 16 nodes, got {points}")));
    }
    let rz = z.abs().to_f64();
    if rz > radius - CONTOUR_MARGIN {
        return Err(Error::Geometry(format!("|z| = {rz} is too close to the contour of radius {radius}")));
    }

    let probe = ExtComplex::from_real(p.ctx.real(radius));
    let work = p.ctx.boosted(guard_digits(beta_magnitude(p, &probe), n));
    let wp = p.with_ctx(work);
    let bits = work.bits();
    let k = normalization(&wp);
    let d = d_constants(&wp.alpha);
    let rho = wp.ctx.real(radius);
    let pi = Float::with_val(bits, Constant::Pi);

    let half = points / 2;
    let mut nodes = Vec::with_capacity(half);
    let mut hint = ExtComplex::from_real(zeta_real(&wp, &rho)?);
    for j in 0..half {
        let th = Float::with_val(bits, &pi * (2 * j + 1) as u32) / points as u32;
        let t = ExtComplex::from_polar(&rho, &th);
        let tp = zeta(&wp, &t, Some(&hint))?;
        hint = tp.zeta.clone();
        let cf = coefficient_functions(&wp, &PointGeom::from(&tp), n, &d)?;
        let (av, bv) = assemble(&wp, &k, &cf);
        nodes.push((t, av.v, bv.v));
    }

    let zw = z.with_prec(bits);
    let mut sa = ExtComplex::zero(bits);
    let mut sb = ExtComplex::zero(bits);
    let mut sda = ExtComplex::zero(bits);
    let mut sdb = ExtComplex::zero(bits);
    let mut add = |t: &ExtComplex, av: &ExtComplex, bv: &ExtComplex| {
        let inv = (t - &zw).recip();
        let w1 = t * &inv;
        let w2 = &w1 * &inv;
        sa = &sa + &(av * &w1);
        sb = &sb + &(bv * &w1);
        sda = &sda + &(av * &w2);
        sdb = &sdb + &(bv * &w2);
    };
    for (t, av, bv) in &nodes {
        add(t, av, bv);
        add(&t.conj(), &av.conj(), &bv.conj());
    }
    let nn = Float::with_val(bits, points);
    let r = |v: ExtComplex| p.ctx.round_c(&v.div_real(&nn));
    Ok(AbPair { a: r(sa), b: r(sb), da: Some(r(sda)), db: Some(r(sdb)), method: AbMethod::Contour })
}
