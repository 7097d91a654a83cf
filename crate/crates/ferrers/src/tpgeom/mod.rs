//! Turning-point geometry for the Legendre equation with
//! `f(a, z) = (z² - a²)/(1 - z²)²`.
//!
//! The Liouville–Green variable is `ξ(z) = ∫_a^z (t² - a²)^{1/2}/(1 - t²) dt`
//! and the comparison variable ζ solves
//!
//! ```text
//! ξ = ½ ζ (ζ² - α²)^{1/2} - ½ α² ln{ζ + (ζ² - α²)^{1/2}} + ½ α² ln α
//! ```
//!
//! on the branch with `ζ(±a) = ±α` and `ζ(0) = 0`. Square roots such as
//! `X = (z² - a²)^{1/2}` are taken as `(z - a)^{1/2}(z + a)^{1/2}` with
//! principal factors, which is positive for `z > a` and cut only on `[-a, a]`.
//!
//! Near `z = ±a` the Newton inversion degenerates, so points within
//! [`Params::control_radius`] of a turning point are served by the Taylor
//! series of [`zeta_series`].

mod series;

use std::cmp::Ordering;

use rug::Float;

pub use series::{zeta_series, zeta_taylor, TaylorCenter, ZetaSeries, ORIGIN_RADIUS};

use crate::numerics::{newton_bisect, newton_solve, Ctx, ExtComplex};
use crate::{Error, Result};

/// Default distance from a turning point inside which Taylor series replace
/// Newton inversion.
pub const DEFAULT_SWITCH_RADIUS: f64 = 0.08;

/// Problem parameters `(ν, μ, u, a, α)` at a fixed working precision.
///
/// `u = ν + ½`, `μ = (1 - a²)^{1/2} u` and `α² = 2(1 - (1 - a²)^{1/2})`, so that
/// `½uα² = ν - μ + ½`. The Weber parameter `b = μ - ν - ½ = -½uα²` is
/// stored as well.
#[derive(Clone, Debug)]
pub struct Params {
    pub ctx: Ctx,
    pub nu: Float,
    pub mu: Float,
    pub u: Float,
    pub a: Float,
    pub a2: Float,
    /// `(1 - a²)^{1/2}`
    pub s: Float,
    pub alpha: Float,
    pub alpha2: Float,
    /// Weber parameter `μ - ν - ½`.
    pub b: Float,
    switch_radius: f64,
}

impl Params {
    /// Parameters from ν and a, with `μ = (1 - a²)^{1/2}(ν + ½)`.
    pub fn new(ctx: Ctx, nu: &Float, a: &Float) -> Result<Self> {
        if nu.cmp0() == Some(Ordering::Less) || !nu.is_finite() {
            return Err(Error::Domain(format!("ν must be finite and >= 0, got {}", nu.to_f64())));
        }
        let alpha = alpha_from_a(&ctx, a)?;
        let a = ctx.real(a);
        let a2 = Float::with_val(ctx.bits(), a.square_ref());
        let s = Float::with_val(ctx.bits(), 1 - &a2).sqrt();
        let u = ctx.real(nu) + 0.5;
        let mu = Float::with_val(ctx.bits(), &s * &u);
        let alpha2 = Float::with_val(ctx.bits(), alpha.square_ref());
        // b = μ - u = -u a²/(1 + s), free of cancellation for small a
        let b = -(Float::with_val(ctx.bits(), &u * &a2) / Float::with_val(ctx.bits(), &s + 1u32));
        Ok(Params { ctx, nu: ctx.real(nu), mu, u, a, a2, s, alpha, alpha2, b, switch_radius: DEFAULT_SWITCH_RADIUS })
    }

    /// Parameters from decimal strings for ν and a.
    pub fn from_strs(ctx: Ctx, nu: &str, a: &str) -> Result<Self> {
        Params::new(ctx, &ctx.parse(nu)?, &ctx.parse(a)?)
    }

    /// Parameters from ν and μ, with `a = (1 - μ²/u²)^{1/2}`.
    pub fn from_mu(ctx: Ctx, nu: &Float, mu: &Float) -> Result<Self> {
        let u = ctx.real(nu) + 0.5;
        if mu.cmp0() == Some(Ordering::Less) || *mu > u {
            return Err(Error::Domain(format!("μ must lie in [0, ν + ½], got {}", mu.to_f64())));
        }
        let r = Float::with_val(ctx.bits(), mu / &u);
        let a = Float::with_val(ctx.bits(), 1 - Float::with_val(ctx.bits(), r.square_ref())).sqrt();
        let mut p = Params::new(ctx, nu, &a)?;
        p.mu = ctx.real(mu);
        Ok(p)
    }

    /// The same parameters at another precision.
    pub fn with_ctx(&self, ctx: Ctx) -> Params {
        let mut p = Params::new(ctx, &self.nu, &self.a).expect("parameters already validated");
        p.switch_radius = self.switch_radius;
        p
    }

    /// Overrides the Taylor switch-over distance (default 0.08).
    pub fn with_switch_radius(mut self, r: f64) -> Self {
        self.switch_radius = r;
        self
    }

    pub fn switch_radius(&self) -> f64 {
        self.switch_radius
    }

    /// Distance from `±a` inside which Taylor series are used:
    /// the switch radius, capped at half the distance to the nearest
    /// singularity `z = ±1`.
    pub fn control_radius(&self) -> f64 {
        self.switch_radius.min(0.5 * (1.0 - self.a.to_f64()))
    }

    pub fn is_coalesced(&self) -> bool {
        self.a.is_zero()
    }
}

/// `α = (2(1 - (1 - a²)^{1/2}))^{1/2}`, computed as `(2a²/(1 + (1-a²)^{1/2}))^{1/2}`.
pub fn alpha_from_a(ctx: &Ctx, a: &Float) -> Result<Float> {
    if a.cmp0() == Some(Ordering::Less) || *a >= 1 || !a.is_finite() {
        return Err(Error::Domain(format!("a must lie in [0, 1), got {}", a.to_f64())));
    }
    let a = ctx.real(a);
    let a2 = Float::with_val(ctx.bits(), a.square_ref());
    let s = Float::with_val(ctx.bits(), 1 - &a2).sqrt();
    Ok((a2 * 2u32 / (s + 1u32)).sqrt())
}

/// Side of a branch cut from which a point on it is approached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Above,
    Below,
}

/// Geometry bundle at one point.
///
/// `beta = 1/(X(z + X))` and `betahat = 1/(Y(ζ + Y))`, algebraically equal to
/// `z/(a²X) - 1/a²` and `ζ/(α²Y) - 1/α²` but without cancellation, and equal
/// to `1/(2z²)`, `1/(2ζ²)` when `a = 0`. Both are infinite at the turning
/// points. Real points inside `(-a, a)` are taken from above the cut.
#[derive(Clone, Debug)]
pub struct TpPoint {
    pub z: ExtComplex,
    pub xi: ExtComplex,
    pub zeta: ExtComplex,
    /// `dζ/dz`
    pub dzeta: ExtComplex,
    pub beta: ExtComplex,
    pub betahat: ExtComplex,
    /// `X = (z² - a²)^{1/2}`
    pub x_root: ExtComplex,
    /// `Y = (ζ² - α²)^{1/2}`
    pub y_root: ExtComplex,
}

/// `(w - c)^{1/2}(w + c)^{1/2}` with principal factors.
pub fn split_root(w: &ExtComplex, c: &Float) -> ExtComplex {
    let wm = w - c;
    let wp = w + c;
    &wm.sqrt() * &wp.sqrt()
}

fn is_real(z: &ExtComplex) -> bool {
    z.im.is_zero()
}

/// ξ(z).
///
/// Real points on the cut `(-∞, a)` need a [`Side`]; real points with
/// `|z| >= 1` are rejected. For `a = 0`, `ξ = -½ ln(1 - z²)`.
pub fn xi(p: &Params, z: &ExtComplex, side: Option<Side>) -> Result<ExtComplex> {
    let z = z.with_prec(p.ctx.bits());
    if is_real(&z) {
        if z.re.clone().abs() >= 1 {
            return Err(Error::Domain("ξ is cut along |x| >= 1".into()));
        }
        if p.is_coalesced() {
            let m = -Float::with_val(p.ctx.bits(), z.re.square_ref());
            return Ok(ExtComplex::from_real(-(m.ln_1p() / 2u32)));
        }
        if z.re >= p.a {
            return Ok(ExtComplex::from_real(xi_right(p, &z.re)));
        }
        return match side {
            None => {
                Err(Error::BranchAmbiguity(format!("z = {} lies on the cut (-∞, a]; choose a side", z.re.to_f64())))
            }
            Some(Side::Above) => Ok(xi_upper(p, &ExtComplex::from_real(z.re.clone()))),
            Some(Side::Below) => Ok(xi_upper(p, &ExtComplex::from_real(z.re.clone())).conj()),
        };
    }
    if p.is_coalesced() {
        let w = -z.square();
        return Ok(w.ln_1p().div_real(&p.ctx.real(-2)));
    }
    if z.im.cmp0() == Some(Ordering::Greater) {
        Ok(xi_upper(p, &z))
    } else {
        Ok(xi_upper(p, &z.conj()).conj())
    }
}

/// `ξ = s·artanh(X/(s x)) - arccosh(x/a)` for real `a <= x < 1`.
fn xi_right(p: &Params, x: &Float) -> Float {
    let bits = p.ctx.bits();
    let xr = real_root(x, &p.a);
    let arg = Float::with_val(bits, &xr / Float::with_val(bits, &p.s * x));
    let t = Float::with_val(bits, &p.s * arg.atanh());
    t - Float::with_val(bits, x / &p.a).acosh()
}

/// `ξ = s ln(sz + X) - (s/2) ln(1 - z²) - ln(z + X) + (1 - s) ln a`, valid
/// for `Im z > 0` and as the limit from above on the real axis.
fn xi_upper(p: &Params, z: &ExtComplex) -> ExtComplex {
    let bits = p.ctx.bits();
    let x = split_root(z, &p.a);
    let t1 = (&z.scale(&p.s) + &x).ln().scale(&p.s);
    let one_minus = -z.square();
    let t2 = one_minus.ln_1p().scale(&p.s).div_real(&Float::with_val(bits, 2));
    let t3 = (z + &x).ln();
    let c = Float::with_val(bits, 1 - &p.s) * Float::with_val(bits, p.a.ln_ref());
    &(&(&t1 - &t2) - &t3) + &c
}

/// `((x - c)(x + c))^{1/2}` for real `x >= c >= 0`.
fn real_root(x: &Float, c: &Float) -> Float {
    let bits = x.prec().max(c.prec());
    let d = Float::with_val(bits, x - c);
    let s = Float::with_val(bits, x + c);
    (d * s).sqrt()
}

/// Right-hand side of the ζ equation for real `ζ >= α`, with its derivative.
fn rhs_right(p: &Params, zeta: &Float) -> (Float, Float) {
    let bits = p.ctx.bits();
    let y = real_root(zeta, &p.alpha);
    let mut v = Float::with_val(bits, zeta * &y) / 2u32;
    if !p.alpha.is_zero() {
        let ac = Float::with_val(bits, zeta / &p.alpha).acosh();
        v -= Float::with_val(bits, &p.alpha2 * ac) / 2u32;
    }
    (v, y)
}

/// `arcsin(x/a) - s·arctan(x((1-a²)/(a²-x²))^{1/2})` for `|x| < a`.
fn lhs_mid(p: &Params, x: &Float) -> Float {
    let bits = p.ctx.bits();
    let as_ = Float::with_val(bits, x / &p.a).asin();
    let inner = real_root_mid(x, &p.a);
    let at = Float::with_val(bits, Float::with_val(bits, x * &p.s) / inner).atan();
    as_ - Float::with_val(bits, &p.s * at)
}

/// `((c - x)(c + x))^{1/2}` for `|x| <= c`.
fn real_root_mid(x: &Float, c: &Float) -> Float {
    let bits = x.prec().max(c.prec());
    let d = Float::with_val(bits, c - x);
    let s = Float::with_val(bits, c + x);
    (d * s).sqrt()
}

/// `½ζ(α² - ζ²)^{1/2} + ½α² arcsin(ζ/α)` with its derivative.
fn rhs_mid(p: &Params, zeta: &Float) -> (Float, Float) {
    let bits = p.ctx.bits();
    let y = real_root_mid(zeta, &p.alpha);
    let mut v = Float::with_val(bits, zeta * &y) / 2u32;
    let mut r = Float::with_val(bits, zeta / &p.alpha);
    if r > 1 {
        r = Float::with_val(bits, 1);
    } else if r < -1 {
        r = Float::with_val(bits, -1);
    }
    v += Float::with_val(bits, &p.alpha2 * r.asin()) / 2u32;
    (v, y)
}

fn newton_tol(p: &Params, scale: &Float) -> Float {
    let s = Float::with_val(p.ctx.bits(), scale.abs_ref()).max(&p.ctx.one());
    p.ctx.tenth_power(-(p.ctx.digits() as i32) + 3) * s
}

/// Real ζ(x) on `(-1, 1)`.
pub fn zeta_real(p: &Params, x: &Float) -> Result<Float> {
    let bits = p.ctx.bits();
    let x = p.ctx.real(x);
    if x.clone().abs() >= 1 {
        return Err(Error::Domain(format!("x must lie in (-1, 1), got {}", x.to_f64())));
    }
    if x.cmp0() == Some(Ordering::Less) {
        return Ok(-zeta_real(p, &(-x))?);
    }
    if p.is_coalesced() {
        let m = -Float::with_val(bits, x.square_ref());
        return Ok((-m.ln_1p()).sqrt());
    }
    let rc = p.control_radius();
    let dist = Float::with_val(bits, &x - &p.a).to_f64();
    if dist.abs() < rc {
        let z = ExtComplex::from_real(x.clone());
        return Ok(zeta_taylor(p, &z, TaylorCenter::TurningPoint)?.re);
    }
    if x > p.a {
        let target = xi_right(p, &x);
        let tol = newton_tol(p, &target);
        let lo = p.alpha.clone();
        let mut hi = Float::with_val(bits, Float::with_val(bits, &target * 2u32).sqrt() + &p.alpha) + 1u32;
        while rhs_right(p, &hi).0 <= target {
            hi = Float::with_val(bits, &hi * 2u32);
        }
        let x0 = Float::with_val(bits, &lo + &hi) / 2u32;
        return newton_bisect(
            &p.ctx,
            |z| {
                let (v, d) = rhs_right(p, z);
                Ok((v - &target, d))
            },
            &lo,
            &hi,
            &x0,
            &tol,
        );
    }
    let target = lhs_mid(p, &x);
    let tol = newton_tol(p, &target);
    let lo = -p.alpha.clone();
    let hi = p.alpha.clone();
    let x0 = Float::with_val(bits, &x * &p.alpha) / &p.a;
    newton_bisect(
        &p.ctx,
        |z| {
            let (v, d) = rhs_mid(p, z);
            Ok((v - &target, d))
        },
        &lo,
        &hi,
        &x0,
        &tol,
    )
}

/// Right-hand side of the ζ equation for complex ζ, with derivative `Y`.
fn rhs_complex(p: &Params, zeta: &ExtComplex) -> (ExtComplex, ExtComplex) {
    let bits = p.ctx.bits();
    let y = split_root(zeta, &p.alpha);
    let mut v = (zeta * &y).div_real(&Float::with_val(bits, 2));
    if !p.alpha.is_zero() {
        let l = (zeta + &y).ln();
        let la = Float::with_val(bits, p.alpha.ln_ref());
        let t = (&l - &la).scale(&p.alpha2).div_real(&Float::with_val(bits, 2));
        v = &v - &t;
    }
    (v, y)
}

fn near_turning_point(p: &Params, z: &ExtComplex) -> Option<TaylorCenter> {
    if p.is_coalesced() {
        return None;
    }
    let rc = p.control_radius();
    let dm = (z - &p.a).abs().to_f64();
    let dp = (z + &p.a).abs().to_f64();
    if dm < rc || dp < rc {
        Some(TaylorCenter::TurningPoint)
    } else {
        None
    }
}

fn zeta_upper(p: &Params, z: &ExtComplex, hint: Option<&ExtComplex>) -> Result<ExtComplex> {
    if near_turning_point(p, z).is_some() {
        return zeta_taylor(p, z, TaylorCenter::TurningPoint);
    }
    if p.is_coalesced() {
        if z.is_zero() {
            return Ok(ExtComplex::zero(p.ctx.bits()));
        }
        let z2 = z.square();
        let g = (-z2.clone()).ln_1p();
        let g = -(&g / &z2);
        return Ok(z * &g.sqrt());
    }
    let target = xi(p, z, Some(Side::Above))?;
    let tol = newton_tol(p, &target.abs());
    let solve = |start: &ExtComplex, target: &ExtComplex| {
        newton_solve(
            &p.ctx,
            |w| {
                let (v, d) = rhs_complex(p, w);
                Ok((&v - target, d))
            },
            start,
            &tol,
        )
    };
    if let Some(h) = hint {
        return solve(h, &target);
    }
    let x0 = z.re.clone();
    if x0.clone().abs() >= 1 {
        return Err(Error::Domain("complex ζ without a hint needs |Re z| < 1".into()));
    }
    let mut prev = ExtComplex::from_real(zeta_real(p, &x0)?);
    let steps = ((z.im.to_f64().abs() / 0.01).ceil() as u32).max(4);
    let bits = p.ctx.bits();
    for k in 1..=steps {
        let im = Float::with_val(bits, &z.im * k) / steps;
        let zk = ExtComplex::new(x0.clone(), im);
        if near_turning_point(p, &zk).is_some() {
            prev = zeta_taylor(p, &zk, TaylorCenter::TurningPoint)?;
            continue;
        }
        let tk = xi(p, &zk, Some(Side::Above))?;
        prev = solve(&prev, &tk)?;
    }
    Ok(prev)
}

/// ζ(z) and the associated geometry.
///
/// `hint` seeds the Newton iteration (used for continuation along contours).
/// Without one, complex points are reached by continuation from the real
/// point `Re z`. Points within [`Params::control_radius`] of `±a` are served
/// by Taylor series and ignore the hint.
pub fn zeta(p: &Params, z: &ExtComplex, hint: Option<&ExtComplex>) -> Result<TpPoint> {
    let bits = p.ctx.bits();
    let z = z.with_prec(bits);
    let real = is_real(&z);
    let zeta = if real {
        ExtComplex::from_real(zeta_real(p, &z.re)?)
    } else if z.im.cmp0() == Some(Ordering::Greater) {
        zeta_upper(p, &z, hint)?
    } else {
        zeta_upper(p, &z.conj(), hint.map(|h| h.conj()).as_ref())?.conj()
    };
    let (x_root, y_root) = if real {
        (real_signed_root(&z.re, &p.a), real_signed_root(&zeta.re, &p.alpha))
    } else {
        (split_root(&z, &p.a), split_root(&zeta, &p.alpha))
    };
    let xi_v = if real {
        if z.re >= p.a || p.is_coalesced() {
            xi(p, &z, None)?
        } else {
            xi(p, &z, Some(Side::Above))?
        }
    } else {
        xi(p, &z, None)?
    };
    let beta = (&x_root * &(&z + &x_root)).recip();
    let betahat = (&y_root * &(&zeta + &y_root)).recip();
    let dzeta = dzeta_dz(p, &z, &zeta, &x_root, &y_root)?;
    Ok(TpPoint { z, xi: xi_v, zeta, dzeta, beta, betahat, x_root, y_root })
}

/// Real ζ(x) bundled as a [`TpPoint`].
pub fn zeta_at_real(p: &Params, x: &Float) -> Result<TpPoint> {
    zeta(p, &ExtComplex::from_real(p.ctx.real(x)), None)
}

/// `X` for real `x`: positive right of `a`, negative left of `-a`, `+i·|X|`
/// in between.
fn real_signed_root(x: &Float, c: &Float) -> ExtComplex {
    let bits = x.prec().max(c.prec());
    let ax = Float::with_val(bits, x.abs_ref());
    if ax >= *c {
        let r = real_root(&ax, c);
        let r = if x.cmp0() == Some(Ordering::Less) { -r } else { r };
        ExtComplex::from_real(r)
    } else {
        ExtComplex::new(Float::new(bits), real_root_mid(x, c))
    }
}

/// `dζ/dz = X/((1 - z²)Y)`, from the Taylor series near the turning points.
fn dzeta_dz(
    p: &Params,
    z: &ExtComplex,
    zeta: &ExtComplex,
    x_root: &ExtComplex,
    y_root: &ExtComplex,
) -> Result<ExtComplex> {
    let bits = p.ctx.bits();
    if near_turning_point(p, z).is_some() {
        let flip = z.re.cmp0() == Some(Ordering::Less);
        let zz = if flip { -z.clone() } else { z.clone() };
        let series = zeta_series(p, TaylorCenter::TurningPoint, (&zz - &p.a).abs().to_f64())?;
        return Ok(series.eval(&zz).1);
    }
    if z.is_zero() {
        return Ok(if p.is_coalesced() {
            ExtComplex::one(bits)
        } else {
            ExtComplex::from_real(Float::with_val(bits, &p.a / &p.alpha))
        });
    }
    if p.is_coalesced() {
        // X = z, Y = ζ
        let den = &(&ExtComplex::one(bits) - &z.square()) * zeta;
        return Ok(z / &den);
    }
    let den = &(&ExtComplex::one(bits) - &z.square()) * y_root;
    Ok(x_root / &den)
}

/// Residual `|RHS(ζ) - ξ|` of the defining equation at a computed point.
pub fn round_trip_residual(p: &Params, tp: &TpPoint) -> Float {
    let (v, _) = rhs_complex(p, &tp.zeta);
    (&v - &tp.xi).abs()
}
