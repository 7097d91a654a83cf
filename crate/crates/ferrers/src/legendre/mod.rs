//! Ferrers functions from the uniform expansions.
//!
//! For `-1 < x < 1`,
//!
//! ```text
//! P_ν^{-μ}(x) = (2/π)^{1/2} {U(b, √(2u) ζ) 𝒜(x) + √(2u) U'(b, √(2u) ζ) ℬ(x)}
//! Q_ν^{-μ}(x) = (π/2)^{1/2} Γ(ν - μ + 1) {V(b, √(2u) ζ) 𝒜(x) + √(2u) V'(b, √(2u) ζ) ℬ(x)}
//! ```
//!
//! with `b = μ - ν - ½`. The slowly varying 𝒜 and ℬ come from three routes:
//!
//! | Route | Where | Module |
//! |-------|-------|--------|
//! | expansion | away from `±a` | [`ab_expansion`] |
//! | Taylor | within the control radius of `±a` | [`ab_taylor`], [`RingModel`] |
//! | contour | anywhere inside a circle about 0 | [`ab_contour`] |
//!
//! [`Evaluator`] routes real points as the error experiments do: Taylor
//! within the control radius, expansion elsewhere. 𝒜 is even and ℬ odd in z,
//! so points with negative real part are reflected first.

mod contour;
mod expansion;
mod jet;
mod taylor;

use std::sync::OnceLock;

use rug::Float;

pub use contour::{ab_contour, CONTOUR_MARGIN};
pub use expansion::{guard_digits, CoeffFunctions, MAX_TERMS};
pub use jet::Jet;
pub use taylor::RingModel;

use expansion::{beta_magnitude, check_terms, coefficient_functions, PointGeom};

use crate::coeffs::d_constants;
use crate::numerics::{log_gamma, Ctx, ExtComplex};
use crate::oracle::{ferrers_p_ref, ferrers_q_ref};
use crate::pcf::{pcf_eval_boosted, pcf_lg, LG_MARGIN, SERIES_LIMIT};
use crate::tpgeom::{zeta, Params, TpPoint};
use crate::{Error, Result};

/// Distance from `±a` inside which the direct expansion is refused.
pub const EXPANSION_EXCLUSION: f64 = 0.01;

/// Real arguments must satisfy `|x| <= 1 - ENDPOINT_GUARD`.
pub const ENDPOINT_GUARD: f64 = 1e-3;

/// Which route produced an [`AbPair`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbMethod {
    Expansion,
    Taylor,
    Contour,
    /// Solved from reference values of the Ferrers functions.
    Exact,
}

/// 𝒜 and ℬ at one point, with z-derivatives when the route provides them.
#[derive(Clone, Debug)]
pub struct AbPair {
    pub a: ExtComplex,
    pub b: ExtComplex,
    pub da: Option<ExtComplex>,
    pub db: Option<ExtComplex>,
    pub method: AbMethod,
}

impl AbPair {
    /// `(𝒜̃, ℬ̃) = (𝒜' + u²(ζ² - α²)ζ'ℬ, ℬ' + ζ'𝒜)`, the coefficients of `U`
    /// and `√(2u) U'` in the z-derivative.
    pub fn tilde(&self, p: &Params, tp: &TpPoint) -> Option<(ExtComplex, ExtComplex)> {
        let (da, db) = (self.da.as_ref()?, self.db.as_ref()?);
        let y2 = tp.y_root.square();
        let u2 = Float::with_val(p.ctx.bits(), p.u.square_ref());
        let at = da + &(&(&y2 * &tp.dzeta) * &self.b).scale(&u2);
        let bt = db + &(&tp.dzeta * &self.a);
        Some((at, bt))
    }

    /// Values at `-z` from values at `z`.
    fn reflect(self) -> AbPair {
        AbPair { a: self.a, b: -self.b, da: self.da.map(|d| -d), db: self.db, method: self.method }
    }
}

/// `π^{1/4} u^{-1/4} (2Γ(u + μ + ½))^{-1/2}`.
pub(crate) fn normalization(p: &Params) -> Float {
    let bits = p.ctx.bits();
    let arg = Float::with_val(bits, &p.u + &p.mu) + 0.5;
    let lg = log_gamma(&p.ctx, &arg).expect("u + μ + ½ > 0");
    let mut l = p.ctx.pi().ln() / 4u32;
    l -= Float::with_val(bits, p.u.ln_ref()) / 4u32;
    l -= Float::with_val(bits, 2).ln() / 2u32;
    l -= lg / 2u32;
    l.exp()
}

/// `𝒜 = K·pref·Σ A_{2s}/u^{2s}` and `ℬ = K·pref·Σ B_{2s}/u^{2s+2}`.
pub(crate) fn assemble(p: &Params, k: &Float, cf: &CoeffFunctions) -> (Jet, Jet) {
    let bits = p.ctx.bits();
    let w2 = Float::with_val(bits, p.u.square_ref()).recip();
    let mut sa = Jet::zero(bits);
    let mut sb = Jet::zero(bits);
    let mut wp = Float::with_val(bits, 1);
    for (a, b) in cf.a.iter().zip(&cf.b) {
        sa = &sa + &a.scale(&wp);
        wp *= &w2;
        sb = &sb + &b.scale(&wp);
    }
    let pk = cf.pref.scale(k);
    (&pk * &sa, &pk * &sb)
}

/// Routes real and complex points, caching the Taylor model.
#[derive(Debug)]
pub struct Evaluator {
    p: Params,
    n: usize,
    k: Float,
    ring: OnceLock<Result<RingModel>>,
}

impl Evaluator {
    pub fn new(p: &Params, n: usize) -> Result<Self> {
        check_terms(n)?;
        Ok(Evaluator { p: p.clone(), n, k: normalization(p), ring: OnceLock::new() })
    }

    pub fn params(&self) -> &Params {
        &self.p
    }

    pub fn terms(&self) -> usize {
        self.n
    }

    /// The Taylor model about `z = a`, built on first use.
    pub fn ring_model(&self) -> Result<&RingModel> {
        self.ring.get_or_init(|| RingModel::build(&self.p, self.n)).as_ref().map_err(Clone::clone)
    }

    fn reflected(z: &ExtComplex) -> (ExtComplex, bool) {
        if z.re.is_sign_negative() && !z.re.is_zero() {
            (-z.clone(), true)
        } else {
            (z.clone(), false)
        }
    }

    fn in_taylor_zone(&self, z: &ExtComplex) -> bool {
        (z - &self.p.a).abs().to_f64() < self.p.control_radius()
    }

    /// 𝒜, ℬ via the Taylor route inside the control radius and the
    /// expansion elsewhere.
    pub fn ab(&self, z: &ExtComplex) -> Result<AbPair> {
        let (w, flip) = Self::reflected(z);
        let r = if self.in_taylor_zone(&w) { self.taylor_at(&w)? } else { self.expansion_at(&w)? };
        Ok(if flip { r.reflect() } else { r })
    }

    /// 𝒜, ℬ and derivatives by the re-expanded series.
    pub fn ab_expansion(&self, z: &ExtComplex) -> Result<AbPair> {
        let (w, flip) = Self::reflected(z);
        let r = self.expansion_at(&w)?;
        Ok(if flip { r.reflect() } else { r })
    }

    /// 𝒜, ℬ and derivatives from the Taylor model.
    pub fn ab_taylor(&self, z: &ExtComplex) -> Result<AbPair> {
        let (w, flip) = Self::reflected(z);
        if !self.in_taylor_zone(&w) {
            return Err(Error::Range(format!("z is farther than {} from ±a", self.p.control_radius())));
        }
        let r = self.taylor_at(&w)?;
        Ok(if flip { r.reflect() } else { r })
    }

    /// `A_{2s}(a, z)`, `B_{2s}(a, z)` and the algebraic prefactor at `z`,
    /// computed directly.
    pub fn coefficients(&self, z: &ExtComplex) -> Result<CoeffFunctions> {
        let (wp, tp) = self.boosted_point(z)?;
        let d = d_constants(&wp.alpha);
        let cf = coefficient_functions(&wp, &PointGeom::from(&tp), self.n, &d)?;
        let r = |j: &Jet| Jet::new(self.p.ctx.round_c(&j.v), self.p.ctx.round_c(&j.d));
        Ok(CoeffFunctions { a: cf.a.iter().map(r).collect(), b: cf.b.iter().map(r).collect(), pref: r(&cf.pref) })
    }

    fn boosted_point(&self, z: &ExtComplex) -> Result<(Params, TpPoint)> {
        let near =
            [&self.p.a, &(-self.p.a.clone())].iter().map(|c| (z - *c).abs().to_f64()).fold(f64::INFINITY, f64::min);
        if near < EXPANSION_EXCLUSION {
            return Err(Error::Excluded(format!(
                "z is within {EXPANSION_EXCLUSION} of a turning point; use the Taylor or contour route"
            )));
        }
        let work = self.p.ctx.boosted(guard_digits(beta_magnitude(&self.p, z), self.n));
        let wp = self.p.with_ctx(work);
        let tp = zeta(&wp, &z.with_prec(work.bits()), None)?;
        Ok((wp, tp))
    }

    fn expansion_at(&self, z: &ExtComplex) -> Result<AbPair> {
        let (wp, tp) = self.boosted_point(z)?;
        let d = d_constants(&wp.alpha);
        let cf = coefficient_functions(&wp, &PointGeom::from(&tp), self.n, &d)?;
        let k = wp.ctx.real(&self.k);
        let (a, b) = assemble(&wp, &k, &cf);
        let c = &self.p.ctx;
        Ok(AbPair {
            a: c.round_c(&a.v),
            b: c.round_c(&b.v),
            da: Some(c.round_c(&a.d)),
            db: Some(c.round_c(&b.d)),
            method: AbMethod::Expansion,
        })
    }

    fn taylor_at(&self, z: &ExtComplex) -> Result<AbPair> {
        let model = self.ring_model()?;
        let bits = self.p.ctx.bits();
        let (a, b, pref) = model.eval(&z.with_prec(bits));
        let cf = CoeffFunctions {
            a: a.into_iter().map(|(v, d)| Jet::new(v, d)).collect(),
            b: b.into_iter().map(|(v, d)| Jet::new(v, d)).collect(),
            pref: Jet::new(pref.0, pref.1),
        };
        let (a, b) = assemble(&self.p, &self.k, &cf);
        Ok(AbPair { a: a.v, b: b.v, da: Some(a.d), db: Some(b.d), method: AbMethod::Taylor })
    }

    fn check_x(&self, x: &Float) -> Result<()> {
        if !x.is_finite() || x.to_f64().abs() > 1.0 - ENDPOINT_GUARD {
            return Err(Error::Domain(format!("|x| must not exceed {}", 1.0 - ENDPOINT_GUARD)));
        }
        Ok(())
    }

    fn weber_u(&self, zeta: &Float) -> Result<(Float, Float)> {
        let p = &self.p;
        let xarg = Float::with_val(p.ctx.bits(), Float::with_val(p.ctx.bits(), &p.u * 2u32).sqrt() * zeta);
        if xarg.to_f64().abs() <= SERIES_LIMIT {
            let v = pcf_eval_boosted(&p.ctx, &p.b, &xarg, false)?;
            return Ok((v.u, v.up));
        }
        if Float::with_val(p.ctx.bits(), zeta - &p.alpha).to_f64() >= LG_MARGIN {
            let v = pcf_lg(&p.ctx, &p.u, &p.alpha, zeta, crate::coeffs::MAX_S)?;
            return Ok((v.u, v.up));
        }
        Err(Error::Range(format!("U(b, {}) lies outside the supported envelope", xarg.to_f64())))
    }

    fn weber_v(&self, zeta: &Float) -> Result<(Float, Float)> {
        let p = &self.p;
        let xarg = Float::with_val(p.ctx.bits(), Float::with_val(p.ctx.bits(), &p.u * 2u32).sqrt() * zeta);
        let v = pcf_eval_boosted(&p.ctx, &p.b, &xarg, true)?;
        Ok((v.v.expect("V requested"), v.vp.expect("V' requested")))
    }

    fn point(&self, x: &Float, method: Option<AbMethod>) -> Result<(TpPoint, AbPair)> {
        self.check_x(x)?;
        let z = ExtComplex::from_real(self.p.ctx.real(x));
        let ab = match method {
            None => self.ab(&z)?,
            Some(AbMethod::Expansion) => self.ab_expansion(&z)?,
            Some(AbMethod::Taylor) => self.ab_taylor(&z)?,
            Some(m) => return Err(Error::Domain(format!("{m:?} is not a routing choice for real evaluation"))),
        };
        let tp = zeta(&self.p, &z, None)?;
        Ok((tp, ab))
    }

    fn p_from(&self, tp: &TpPoint, ab: &AbPair) -> Result<Float> {
        let bits = self.p.ctx.bits();
        let (u, up) = self.weber_u(&tp.zeta.re)?;
        let s2u = Float::with_val(bits, &self.p.u * 2u32).sqrt();
        let mut v = Float::with_val(bits, &u * &ab.a.re);
        v += Float::with_val(bits, &up * &ab.b.re) * &s2u;
        Ok(v * sqrt_2_over_pi(&self.p.ctx))
    }

    /// `P_ν^{-μ}(x)`.
    pub fn p(&self, x: &Float) -> Result<Float> {
        let (tp, ab) = self.point(x, None)?;
        self.p_from(&tp, &ab)
    }

    /// `P_ν^{-μ}(x)` with 𝒜, ℬ forced through one route.
    pub fn p_using(&self, x: &Float, method: AbMethod) -> Result<Float> {
        let (tp, ab) = self.point(x, Some(method))?;
        self.p_from(&tp, &ab)
    }

    /// `Q_ν^{-μ}(x)`.
    pub fn q(&self, x: &Float) -> Result<Float> {
        let (tp, ab) = self.point(x, None)?;
        let p = &self.p;
        let bits = p.ctx.bits();
        let (v, vp) = self.weber_v(&tp.zeta.re)?;
        let s2u = Float::with_val(bits, &p.u * 2u32).sqrt();
        let mut r = Float::with_val(bits, &v * &ab.a.re);
        r += Float::with_val(bits, &vp * &ab.b.re) * &s2u;
        let arg = Float::with_val(bits, &p.nu - &p.mu) + 1u32;
        let g = log_gamma(&p.ctx, &arg)?.exp();
        Ok(r * g / sqrt_2_over_pi(&p.ctx))
    }

    /// `d/dx P_ν^{-μ}(x)`.
    pub fn p_prime(&self, x: &Float) -> Result<Float> {
        let (tp, ab) = self.point(x, None)?;
        let bits = self.p.ctx.bits();
        let (at, bt) = ab.tilde(&self.p, &tp).ok_or_else(|| Error::Domain("route without derivatives".into()))?;
        let (u, up) = self.weber_u(&tp.zeta.re)?;
        let s2u = Float::with_val(bits, &self.p.u * 2u32).sqrt();
        let mut v = Float::with_val(bits, &u * &at.re);
        v += Float::with_val(bits, &up * &bt.re) * &s2u;
        Ok(v * sqrt_2_over_pi(&self.p.ctx))
    }
}

fn sqrt_2_over_pi(ctx: &Ctx) -> Float {
    (ctx.real(2) / ctx.pi()).sqrt()
}

/// 𝒜, ℬ by the direct expansion.
pub fn ab_expansion(p: &Params, z: &ExtComplex, n: usize) -> Result<AbPair> {
    Evaluator::new(p, n)?.ab_expansion(z)
}

/// 𝒜, ℬ from the Taylor model about the nearer turning point.
pub fn ab_taylor(p: &Params, z: &ExtComplex, n: usize) -> Result<AbPair> {
    Evaluator::new(p, n)?.ab_taylor(z)
}

/// `P_ν^{-μ}(x)` with `n` terms.
pub fn eval_p(p: &Params, x: &Float, n: usize) -> Result<Float> {
    Evaluator::new(p, n)?.p(x)
}

/// `P_ν^{-μ}(-x)`.
pub fn eval_p_neg(p: &Params, x: &Float, n: usize) -> Result<Float> {
    Evaluator::new(p, n)?.p(&(-p.ctx.real(x)))
}

/// `Q_ν^{-μ}(x)` with `n` terms.
pub fn eval_q(p: &Params, x: &Float, n: usize) -> Result<Float> {
    Evaluator::new(p, n)?.q(x)
}

/// `d/dx P_ν^{-μ}(x)` with `n` terms.
pub fn eval_p_prime(p: &Params, x: &Float, n: usize) -> Result<Float> {
    Evaluator::new(p, n)?.p_prime(x)
}

/// Scan step for the largest zero of `Q`.
const Q_SCAN_STEP: f64 = 0.0025;

/// Largest positive zero of `Q_ν^{-μ}` in `(0, 1)`, from the reference
/// implementation, or `None` when `Q` keeps one sign.
pub fn q_zero(p: &Params) -> Result<Option<Float>> {
    let ctx = &p.ctx;
    let sign = |x: &Float| -> Result<Option<std::cmp::Ordering>> { Ok(ferrers_q_ref(p, x)?.cmp0()) };
    let mut hi = ctx.parse("0.999")?;
    let mut s_hi = sign(&hi)?;
    let step = ctx.real(Q_SCAN_STEP);
    loop {
        let lo = Float::with_val(ctx.bits(), &hi - &step);
        if lo.cmp0() != Some(std::cmp::Ordering::Greater) {
            return Ok(None);
        }
        let s_lo = sign(&lo)?;
        if s_lo == Some(std::cmp::Ordering::Equal) {
            return Ok(Some(lo));
        }
        if s_lo != s_hi {
            return bisect_q(p, lo, hi, s_lo).map(Some);
        }
        hi = lo;
        s_hi = s_lo;
    }
}

fn bisect_q(p: &Params, mut lo: Float, mut hi: Float, s_lo: Option<std::cmp::Ordering>) -> Result<Float> {
    let bits = p.ctx.bits();
    let tol = p.ctx.tenth_power(-(p.ctx.digits() as i32) / 2);
    for _ in 0..200 {
        if Float::with_val(bits, &hi - &lo) < tol {
            break;
        }
        let mid = Float::with_val(bits, &lo + &hi) / 2u32;
        let s = ferrers_q_ref(p, &mid)?.cmp0();
        match s {
            Some(std::cmp::Ordering::Equal) => return Ok(mid),
            None => return Err(Error::Search("Q is not finite inside the bracket".into())),
            _ if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    if Float::with_val(bits, &hi - &lo) >= tol {
        return Err(Error::Search("bisection for the zero of Q did not converge".into()));
    }
    Ok(Float::with_val(bits, &lo + &hi) / 2u32)
}

/// The envelope `M` and the zero that splits its two branches.
#[derive(Clone, Debug)]
pub struct EnvelopeValue {
    pub m: Float,
    pub q_zero: Option<Float>,
}

/// `M(ν, μ, x) = (P² + (2Q/π)²)^{1/2}` up to the largest zero of `Q`, and `P`
/// beyond it (or everywhere when `Q` has no zero).
pub fn envelope(p: &Params, x: &Float) -> Result<EnvelopeValue> {
    let q = q_zero(p)?;
    envelope_with(p, x, q.as_ref())
}

fn envelope_with(p: &Params, x: &Float, q: Option<&Float>) -> Result<EnvelopeValue> {
    let bits = p.ctx.bits();
    let pv = ferrers_p_ref(p, x)?;
    let m = match q {
        Some(q) if x <= q => {
            let qv = ferrers_q_ref(p, x)?;
            let t = Float::with_val(bits, qv * 2u32) / p.ctx.pi();
            (Float::with_val(bits, pv.square_ref()) + t.square()).sqrt()
        }
        _ => pv,
    };
    Ok(EnvelopeValue { m, q_zero: q.cloned() })
}

/// One row of the error experiment.
#[derive(Clone, Debug)]
pub struct ErrorRow {
    pub x: Float,
    /// `log10(|Δ_n|/M)`
    pub omega: Float,
    pub asymptotic: Float,
    pub reference: Float,
    pub envelope: Float,
}

fn omega_of(ctx: &Ctx, asym: &Float, reference: &Float, m: &Float) -> Float {
    let bits = ctx.bits();
    let delta = Float::with_val(bits, reference - asym).abs();
    let floor = Float::with_val(bits, m.abs_ref()) * ctx.eps();
    let delta = delta.max(&floor);
    (delta / m).abs().log10()
}

/// `Ω_n(x) = log10(|P_ref(x) - P_n(x)|/M(x))`, floored at `-digits`.
pub fn omega_error(p: &Params, x: &Float, n: usize) -> Result<Float> {
    Ok(error_rows(p, std::slice::from_ref(x), n)?.remove(0).omega)
}

/// Rows for each `x` in `xs`, sharing the Taylor model and the zero of `Q`.
pub fn error_rows(p: &Params, xs: &[Float], n: usize) -> Result<Vec<ErrorRow>> {
    let ev = Evaluator::new(p, n)?;
    let q = if xs.is_empty() { None } else { q_zero(p)? };
    xs.iter()
        .map(|x| {
            let asymptotic = ev.p(x)?;
            let reference = ferrers_p_ref(p, x)?;
            let env = envelope_with(p, x, q.as_ref())?;
            let omega = omega_of(&p.ctx, &asymptotic, &reference, &env.m);
            Ok(ErrorRow { x: p.ctx.real(x), omega, asymptotic, reference, envelope: env.m })
        })
        .collect()
}
