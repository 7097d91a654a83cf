//! Reference implementations used to check the asymptotic routes.
//!
//! None of these share code with the expansions they check. They are slow
//! and run with at least ten digits more than the caller's context.
//!
//! * Ferrers functions from the Gauss hypergeometric series in `(1 - x)/2`,
//!   and independently by Taylor-method integration of the Legendre equation.
//! * `U`, `V` by Taylor-method integration of Weber's equation from `x = 0`.
//! * 𝒜 and ℬ solved exactly from reference Ferrers and Weber values.
//! * α, ξ by quadrature and ζ by bisection.

use std::cmp::Ordering;

use rug::ops::Pow;
use rug::Float;

use crate::legendre::{AbMethod, AbPair};
use crate::numerics::{cos_pi, quad_adaptive, recip_gamma, sin_pi, Ctx, ExtComplex};
use crate::pcf::{cancellation_digits, PcfValue};
use crate::tpgeom::{zeta_real, Params};
use crate::{Error, Result};

/// Extra digits every oracle carries over its caller.
pub const ORACLE_GUARD: u32 = 10;

/// Hypergeometric terms summed before giving up.
const MAX_SERIES_TERMS: usize = 2_000_000;

/// `dist(ν - μ, {0, 1, 2, ...})` below which the connection formula for `Q`
/// is replaced by the one built on `P^{+μ}`.
pub const NEAR_POLE: f64 = 1e-6;

/// Order of the Taylor steps in the ODE integrators.
const ODE_ORDER: usize = 48;

/// Smallest step before the integrator reports a stiffness failure.
const MIN_STEP: f64 = 1e-6;

fn oracle_ctx(ctx: &Ctx) -> Ctx {
    Ctx::new(ctx.digits().max(40) + ORACLE_GUARD)
}

fn check_open_interval(x: &Float) -> Result<()> {
    if !x.is_finite() || *x <= -1 || *x >= 1 {
        return Err(Error::Domain(format!("x must lie in (-1, 1), got {}", x.to_f64())));
    }
    Ok(())
}

struct HypSum {
    value: Float,
    deriv: Float,
    loss_digits: f64,
}

/// `F(-ν, ν+1; 1+m; t)` and its t-derivative.
fn hyp_sum(bits: u32, nu: &Float, m: &Float, t: &Float) -> Result<HypSum> {
    let eps = Float::with_val(bits, Float::i_exp(1, -(bits as i32)));
    let nu1 = Float::with_val(bits, nu + 1u32);
    let m1 = Float::with_val(bits, m + 1u32);
    let mut term = Float::with_val(bits, 1);
    let mut value = Float::with_val(bits, 1);
    let mut deriv = Float::with_val(bits, 0);
    let mut max_term = Float::with_val(bits, 1);
    let mut quiet = 0;
    for k in 0..MAX_SERIES_TERMS {
        let a = Float::with_val(bits, k as u32 - Float::with_val(bits, nu));
        let b = Float::with_val(bits, &nu1 + k as u32);
        let c = Float::with_val(bits, &m1 + k as u32);
        if c.is_zero() {
            return Err(Error::Excluded("1 + m is a non-positive integer".into()));
        }
        let coef = Float::with_val(bits, &a * &b) / (c * (k + 1) as u32);
        // derivative term uses the coefficient before the t factor
        let dterm = Float::with_val(bits, &term * &coef) * (k + 1) as u32;
        term *= &coef;
        term *= t;
        if term.is_zero() {
            // terminating series
            return Ok(finish(bits, value, deriv, &max_term));
        }
        deriv += &dterm;
        value += &term;
        let at = Float::with_val(bits, term.abs_ref());
        if at > max_term {
            max_term = at.clone();
        }
        let ratio = Float::with_val(bits, &coef * t).abs().to_f64();
        let past_pole = m1.to_f64() + k as f64 > 0.0;
        if ratio < 1.0 && past_pole && at <= Float::with_val(bits, value.abs_ref()) * &eps {
            quiet += 1;
            if quiet >= 3 {
                return Ok(finish(bits, value, deriv, &max_term));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Precision(format!("hypergeometric series did not converge in {MAX_SERIES_TERMS} terms")))
}

fn finish(bits: u32, value: Float, deriv: Float, max_term: &Float) -> HypSum {
    let loss_digits = if value.is_zero() {
        f64::INFINITY
    } else {
        Float::with_val(bits, max_term / &value).abs().log10().to_f64().max(0.0)
    };
    HypSum { value, deriv, loss_digits }
}

/// `P_ν^{-m}(x)` and its derivative at `work` precision, with the digits
/// lost to cancellation reported.
fn ferrers_series(work: &Ctx, nu: &Float, m: &Float, x: &Float) -> Result<(Float, Float, f64)> {
    let bits = work.bits();
    let x = work.real(x);
    let one_m = Float::with_val(bits, 1 - &x);
    let one_p = Float::with_val(bits, 1 + &x);
    let t = Float::with_val(bits, &one_m / 2u32);
    let h = hyp_sum(bits, &work.real(nu), &work.real(m), &t)?;
    // ((1-x)/(1+x))^{m/2} / Γ(1+m)
    let half_m = Float::with_val(bits, m / 2u32);
    let pref = Float::with_val(bits, &one_m / &one_p).pow(&half_m) * recip_gamma(&Float::with_val(bits, m + 1u32));
    let w = Float::with_val(bits, &one_m * &one_p);
    let value = Float::with_val(bits, &pref * &h.value);
    let mut deriv = -(Float::with_val(bits, &value * m) / &w);
    deriv -= Float::with_val(bits, &pref * &h.deriv) / 2u32;
    Ok((value, deriv, h.loss_digits))
}

/// Sums at rising precision until the cancellation is covered.
fn ferrers_adaptive(ctx: &Ctx, nu: &Float, m: &Float, x: &Float) -> Result<(Float, Float)> {
    check_open_interval(x)?;
    let base = oracle_ctx(ctx);
    let mut extra = 10u32;
    for _ in 0..5 {
        let work = base.boosted(extra);
        let (v, d, loss) = ferrers_series(&work, nu, m, x)?;
        if loss.is_finite() && loss + 5.0 <= extra as f64 {
            return Ok((base.round(&v), base.round(&d)));
        }
        if !loss.is_finite() {
            // an exact zero of the function; the derivative is still valid
            if extra >= 80 {
                return Ok((base.zero(), base.round(&d)));
            }
            extra *= 2;
        } else {
            extra = (loss.ceil() as u32 + 15).max(2 * extra);
        }
    }
    Err(Error::Precision("hypergeometric cancellation exceeds the precision budget".into()))
}

/// `P_ν^{-μ}(x)` for any `ν >= 0`, `μ >= 0`, from the hypergeometric series.
pub fn ferrers_p_order(ctx: &Ctx, nu: &Float, mu: &Float, x: &Float) -> Result<Float> {
    Ok(ctx.round(&ferrers_adaptive(ctx, nu, mu, x)?.0))
}

/// `P_ν^{-μ}(x)` for the parameters `p`.
pub fn ferrers_p_ref(p: &Params, x: &Float) -> Result<Float> {
    ferrers_p_order(&p.ctx, &p.nu, &p.mu, x)
}

/// `d/dx P_ν^{-μ}(x)`.
pub fn ferrers_p_prime_ref(p: &Params, x: &Float) -> Result<Float> {
    Ok(p.ctx.round(&ferrers_adaptive(&p.ctx, &p.nu, &p.mu, x)?.1))
}

fn distance_to_nonneg_integer(v: &Float) -> f64 {
    let f = v.to_f64();
    if f < 0.0 {
        -f
    } else {
        (f - f.round()).abs()
    }
}

/// `Q_ν^{-μ}(x)` and its derivative.
fn ferrers_q_pair(ctx: &Ctx, nu: &Float, mu: &Float, x: &Float) -> Result<(Float, Float)> {
    check_open_interval(x)?;
    let work = oracle_ctx(ctx).boosted(10);
    let bits = work.bits();
    let pi = work.pi();
    let nmm = Float::with_val(bits, nu - mu);
    if distance_to_nonneg_integer(&nmm) >= NEAR_POLE {
        // Q = (π/2)[cos((ν-μ)π) P(x) - P(-x)] / sin((ν-μ)π)
        let (p, dp) = ferrers_adaptive(&work, nu, mu, x)?;
        let neg = -work.real(x);
        let (pn, dpn) = ferrers_adaptive(&work, nu, mu, &neg)?;
        let c = cos_pi(&nmm);
        let s = sin_pi(&nmm);
        let f = Float::with_val(bits, &pi / 2u32) / s;
        let q = Float::with_val(bits, Float::with_val(bits, &c * &p) - &pn) * &f;
        let dq = Float::with_val(bits, Float::with_val(bits, &c * &dp) + &dpn) * &f;
        return Ok((ctx.round(&q), ctx.round(&dq)));
    }
    // Q = -(π/(2 sin μπ)) [cos μπ P^{-μ} - Γ(ν-μ+1)/Γ(ν+μ+1) P^{μ}]
    let s = sin_pi(&work.real(mu));
    if s.clone().abs().to_f64() < NEAR_POLE {
        return Err(Error::Excluded("both ν - μ and μ are within the pole threshold of integers".into()));
    }
    let (p, dp) = ferrers_adaptive(&work, nu, mu, x)?;
    let neg_mu = -work.real(mu);
    let (pp, dpp) = ferrers_adaptive(&work, nu, &neg_mu, x)?;
    let g1 = Float::with_val(bits, &nmm + 1u32).gamma();
    let g2 = Float::with_val(bits, Float::with_val(bits, nu + mu) + 1u32).gamma();
    let r = g1 / g2;
    let c = cos_pi(&work.real(mu));
    let f = -(Float::with_val(bits, &pi / 2u32) / s);
    let q = (Float::with_val(bits, &c * &p) - Float::with_val(bits, &r * &pp)) * &f;
    let dq = (Float::with_val(bits, &c * &dp) - Float::with_val(bits, &r * &dpp)) * &f;
    Ok((ctx.round(&q), ctx.round(&dq)))
}

/// `Q_ν^{-μ}(x)` for any `ν >= 0`, `μ >= 0`.
pub fn ferrers_q_order(ctx: &Ctx, nu: &Float, mu: &Float, x: &Float) -> Result<Float> {
    Ok(ferrers_q_pair(ctx, nu, mu, x)?.0)
}

/// `Q_ν^{-μ}(x)` for the parameters `p`.
pub fn ferrers_q_ref(p: &Params, x: &Float) -> Result<Float> {
    ferrers_q_order(&p.ctx, &p.nu, &p.mu, x)
}

/// `d/dx Q_ν^{-μ}(x)`.
pub fn ferrers_q_prime_ref(p: &Params, x: &Float) -> Result<Float> {
    Ok(ferrers_q_pair(&p.ctx, &p.nu, &p.mu, x)?.1)
}

fn poly_mul(a: &[Float], b: &[Float], bits: u32) -> Vec<Float> {
    let mut out = vec![Float::new(bits); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += Float::with_val(bits, x * y);
        }
    }
    out
}

/// `p2(h) y'' + p1(h) y' + p0(h) y = 0` about a point, as polynomials in the
/// local offset `h`.
struct LocalOde {
    p2: Vec<Float>,
    p1: Vec<Float>,
    p0: Vec<Float>,
    /// Distance to the nearest singular point.
    reach: f64,
}

/// Taylor coefficients `y_0..=y_order` from `y(0)`, `y'(0)`.
fn taylor_coeffs(ode: &LocalOde, y0: &Float, y1: &Float, order: usize, bits: u32) -> Vec<Float> {
    let mut y = vec![Float::with_val(bits, y0), Float::with_val(bits, y1)];
    for k in 0..order - 1 {
        let mut acc = Float::new(bits);
        for (i, c) in ode.p2.iter().enumerate().skip(1) {
            if i > k {
                break;
            }
            let j = k - i + 2;
            acc += Float::with_val(bits, c * &y[j]) * ((j * (j - 1)) as u32);
        }
        for (i, c) in ode.p1.iter().enumerate() {
            if i > k {
                break;
            }
            let j = k - i + 1;
            acc += Float::with_val(bits, c * &y[j]) * j as u32;
        }
        for (i, c) in ode.p0.iter().enumerate() {
            if i > k {
                break;
            }
            acc += Float::with_val(bits, c * &y[k - i]);
        }
        let den = Float::with_val(bits, &ode.p2[0] * ((k + 2) * (k + 1)) as u32);
        y.push(-(acc / den));
    }
    y
}

/// Integrates solution pairs `(y, y')` from `x0` to `x1`.
fn integrate<F>(work: &Ctx, ode_at: F, x0: &Float, x1: &Float, mut ys: Vec<[Float; 2]>) -> Result<Vec<[Float; 2]>>
where
    F: Fn(&Float) -> LocalOde,
{
    let bits = work.bits();
    let eps = work.eps();
    let mut x = work.real(x0);
    let dir = if x1 >= x0 { 1.0 } else { -1.0 };
    while x != *x1 {
        let ode = ode_at(&x);
        let p20 = ode.p2[0].to_f64();
        let freq = (ode.p0[0].to_f64() / p20).abs().sqrt() + ode.p1.first().map_or(0.0, |c| (c.to_f64() / p20).abs());
        let remaining = Float::with_val(bits, x1 - &x).abs().to_f64();
        let mut h = remaining.min(0.25 * ode.reach).min(2.0 / (1.0 + freq));
        let series: Vec<Vec<Float>> = ys.iter().map(|[a, b]| taylor_coeffs(&ode, a, b, ODE_ORDER, bits)).collect();
        let step = loop {
            if h < MIN_STEP {
                return Err(Error::Stiffness(format!("step below {MIN_STEP} at x = {}", x.to_f64())));
            }
            let hf = if h == remaining { Float::with_val(bits, x1 - &x) } else { work.real(dir * h) };
            let ok = series.iter().all(|c| {
                let scale = Float::with_val(bits, c[0].abs_ref()).max(&Float::with_val(bits, &c[1] * &hf).abs());
                (ODE_ORDER - 2..=ODE_ORDER).all(|k| {
                    let t = Float::with_val(bits, &c[k] * Float::with_val(bits, (&hf).pow(k as u32))).abs();
                    t <= Float::with_val(bits, &scale * &eps)
                })
            });
            if ok {
                break hf;
            }
            h /= 2.0;
        };
        ys = series
            .iter()
            .map(|c| {
                let mut v = Float::new(bits);
                let mut d = Float::new(bits);
                for k in (0..c.len()).rev() {
                    v = v * &step + &c[k];
                    if k > 0 {
                        d = d * &step + Float::with_val(bits, &c[k] * k as u32);
                    }
                }
                [v, d]
            })
            .collect();
        x += &step;
        if dir * Float::with_val(bits, x1 - &x).to_f64() < 0.0 {
            x = work.real(x1);
        }
    }
    Ok(ys)
}

/// `U(b, x)`, `U'(b, x)`, `V(b, x)`, `V'(b, x)` by integrating Weber's
/// equation from closed-form values at `x = 0`.
pub fn pcf_ode_ref(ctx: &Ctx, b: &Float, x: &Float) -> Result<PcfValue> {
    if !b.is_finite() || !x.is_finite() {
        return Err(Error::Domain("b and x must be finite".into()));
    }
    let base = oracle_ctx(ctx);
    let work = base.boosted(cancellation_digits(b, x));
    let bits = work.bits();
    let bw = work.real(b);
    let hb = Float::with_val(bits, &bw / 2u32);
    let sqrt_pi = work.pi().sqrt();
    let two = work.real(2);
    let pw = |e: f64| two.clone().pow(Float::with_val(bits, &hb + e));
    let u0 = Float::with_val(bits, &sqrt_pi * recip_gamma(&Float::with_val(bits, &hb + 0.75))) / pw(0.25);
    let u1 = -(Float::with_val(bits, &sqrt_pi * recip_gamma(&Float::with_val(bits, &hb + 0.25))) / pw(-0.25));
    let c0 = Float::with_val(bits, 0.75 - Float::with_val(bits, &hb));
    let v0 = pw(0.25) * sin_pi(&c0) * recip_gamma(&c0);
    let c1 = Float::with_val(bits, 0.25 - Float::with_val(bits, &hb));
    let v1 = pw(0.75) * sin_pi(&c1) * recip_gamma(&c1);

    let quarter = work.ratio(1, 4);
    let ode_at = |t: &Float| {
        let mut c0 = Float::with_val(bits, t.square_ref()) * &quarter;
        c0 += &bw;
        LocalOde {
            p2: vec![work.one()],
            p1: vec![],
            p0: vec![-c0, -(Float::with_val(bits, t / 2u32)), -quarter.clone()],
            reach: f64::INFINITY,
        }
    };
    let ys = integrate(&work, ode_at, &work.zero(), &work.real(x), vec![[u0, u1], [v0, v1]])?;
    let r = |v: &Float| ctx.round(v);
    Ok(PcfValue {
        b: ctx.real(b),
        x: ctx.real(x),
        u: r(&ys[0][0]),
        up: r(&ys[0][1]),
        v: Some(r(&ys[1][0])),
        vp: Some(r(&ys[1][1])),
    })
}

/// Start of the Legendre-equation integration in [`ferrers_p_ode_ref`].
pub const ODE_START: f64 = 0.999;

/// `P_ν^{-μ}(x)` by integrating the associated Legendre equation from
/// `x = 0.999`, where the endpoint series needs only a handful of terms.
pub fn ferrers_p_ode_ref(p: &Params, x: &Float) -> Result<Float> {
    check_open_interval(x)?;
    let base = oracle_ctx(&p.ctx);
    let work = base.boosted(10);
    let bits = work.bits();
    let x0 = work.real(ODE_START);
    let (y0, y1) = ferrers_adaptive(&work, &p.nu, &p.mu, &x0)?;
    let lam = Float::with_val(bits, &p.nu * Float::with_val(bits, &p.nu + 1u32));
    let mu2 = Float::with_val(bits, p.mu.square_ref());
    let ode_at = |t: &Float| {
        let w = vec![
            Float::with_val(bits, 1 - Float::with_val(bits, t.square_ref())),
            -(Float::with_val(bits, t * 2u32)),
            Float::with_val(bits, -1),
        ];
        let xs = vec![work.real(t), work.one()];
        let p2 = poly_mul(&w, &w, bits);
        let p1: Vec<Float> = poly_mul(&xs, &w, bits).into_iter().map(|c| c * -2i32).collect();
        let mut p0: Vec<Float> = w.iter().map(|c| Float::with_val(bits, c * &lam)).collect();
        p0[0] -= &mu2;
        LocalOde { p2, p1, p0, reach: 1.0 - t.to_f64().abs() }
    };
    let ys = integrate(&work, ode_at, &x0, &work.real(x), vec![[y0, y1]])?;
    Ok(p.ctx.round(&ys[0][0]))
}

/// 𝒜 and ℬ at real `x`, solved exactly from reference values of `P`, `Q`,
/// `U` and `V`. No side is needed: both are analytic on `(-1, 1)`.
pub fn ab_exact_ref(p: &Params, x: &Float) -> Result<AbPair> {
    check_open_interval(x)?;
    let work = oracle_ctx(&p.ctx).boosted(10);
    let bits = work.bits();
    let wp = p.with_ctx(work);
    let xw = work.real(x);
    let zeta = zeta_real(&wp, &xw)?;
    let s2u = Float::with_val(bits, &wp.u * 2u32).sqrt();
    let big_x = Float::with_val(bits, &s2u * &zeta);
    let neg_x = -big_x.clone();
    let pc = pcf_ode_ref(&work, &wp.b, &big_x)?;
    let pw = ferrers_p_order(&work, &wp.nu, &wp.mu, &xw)?;
    let nmm = Float::with_val(bits, &wp.nu - &wp.mu);
    let (a, b) = if distance_to_nonneg_integer(&nmm) >= NEAR_POLE {
        // c = √2 Γ(μ - ν)/(4√u)
        let pm = pcf_ode_ref(&work, &wp.b, &neg_x)?;
        let pn = ferrers_p_order(&work, &wp.nu, &wp.mu, &(-xw.clone()))?;
        let g = Float::with_val(bits, -nmm.clone()).gamma();
        let c = work.real(2).sqrt() * g / (wp.u.clone().sqrt() * 4u32);
        let mut a = Float::with_val(bits, &pw * &pm.up);
        a += Float::with_val(bits, &pn * &pc.up);
        let a = -(a * &c * &s2u);
        let mut b = Float::with_val(bits, &pw * &pm.u);
        b -= Float::with_val(bits, &pn * &pc.u);
        let b = -(b * &c);
        (a, b)
    } else {
        // [U, √(2u)U'; V, √(2u)V'] (𝒜, ℬ) = (P/√(2/π), Q/(√(π/2)Γ(ν-μ+1)))
        let q = ferrers_q_order(&work, &wp.nu, &wp.mu, &xw)?;
        let r2p = Float::with_val(bits, 2u32 / work.pi()).sqrt();
        let g = Float::with_val(bits, &nmm + 1u32).gamma();
        let ph = Float::with_val(bits, &pw / &r2p);
        let qh = Float::with_val(bits, &q * &r2p) / g;
        let v = pc.v.as_ref().expect("V computed");
        let vp = pc.vp.as_ref().expect("V' computed");
        let det = Float::with_val(bits, &s2u * &r2p);
        let a = (Float::with_val(bits, &ph * vp) - Float::with_val(bits, &pc.up * &qh)) * &s2u / &det;
        let b = (Float::with_val(bits, &pc.u * &qh) - Float::with_val(bits, v * &ph)) / &det;
        (a, b)
    };
    Ok(AbPair {
        a: ExtComplex::from_real(p.ctx.round(&a)),
        b: ExtComplex::from_real(p.ctx.round(&b)),
        da: None,
        db: None,
        method: AbMethod::Exact,
    })
}

/// α from `½πα² = ∫_{-a}^{a} (a² - t²)^{1/2}/(1 - t²) dt` by quadrature.
pub fn alpha_quad_ref(ctx: &Ctx, a: &Float) -> Result<Float> {
    if a.cmp0() == Some(Ordering::Less) || *a >= 1 {
        return Err(Error::Domain(format!("a must lie in [0, 1), got {}", a.to_f64())));
    }
    let work = oracle_ctx(ctx);
    let bits = work.bits();
    let a = work.real(a);
    let a2 = Float::with_val(bits, a.square_ref());
    // t = a sin θ
    let f = |th: &Float| -> Float {
        let s = Float::with_val(bits, th.sin_ref());
        let c2 = Float::with_val(bits, th.cos_ref()).square();
        let den = 1 - Float::with_val(bits, &a2 * s.square());
        Float::with_val(bits, &a2 * c2) / den
    };
    let hp = work.pi() / 2u32;
    let tol = work.tenth_power(-(work.digits() as i32) + 3);
    let i = quad_adaptive(&work, f, &(-hp.clone()), &hp, &tol)?;
    Ok(ctx.round(&(i * 2u32 / work.pi()).sqrt()))
}

/// ξ(x) for `a <= x < 1` as `∫_a^x (t² - a²)^{1/2}/(1 - t²) dt`.
pub fn xi_quad_ref(p: &Params, x: &Float) -> Result<Float> {
    if *x < p.a || *x >= 1 {
        return Err(Error::Domain(format!("x must lie in [a, 1), got {}", x.to_f64())));
    }
    let work = oracle_ctx(&p.ctx);
    let bits = work.bits();
    let tol = work.tenth_power(-(work.digits() as i32) + 3);
    let x = work.real(x);
    let v = if p.a.is_zero() {
        let f = |t: &Float| Float::with_val(bits, t / (1 - Float::with_val(bits, t.square_ref())));
        quad_adaptive(&work, f, &work.zero(), &x, &tol)?
    } else {
        // t = a cosh φ
        let a = work.real(&p.a);
        let a2 = Float::with_val(bits, a.square_ref());
        let f = |ph: &Float| -> Float {
            let sh2 = Float::with_val(bits, ph.sinh_ref()).square();
            let ch2 = Float::with_val(bits, ph.cosh_ref()).square();
            Float::with_val(bits, &a2 * sh2) / (1 - Float::with_val(bits, &a2 * ch2))
        };
        let top = Float::with_val(bits, &x / &a).acosh();
        quad_adaptive(&work, f, &work.zero(), &top, &tol)?
    };
    Ok(p.ctx.round(&v))
}

/// `∫_0^x (a² - t²)^{1/2}/(1 - t²) dt` for `0 <= x <= a`.
fn mid_integral(work: &Ctx, a: &Float, x: &Float, tol: &Float) -> Result<Float> {
    let bits = work.bits();
    let a2 = Float::with_val(bits, a.square_ref());
    let f = |th: &Float| -> Float {
        let s = Float::with_val(bits, th.sin_ref());
        let c2 = Float::with_val(bits, th.cos_ref()).square();
        Float::with_val(bits, &a2 * c2) / (1 - Float::with_val(bits, &a2 * s.square()))
    };
    let top = Float::with_val(bits, x / a).asin();
    quad_adaptive(work, f, &work.zero(), &top, tol)
}

/// ζ(x) by plain bisection, with the right-hand sides from quadrature.
pub fn zeta_bisect_ref(p: &Params, x: &Float) -> Result<Float> {
    check_open_interval(x)?;
    if x.cmp0() == Some(Ordering::Less) {
        return Ok(-zeta_bisect_ref(p, &(-p.ctx.real(x)))?);
    }
    let work = oracle_ctx(&p.ctx);
    let bits = work.bits();
    let tol = work.tenth_power(-(work.digits() as i32) + 3);
    let alpha = work.real(&p.alpha);
    let alpha2 = Float::with_val(bits, alpha.square_ref());
    let half = work.ratio(1, 2);
    let (target, lo, hi, right) = if *x >= p.a {
        let xi = xi_quad_ref(&p.with_ctx(work), &work.real(x))?;
        // ζ grows like (2ξ)^{1/2} for large ξ
        let hi = Float::with_val(bits, &alpha + 2u32) + Float::with_val(bits, &xi * 4u32).sqrt();
        (xi, alpha.clone(), hi, true)
    } else {
        let xi = mid_integral(&work, &work.real(&p.a), &work.real(x), &tol)?;
        (xi, work.zero(), alpha.clone(), false)
    };
    let f = |z: &Float| -> Float {
        if right {
            let y = (Float::with_val(bits, z.square_ref()) - &alpha2).sqrt();
            let ac = Float::with_val(bits, z / &alpha).acosh();
            let v = Float::with_val(bits, z * &y) * &half - Float::with_val(bits, &alpha2 * ac) * &half;
            v - &target
        } else {
            let y = (Float::with_val(bits, &alpha2) - Float::with_val(bits, z.square_ref())).sqrt();
            let asn = Float::with_val(bits, z / &alpha).asin();
            let v = Float::with_val(bits, z * &y) * &half + Float::with_val(bits, &alpha2 * asn) * &half;
            v - &target
        }
    };
    let (mut lo, mut hi) = (lo, hi);
    if alpha.is_zero() && !right {
        return Ok(p.ctx.zero());
    }
    for _ in 0..bits + 8 {
        let mid = Float::with_val(bits, &lo + &hi) / 2u32;
        if mid == lo || mid == hi {
            break;
        }
        if f(&mid).cmp0() == Some(Ordering::Greater) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(p.ctx.round(&((lo + hi) / 2u32)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_polynomial_terminates() {
        let ctx = Ctx::new(30);
        let x = ctx.parse("0.3").unwrap();
        // P_2(x) = (3x² - 1)/2
        let v = ferrers_p_order(&ctx, &ctx.real(2), &ctx.zero(), &x).unwrap();
        let want = (ctx.real(3) * ctx.parse("0.09").unwrap() - 1u32) / 2u32;
        assert!((v - want).abs() < 1e-28);
    }

    #[test]
    fn gaussian_from_ode() {
        let ctx = Ctx::new(30);
        let b = ctx.parse("-0.5").unwrap();
        let v = pcf_ode_ref(&ctx, &b, &ctx.real(3)).unwrap();
        let want = ctx.real(-2.25).exp();
        assert!((v.u - &want).abs() < 1e-28);
        assert!((v.up + want * 1.5f64).abs() < 1e-28);
    }

    #[test]
    fn distance_to_integers() {
        let ctx = Ctx::new(20);
        assert!(distance_to_nonneg_integer(&ctx.real(3.0000001)) < 1e-6);
        assert_eq!(distance_to_nonneg_integer(&ctx.real(-0.5)), 0.5);
    }
}
