//! Taylor models of the coefficient functions about `z = a`.
//!
//! `A_{2s}` and `B_{2s}` are analytic at the turning point but assembled
//! from pieces with square-root branch points there. They are sampled on a
//! ring in `w = (z - a)^{1/2}`, where every piece is single valued, and a
//! discrete Fourier transform recovers the coefficients of `w^k`. Only even
//! `k >= 0` may survive; odd and negative channels must sit at the noise
//! floor, otherwise a branch was picked inconsistently.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::expansion::{beta_magnitude, check_terms, coefficient_functions, guard_digits, PointGeom};
use crate::coeffs::{d_constants, horner_jet};
use crate::numerics::{Ctx, ExtComplex};
use crate::tpgeom::{zeta_series, Params, TaylorCenter};
use crate::{Error, Result};

/// A value and its z-derivative.
type JetPair = (ExtComplex, ExtComplex);

/// Polynomial models in `t = z - a` of `A_{2s}`, `B_{2s}` (`s < n`) and the
/// factor `((ζ² - α²)/(z² - a²))^{1/4}`, valid for `|t| <` the control radius.
#[derive(Clone, Debug)]
pub struct RingModel {
    pub center: Float,
    pub terms: usize,
    /// Radius of the sampling ring in `t`.
    pub ring_radius: f64,
    /// Number of samples.
    pub samples: usize,
    pub a: Vec<Vec<Float>>,
    pub b: Vec<Vec<Float>>,
    pub pref: Vec<Float>,
    /// Largest normalized odd or negative channel.
    pub noise: f64,
}

/// Samples needed so the series tail at the control radius falls below
/// `10^{-(digits+5)}`: a multiple of 8, at least 64.
fn sample_count(digits: u32, rc: f64, conv: f64) -> usize {
    let need = (digits as f64 + 5.0) / (conv / rc).log10();
    let n = ((need * 8.0 / 3.0).ceil() as usize).max(64);
    n.div_ceil(8) * 8
}

/// Square root continued from `prev` (principal when there is none).
fn continued_sqrt(v: &ExtComplex, prev: Option<&ExtComplex>) -> ExtComplex {
    let s = v.sqrt();
    match prev {
        Some(pv) if (&s - pv).abs() > (&s + pv).abs() => -s,
        _ => s,
    }
}

impl RingModel {
    /// Builds the model for `n` terms.
    pub fn build(p: &Params, n: usize) -> Result<RingModel> {
        check_terms(n)?;
        let rc = p.control_radius();
        if rc <= 0.0 {
            return Err(Error::Geometry("control radius must be positive".into()));
        }
        let rho = rc / 2.0;
        let conv = 1.0 - p.a.to_f64();
        let samples = sample_count(p.ctx.digits(), rc, conv);
        let kept = 3 * samples / 8;

        // digits for the 2^k amplification from ring to control radius,
        // and for cancellation inside the coefficient functions
        let low = Ctx::new(20);
        let mut mag: f64 = 1.0;
        for j in 0..16 {
            let th = std::f64::consts::TAU * (j as f64 + 0.5) / 16.0;
            let z = ExtComplex::new(low.real(p.a.to_f64() + rho * th.cos()), low.real(rho * th.sin()));
            mag = mag.max(beta_magnitude(p, &z));
        }
        let extra = (kept as f64 * (rc / rho).log10()).ceil() as u32 + guard_digits(mag, n) + 5;
        let work = p.ctx.boosted(extra);
        let wp = p.with_ctx(work);
        let bits = work.bits();

        let series = zeta_series(&wp, TaylorCenter::TurningPoint, rho)?;
        let q_coeffs: Vec<Float> = series.coeffs[1..].to_vec();
        let d = d_constants(&wp.alpha);
        let r_w = Float::with_val(bits, rho).sqrt();
        let pi = Float::with_val(bits, Constant::Pi);

        let channels = 2 * n + 1;
        let mut vals: Vec<Vec<ExtComplex>> = vec![Vec::with_capacity(samples); channels];
        let mut prev_x: Option<ExtComplex> = None;
        let mut prev_y: Option<ExtComplex> = None;
        let mut first: Option<(ExtComplex, ExtComplex)> = None;
        for j in 0..samples {
            let th = Float::with_val(bits, &pi * (2 * j + 1) as u32) / samples as u32;
            let w = ExtComplex::from_polar(&r_w, &th);
            let t = w.square();
            let z = &t + &wp.a;
            let sx = continued_sqrt(&(&z + &wp.a), prev_x.as_ref());
            let (q, _) = horner_jet(&q_coeffs, &t);
            let zeta = &(&q * &t) + &wp.alpha;
            let sy = continued_sqrt(&(&q * &(&zeta + &wp.alpha)), prev_y.as_ref());
            if first.is_none() {
                first = Some((sx.clone(), sy.clone()));
            }
            let x_root = &w * &sx;
            let y_root = &w * &sy;
            let beta = (&x_root * &(&z + &x_root)).recip();
            let betahat = (&y_root * &(&zeta + &y_root)).recip();
            let g = PointGeom { z, zeta, dzeta: ExtComplex::zero(bits), x_root, y_root, beta, betahat };
            let cf = coefficient_functions(&wp, &g, n, &d)?;
            for (s, jet) in cf.a.iter().enumerate() {
                vals[s].push(jet.v.clone());
            }
            for (s, jet) in cf.b.iter().enumerate() {
                vals[n + s].push(jet.v.clone());
            }
            vals[2 * n].push(cf.pref.v.clone());
            prev_x = Some(sx);
            prev_y = Some(sy);
        }
        // the continued roots must close up around the ring
        let (fx, fy) = first.expect("at least one sample");
        let wrap_x = continued_sqrt(&fx.square(), prev_x.as_ref());
        let wrap_y = continued_sqrt(&fy.square(), prev_y.as_ref());
        if (&wrap_x - &fx).abs() > (&wrap_x + &fx).abs() || (&wrap_y - &fy).abs() > (&wrap_y + &fy).abs() {
            return Err(Error::Inconsistency("square roots do not close up around the ring".into()));
        }

        // twiddles e^{-iπm/N}, m = 0..2N
        let roots: Vec<ExtComplex> = (0..2 * samples)
            .map(|m| {
                let th = -Float::with_val(bits, &pi * m as u32) / samples as u32;
                ExtComplex::from_polar(&Float::with_val(bits, 1), &th)
            })
            .collect();
        let lo = -((samples / 4) as i64);
        let hi = (3 * samples / 4) as i64;
        let threshold = 10f64.powi(12 - p.ctx.digits() as i32);
        let mut noise: f64 = 0.0;
        let mut polys: Vec<Vec<Float>> = Vec::with_capacity(channels);
        for ch in &vals {
            let scale = ch.iter().map(|v| v.abs().to_f64()).fold(0.0f64, f64::max).max(1e-300);
            let mut coeffs = Vec::with_capacity(kept);
            for k in lo..hi {
                let mut acc = ExtComplex::zero(bits);
                for (j, v) in ch.iter().enumerate() {
                    let m = (k * (2 * j as i64 + 1)).rem_euclid(2 * samples as i64) as usize;
                    acc = &acc + &(v * &roots[m]);
                }
                let acc = acc.div_real(&Float::with_val(bits, samples));
                if k < 0 || k % 2 == 1 {
                    noise = noise.max(acc.abs().to_f64() / scale);
                    continue;
                }
                // coefficient of t^{k/2}
                let rk = Float::with_val(bits, rho).pow((k / 2) as u32);
                noise = noise.max(acc.im.to_f64().abs() / scale);
                coeffs.push(Float::with_val(bits, &acc.re / rk));
            }
            polys.push(coeffs);
        }
        if noise > threshold {
            return Err(Error::Inconsistency(format!(
                "singular channels at {noise:.1e} exceed the noise threshold {threshold:.1e}"
            )));
        }
        let round = |v: &Vec<Float>| v.iter().map(|c| p.ctx.real(c)).collect::<Vec<_>>();
        Ok(RingModel {
            center: p.a.clone(),
            terms: n,
            ring_radius: rho,
            samples,
            a: polys[..n].iter().map(round).collect(),
            b: polys[n..2 * n].iter().map(round).collect(),
            pref: round(&polys[2 * n]),
            noise,
        })
    }

    /// Constant term of the `s`-th channel of 𝒜's coefficient functions.
    pub fn a_coeff(&self, s: usize, k: usize) -> Option<&Float> {
        self.a.get(s).and_then(|c| c.get(k))
    }

    pub fn b_coeff(&self, s: usize, k: usize) -> Option<&Float> {
        self.b.get(s).and_then(|c| c.get(k))
    }

    /// Values and z-derivatives of every channel at `z`.
    pub(crate) fn eval(&self, z: &ExtComplex) -> (Vec<JetPair>, Vec<JetPair>, JetPair) {
        let t = z - &self.center;
        let a = self.a.iter().map(|c| horner_jet(c, &t)).collect();
        let b = self.b.iter().map(|c| horner_jet(c, &t)).collect();
        (a, b, horner_jet(&self.pref, &t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_counts() {
        assert_eq!(sample_count(10, 0.08, 0.9), 64);
        let n = sample_count(40, 0.08, 0.5);
        assert_eq!(n % 8, 0);
        assert!((0.16f64).powf(3.0 * n as f64 / 8.0) < 1e-45);
    }
}
