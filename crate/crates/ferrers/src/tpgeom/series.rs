//! Taylor series of ζ(z) about the turning point `z = a` and about the origin.

use rug::Float;

use super::Params;
use crate::numerics::{Ctx, ExtComplex};
use crate::{Error, Result};

/// Radius within which the origin series is used.
pub const ORIGIN_RADIUS: f64 = 0.5;

const MAX_TERMS: usize = 4000;

/// Expansion point of a ζ series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaylorCenter {
    Origin,
    /// `z = a`; points near `-a` are handled through ζ(-z) = -ζ(z).
    TurningPoint,
}

/// `ζ(z) = Σ_k coeffs[k] (z - center)^k`, truncated.
#[derive(Clone, Debug)]
pub struct ZetaSeries {
    pub center: Float,
    pub coeffs: Vec<Float>,
}

impl ZetaSeries {
    /// Value and derivative at `z`.
    pub fn eval(&self, z: &ExtComplex) -> (ExtComplex, ExtComplex) {
        let t = z - &self.center;
        crate::coeffs::horner_jet(&self.coeffs, &t)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Number of terms so that `(r/R)^N` falls below the working precision.
fn term_count(ctx: &Ctx, r: f64, conv_radius: f64) -> Result<usize> {
    let r = r.max(1e-3 * conv_radius);
    if r >= conv_radius {
        return Err(Error::Range("point outside the ζ series disk".into()));
    }
    let n = ((ctx.digits() as f64 + 5.0) * std::f64::consts::LN_10 / (conv_radius / r).ln()).ceil() as usize + 3;
    if n > MAX_TERMS {
        return Err(Error::Range(format!("ζ series would need {n} terms")));
    }
    Ok(n.max(8))
}

/// Series of ζ about `center`, with enough terms for points up to distance
/// `reach` from it.
pub fn zeta_series(p: &Params, center: TaylorCenter, reach: f64) -> Result<ZetaSeries> {
    let work = p.ctx.boosted(5);
    let wp = p.with_ctx(work);
    let coeffs = match (center, p.is_coalesced()) {
        (_, true) => {
            let n = term_count(&work, reach, 1.0)?;
            coalesced_coeffs(&wp, n)
        }
        (TaylorCenter::Origin, false) => {
            let n = term_count(&work, reach, 1.0)?;
            origin_coeffs(&wp, n)
        }
        (TaylorCenter::TurningPoint, false) => {
            let n = term_count(&work, reach, 1.0 - p.a.to_f64())?;
            turning_point_coeffs(&wp, n)
        }
    };
    let center = match center {
        TaylorCenter::Origin => p.ctx.zero(),
        TaylorCenter::TurningPoint => p.a.clone(),
    };
    Ok(ZetaSeries { center, coeffs: coeffs.into_iter().map(|c| p.ctx.real(c)).collect() })
}

/// ζ(z) from a Taylor series. Near the turning point the series is used
/// within the control radius of `±a`; about the origin within
/// [`ORIGIN_RADIUS`].
pub fn zeta_taylor(p: &Params, z: &ExtComplex, center: TaylorCenter) -> Result<ExtComplex> {
    match center {
        TaylorCenter::Origin => {
            let r = z.abs().to_f64();
            if r > ORIGIN_RADIUS {
                return Err(Error::Range(format!("|z| = {r} exceeds the origin series radius")));
            }
            Ok(zeta_series(p, center, r)?.eval(z).0)
        }
        TaylorCenter::TurningPoint => {
            let flip = z.re.is_sign_negative() && !p.is_coalesced();
            let w = if flip { -z.clone() } else { z.clone() };
            let r = (&w - &p.a).abs().to_f64();
            if r > p.control_radius() {
                return Err(Error::Range(format!("distance {r} from the turning point exceeds the control radius")));
            }
            let v = zeta_series(p, center, r)?.eval(&w).0;
            Ok(if flip { -v } else { v })
        }
    }
}

/// Coefficients about `z = a`.
///
/// With `t = z - a` and `ζ = α + t P(t)`, squaring `ζ'² (ζ² - α²) = f`
/// gives `D² P (2α + t P) = (2a + t)/(1 - (a+t)²)²` with `D = (tP)'`,
/// which is solved order by order.
fn turning_point_coeffs(p: &Params, n: usize) -> Vec<Float> {
    let bits = p.ctx.bits();
    let f = |v: f64| Float::with_val(bits, v);
    let one_m = Float::with_val(bits, 1 - &p.a2);
    // 1/(1 - a² - 2at - t²)
    let mut inv = vec![Float::new(bits); n];
    inv[0] = Float::with_val(bits, one_m.recip_ref());
    let two_a = Float::with_val(bits, &p.a * 2u32);
    for k in 1..n {
        let mut v = Float::with_val(bits, &two_a * &inv[k - 1]);
        if k >= 2 {
            v += &inv[k - 2];
        }
        inv[k] = v / &one_m;
    }
    let inv2 = convolve(&inv, &inv, n);
    let mut r = vec![Float::new(bits); n];
    for k in 0..n {
        r[k] = Float::with_val(bits, &two_a * &inv2[k]);
        if k >= 1 {
            r[k] += &inv2[k - 1];
        }
    }

    let two_alpha = Float::with_val(bits, &p.alpha * 2u32);
    let c1 = Float::with_val(bits, &r[0] / &two_alpha).cbrt();
    let c1sq = Float::with_val(bits, c1.square_ref());
    let mut pc = vec![c1.clone()];
    let mut d = vec![c1.clone()];
    let mut d2 = vec![c1sq.clone()];
    let mut p2 = vec![c1sq.clone()];
    let mut q = vec![Float::with_val(bits, &two_alpha * &c1)];
    let lead = Float::with_val(bits, &two_alpha * &c1sq);
    for m in 1..n {
        let mut d2_part = Float::new(bits);
        for i in 1..m {
            d2_part += Float::with_val(bits, &d[i] * &d[m - i]);
        }
        let q_part = p2[m - 1].clone();
        let mut known = Float::with_val(bits, &d2[0] * &q_part);
        known += Float::with_val(bits, &d2_part * &q[0]);
        for j in 1..m {
            known += Float::with_val(bits, &d2[j] * &q[m - j]);
        }
        let pm = (Float::with_val(bits, &r[m] - &known)) / Float::with_val(bits, &lead * f((2 * m + 3) as f64));
        let dm = Float::with_val(bits, &pm * (m as u32 + 1));
        d2.push(d2_part + Float::with_val(bits, &d[0] * &dm) * 2u32);
        q.push(q_part + Float::with_val(bits, &two_alpha * &pm));
        d.push(dm);
        pc.push(pm);
        let mut s = Float::new(bits);
        for i in 0..=m {
            s += Float::with_val(bits, &pc[i] * &pc[m - i]);
        }
        p2.push(s);
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(p.alpha.clone());
    out.extend(pc);
    out
}

/// Coefficients about `z = 0` for `a > 0`.
///
/// `ζ'² (ζ² - α²) = (z² - a²)/(1 - z²)²` is solved order by order from
/// `ζ'(0) = a/α`; only odd powers survive.
fn origin_coeffs(p: &Params, n: usize) -> Vec<Float> {
    let bits = p.ctx.bits();
    // c[k] multiplies z^k
    let mut c = vec![Float::new(bits); n + 1];
    let c1 = Float::with_val(bits, &p.a / &p.alpha);
    c[1] = c1.clone();
    let mut d = vec![c1.clone()];
    let mut d2 = vec![Float::with_val(bits, c1.square_ref())];
    let neg_alpha2 = -p.alpha2.clone();
    let lead = Float::with_val(bits, &neg_alpha2 * &c1) * 2u32;
    let s_coef = |c: &[Float], j: usize| -> Float {
        if j == 0 {
            return neg_alpha2.clone();
        }
        let mut s = Float::new(bits);
        for i in 1..j {
            s += Float::with_val(bits, &c[i] * &c[j - i]);
        }
        s
    };
    for m in 1..n {
        let fm = if m % 2 == 0 {
            let k = (m / 2) as u32;
            Float::with_val(bits, k) - Float::with_val(bits, &p.a2 * (k + 1))
        } else {
            Float::new(bits)
        };
        let mut d2_part = Float::new(bits);
        for i in 1..m {
            d2_part += Float::with_val(bits, &d[i] * &d[m - i]);
        }
        let mut known = Float::with_val(bits, &d2_part * &neg_alpha2);
        for (j, v) in d2.iter().enumerate() {
            known += Float::with_val(bits, v * s_coef(&c, m - j));
        }
        let next = (fm - known) / Float::with_val(bits, &lead * (m as u32 + 1));
        c[m + 1] = next;
        let dm = Float::with_val(bits, &c[m + 1] * (m as u32 + 1));
        d2.push(d2_part + Float::with_val(bits, &d[0] * &dm) * 2u32);
        d.push(dm);
    }
    c
}

/// Coefficients for `a = 0`, where `ζ = z (Σ_k z^{2k}/(k+1))^{1/2}`.
fn coalesced_coeffs(p: &Params, n: usize) -> Vec<Float> {
    let bits = p.ctx.bits();
    let m = n / 2 + 1;
    let g: Vec<Float> = (0..m).map(|k| Float::with_val(bits, 1) / (k as u32 + 1)).collect();
    // h² = g with h_0 = 1
    let mut h = vec![Float::with_val(bits, 1)];
    for k in 1..m {
        let mut acc = g[k].clone();
        for i in 1..k {
            acc -= Float::with_val(bits, &h[i] * &h[k - i]);
        }
        h.push(acc / 2u32);
    }
    let mut c = vec![Float::new(bits); 2 * m];
    for (k, hk) in h.into_iter().enumerate() {
        c[2 * k + 1] = hk;
    }
    c
}

fn convolve(a: &[Float], b: &[Float], n: usize) -> Vec<Float> {
    let bits = a[0].prec();
    (0..n)
        .map(|k| {
            let mut s = Float::new(bits);
            for i in 0..=k {
                s += Float::with_val(bits, &a[i] * &b[k - i]);
            }
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tpgeom::zeta_real;
    use rug::ops::Pow;

    fn params(a: &str) -> Params {
        Params::from_strs(Ctx::new(40), "20", a).unwrap()
    }

    #[test]
    fn turning_point_leading_coefficient() {
        let p = params("0.5");
        let s = zeta_series(&p, TaylorCenter::TurningPoint, 0.05).unwrap();
        assert!((s.coeffs[0].clone() - &p.alpha).abs() < 1e-38);
        // c₁³ = a/((1-a²)²α)
        let c13 = Float::with_val(p.ctx.bits(), s.coeffs[1].clone().pow(3u32));
        let expect = Float::with_val(p.ctx.bits(), &p.a / Float::with_val(p.ctx.bits(), 0.5625 * &p.alpha));
        assert!((c13 - expect).abs() < 1e-36);
    }

    #[test]
    fn origin_series_is_odd() {
        let p = params("0.3");
        let s = zeta_series(&p, TaylorCenter::Origin, 0.3).unwrap();
        for (k, c) in s.coeffs.iter().enumerate() {
            if k % 2 == 0 {
                assert!(c.clone().abs() < 1e-30, "k = {k}");
            }
        }
    }

    #[test]
    fn series_agree_with_root_finding() {
        for a in ["0.3", "0.5", "0.7"] {
            let p = params(a);
            let x = Float::with_val(p.ctx.bits(), &p.a + 0.03);
            let direct = zeta_real(&p.clone().with_switch_radius(0.0), &x).unwrap();
            let z = ExtComplex::from_real(x.clone());
            let tay = zeta_taylor(&p, &z, TaylorCenter::TurningPoint).unwrap();
            assert!((tay.re - &direct).abs() < 1e-33, "a = {a}");
            let y = p.ctx.parse("0.2").unwrap();
            let direct = zeta_real(&p, &y).unwrap();
            let tay = zeta_taylor(&p, &ExtComplex::from_real(y), TaylorCenter::Origin).unwrap();
            assert!((tay.re - &direct).abs() < 1e-33, "a = {a}");
        }
    }

    #[test]
    fn coalesced_series_matches_closed_form() {
        let p = params("0");
        let z = ExtComplex::new(p.ctx.parse("0.2").unwrap(), p.ctx.parse("0.1").unwrap());
        let tay = zeta_taylor(&p, &z, TaylorCenter::Origin).unwrap();
        let w = -z.square();
        let g = -(&w.ln_1p() / &z.square());
        let closed = &z * &g.sqrt();
        assert!((&tay - &closed).abs() < 1e-35);
    }

    #[test]
    fn outside_radius_rejected() {
        let p = params("0.5");
        let z = ExtComplex::from_real(p.ctx.parse("0.9").unwrap());
        assert!(zeta_taylor(&p, &z, TaylorCenter::TurningPoint).is_err());
        assert!(zeta_taylor(&p, &z, TaylorCenter::Origin).is_err());
    }
}
