//! Invariant suite behind `ferrers selftest`.
//!
//! Tolerances are written as `10^{k - digits}`, so the suite follows the
//! working precision. Checks on the asymptotic path are additionally bounded
//! below by the truncation error of the expansion.

use std::fmt::Write;

use ferrers::coeffs::{d_rational, seeds, tables};
use ferrers::legendre::{envelope, q_zero, AbMethod, Evaluator};
use ferrers::numerics::{log_gamma, quad_adaptive, Ctx};
use ferrers::oracle::{
    ferrers_p_ode_ref, ferrers_p_prime_ref, ferrers_p_ref, ferrers_q_prime_ref, ferrers_q_ref, zeta_bisect_ref,
};
use ferrers::pcf::{pcf_connection_check, pcf_eval, pcf_eval_boosted};
use ferrers::tpgeom::{alpha_from_a, round_trip_residual, zeta_at_real, Params};
use rug::{Float, Rational};

/// Degree of the Legendre checks, and the `b` it induces at `a = 0.5`.
const NU: &str = "50";
const B_LEGENDRE: &str = "-6.765717";

type Outcome = ferrers::Result<(bool, String)>;

struct Check {
    module: &'static str,
    name: &'static str,
    run: fn(&Ctx) -> Outcome,
}

pub struct CheckResult {
    pub module: &'static str,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn failed(&self) -> Vec<String> {
        self.results.iter().filter(|r| !r.pass).map(|r| format!("{}.{}", r.module, r.name)).collect()
    }

    pub fn table(&self) -> String {
        let width = self.results.iter().map(|r| r.module.len() + r.name.len() + 1).max().unwrap_or(0);
        let mut out = String::new();
        for r in &self.results {
            let id = format!("{}.{}", r.module, r.name);
            let tag = if r.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{id:<width$}  {tag}  {}", r.detail);
        }
        out
    }
}

const CHECKS: &[Check] = &[
    Check { module: "numerics", name: "log_gamma_half", run: log_gamma_half },
    Check { module: "numerics", name: "quadrature_cubic", run: quadrature_cubic },
    Check { module: "tpgeom", name: "alpha_closed_form", run: alpha_closed_form },
    Check { module: "tpgeom", name: "zeta_round_trip", run: zeta_round_trip },
    Check { module: "coeffs", name: "seeds_reproduced", run: seeds_reproduced },
    Check { module: "coeffs", name: "vanish_at_origin", run: vanish_at_origin },
    Check { module: "coeffs", name: "second_seed_from_first", run: second_seed_from_first },
    Check { module: "coeffs", name: "d_constants_at_zero", run: d_constants_at_zero },
    Check { module: "pcf", name: "gaussian", run: pcf_gaussian },
    Check { module: "pcf", name: "wronskians", run: pcf_wronskians },
    Check { module: "pcf", name: "cancellation_guard", run: pcf_cancellation_guard },
    Check { module: "oracle", name: "wronskian", run: oracle_wronskian },
    Check { module: "oracle", name: "series_vs_ode", run: oracle_series_vs_ode },
    Check { module: "legendre", name: "p_vs_reference", run: legendre_p_vs_reference },
    Check { module: "legendre", name: "turning_point_continuity", run: legendre_continuity },
    Check { module: "legendre", name: "q_zero", run: legendre_q_zero },
];

pub fn run(ctx: &Ctx, filter: Option<&str>) -> Report {
    let selected = CHECKS.iter().filter(|c| match filter {
        Some(f) => c.module.contains(f) || c.name.contains(f),
        None => true,
    });
    let results = selected
        .map(|c| {
            let (pass, detail) = match (c.run)(ctx) {
                Ok(r) => r,
                Err(e) => (false, e.to_string()),
            };
            CheckResult { module: c.module, name: c.name, pass, detail }
        })
        .collect();
    Report { results }
}

fn tol(ctx: &Ctx, k: i32) -> f64 {
    10f64.powi(k - ctx.digits() as i32)
}

fn rel(a: &Float, b: &Float) -> f64 {
    (Float::with_val(a.prec(), a - b) / b).abs().to_f64()
}

fn within(err: f64, bound: f64) -> Outcome {
    Ok((err <= bound, format!("{err:.2e} <= {bound:.0e}")))
}

fn legendre_params(ctx: &Ctx, a: &str) -> ferrers::Result<Params> {
    Params::from_strs(*ctx, NU, a)
}

fn log_gamma_half(ctx: &Ctx) -> Outcome {
    let v = log_gamma(ctx, &ctx.ratio(1, 2))?;
    let want = ctx.pi().ln() / 2u32;
    within(rel(&v, &want), tol(ctx, 3))
}

fn quadrature_cubic(ctx: &Ctx) -> Outcome {
    let bits = ctx.bits();
    let v = quad_adaptive(
        ctx,
        |x| Float::with_val(bits, x.square_ref()) * x,
        &ctx.zero(),
        &ctx.one(),
        &ctx.tenth_power(3 - ctx.digits() as i32),
    )?;
    within(rel(&v, &ctx.ratio(1, 4)), tol(ctx, 5))
}

fn alpha_closed_form(ctx: &Ctx) -> Outcome {
    // a = 0.8 gives α² = 0.8
    let a = ctx.parse("0.8")?;
    let al = alpha_from_a(ctx, &a)?;
    within(rel(&Float::with_val(ctx.bits(), al.square_ref()), &a), tol(ctx, 3))
}

fn zeta_round_trip(ctx: &Ctx) -> Outcome {
    let p = legendre_params(ctx, "0.5")?;
    let x = ctx.parse("0.7")?;
    let tp = zeta_at_real(&p, &x)?;
    let res = round_trip_residual(&p, &tp).to_f64();
    let gap = rel(&tp.zeta.re, &zeta_bisect_ref(&p, &x)?);
    within(res.max(gap), tol(ctx, 12))
}

fn seeds_reproduced(_: &Ctx) -> Outcome {
    let t = tables();
    let ok = t.e[0].poly == seeds::e1()
        && t.e[1].poly == seeds::e2()
        && t.etilde[0].poly == seeds::etilde1()
        && t.etilde[1].poly == seeds::etilde2()
        && t.big_e[0].poly == seeds::leg_e1()
        && t.big_e[1].poly == seeds::leg_e2();
    Ok((ok, "first two members of each table".into()))
}

fn vanish_at_origin(_: &Ctx) -> Outcome {
    let t = tables();
    let zero = Rational::new();
    let params = [Rational::new(), Rational::from((1, 3)), Rational::from(2)];
    let all = [&t.e, &t.etilde, &t.big_e];
    let count: usize = all.iter().map(|f| f.len()).sum();
    let ok = all.iter().all(|fam| fam.iter().all(|cp| params.iter().all(|p| cp.eval_rational(p, &zero) == 0)));
    Ok((ok, format!("{count} polynomials, exact")))
}

fn second_seed_from_first(_: &Ctx) -> Outcome {
    let half = Rational::from((1, 2));
    let derived = seeds::g_leg().mul(&seeds::leg_e1().deriv()).scale(&half);
    Ok((derived == seeds::leg_e2(), "E_2 = G dE_1/2".into()))
}

fn d_constants_at_zero(_: &Ctx) -> Outcome {
    let z = Rational::new();
    let d1 = d_rational(1, &z)?;
    let d3 = d_rational(3, &z)?;
    let ok = d1 == (-3, 32) && d3 == (3, 1024);
    Ok((ok, format!("d1 = {d1}, d3 = {d3}")))
}

fn pcf_gaussian(ctx: &Ctx) -> Outcome {
    let v = pcf_eval(ctx, &ctx.ratio(-1, 2), &ctx.real(2))?;
    within(rel(&v.u, &ctx.real(-1).exp()), tol(ctx, 3))
}

fn pcf_wronskians(ctx: &Ctx) -> Outcome {
    let mut worst = 0f64;
    for (b, x) in [("0.3", "0.7"), (B_LEGENDRE, "1.3"), ("-2.5", "-3.1")] {
        let r = pcf_connection_check(ctx, &ctx.parse(b)?, &ctx.parse(x)?)?;
        worst = worst.max(r.to_f64());
    }
    within(worst, tol(ctx, 6))
}

/// `U(b, 10)` at the Legendre parameter loses over twenty digits to
/// cancellation in the power series. The unboosted evaluator must either
/// refuse or keep the eight digits it promises.
fn pcf_cancellation_guard(ctx: &Ctx) -> Outcome {
    let b = ctx.parse(B_LEGENDRE)?;
    let x = ctx.real(10);
    let v = pcf_eval(ctx, &b, &x)?;
    let wide = pcf_eval_boosted(&ctx.boosted(20), &b, &x, false)?;
    within(rel(&v.u, &wide.u), 1e-8)
}

fn oracle_wronskian(ctx: &Ctx) -> Outcome {
    let p = legendre_params(ctx, "0.5")?;
    let bits = ctx.bits();
    let x = ctx.parse("0.3")?;
    let w = Float::with_val(bits, ferrers_p_ref(&p, &x)? * ferrers_q_prime_ref(&p, &x)?)
        - Float::with_val(bits, ferrers_p_prime_ref(&p, &x)? * ferrers_q_ref(&p, &x)?);
    let w = w * (1 - Float::with_val(bits, x.square_ref()));
    // Γ(ν-μ+1)/Γ(ν+μ+1)
    let lg = |v: Float| log_gamma(ctx, &(v + 1u32));
    let want = (lg(Float::with_val(bits, &p.nu - &p.mu))? - lg(Float::with_val(bits, &p.nu + &p.mu))?).exp();
    within(rel(&w, &want), tol(ctx, 10))
}

fn oracle_series_vs_ode(ctx: &Ctx) -> Outcome {
    let p = legendre_params(ctx, "0.5")?;
    let x = ctx.parse("0.3")?;
    within(rel(&ferrers_p_ref(&p, &x)?, &ferrers_p_ode_ref(&p, &x)?), tol(ctx, 15))
}

/// Error bound for the four-term expansion at ν = 50.
fn asymptotic_tol(ctx: &Ctx, floor: f64) -> f64 {
    floor.max(tol(ctx, 8))
}

fn legendre_p_vs_reference(ctx: &Ctx) -> Outcome {
    let p = legendre_params(ctx, "0.5")?;
    let x = ctx.parse("0.2")?;
    let v = Evaluator::new(&p, 4)?.p(&x)?;
    let r = ferrers_p_ref(&p, &x)?;
    let m = envelope(&p, &x)?.m;
    let err = (Float::with_val(ctx.bits(), &v - &r).abs() / m).to_f64();
    within(err, asymptotic_tol(ctx, 1e-13))
}

fn legendre_continuity(ctx: &Ctx) -> Outcome {
    let mut worst = 0f64;
    for a in ["0.1", "0.5"] {
        let p = legendre_params(ctx, a)?;
        let ev = Evaluator::new(&p, 4)?;
        for off in [-0.079, 0.079] {
            let x = Float::with_val(ctx.bits(), &p.a + off);
            let t = ev.p_using(&x, AbMethod::Taylor)?;
            let e = ev.p_using(&x, AbMethod::Expansion)?;
            worst = worst.max(rel(&t, &e));
        }
    }
    within(worst, asymptotic_tol(ctx, 1e-12))
}

fn legendre_q_zero(ctx: &Ctx) -> Outcome {
    let p = legendre_params(ctx, "0.5")?;
    match q_zero(&p)? {
        Some(q) => {
            let q = q.to_f64();
            Ok(((q - 0.42542).abs() <= 5e-5, format!("q = {q:.6}")))
        }
        None => Ok((false, "no zero found".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut ids: Vec<String> = CHECKS.iter().map(|c| format!("{}.{}", c.module, c.name)).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), CHECKS.len());
    }

    #[test]
    fn filter_selects_by_module() {
        let ctx = Ctx::new(30);
        let r = run(&ctx, Some("coeffs"));
        assert_eq!(r.results.len(), 4);
        assert!(r.results.iter().all(|c| c.module == "coeffs" && c.pass));
    }
}
