//! Liouville–Green coefficient polynomials, generated in exact arithmetic.
//!
//! Three families share one recursion:
//!
//! | Family | Variable | Parameter | Role |
//! |--------|----------|-----------|------|
//! | `e_s` | β̂ | α² | parabolic cylinder function `U` |
//! | `ẽ_s` | β̂ | α² | its derivative `U'` |
//! | `E_s` | β | a² | the Legendre equation |
//!
//! With `G(x)` equal to `-dx/dξ` expressed in `x`, each family obeys
//!
//! ```text
//! X_{s+1} = ½ G ∂X_s + ½ ∫_0^x G Σ_{j=1}^{s-1} ∂X_j ∂X_{s-j} dx
//! ```
//!
//! from two seeds, and every member vanishes at `x = 0`. Tables up to
//! [`MAX_S`] are generated once and shared.
//!
//! The second Legendre seed is the one the recursion itself produces from the
//! first (`E_2 = ½ G ∂E_1`); the commonly quoted closed form carries `a²` in
//! place of `a⁴` in the leading term of its last factor, see
//! [`seeds::leg_e2_misprint`].

mod dconst;
mod poly;
pub mod seeds;

use std::fmt::Write as _;
use std::sync::OnceLock;

use rug::{Float, Rational};

pub use dconst::{d_check, d_constants, d_rational, DConstants};
pub use poly::{horner_jet, BiPoly};

use crate::numerics::ExtComplex;
use crate::tpgeom::{Params, TpPoint};
use crate::{Error, Result};

/// Largest index generated for the shared tables.
pub const MAX_S: usize = 7;

/// Which variable a coefficient polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    /// β, with coefficients rational in a².
    Beta,
    /// β̂, with coefficients rational in α̂² = α².
    BetaHat,
}

/// One coefficient `X_s` as an exact polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffPoly {
    pub var: Var,
    pub s: usize,
    pub poly: BiPoly,
}

impl CoeffPoly {
    pub fn eval_rational(&self, param: &Rational, x: &Rational) -> Rational {
        self.poly.eval_rational(param, x)
    }

    /// Value at a complex point, with the squared parameter given as a float.
    pub fn eval(&self, param: &Float, x: &ExtComplex) -> ExtComplex {
        horner_jet(&self.poly.at_param(param), x).0
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

/// Runs the shared recursion from two seeds up to index `max_s`.
pub fn recurse(seed1: &BiPoly, seed2: &BiPoly, g: &BiPoly, max_s: usize) -> Vec<BiPoly> {
    let mut out = vec![seed1.clone(), seed2.clone()];
    let half = Rational::from((1, 2));
    let mut derivs = vec![seed1.deriv(), seed2.deriv()];
    for s in 2..max_s {
        let mut next = g.mul(&derivs[s - 1]).scale(&half);
        let mut acc = BiPoly::zero();
        for j in 1..s {
            acc = acc.add(&derivs[j - 1].mul(&derivs[s - j - 1]));
        }
        next = next.add(&g.mul(&acc).integ().scale(&half));
        derivs.push(next.deriv());
        out.push(next);
    }
    out.truncate(max_s);
    out
}

fn wrap(var: Var, polys: Vec<BiPoly>) -> Vec<CoeffPoly> {
    polys.into_iter().enumerate().map(|(i, poly)| CoeffPoly { var, s: i + 1, poly }).collect()
}

fn check_max_s(max_s: usize) -> Result<()> {
    if max_s < 2 {
        return Err(Error::Domain(format!("max_s must be at least 2, got {max_s}")));
    }
    Ok(())
}

/// `e_1 ..= e_{max_s}` for `U`.
pub fn gen_pcf_e(max_s: usize) -> Result<Vec<CoeffPoly>> {
    check_max_s(max_s)?;
    Ok(wrap(Var::BetaHat, recurse(&seeds::e1(), &seeds::e2(), &seeds::g_pcf(), max_s)))
}

/// `ẽ_1 ..= ẽ_{max_s}` for `U'`.
pub fn gen_pcf_etilde(max_s: usize) -> Result<Vec<CoeffPoly>> {
    check_max_s(max_s)?;
    Ok(wrap(Var::BetaHat, recurse(&seeds::etilde1(), &seeds::etilde2(), &seeds::g_pcf(), max_s)))
}

/// `E_1 ..= E_{max_s}` for the Legendre equation.
pub fn gen_leg_e(max_s: usize) -> Result<Vec<CoeffPoly>> {
    check_max_s(max_s)?;
    Ok(wrap(Var::Beta, recurse(&seeds::leg_e1(), &seeds::leg_e2(), &seeds::g_leg(), max_s)))
}

/// The three shared tables, indexed from `s = 1`.
#[derive(Debug)]
pub struct CoeffTables {
    pub e: Vec<CoeffPoly>,
    pub etilde: Vec<CoeffPoly>,
    pub big_e: Vec<CoeffPoly>,
}

impl CoeffTables {
    pub fn max_s(&self) -> usize {
        self.e.len()
    }
}

/// Tables up to [`MAX_S`], generated on first use.
pub fn tables() -> &'static CoeffTables {
    static T: OnceLock<CoeffTables> = OnceLock::new();
    T.get_or_init(|| CoeffTables {
        e: gen_pcf_e(MAX_S).expect("MAX_S >= 2"),
        etilde: gen_pcf_etilde(MAX_S).expect("MAX_S >= 2"),
        big_e: gen_leg_e(MAX_S).expect("MAX_S >= 2"),
    })
}

/// Plain (`ℰ_s`, paired with `e_s`) or tilde (`ℰ̃_s`, paired with `ẽ_s`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Plain,
    Tilde,
}

/// `ℰ_s = E_s(β) + (-1)^s e_s(β̂)` or `ℰ̃_s = E_s(β) + (-1)^s ẽ_s(β̂)` at a point.
pub fn combined_e(p: &Params, tp: &TpPoint, s: usize, kind: Kind) -> Result<ExtComplex> {
    let t = tables();
    if s == 0 || s > t.max_s() {
        return Err(Error::Range(format!("coefficient index {s} outside 1..={}", t.max_s())));
    }
    let big = t.big_e[s - 1].eval(&p.a2, &tp.beta);
    let small = match kind {
        Kind::Plain => &t.e[s - 1],
        Kind::Tilde => &t.etilde[s - 1],
    }
    .eval(&p.alpha2, &tp.betahat);
    Ok(if s.is_multiple_of(2) { &big + &small } else { &big - &small })
}

/// Selects a table for [`dump`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    E,
    PcfE,
    PcfETilde,
}

/// Exact text form of a table, one monomial per line as `s k j num/den`:
/// the coefficient of `x^k p^j` in the `s`-th polynomial.
pub fn dump(table: Table, max_s: usize) -> Result<String> {
    let polys = match table {
        Table::E => gen_leg_e(max_s)?,
        Table::PcfE => gen_pcf_e(max_s)?,
        Table::PcfETilde => gen_pcf_etilde(max_s)?,
    };
    let mut out = String::new();
    for cp in &polys {
        for (k, row) in cp.poly.c.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    let _ = writeln!(out, "{} {} {} {}/{}", cp.s, k, j, v.numer(), v.denom());
                }
            }
        }
    }
    Ok(out)
}
