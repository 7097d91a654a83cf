//! Closed-form seed coefficients and the factors `G` of the recursion.
//!
//! Polynomials are in `x` (β or β̂) with coefficients in `p` (a² or α²).

use rug::Rational;

use super::BiPoly;

fn bp(terms: &[(usize, usize, i64, i64)]) -> BiPoly {
    BiPoly::from_terms(terms)
}

fn x() -> BiPoly {
    bp(&[(1, 0, 1, 1)])
}

/// `p x + 2`
fn px_plus_2() -> BiPoly {
    bp(&[(1, 1, 1, 1), (0, 0, 2, 1)])
}

/// `p(1-p) x² + 2(1-p) x - 1`
fn leg_quadratic() -> BiPoly {
    bp(&[(2, 1, 1, 1), (2, 2, -1, 1), (1, 0, 2, 1), (1, 1, -2, 1), (0, 0, -1, 1)])
}

/// `G = x²(p x + 2)²` for the comparison equation.
pub fn g_pcf() -> BiPoly {
    let f = x().mul(&px_plus_2());
    f.mul(&f)
}

/// `G = x(p x + 2)(p(1-p)x² + 2(1-p)x - 1)` for the Legendre equation.
pub fn g_leg() -> BiPoly {
    x().mul(&px_plus_2()).mul(&leg_quadratic())
}

/// `e_1 = x(5p²x² + 15px + 9)/24`
pub fn e1() -> BiPoly {
    x().mul(&bp(&[(2, 2, 5, 1), (1, 1, 15, 1), (0, 0, 9, 1)])).scale(&Rational::from((1, 24)))
}

/// `e_2 = x²(px+2)²(5p²x² + 10px + 3)/16`
pub fn e2() -> BiPoly {
    g_pcf().mul(&bp(&[(2, 2, 5, 1), (1, 1, 10, 1), (0, 0, 3, 1)])).scale(&Rational::from((1, 16)))
}

/// `ẽ_1 = -x(7p²x² + 21px + 15)/24`
pub fn etilde1() -> BiPoly {
    x().mul(&bp(&[(2, 2, 7, 1), (1, 1, 21, 1), (0, 0, 15, 1)])).scale(&Rational::from((-1, 24)))
}

/// `ẽ_2 = -x²(px+2)²(7p²x² + 14px + 5)/16`
pub fn etilde2() -> BiPoly {
    g_pcf().mul(&bp(&[(2, 2, 7, 1), (1, 1, 14, 1), (0, 0, 5, 1)])).scale(&Rational::from((-1, 16)))
}

/// `E_1 = x(5p²(1-p)x² + 15p(1-p)x - 12p + 9)/24`
pub fn leg_e1() -> BiPoly {
    x().mul(&bp(&[(2, 2, 5, 1), (2, 3, -5, 1), (1, 1, 15, 1), (1, 2, -15, 1), (0, 1, -12, 1), (0, 0, 9, 1)]))
        .scale(&Rational::from((1, 24)))
}

/// `E_2 = G (5p²(1-p)x² + 10p(1-p)x - 4p + 3)/16`
pub fn leg_e2() -> BiPoly {
    g_leg()
        .mul(&bp(&[(2, 2, 5, 1), (2, 3, -5, 1), (1, 1, 10, 1), (1, 2, -10, 1), (0, 1, -4, 1), (0, 0, 3, 1)]))
        .scale(&Rational::from((1, 16)))
}

/// The widely reproduced form of `E_2`, whose last factor starts with
/// `5p(1-p)x²` instead of `5p²(1-p)x²`. It differs from [`leg_e2`] by
/// `5p(1-p)²x² G / 16` and does not satisfy the recursion.
pub fn leg_e2_misprint() -> BiPoly {
    g_leg()
        .mul(&bp(&[(2, 1, 5, 1), (2, 2, -5, 1), (1, 1, 10, 1), (1, 2, -10, 1), (0, 1, -4, 1), (0, 0, 3, 1)]))
        .scale(&Rational::from((1, 16)))
}
