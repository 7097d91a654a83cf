use rug::{Float, Rational};

use crate::numerics::ExtComplex;

/// Dense bivariate polynomial with exact rational coefficients.
///
/// `c[k][j]` multiplies `x^k p^j`, where `x` is the main variable (β or β̂)
/// and `p` the squared parameter (a² or α²).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    pub c: Vec<Vec<Rational>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { c: Vec::new() }
    }

    /// Builds from `(k, j, num, den)` monomials.
    pub fn from_terms(terms: &[(usize, usize, i64, i64)]) -> Self {
        let mut p = BiPoly::zero();
        for &(k, j, n, d) in terms {
            p.add_term(k, j, Rational::from((n, d)));
        }
        p.trim();
        p
    }

    pub fn add_term(&mut self, k: usize, j: usize, v: Rational) {
        if self.c.len() <= k {
            self.c.resize(k + 1, Vec::new());
        }
        let row = &mut self.c[k];
        if row.len() <= j {
            row.resize(j + 1, Rational::new());
        }
        row[j] += v;
    }

    fn trim(&mut self) {
        for row in &mut self.c {
            while row.last().is_some_and(|v| *v == 0) {
                row.pop();
            }
        }
        while self.c.last().is_some_and(|r| r.is_empty()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|r| r.iter().all(|v| *v == 0))
    }

    /// Degree in the main variable (`None` for the zero polynomial).
    pub fn degree(&self) -> Option<usize> {
        let mut t = self.clone();
        t.trim();
        t.c.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize, j: usize) -> Rational {
        self.c.get(k).and_then(|r| r.get(j)).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (k, row) in o.c.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    r.add_term(k, j, v.clone());
                }
            }
        }
        r.trim();
        r
    }

    pub fn scale(&self, s: &Rational) -> BiPoly {
        let mut r = self.clone();
        for row in &mut r.c {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        r.trim();
        r
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut r = BiPoly::zero();
        for (k1, r1) in self.c.iter().enumerate() {
            for (j1, v1) in r1.iter().enumerate() {
                if *v1 == 0 {
                    continue;
                }
                for (k2, r2) in o.c.iter().enumerate() {
                    for (j2, v2) in r2.iter().enumerate() {
                        if *v2 != 0 {
                            r.add_term(k1 + k2, j1 + j2, Rational::from(v1 * v2));
                        }
                    }
                }
            }
        }
        r.trim();
        r
    }

    /// ∂/∂x.
    pub fn deriv(&self) -> BiPoly {
        let mut r = BiPoly::zero();
        for (k, row) in self.c.iter().enumerate().skip(1) {
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    r.add_term(k - 1, j, Rational::from(v * k as u32));
                }
            }
        }
        r.trim();
        r
    }

    /// `∫_0^x` in the main variable.
    pub fn integ(&self) -> BiPoly {
        let mut r = BiPoly::zero();
        for (k, row) in self.c.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    r.add_term(k + 1, j, Rational::from(v / (k as u32 + 1)));
                }
            }
        }
        r.trim();
        r
    }

    /// Exact value at rational `(x, p)`.
    pub fn eval_rational(&self, p: &Rational, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for row in self.c.iter().rev() {
            let mut ck = Rational::new();
            for v in row.iter().rev() {
                ck *= p;
                ck += v;
            }
            acc *= x;
            acc += ck;
        }
        acc
    }

    /// Substitutes the parameter, leaving a polynomial in `x` with float
    /// coefficients.
    pub fn at_param(&self, p: &Float) -> Vec<Float> {
        let prec = p.prec();
        self.c
            .iter()
            .map(|row| {
                let mut ck = Float::new(prec);
                for v in row.iter().rev() {
                    ck *= p;
                    ck += v;
                }
                ck
            })
            .collect()
    }
}

/// Horner evaluation of a float-coefficient polynomial at a complex point,
/// together with its derivative.
pub fn horner_jet(c: &[Float], x: &ExtComplex) -> (ExtComplex, ExtComplex) {
    let prec = x.prec();
    let mut v = ExtComplex::zero(prec);
    let mut d = ExtComplex::zero(prec);
    for ck in c.iter().rev() {
        d = &(&d * x) + &v;
        v = &(&v * x) + ck;
    }
    (v, d)
}
