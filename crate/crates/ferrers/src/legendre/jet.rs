use std::ops::{Add, Mul, Sub};

use rug::Float;

use crate::numerics::ExtComplex;

/// A value together with its derivative in z.
#[derive(Clone, Debug)]
pub struct Jet {
    pub v: ExtComplex,
    pub d: ExtComplex,
}

impl Jet {
    pub fn new(v: ExtComplex, d: ExtComplex) -> Self {
        Jet { v, d }
    }

    pub fn constant(v: ExtComplex) -> Self {
        let d = ExtComplex::zero(v.prec());
        Jet { v, d }
    }

    pub fn zero(prec: u32) -> Self {
        Jet::constant(ExtComplex::zero(prec))
    }

    pub fn scale(&self, r: &Float) -> Jet {
        Jet::new(self.v.scale(r), self.d.scale(r))
    }

    pub fn div(&self, o: &Jet) -> Jet {
        let v = &self.v / &o.v;
        let num = &(&self.d * &o.v) - &(&self.v * &o.d);
        let d = &num / &o.v.square();
        Jet::new(v, d)
    }

    pub fn sqrt(&self) -> Jet {
        let v = self.v.sqrt();
        let d = &self.d / &v.scale(&Float::with_val(v.prec(), 2));
        Jet::new(v, d)
    }
}

impl Add<&Jet> for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        Jet::new(&self.v + &o.v, &self.d + &o.d)
    }
}

impl Sub<&Jet> for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        Jet::new(&self.v - &o.v, &self.d - &o.d)
    }
}

impl Mul<&Jet> for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let d = &(&self.d * &o.v) + &(&self.v * &o.d);
        Jet::new(&self.v * &o.v, d)
    }
}
