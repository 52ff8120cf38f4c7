//! First-order jets `a + bε` with `ε² = 0`.
//!
//! A mark variable `q` specialised to `1 + ε` turns every generating function
//! into a jet whose `ε`-part is the derivative in `q` at `q = 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Jet {
    pub value: Rational,
    pub deriv: Rational,
}

impl Jet {
    pub fn new(value: Rational, deriv: Rational) -> Self {
        Jet { value, deriv }
    }

    pub fn constant(value: Rational) -> Self {
        Jet {
            value,
            deriv: Rational::zero(),
        }
    }

    /// The infinitesimal `ε`.
    pub fn eps() -> Self {
        Jet {
            value: Rational::zero(),
            deriv: Rational::one(),
        }
    }

    /// `1 + ε`, the value substituted for a marked variable.
    pub fn marked() -> Self {
        Jet {
            value: Rational::one(),
            deriv: Rational::one(),
        }
    }

    /// `1/(a + bε) = 1/a − (b/a²)ε`; `None` when `a = 0`.
    pub fn inverse(&self) -> Option<Jet> {
        if self.value.is_zero() {
            return None;
        }
        let inv = self.value.recip();
        let deriv = -(&self.deriv * &inv * &inv);
        Some(Jet { value: inv, deriv })
    }

    pub fn pow(&self, mut e: u32) -> Jet {
        let mut acc = Jet::constant(Rational::one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero() && self.deriv.is_zero()
    }

    /// `self += a * b`, skipping work when either factor is a pure `ε` term
    /// multiplied by another (the product vanishes).
    pub fn add_mul(&mut self, a: &Jet, b: &Jet) {
        let av = !a.value.is_zero();
        let bv = !b.value.is_zero();
        if av && bv {
            self.value += &a.value * &b.value;
        }
        if av && !b.deriv.is_zero() {
            self.deriv += &a.value * &b.deriv;
        }
        if bv && !a.deriv.is_zero() {
            self.deriv += &a.deriv * &b.value;
        }
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.value, self.deriv)
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deriv.is_zero() {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} + {}ε", self.value, self.deriv)
        }
    }
}

impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        Jet {
            value: &self.value + &rhs.value,
            deriv: &self.deriv + &rhs.deriv,
        }
    }
}

impl<'a> Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        Jet {
            value: &self.value - &rhs.value,
            deriv: &self.deriv - &rhs.deriv,
        }
    }
}

impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let mut out = Jet::constant(Rational::zero());
        out.add_mul(self, rhs);
        out
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            value: -&self.value,
            deriv: -&self.deriv,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn j(a: i64, b: i64) -> Jet {
        Jet::new(int(a), int(b))
    }

    #[test]
    fn addition_and_product() {
        assert_eq!(&j(1, 2) + &j(3, 1), j(4, 3));
        assert_eq!(&j(1, 2) * &j(3, 1), j(3, 7));
        assert_eq!(&Jet::eps() * &Jet::eps(), j(0, 0));
    }

    #[test]
    fn inverse_is_first_order() {
        let inv = j(2, 3).inverse().unwrap();
        assert_eq!(inv, Jet::new(rat(1, 2), rat(-3, 4)));
        assert_eq!(&inv * &j(2, 3), j(1, 0));
        assert!(Jet::eps().inverse().is_none());
    }

    #[test]
    fn marked_power_is_binomial_first_order() {
        // (1+ε)^5 = 1 + 5ε
        assert_eq!(Jet::marked().pow(5), j(1, 5));
        assert_eq!(Jet::marked().pow(0), j(1, 0));
    }
}
