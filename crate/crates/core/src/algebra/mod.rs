//! Exact coefficient arithmetic: rationals, first-order jets, and truncated
//! bivariate power series over either.

pub mod jet;
pub mod rational;
pub mod series;
pub mod sum;

use std::fmt;

use num_traits::{One, Zero};

pub use jet::Jet;
pub use rational::Rational;
pub use series::TruncatedSeries;
pub use sum::bounded_sum;

/// Coefficient ring for [`TruncatedSeries`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn sub_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse, `None` when the element is not a unit.
    fn inverse(&self) -> Option<Self>;
    /// Multiplies by a rational scalar.
    fn scale(&self, r: &Rational) -> Self;

    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            self.add_assign_ref(&a.mul_ref(b));
        }
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if !Zero::is_zero(a) && !Zero::is_zero(b) {
            *self += a * b;
        }
    }
}

impl Coeff for Jet {
    fn zero() -> Self {
        Jet::constant(<Rational as Zero>::zero())
    }
    fn one() -> Self {
        Jet::constant(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        Jet::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        Jet::constant(r)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        self.value += &rhs.value;
        self.deriv += &rhs.deriv;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        self.value -= &rhs.value;
        self.deriv -= &rhs.deriv;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        Jet::inverse(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        Jet::new(&self.value * r, &self.deriv * r)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        Jet::add_mul(self, a, b)
    }
}
