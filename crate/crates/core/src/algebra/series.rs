//! Truncated bivariate power series.
//!
//! A `TruncatedSeries<C>` stores `f(x, y) mod (x^{xcap+1}, y^{ycap+1})` densely.
//! The ideal is rectangular: bargraph series need deep `x` with shallow `y`,
//! set-partition series the opposite, and a total-degree cut would waste one
//! or the other.
//!
//! Binary operators on references panic on a cap mismatch; the `try_*`
//! methods return [`Error::CapMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::jet::Jet;
use super::rational::{int, Rational};
use super::Coeff;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    xcap: usize,
    ycap: usize,
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn zero(xcap: usize, ycap: usize) -> Self {
        TruncatedSeries {
            xcap,
            ycap,
            coeffs: vec![C::zero(); (xcap + 1) * (ycap + 1)],
        }
    }

    pub fn one(xcap: usize, ycap: usize) -> Self {
        Self::constant(xcap, ycap, C::one())
    }

    pub fn constant(xcap: usize, ycap: usize, c: C) -> Self {
        Self::monomial(xcap, ycap, 0, 0, c)
    }

    /// `c x^i y^j`, or zero when the monomial lies beyond the caps.
    pub fn monomial(xcap: usize, ycap: usize, i: usize, j: usize, c: C) -> Self {
        let mut s = Self::zero(xcap, ycap);
        if i <= xcap && j <= ycap {
            s.coeffs[i * (ycap + 1) + j] = c;
        }
        s
    }

    pub fn x(xcap: usize, ycap: usize) -> Self {
        Self::monomial(xcap, ycap, 1, 0, C::one())
    }

    pub fn y(xcap: usize, ycap: usize) -> Self {
        Self::monomial(xcap, ycap, 0, 1, C::one())
    }

    /// `x^i y^j` with unit coefficient.
    pub fn xy_pow(xcap: usize, ycap: usize, i: usize, j: usize) -> Self {
        Self::monomial(xcap, ycap, i, j, C::one())
    }

    pub fn from_fn(xcap: usize, ycap: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let mut coeffs = Vec::with_capacity((xcap + 1) * (ycap + 1));
        for i in 0..=xcap {
            for j in 0..=ycap {
                coeffs.push(f(i, j));
            }
        }
        TruncatedSeries { xcap, ycap, coeffs }
    }

    pub fn xcap(&self) -> usize {
        self.xcap
    }

    pub fn ycap(&self) -> usize {
        self.ycap
    }

    pub fn caps(&self) -> (usize, usize) {
        (self.xcap, self.ycap)
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.ycap + 1) + j
    }

    /// Coefficient of `x^i y^j`. Panics outside the caps.
    pub fn coeff(&self, i: usize, j: usize) -> &C {
        assert!(
            i <= self.xcap && j <= self.ycap,
            "coefficient x^{i} y^{j} lies beyond caps ({}, {})",
            self.xcap,
            self.ycap
        );
        &self.coeffs[self.idx(i, j)]
    }

    /// Coefficient of `x^i y^j`, or `None` beyond the caps.
    pub fn get(&self, i: usize, j: usize) -> Option<&C> {
        (i <= self.xcap && j <= self.ycap).then(|| &self.coeffs[self.idx(i, j)])
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        let k = self.idx(i, j);
        self.coeffs[k] = c;
    }

    pub fn coeff_mut(&mut self, i: usize, j: usize) -> &mut C {
        let k = self.idx(i, j);
        &mut self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero terms as `(i, j, &c)` in increasing `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &C)> + '_ {
        let w = self.ycap + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (k / w, k % w, c))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Smallest `i` with a nonzero coefficient of some `x^i y^j`.
    pub fn x_order(&self) -> Option<usize> {
        self.terms().next().map(|(i, _, _)| i)
    }

    fn check_caps(&self, other: &Self) -> Result<()> {
        if self.caps() == other.caps() {
            Ok(())
        } else {
            Err(Error::CapMismatch(self.xcap, self.ycap, other.xcap, other.ycap))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_caps(other)?;
        let mut out = self.clone();
        for (c, d) in out.coeffs.iter_mut().zip(&other.coeffs) {
            c.add_assign_ref(d);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_caps(other)?;
        let mut out = self.clone();
        for (c, d) in out.coeffs.iter_mut().zip(&other.coeffs) {
            c.sub_assign_ref(d);
        }
        Ok(out)
    }

    /// Cauchy product truncated at the caps.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_caps(other)?;
        // Drive the outer loop with the sparser factor.
        let (sparse, dense) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Self::zero(self.xcap, self.ycap);
        for (i1, j1, a) in sparse.terms() {
            for i2 in 0..=(self.xcap - i1) {
                for j2 in 0..=(self.ycap - j1) {
                    let b = &dense.coeffs[dense.idx(i2, j2)];
                    if !b.is_zero() {
                        let k = out.idx(i1 + i2, j1 + j2);
                        out.coeffs[k].add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Two-sided inverse up to the caps, by order-by-order recurrence.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(0, 0).inverse().ok_or(Error::NotInvertible)?;
        let rest: Vec<(usize, usize, C)> = self
            .terms()
            .filter(|&(i, j, _)| (i, j) != (0, 0))
            .map(|(i, j, c)| (i, j, c.clone()))
            .collect();
        let mut out = Self::zero(self.xcap, self.ycap);
        for i in 0..=self.xcap {
            for j in 0..=self.ycap {
                let mut acc = if (i, j) == (0, 0) { C::one() } else { C::zero() };
                for (p, r, a) in &rest {
                    if *p <= i && *r <= j {
                        let prev = &out.coeffs[out.idx(i - p, j - r)];
                        if !prev.is_zero() {
                            acc.sub_assign_ref(&a.mul_ref(prev));
                        }
                    }
                }
                let k = out.idx(i, j);
                out.coeffs[k] = acc.mul_ref(&c0);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.xcap, self.ycap);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        TruncatedSeries {
            xcap: self.xcap,
            ycap: self.ycap,
            coeffs: self.coeffs.iter().map(|d| d.mul_ref(c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        TruncatedSeries {
            xcap: self.xcap,
            ycap: self.ycap,
            coeffs: self.coeffs.iter().map(|d| d.scale(r)).collect(),
        }
    }

    /// Multiplication by `x^i y^j`.
    pub fn shift(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.xcap, self.ycap);
        for (p, r, c) in self.terms() {
            if p + i <= self.xcap && r + j <= self.ycap {
                out.set(p + i, r + j, c.clone());
            }
        }
        out
    }

    /// Exact division by `x^i y^j`. The result has caps reduced by `(i, j)`
    /// since the top coefficients of the quotient are unknown.
    pub fn div_monomial(&self, i: usize, j: usize) -> Result<Self> {
        if i > self.xcap || j > self.ycap {
            return Err(Error::NotDivisible(i, j));
        }
        if self.terms().any(|(p, r, _)| p < i || r < j) {
            return Err(Error::NotDivisible(i, j));
        }
        Ok(Self::from_fn(self.xcap - i, self.ycap - j, |p, r| {
            self.coeff(p + i, r + j).clone()
        }))
    }

    /// Re-truncates to smaller caps.
    pub fn truncate(&self, xcap: usize, ycap: usize) -> Self {
        assert!(xcap <= self.xcap && ycap <= self.ycap, "truncate can only shrink caps");
        Self::from_fn(xcap, ycap, |i, j| self.coeff(i, j).clone())
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            xcap: self.xcap,
            ycap: self.ycap,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Per-`x^i` coefficient sums over all tracked `y` powers: the `y = 1`
    /// specialisation of each `x`-slice.
    pub fn sum_over_y(&self) -> Vec<C> {
        (0..=self.xcap)
            .map(|i| {
                let mut acc = C::zero();
                for j in 0..=self.ycap {
                    acc.add_assign_ref(self.coeff(i, j));
                }
                acc
            })
            .collect()
    }

    /// Substitutes `x = 1`, yielding a series in `y` alone (`xcap = 0`).
    /// Exact only when every tracked `y^j` slice is a polynomial in `x` of
    /// degree at most `xcap`; callers choose caps to guarantee that.
    pub fn substitute_x_one(&self) -> Self {
        let mut out = Self::zero(0, self.ycap);
        for (_, j, c) in self.terms() {
            out.coeffs[j].add_assign_ref(c);
        }
        out
    }

    /// Rewrites a series in `y` alone (`xcap = 0`) as a series in `x` alone.
    pub fn y_to_x(&self) -> Self {
        assert_eq!(self.xcap, 0, "y_to_x expects a univariate series in y");
        Self::from_fn(self.ycap, 0, |i, _| self.coeff(0, i).clone())
    }

    pub fn derivative_x(&self) -> Self {
        let mut out = Self::zero(self.xcap, self.ycap);
        for (i, j, c) in self.terms() {
            if i > 0 {
                out.set(i - 1, j, c.scale(&int(i as i64)));
            }
        }
        out
    }

    pub fn derivative_y(&self) -> Self {
        let mut out = Self::zero(self.xcap, self.ycap);
        for (i, j, c) in self.terms() {
            if j > 0 {
                out.set(i, j - 1, c.scale(&int(j as i64)));
            }
        }
        out
    }

    /// `∫_0^x f`, dropping the term pushed past `xcap`.
    pub fn integral_x(&self) -> Self {
        let mut out = Self::zero(self.xcap, self.ycap);
        for (i, j, c) in self.terms() {
            if i < self.xcap {
                out.set(i + 1, j, c.scale(&Rational::new(1.into(), ((i + 1) as i64).into())));
            }
        }
        out
    }

    /// First `(i, j)` (lexicographic) where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Result<Option<(usize, usize)>> {
        self.check_caps(other)?;
        let w = self.ycap + 1;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
            .map(|k| (k / w, k % w)))
    }
}

impl TruncatedSeries<Jet> {
    pub fn value_part(&self) -> TruncatedSeries<Rational> {
        self.map(|c| c.value.clone())
    }

    pub fn deriv_part(&self) -> TruncatedSeries<Rational> {
        self.map(|c| c.deriv.clone())
    }

    pub fn from_rational_series(s: &TruncatedSeries<Rational>) -> Self {
        s.map(|c| Jet::constant(c.clone()))
    }
}

impl TruncatedSeries<Rational> {
    pub fn to_jets(&self) -> TruncatedSeries<Jet> {
        TruncatedSeries::<Jet>::from_rational_series(self)
    }
}

impl<C: Coeff> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[{}x{}](", self.xcap, self.ycap)?;
        let mut first = true;
        for (i, j, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})x^{i}y^{j}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl<'a, C: Coeff> Add<&'a TruncatedSeries<C>> for &'a TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn add(self, rhs: &TruncatedSeries<C>) -> TruncatedSeries<C> {
        self.try_add(rhs).expect("series_add")
    }
}

impl<'a, C: Coeff> Sub<&'a TruncatedSeries<C>> for &'a TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn sub(self, rhs: &TruncatedSeries<C>) -> TruncatedSeries<C> {
        self.try_sub(rhs).expect("series_sub")
    }
}

impl<'a, C: Coeff> Mul<&'a TruncatedSeries<C>> for &'a TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn mul(self, rhs: &TruncatedSeries<C>) -> TruncatedSeries<C> {
        self.try_mul(rhs).expect("series_mul")
    }
}

impl<C: Coeff> Neg for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn neg(self) -> TruncatedSeries<C> {
        TruncatedSeries {
            xcap: self.xcap,
            ycap: self.ycap,
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr<TruncatedSeries<C>> for TruncatedSeries<C> {
            type Output = TruncatedSeries<C>;
            fn $m(self, rhs: TruncatedSeries<C>) -> TruncatedSeries<C> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, C: Coeff> $tr<&'a TruncatedSeries<C>> for TruncatedSeries<C> {
            type Output = TruncatedSeries<C>;
            fn $m(self, rhs: &TruncatedSeries<C>) -> TruncatedSeries<C> {
                (&self).$m(rhs)
            }
        }
        impl<'a, C: Coeff> $tr<TruncatedSeries<C>> for &'a TruncatedSeries<C> {
            type Output = TruncatedSeries<C>;
            fn $m(self, rhs: TruncatedSeries<C>) -> TruncatedSeries<C> {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn neg(self) -> TruncatedSeries<C> {
        -&self
    }
}
