//! Corner generating functions.
//!
//! Every bargraph series here is a [`TruncatedSeries`] in `x` (cells) and `y`
//! (columns). Mark variables `q_{a,b}` (type A) and `p_{a,b}` (type B) are
//! specialised through a [`Marking`]: marked variables become `1 + ε`, so the
//! `ε`-part of a jet series counts the marked corners.
//!
//! Two routes are provided for each kind:
//!
//! * a solver that runs the first-column recurrence order by order in `x`,
//! * the closed form built from chain sums over the recurrence kernel.
//!
//! The `printed_*` functions expand displayed rational functions literally so
//! they can be compared against the solver and the census.

pub mod chains;
pub mod setpart;
pub mod type_a;
pub mod type_b;

use crate::algebra::rational::int;
use crate::algebra::{Coeff, Jet, Rational, TruncatedSeries};

pub type JetSeries = TruncatedSeries<Jet>;
pub type RatSeries = TruncatedSeries<Rational>;

/// Which mark variables are set to `1 + ε`. For type A the pair is
/// (down run, horizontal run); for type B it is (horizontal run, down run).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Marking {
    Unmarked,
    All,
    Single { v: u32, w: u32 },
}

impl Marking {
    /// Value of the mark variable indexed `(a, b)`.
    pub fn mark(&self, a: usize, b: usize) -> Jet {
        match *self {
            Marking::All => Jet::marked(),
            Marking::Single { v, w } if v as usize == a && w as usize == b => Jet::marked(),
            _ => Jet::constant(int(1)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Marking::Unmarked => "unmarked".to_string(),
            Marking::All => "all".to_string(),
            Marking::Single { v, w } => format!("single({v},{w})"),
        }
    }
}

/// `Σ_{i=from}^{to} x^i y^j`.
pub(crate) fn x_range<C: Coeff>(xcap: usize, ycap: usize, from: usize, to: usize, j: usize) -> TruncatedSeries<C> {
    let mut s = TruncatedSeries::zero(xcap, ycap);
    if j <= ycap {
        for i in from..=to.min(xcap) {
            s.set(i, j, C::one());
        }
    }
    s
}

/// Polynomial from `(i, j, c)` triples; terms beyond the caps are dropped.
pub(crate) fn poly<C: Coeff>(xcap: usize, ycap: usize, terms: &[(usize, usize, i64)]) -> TruncatedSeries<C> {
    let mut s: TruncatedSeries<C> = TruncatedSeries::zero(xcap, ycap);
    for &(i, j, c) in terms {
        if i <= xcap && j <= ycap {
            s.coeff_mut(i, j).add_assign_ref(&C::from_rational(int(c)));
        }
    }
    s
}

/// `1 − x^i y^j`.
pub(crate) fn one_minus<C: Coeff>(xcap: usize, ycap: usize, i: usize, j: usize) -> TruncatedSeries<C> {
    poly(xcap, ycap, &[(0, 0, 1), (i, j, -1)])
}

/// `xy/(1 − x)` written out to the caps.
pub(crate) fn xy_over_one_minus_x<C: Coeff>(xcap: usize, ycap: usize) -> TruncatedSeries<C> {
    x_range(xcap, ycap, 1, xcap, 1)
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `C(n, 2)`.
pub fn choose2(n: usize) -> usize {
    binom2(n)
}
