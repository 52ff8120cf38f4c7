//! Coefficient comparison with first-discrepancy tracking.

use num_bigint::BigInt;

use super::Discrepancy;
use crate::algebra::rational::{from_big, to_pq, Rational};
use crate::gf::{JetSeries, RatSeries};

/// Variable names used when printing a coefficient index.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Vars {
    /// `x` cells, `y` columns.
    XY,
    /// `x` alone.
    X,
    /// `t` alone, stored in the `x` slot.
    T,
    /// `t` in the `x` slot, `y` blocks.
    TY,
}

pub(crate) fn mono(vars: Vars, i: usize, j: usize) -> String {
    match vars {
        Vars::XY => format!("x^{i} y^{j}"),
        Vars::X => format!("x^{i}"),
        Vars::T => format!("t^{i}"),
        Vars::TY => format!("t^{i} y^{j}"),
    }
}

pub(crate) fn q(n: u64) -> Rational {
    from_big(BigInt::from(n))
}

/// Records the first mismatch in the order comparisons are made.
#[derive(Debug, Default)]
pub(crate) struct Cmp {
    pub first: Option<Discrepancy>,
    pub compared: usize,
}

impl Cmp {
    pub fn check(&mut self, index: impl FnOnce() -> String, expected: &Rational, got: &Rational) {
        self.compared += 1;
        if self.first.is_none() && expected != got {
            self.first = Some(Discrepancy {
                index: index(),
                expected: to_pq(expected),
                got: to_pq(got),
            });
        }
    }

    pub fn ok(&self) -> bool {
        self.first.is_none()
    }

    /// Compares coefficients `(i, j)` with `i ≤ imax`, `j ≤ jmax`, by `i` then `j`.
    pub fn series(
        &mut self,
        label: &str,
        vars: Vars,
        expected: &RatSeries,
        got: &RatSeries,
        imax: usize,
        jmax: usize,
    ) {
        for i in 0..=imax {
            for j in 0..=jmax {
                self.check(|| prefixed(label, mono(vars, i, j)), expected.coeff(i, j), got.coeff(i, j));
            }
        }
    }

    /// Jet comparison: value part, then the `ε` part, coefficient by coefficient.
    pub fn jets(&mut self, label: &str, expected: &JetSeries, got: &JetSeries, imax: usize, jmax: usize) {
        for i in 0..=imax {
            for j in 0..=jmax {
                let (e, g) = (expected.coeff(i, j), got.coeff(i, j));
                self.check(|| prefixed(label, mono(Vars::XY, i, j)), &e.value, &g.value);
                self.check(|| prefixed(label, format!("{} [eps]", mono(Vars::XY, i, j))), &e.deriv, &g.deriv);
            }
        }
    }

    pub fn jets_full(&mut self, label: &str, expected: &JetSeries, got: &JetSeries) {
        let (xc, yc) = expected.caps();
        self.jets(label, expected, got, xc.min(got.xcap()), yc.min(got.ycap()));
    }
}

fn prefixed(label: &str, idx: String) -> String {
    if label.is_empty() {
        idx
    } else {
        format!("{label}: {idx}")
    }
}

/// First `x^i` at which the column sums `Σ_j` differ, as a note.
pub(crate) fn slice_sum_note(expected: &RatSeries, got: &RatSeries, imax: usize, jmax: usize) -> Option<String> {
    (0..=imax).find_map(|i| {
        let e: Rational = (0..=jmax).map(|j| expected.coeff(i, j).clone()).sum();
        let g: Rational = (0..=jmax).map(|j| got.coeff(i, j).clone()).sum();
        (e != g).then(|| format!("summed over columns, first difference at x^{i}: expected {}, got {}", to_pq(&e), to_pq(&g)))
    })
}
