//! Univariate and bivariate series in `t` used by the set-partition formulas.
//!
//! A series in `t` alone is stored as a [`RatSeries`] with `ycap = 0`, the
//! `x` slot playing the role of `t`. Bivariate series in `(t, y)` use `x` for
//! `t` and `y` for the block variable.

use num_traits::One;

use super::RatSeries;
use crate::algebra::rational::{int, rat, Rational};
use crate::algebra::TruncatedSeries;
use crate::census::StirlingBellTable;
use crate::error::Result;

/// `t^k / ((1−t)(1−2t)⋯(1−kt))`, the ordinary generating function of `S(n, k)`.
pub fn phi(k: usize, tcap: usize) -> Result<RatSeries> {
    let mut den = RatSeries::one(tcap, 0);
    for j in 1..=k {
        den = &den * &RatSeries::from_fn(tcap, 0, |i, _| match i {
            0 => int(1),
            1 => int(-(j as i64)),
            _ => int(0),
        });
    }
    Ok(&RatSeries::xy_pow(tcap, 0, k, 0) * &den.inverse()?)
}

/// `1/(1 − c t)`.
pub fn inv_one_minus(c: i64, tcap: usize) -> RatSeries {
    let mut p = int(1);
    RatSeries::from_fn(tcap, 0, |_, _| {
        let v = p.clone();
        p *= int(c);
        v
    })
}

/// `e^t`.
pub fn exp_t(tcap: usize) -> RatSeries {
    let mut f = Rational::one();
    RatSeries::from_fn(tcap, 0, |i, _| {
        if i > 0 {
            f /= int(i as i64);
        }
        f.clone()
    })
}

/// `e^{ct}` as a bivariate series with `ycap` extra room.
pub fn exp_ct(c: i64, tcap: usize, ycap: usize) -> RatSeries {
    let e = exp_t(tcap);
    let mut p = Rational::one();
    let mut out = TruncatedSeries::zero(tcap, ycap);
    for i in 0..=tcap {
        out.set(i, 0, e.coeff(i, 0) * &p);
        p *= int(c);
    }
    out
}

/// `(e^t − 1)^k / k!`, the exponential generating function of `S(n, k)`.
pub fn stirling_egf(k: usize, tcap: usize) -> RatSeries {
    let base = &exp_t(tcap) - &RatSeries::one(tcap, 0);
    let mut fact = Rational::one();
    for i in 1..=k {
        fact *= int(i as i64);
    }
    base.pow(k as u32).scale(&fact.recip())
}

/// `e^{y(e^t − 1)} = Σ_k y^k (e^t − 1)^k / k!`.
pub fn bell_egf(tcap: usize, ycap: usize) -> RatSeries {
    let mut out = RatSeries::zero(tcap, ycap);
    for k in 0..=ycap.min(tcap) {
        let col = stirling_egf(k, tcap);
        for i in 0..=tcap {
            out.set(i, k, col.coeff(i, 0).clone());
        }
    }
    out
}

/// Places a univariate series in `t` into a bivariate `(t, y)` frame.
pub fn lift(s: &RatSeries, ycap: usize) -> RatSeries {
    RatSeries::from_fn(s.xcap(), ycap, |i, j| if j == 0 { s.coeff(i, 0).clone() } else { int(0) })
}

/// Integer-free helper: `1/n!`.
pub fn inv_factorial(n: usize) -> Rational {
    let mut f = Rational::one();
    for i in 1..=n {
        f /= int(i as i64);
    }
    f
}

/// Converts ordinary coefficients `c_n` into exponential ones `c_n / n!`.
pub fn ogf_to_egf(s: &RatSeries) -> RatSeries {
    RatSeries::from_fn(s.xcap(), s.ycap(), |i, j| s.coeff(i, j) * inv_factorial(i))
}

/// Totals over set partitions of `[n+1]` with `k` blocks, from a formula
/// `(n/2)S_{n+1,k} − ¼S_{n+2,k} − (n/2)S_{n,k} + c·S_{n+1,k} + d·S_{n,k−2}`.
pub fn stirling_combination(
    table: &StirlingBellTable,
    n: usize,
    k: usize,
    c: &Rational,
    d: &Rational,
) -> Rational {
    let s = |m: usize, kk: i64| Rational::from_integer(table.stirling(m, kk).into());
    let k = k as i64;
    let half_n = rat(n as i64, 2);
    &half_n * s(n + 1, k) - rat(1, 4) * s(n + 2, k) - &half_n * s(n, k) + c * s(n + 1, k) + d * s(n, k - 2)
}

/// `α B_{n+1} − ¼ B_{n+2} − β B_n`.
pub fn bell_combination(table: &StirlingBellTable, n: usize, alpha: &Rational, beta: &Rational) -> Rational {
    let b = |m: usize| Rational::from_integer(table.bell(m).into());
    alpha * b(n + 1) - rat(1, 4) * b(n + 2) - beta * b(n)
}
