//! Type A corners (down run, then horizontal run).
//!
//! `H_a` counts bargraphs whose first column has height `a`. Peeling the first
//! column gives
//!
//! ```text
//! H   = 1 + Σ_a H_a
//! H_a = x^a y H + Σ_{b<a} β_{ab} H_b
//! α_{ab} = Σ_{m≥1} x^{a+b(m−1)} y^m q_{a−b,m}
//! β_{ab} = α_{ab}(1 − x^b y) − x^a y
//! ```
//!
//! and the closed form
//! `H = 1 / (1 − xy/(1−x) − Σ_j x^j y Σ_s L(j,s))` with `L` the chain sums of
//! `β`. With heights capped at `N` only `H_a`, `a ≤ N`, take part and
//! `xy/(1−x)` becomes `y(x + … + x^N)`.


use super::chains::Kernel;
use super::setpart::{bell_egf, exp_ct, exp_t, inv_one_minus, lift, phi, stirling_combination, stirling_egf};
use super::{choose2, one_minus, poly, x_range, xy_over_one_minus_x, JetSeries, Marking, RatSeries};
use crate::algebra::rational::{int, pow_i, rat, Rational};
use crate::algebra::{bounded_sum, Coeff, Jet};
use crate::census::StirlingBellTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SystemSolutionA {
    pub h: JetSeries,
    /// `h_a[a]` for `1 ≤ a ≤ amax`; `h_a[0]` is zero.
    pub h_a: Vec<JetSeries>,
}

fn effective_amax(xcap: usize, hmax: Option<usize>) -> usize {
    hmax.unwrap_or(xcap).min(xcap)
}

/// `α_{ab} = Σ_{m≥1} x^{a+b(m−1)} y^m q_{a−b,m}`.
pub fn alpha(xcap: usize, ycap: usize, marking: Marking, a: usize, b: usize) -> Result<JetSeries> {
    bounded_sum(
        xcap,
        ycap,
        |i| {
            let m = i + 1;
            JetSeries::monomial(xcap, ycap, a + b * i, m, marking.mark(a - b, m))
        },
        |i| a + b * i,
    )
}

/// `β_{ab} = α_{ab}(1 − x^b y) − x^a y`.
pub fn beta(xcap: usize, ycap: usize, marking: Marking, a: usize, b: usize) -> Result<JetSeries> {
    let al = alpha(xcap, ycap, marking, a, b)?;
    Ok(&(&al * &one_minus(xcap, ycap, b, 1)) - &JetSeries::xy_pow(xcap, ycap, a, 1))
}

pub fn beta_kernel(xcap: usize, ycap: usize, marking: Marking, amax: usize) -> Result<Kernel> {
    Kernel::build(xcap, ycap, amax, |a, b| beta(xcap, ycap, marking, a, b))
}

/// Solves the first-column recurrence order by order in `x`. The `x^n` slice
/// of `H_a` needs `H` below order `n − a + 1` and `H_b` below `n − a + 1`,
/// since `β_{ab}` has `x`-order at least `a`.
pub fn solve_system_a(
    xcap: usize,
    ycap: usize,
    marking: Marking,
    hmax: Option<usize>,
) -> Result<SystemSolutionA> {
    let amax = effective_amax(xcap, hmax);
    let kernel = beta_kernel(xcap, ycap, marking, amax)?;
    let kterms: Vec<Vec<Vec<(usize, usize, Jet)>>> = (0..=amax)
        .map(|a| (0..a).map(|b| kernel.terms(a, b)).collect())
        .collect();
    let mut h = JetSeries::one(xcap, ycap);
    let mut h_a = vec![JetSeries::zero(xcap, ycap); amax + 1];
    for n in 1..=xcap {
        for a in 1..=amax.min(n) {
            for j in 1..=ycap {
                let src = h.coeff(n - a, j - 1).clone();
                if !src.is_zero() {
                    h_a[a].coeff_mut(n, j).add_assign_ref(&src);
                }
            }
            for b in 1..a {
                for (p, r, c) in &kterms[a][b] {
                    if *p > n {
                        continue;
                    }
                    for j in *r..=ycap {
                        let prev = h_a[b].coeff(n - p, j - r).clone();
                        if !prev.is_zero() {
                            h_a[a].coeff_mut(n, j).add_mul(c, &prev);
                        }
                    }
                }
            }
        }
        for j in 0..=ycap {
            let mut acc = Jet::zero();
            for s in h_a.iter().take(amax.min(n) + 1).skip(1) {
                acc.add_assign_ref(s.coeff(n, j));
            }
            h.set(n, j, acc);
        }
    }
    Ok(SystemSolutionA { h, h_a })
}

/// Pieces of the closed form: `H = 1/denominator`, `H_a = H · numerators[a]`.
#[derive(Debug, Clone)]
pub struct ClosedPartsA {
    pub denominator: JetSeries,
    /// `x^a y + Σ_{j<a} x^j y Σ_s L_a(j, s)`, indexed by `a`.
    pub numerators: Vec<JetSeries>,
}

pub fn closed_parts_a(
    xcap: usize,
    ycap: usize,
    marking: Marking,
    hmax: Option<usize>,
) -> Result<ClosedPartsA> {
    let amax = effective_amax(xcap, hmax);
    let kernel = beta_kernel(xcap, ycap, marking, amax)?;
    let chains: Vec<_> = (1..=amax)
        .map(|j| kernel.chain_sums(j))
        .collect::<Result<_>>()?;
    let base: JetSeries = match hmax {
        None => xy_over_one_minus_x(xcap, ycap),
        Some(n) => x_range(xcap, ycap, 1, n, 1),
    };
    // x^j y L(j,s) has x-order ≥ j + (s+1)j + C(s+2,2) ≥ 2j + 1
    let chain_part = bounded_sum(
        xcap,
        ycap,
        |i| {
            let j = i + 1;
            match chains.get(i) {
                Some(c) => c.total.shift(j, 1),
                None => JetSeries::zero(xcap, ycap),
            }
        },
        |i| 2 * (i + 1) + 1,
    )?;
    let denominator = &(&JetSeries::one(xcap, ycap) - &base) - &chain_part;
    let mut numerators = vec![JetSeries::zero(xcap, ycap); amax + 1];
    for (a, num) in numerators.iter_mut().enumerate().skip(1) {
        let mut acc = JetSeries::xy_pow(xcap, ycap, a, 1);
        for j in 1..a {
            acc = &acc + &chains[j - 1].by_end[a].shift(j, 1);
        }
        *num = acc;
    }
    Ok(ClosedPartsA {
        denominator,
        numerators,
    })
}

/// Closed-form `H` (or `H^{(N)}` when `hmax = Some(N)`).
pub fn closed_h(
    xcap: usize,
    ycap: usize,
    marking: Marking,
    hmax: Option<usize>,
) -> Result<JetSeries> {
    closed_parts_a(xcap, ycap, marking, hmax)?.denominator.inverse()
}

/// `H_a = H (x^a y + Σ_{j<a} x^j y Σ_s L_a(j, s))` for every `a ≤ amax`.
pub fn closed_h_a(
    xcap: usize,
    ycap: usize,
    marking: Marking,
    hmax: Option<usize>,
) -> Result<Vec<JetSeries>> {
    let parts = closed_parts_a(xcap, ycap, marking, hmax)?;
    let h = parts.denominator.inverse()?;
    Ok(parts.numerators.iter().map(|n| &h * n).collect())
}

fn product_1_minus_x_pow(xcap: usize, ycap: usize, upto: usize) -> JetSeries {
    let mut p = JetSeries::one(xcap, ycap);
    for i in 1..=upto {
        p = &p * &one_minus(xcap, ycap, i, 0);
    }
    p
}

/// `F` with every `q_{a,b} = q = 1 + ε`, in the single-sum form
/// `1/(1 − xy/(1−x) − Σ_{s≥1} (q−1)^s y^{s+1} x^{C(s+2,2)} / Π_{i≤s+1}(1 − x^i))`.
pub fn printed_f_all(xcap: usize, ycap: usize) -> Result<JetSeries> {
    let q1 = Jet::eps();
    let sum = bounded_sum(
        xcap,
        ycap,
        |i| {
            let s = i + 1;
            let num = JetSeries::monomial(xcap, ycap, choose2(s + 2), s + 1, q1.pow(s as u32));
            let den = product_1_minus_x_pow(xcap, ycap, s + 1);
            &num * &den.inverse().expect("unit constant term")
        },
        |i| choose2(i + 3),
    )?;
    let d = &(&JetSeries::one(xcap, ycap) - &xy_over_one_minus_x(xcap, ycap)) - &sum;
    d.inverse()
}

/// `F` with only `q_{v,w} = q = 1 + ε`:
/// `1/(1 − xy/(1−x) − Σ_j x^j y Σ_s (q−1)^{s+1} y^{w(s+1)}
///   x^{wj(s+1) + vC(s+2,2) + (w−1)vC(s+1,2)} Π_{ℓ≤s}(1 − x^{j+ℓv} y))`.
pub fn printed_f_single(v: usize, w: usize, xcap: usize, ycap: usize) -> Result<JetSeries> {
    let q1 = Jet::eps();
    let inner = |j: usize| -> Result<JetSeries> {
        bounded_sum(
            xcap,
            ycap,
            |s| {
                let e = w * j * (s + 1) + v * choose2(s + 2) + (w - 1) * v * choose2(s + 1);
                let mut t = JetSeries::monomial(xcap, ycap, e, w * (s + 1), q1.pow(s as u32 + 1));
                for l in 0..=s {
                    t = &t * &one_minus(xcap, ycap, j + l * v, 1);
                }
                t
            },
            |s| w * j * (s + 1) + v * choose2(s + 2) + (w - 1) * v * choose2(s + 1),
        )
    };
    let mut sum = JetSeries::zero(xcap, ycap);
    for j in 1..=xcap {
        sum = &sum + &inner(j)?.shift(j, 1);
    }
    let d = &(&JetSeries::one(xcap, ycap) - &xy_over_one_minus_x(xcap, ycap)) - &sum;
    d.inverse()
}

/// Total type A corners by cells and columns: `y²x³ / ((1−x−xy)²(1+x))`.
pub fn printed_g(xcap: usize, ycap: usize) -> Result<RatSeries> {
    let d: RatSeries = poly(xcap, ycap, &[(0, 0, 1), (1, 0, -1), (1, 1, -1)]);
    let den = &(&d * &d) * &poly(xcap, ycap, &[(0, 0, 1), (1, 0, 1)]);
    Ok(&RatSeries::xy_pow(xcap, ycap, 3, 2) * &den.inverse()?)
}

/// `G(x, 1) = x³ / ((1−2x)(1+x))`, univariate (`ycap = 0`).
pub fn printed_g_x1(xcap: usize) -> Result<RatSeries> {
    let den = &poly::<Rational>(xcap, 0, &[(0, 0, 1), (1, 0, -2)]) * &poly(xcap, 0, &[(0, 0, 1), (1, 0, 1)]);
    Ok(&RatSeries::xy_pow(xcap, 0, 3, 0) * &den.inverse()?)
}

/// `g_n = ((n+1)/12 − 2/9) 2^n − (1/9)(−1)^n`.
pub fn closed_g_n(n: usize) -> Rational {
    let n_r = int(n as i64);
    (&(&n_r + int(1)) / int(12) - rat(2, 9)) * pow_i(&int(2), n as i64) - rat(1, 9) * pow_i(&int(-1), n as i64)
}

/// `1/(1 − xy/(1−x))²`.
fn inv_sq_bargraph_den(xcap: usize, ycap: usize) -> Result<RatSeries> {
    let d = &RatSeries::one(xcap, ycap) - &xy_over_one_minus_x(xcap, ycap);
    (&d * &d).inverse()
}

/// Total `(v,w)` type A corners:
/// `x^{v+w+1} y^{w+1} / (1 − xy/(1−x))² · (1 − xy − x^{w+2}(1−y)) / ((1−x^{w+1})(1−x^{w+2}))`.
pub fn printed_t(v: usize, w: usize, xcap: usize, ycap: usize) -> Result<RatSeries> {
    let lead = RatSeries::xy_pow(xcap, ycap, v + w + 1, w + 1);
    let num: RatSeries = poly(xcap, ycap, &[(0, 0, 1), (1, 1, -1), (w + 2, 0, -1), (w + 2, 1, 1)]);
    let den = &one_minus::<Rational>(xcap, ycap, w + 1, 0) * &one_minus(xcap, ycap, w + 2, 0);
    Ok(&(&(&lead * &inv_sq_bargraph_den(xcap, ycap)?) * &num) * &den.inverse()?)
}

/// `T(x, 1) = x^{v+w+1} (1−x)³ / ((1−2x)² (1−x^{w+1})(1−x^{w+2}))`.
pub fn printed_t_x1(v: usize, w: usize, xcap: usize) -> Result<RatSeries> {
    let one_minus_x = one_minus::<Rational>(xcap, 0, 1, 0);
    let num = &RatSeries::xy_pow(xcap, 0, v + w + 1, 0) * &one_minus_x.pow(3);
    let d2: RatSeries = poly(xcap, 0, &[(0, 0, 1), (1, 0, -2)]);
    let den = &(&(&d2 * &d2) * &one_minus(xcap, 0, w + 1, 0)) * &one_minus(xcap, 0, w + 2, 0);
    Ok(&num * &den.inverse()?)
}

/// `t_n = n 2^{w−v+n−1} / ((2^{w+1} − 1)(2^{w+2} − 1))`, evaluated exactly.
pub fn closed_t_n(v: usize, w: usize, n: usize) -> Rational {
    let two = int(2);
    let num = int(n as i64) * pow_i(&two, w as i64 - v as i64 + n as i64 - 1);
    let den = (pow_i(&two, w as i64 + 1) - int(1)) * (pow_i(&two, w as i64 + 2) - int(1));
    num / den
}

/// Height-one specialisation as displayed: `xy/(1 − xy)` (nonempty only).
pub fn printed_h1(xcap: usize, ycap: usize) -> Result<JetSeries> {
    let xy = JetSeries::xy_pow(xcap, ycap, 1, 1);
    Ok(&xy * &one_minus::<Jet>(xcap, ycap, 1, 1).inverse()?)
}

/// Height-two specialisation as displayed:
/// `1/(1 − (x+x²)y − x²(1−xy) Σ_m x^m y^m q_{1,m} + x³y²)`.
pub fn printed_h2(xcap: usize, ycap: usize, marking: Marking) -> Result<JetSeries> {
    let sum = bounded_sum(
        xcap,
        ycap,
        |i| JetSeries::monomial(xcap, ycap, i + 1, i + 1, marking.mark(1, i + 1)),
        |i| i + 1,
    )?;
    let mid = &(&JetSeries::xy_pow(xcap, ycap, 2, 0) * &one_minus(xcap, ycap, 1, 1)) * &sum;
    let d = &poly::<Jet>(xcap, ycap, &[(0, 0, 1), (1, 1, -1), (2, 1, -1), (3, 2, 1)]) - &mid;
    d.inverse()
}

/// `Π_{N=1}^k H^{(N)}_N` with cells and columns kept (no substitution).
pub fn pk_bivariate_a(k: usize, xcap: usize, ycap: usize, marking: Marking) -> Result<JetSeries> {
    let mut p = JetSeries::one(xcap, ycap);
    for n in 1..=k {
        let sol = solve_system_a(xcap, ycap, marking, Some(n))?;
        p = &p * sol.h_a.get(n).cloned().unwrap_or_else(|| JetSeries::zero(xcap, ycap));
    }
    Ok(p)
}

/// Factor `H^{(N)}_N` at caps wide enough that `x := 1` is exact, then
/// substituted: a series in `y` alone (`xcap = 0`).
fn factor_at_x1(n: usize, ncols_cap: usize, f: impl Fn(usize, usize) -> Result<JetSeries>) -> Result<JetSeries> {
    // a column of height ≤ N holds ≤ N cells
    Ok(f(n * ncols_cap, ncols_cap)?.substitute_x_one())
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidParameter("block count k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Set-partition series `P_k` at `x = 1` via the solver: the `y^n` value is
/// `S(n, k)` and the `ε`-part counts marked type A corners.
pub fn pk_series_a(k: usize, ncols_cap: usize, marking: Marking) -> Result<JetSeries> {
    check_k(k)?;
    let mut p = JetSeries::one(0, ncols_cap);
    for n in 1..=k {
        let f = factor_at_x1(n, ncols_cap, |xc, yc| {
            Ok(solve_system_a(xc, yc, marking, Some(n))?.h_a[n.min(xc)].clone())
        })?;
        p = &p * &f;
    }
    Ok(p)
}

/// `P_k` from the closed quotient form of each factor.
pub fn pk_closed_a(k: usize, ncols_cap: usize, marking: Marking) -> Result<JetSeries> {
    check_k(k)?;
    let mut p = JetSeries::one(0, ncols_cap);
    for n in 1..=k {
        let f = factor_at_x1(n, ncols_cap, |xc, yc| {
            let parts = closed_parts_a(xc, yc, marking, Some(n))?;
            Ok(&parts.numerators[n.min(xc)] * &parts.denominator.inverse()?)
        })?;
        p = &p * &f;
    }
    Ok(p)
}

/// `D_N = 1 − y Σ_{i=1}^N x^i`.
pub(crate) fn restricted_den<C: Coeff>(xcap: usize, ycap: usize, n: usize) -> crate::algebra::TruncatedSeries<C> {
    &crate::algebra::TruncatedSeries::one(xcap, ycap) - &x_range(xcap, ycap, 1, n, 1)
}

/// Displayed `Q_k(x, y)`:
/// `Π_N x^N y/D_N · Σ_N Σ_{j<N} (x^j y D_N + x^j y² (x^{j+1}+…+x^N)) / D_N`.
pub fn printed_qk_xy_a(k: usize, xcap: usize, ycap: usize) -> Result<RatSeries> {
    let mut prod = RatSeries::one(xcap, ycap);
    let mut sum = RatSeries::zero(xcap, ycap);
    for n in 1..=k {
        let d: RatSeries = restricted_den(xcap, ycap, n);
        let d_inv = d.inverse()?;
        prod = &(&prod * &RatSeries::xy_pow(xcap, ycap, n, 1)) * &d_inv;
        let mut inner = RatSeries::zero(xcap, ycap);
        for j in 1..n {
            inner = &inner + &(&d.shift(j, 1) + &x_range(xcap, ycap, j + 1, n, 0).shift(j, 2));
        }
        sum = &sum + &(&inner * &d_inv);
    }
    Ok(&prod * &sum)
}

/// Displayed `φ'(t) = t^{k−1}/((1−t)⋯(1−kt)) · Σ_j 1/(1−jt)`.
pub fn printed_phi_prime(k: usize, tcap: usize) -> Result<RatSeries> {
    check_k(k)?;
    let mut den = RatSeries::one(tcap, 0);
    let mut sum = RatSeries::zero(tcap, 0);
    for j in 1..=k {
        den = &den * &poly(tcap, 0, &[(0, 0, 1), (1, 0, -(j as i64))]);
        sum = &sum + &inv_one_minus(j as i64, tcap);
    }
    Ok(&(&RatSeries::xy_pow(tcap, 0, k - 1, 0) * &den.inverse()?) * &sum)
}

/// The chain of displayed expressions for `Q_k(1, t)`, in order.
pub fn qk_lines_a(k: usize, tcap: usize) -> Result<Vec<RatSeries>> {
    check_k(k)?;
    let ph = phi(k, tcap)?;
    let t = RatSeries::x(tcap, 0);
    let c = |r: Rational| RatSeries::constant(tcap, 0, r);
    let half = rat(1, 2);
    let ck2 = int(choose2(k) as i64);
    let g = |n: usize| inv_one_minus(n as i64, tcap);

    let mut s1 = RatSeries::zero(tcap, 0);
    let mut s2 = RatSeries::zero(tcap, 0);
    let mut s3 = RatSeries::zero(tcap, 0);
    for n in 2..=k {
        let nn = n as i64;
        let inner: i64 = (1..n).map(|j| (n - j) as i64).sum();
        s1 = &s1 + &(&t.scale(&int(nn - 1)) + &(&t.pow(2) * &g(n)).scale(&int(inner)));
        s2 = &s2 + &(&c(int(nn - 1)) + &(&t * &g(n)).scale(&int(choose2(n) as i64)));
        s3 = &s3 + &(&t * &g(n)).scale(&int(nn * (nn - 1)));
    }
    let mut s4 = RatSeries::zero(tcap, 0);
    let mut s5 = RatSeries::zero(tcap, 0);
    for n in 1..=k {
        s4 = &s4 + &g(n).scale(&int(n as i64 - 1));
        s5 = &s5 + &(&(&c(int(-1)) - &(&t * &g(n))) + &g(n));
    }
    let line1 = &ph * &s1;
    let line2 = &(&ph * &t) * &s2;
    let line3 = &(&ph * &t) * &(&c(ck2.clone()) + &s3.scale(&half));
    let line4 = &(&ph * &t) * &(&c(&ck2 * &half) + &s4.scale(&half));
    let line5 = &(&t * &ph).scale(&(&ck2 * &half)) + &(&ph * &s5).scale(&half);
    let dphi = printed_phi_prime(k, tcap)?;
    let line6 = &(&(&(&t * &ph).scale(&(&ck2 * &half)) - &ph.scale(&(int(k as i64) * &half)))
        + &(&t * &dphi).scale(&half))
        - &(&t.pow(2) * &dphi).scale(&half);
    Ok(vec![line1, line2, line3, line4, line5, line6])
}

/// `Q_k(1,t) = ½C(k,2) t φ − ½ k φ + ½ t φ' − ½ t² φ'`.
pub fn qk_closed_a(k: usize, tcap: usize) -> Result<RatSeries> {
    Ok(qk_lines_a(k, tcap)?.pop().expect("six lines"))
}

fn factorial(k: usize) -> Rational {
    (1..=k).fold(int(1), |acc, i| acc * int(i as i64))
}

/// Displayed exponential generating function `Q̃_k(t)`.
pub fn printed_egf_qk_a(k: usize, tcap: usize) -> Result<RatSeries> {
    check_k(k)?;
    let kf = factorial(k);
    let e = exp_t(tcap);
    let t = RatSeries::x(tcap, 0);
    let col_k = stirling_egf(k, tcap);
    let em1 = &e - &RatSeries::one(tcap, 0);
    let kk = int(k as i64);
    let two_kf = &kf * int(2);
    let p1 = col_k.integral_x().scale(&(rat(1, 2) * int(choose2(k) as i64)));
    let p2 = em1.pow(k as u32).scale(&(&kk / &two_kf));
    let d = &em1.pow(k as u32 - 1) * &e;
    let p3 = (&t * &d).scale(&(&kk / &two_kf));
    let p4 = (&t * &d).integral_x().scale(&(&kk / &two_kf));
    Ok(&(&(&p1 - &p2) + &p3) - &p4)
}

/// Displayed bivariate `Q̃(t, y)`.
pub fn printed_egf_q_a(tcap: usize, ycap: usize) -> Result<RatSeries> {
    let big_e = bell_egf(tcap, ycap);
    let e = lift(&exp_t(tcap), ycap);
    let t = RatSeries::x(tcap, ycap);
    let em1 = &e - &RatSeries::one(tcap, ycap);
    let p1 = (&(&em1 * &em1) * &big_e).integral_x().shift(0, 2).scale(&rat(1, 4));
    let p2 = (&(&t * &e) * &big_e).shift(0, 1).scale(&rat(1, 2));
    let p3 = (&em1 * &big_e).shift(0, 1).scale(&rat(1, 2));
    let p4 = (&(&t * &e) * &big_e).integral_x().shift(0, 1).scale(&rat(1, 2));
    Ok(&(&(&p1 + &p2) - &p3) - &p4)
}

/// `(∂/∂t) e^{y(e^t−1)}` and `(∂/∂t)^2 e^{y(e^t−1)}` at the given caps.
pub(crate) fn bell_egf_derivatives(tcap: usize, ycap: usize) -> (RatSeries, RatSeries, RatSeries) {
    let wide = bell_egf(tcap + 2, ycap);
    let d1 = wide.derivative_x();
    let d2 = d1.derivative_x();
    (wide.truncate(tcap, ycap), d1.truncate(tcap, ycap), d2.truncate(tcap, ycap))
}

/// The two displayed expressions for `∂Q̃/∂t`, in order.
pub fn printed_dq_dt_a(tcap: usize, ycap: usize) -> Result<Vec<RatSeries>> {
    let (big_e, d1, d2) = bell_egf_derivatives(tcap, ycap);
    let t = RatSeries::x(tcap, ycap);
    let e2 = exp_ct(2, tcap, ycap);
    let line1 = (&(&(&(&t * &e2).scale(&int(2)) - &e2) * &big_e) + &big_e)
        .shift(0, 2)
        .scale(&rat(1, 4));
    let two_t_minus_1 = (&t.scale(&int(2)) - &RatSeries::one(tcap, ycap)).scale(&rat(1, 4));
    let line2 = &(&(&two_t_minus_1 * &d2) - &(&two_t_minus_1 * &d1)) + &big_e.shift(0, 2).scale(&rat(1, 4));
    Ok(vec![line1, line2])
}

/// Both variants of a closed total: as displayed, and with the final term
/// coefficient implied by the differential identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetpartTotals {
    pub printed: Rational,
    pub derived: Rational,
}

/// Total type A corners over partitions of `[n+1]` with `k` blocks.
pub fn setpart_total_a(table: &StirlingBellTable, n: usize, k: usize) -> SetpartTotals {
    let c = rat(1, 4);
    SetpartTotals {
        printed: stirling_combination(table, n, k, &c, &int(1)),
        derived: stirling_combination(table, n, k, &c, &rat(1, 4)),
    }
}

/// Total type A corners over all partitions of `[n+1]`.
pub fn setpart_bell_a(table: &StirlingBellTable, n: usize) -> SetpartTotals {
    let alpha = rat(2 * n as i64 + 1, 4);
    SetpartTotals {
        printed: super::setpart::bell_combination(table, n, &alpha, &rat(n as i64 - 2, 2)),
        derived: super::setpart::bell_combination(table, n, &alpha, &rat(2 * n as i64 - 1, 4)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn bargraph_series(xcap: usize, ycap: usize) -> JetSeries {
        let num = one_minus::<Jet>(xcap, ycap, 1, 0);
        let den: JetSeries = poly(xcap, ycap, &[(0, 0, 1), (1, 0, -1), (1, 1, -1)]);
        &num * &den.inverse().unwrap()
    }

    #[test]
    fn beta_vanishes_unmarked() {
        for a in 2..6 {
            for b in 1..a {
                assert!(beta(8, 8, Marking::Unmarked, a, b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn unmarked_solver_counts_compositions() {
        let sol = solve_system_a(8, 8, Marking::Unmarked, None).unwrap();
        assert_eq!(sol.h, bargraph_series(8, 8));
        assert_eq!(sol.h.coeff(3, 2).value, int(2));
    }

    #[test]
    fn marked_solver_small_totals() {
        let sol = solve_system_a(5, 5, Marking::All, None).unwrap();
        let d = sol.h.deriv_part().sum_over_y();
        assert_eq!(d[3], int(1));
        assert_eq!(d[4], int(3));
        assert_eq!(d[5], int(9));
    }

    #[test]
    fn height_one_is_geometric() {
        let sol = solve_system_a(6, 6, Marking::All, Some(1)).unwrap();
        let expect = one_minus::<Jet>(6, 6, 1, 1).inverse().unwrap();
        assert_eq!(sol.h, expect);
    }

    #[test]
    fn closed_form_agrees_with_solver() {
        for m in [Marking::Unmarked, Marking::All, Marking::Single { v: 1, w: 1 }, Marking::Single { v: 2, w: 1 }] {
            let sol = solve_system_a(9, 6, m, None).unwrap();
            assert_eq!(closed_h(9, 6, m, None).unwrap(), sol.h, "{m:?}");
            let lem = closed_h_a(9, 6, m, None).unwrap();
            assert_eq!(lem, sol.h_a, "{m:?}");
        }
    }

    #[test]
    fn restricted_height_two() {
        let h = closed_h(8, 8, Marking::Unmarked, Some(2)).unwrap();
        let den: JetSeries = poly(8, 8, &[(0, 0, 1), (1, 1, -1), (2, 1, -1)]);
        assert_eq!(h, den.inverse().unwrap());
    }

    #[test]
    fn single_mark_at_three_cells() {
        let h = closed_h(4, 4, Marking::Single { v: 1, w: 1 }, None).unwrap();
        assert_eq!(h.coeff(3, 2).deriv, int(1));
    }

    #[test]
    fn printed_g_small_coefficients() {
        let g = printed_g(6, 6).unwrap();
        assert_eq!(*g.coeff(3, 2), int(1));
        assert_eq!(g.sum_over_y()[4], int(3));
        assert_eq!(g.sum_over_y()[2], int(0));
        for (n, v) in [(3, 1), (4, 3), (5, 9)] {
            assert_eq!(closed_g_n(n), int(v));
        }
    }

    #[test]
    fn closed_t_n_is_rational() {
        assert_eq!(closed_t_n(1, 1, 3), rat(4, 7));
        let t = printed_t_x1(1, 1, 6).unwrap();
        assert_eq!(*t.coeff(3, 0), int(1));
        let t = printed_t_x1(2, 1, 6).unwrap();
        assert_eq!(*t.coeff(3, 0), int(0));
    }

    #[test]
    fn partitions_two_blocks() {
        let p = pk_series_a(2, 6, Marking::All).unwrap();
        assert_eq!(p.coeff(0, 3).value, int(3));
        assert_eq!(p.coeff(0, 3).deriv, int(1));
        let p1 = pk_series_a(1, 6, Marking::All).unwrap();
        for n in 1..=6 {
            assert_eq!(*p1.coeff(0, n), Jet::constant(int(1)));
        }
    }

    #[test]
    fn qk_closed_small() {
        assert!(qk_closed_a(1, 8).unwrap().is_zero());
        assert_eq!(*qk_closed_a(2, 8).unwrap().coeff(3, 0), int(1));
        assert_eq!(*qk_closed_a(3, 8).unwrap().coeff(3, 0), int(0));
    }

    #[test]
    fn setpart_totals_small() {
        let t = StirlingBellTable::new(6);
        assert_eq!(setpart_total_a(&t, 2, 2), SetpartTotals { printed: int(1), derived: int(1) });
        assert_eq!(setpart_total_a(&t, 2, 3), SetpartTotals { printed: rat(3, 4), derived: int(0) });
        assert_eq!(setpart_bell_a(&t, 2), SetpartTotals { printed: rat(5, 2), derived: int(1) });
    }
}
