//! Type B corners (horizontal run, then down run). The final drop to the axis
//! is a corner, so the mark `p_{m,a}` attaches to the word `a^m`.
//!
//! ```text
//! J   = 1 + Σ_a J_a
//! J_a = θ_a + Σ_{b<a} μ_{ab} J_b
//! γ_a = Σ_{m≥1} x^{am} y^m p_{m,a}
//! θ_a = x^a y (J − 1) + (1 − x^a y) γ_a
//! μ_{ab} = (1 − x^a y) Σ_{m≥1} x^{am} y^m (p_{m,a−b} − 1)
//! ```
//!
//! Closed form: `J = 1 + Σ_j (1+Γ_j)(1−x^j y)γ_j / (1 − xy/(1−x) − Σ_j x^j y Γ_j)`
//! with `Γ_j` the chain sums of `μ`.

use super::chains::Kernel;
use super::setpart::{bell_egf, exp_ct, exp_t, inv_one_minus, lift, phi, stirling_combination, stirling_egf};
use super::type_a::{bell_egf_derivatives, restricted_den, SetpartTotals};
use super::{choose2, one_minus, poly, x_range, xy_over_one_minus_x, JetSeries, Marking, RatSeries};
use crate::algebra::rational::{int, rat, Rational};
use crate::algebra::{bounded_sum, Coeff, Jet};
use crate::census::StirlingBellTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SystemSolutionB {
    pub j: JetSeries,
    /// `j_a[a]` for `1 ≤ a ≤ amax`; `j_a[0]` is zero.
    pub j_a: Vec<JetSeries>,
}

fn effective_amax(xcap: usize, hmax: Option<usize>) -> usize {
    hmax.unwrap_or(xcap).min(xcap)
}

/// `γ_a = Σ_{m≥1} x^{am} y^m p_{m,a}`.
pub fn gamma(xcap: usize, ycap: usize, marking: Marking, a: usize) -> Result<JetSeries> {
    bounded_sum(
        xcap,
        ycap,
        |i| {
            let m = i + 1;
            JetSeries::monomial(xcap, ycap, a * m, m, marking.mark(m, a))
        },
        |i| a * (i + 1),
    )
}

/// `μ_{ab} = (1 − x^a y) Σ_{m≥1} x^{am} y^m (p_{m,a−b} − 1)`.
pub fn mu(xcap: usize, ycap: usize, marking: Marking, a: usize, b: usize) -> Result<JetSeries> {
    let one = Jet::constant(int(1));
    let s = bounded_sum(
        xcap,
        ycap,
        |i| {
            let m = i + 1;
            JetSeries::monomial(xcap, ycap, a * m, m, &marking.mark(m, a - b) - &one)
        },
        |i| a * (i + 1),
    )?;
    Ok(&one_minus(xcap, ycap, a, 1) * &s)
}

pub fn mu_kernel(xcap: usize, ycap: usize, marking: Marking, amax: usize) -> Result<Kernel> {
    Kernel::build(xcap, ycap, amax, |a, b| mu(xcap, ycap, marking, a, b))
}

/// Order-by-order solution. `θ_a` needs `J` only below order `n − a + 1`.
pub fn solve_system_b(
    xcap: usize,
    ycap: usize,
    marking: Marking,
    hmax: Option<usize>,
) -> Result<SystemSolutionB> {
    let amax = effective_amax(xcap, hmax);
    let kernel = mu_kernel(xcap, ycap, marking, amax)?;
    let kterms: Vec<Vec<Vec<(usize, usize, Jet)>>> = (0..=amax)
        .map(|a| (0..a).map(|b| kernel.terms(a, b)).collect())
        .collect();
    let sources: Vec<JetSeries> = (0..=amax)
        .map(|a| {
            if a == 0 {
                Ok(JetSeries::zero(xcap, ycap))
            } else {
                Ok(&one_minus(xcap, ycap, a, 1) * &gamma(xcap, ycap, marking, a)?)
            }
        })
        .collect::<Result<_>>()?;
    let mut j_all = JetSeries::one(xcap, ycap);
    let mut j_a = vec![JetSeries::zero(xcap, ycap); amax + 1];
    for n in 1..=xcap {
        for a in 1..=amax.min(n) {
            for c in 0..=ycap {
                let mut acc = sources[a].coeff(n, c).clone();
                // x^a y (J − 1)
                if c >= 1 && (n - a, c - 1) != (0, 0) {
                    acc.add_assign_ref(j_all.coeff(n - a, c - 1));
                }
                j_a[a].set(n, c, acc);
            }
            for b in 1..a {
                for (p, r, k) in &kterms[a][b] {
                    if *p > n {
                        continue;
                    }
                    for c in *r..=ycap {
                        let prev = j_a[b].coeff(n - p, c - r).clone();
                        if !prev.is_zero() {
                            j_a[a].coeff_mut(n, c).add_mul(k, &prev);
                        }
                    }
                }
            }
        }
        for c in 0..=ycap {
            let mut acc = Jet::zero();
            for s in j_a.iter().take(amax.min(n) + 1).skip(1) {
                acc.add_assign_ref(s.coeff(n, c));
            }
            j_all.set(n, c, acc);
        }
    }
    Ok(SystemSolutionB { j: j_all, j_a })
}

/// Pieces of the closed form.
#[derive(Debug, Clone)]
pub struct ClosedPartsB {
    /// `1 − (xy/(1−x) or y Σ_{j≤N} x^j) − Σ_j x^j y Γ_j`.
    pub denominator: JetSeries,
    /// `Σ_j (1 + Γ_j)(1 − x^j y) γ_j`.
    pub numerator: JetSeries,
    /// `gammas[a] = γ_a`.
    pub gammas: Vec<JetSeries>,
    /// `chain[j][a] = Γ_{a,j}`, `chain_total[j] = Γ_j`.
    pub chain: Vec<Vec<JetSeries>>,
    pub chain_total: Vec<JetSeries>,
}

pub fn closed_parts_b(
    xcap: usize,
    ycap: usize,
    marking: Marking,
    hmax: Option<usize>,
) -> Result<ClosedPartsB> {
    let amax = effective_amax(xcap, hmax);
    let kernel = mu_kernel(xcap, ycap, marking, amax)?;
    let zero = JetSeries::zero(xcap, ycap);
    let mut chain = vec![Vec::new(); amax + 1];
    let mut chain_total = vec![zero.clone(); amax + 1];
    for j in 1..=amax {
        let c = kernel.chain_sums(j)?;
        chain_total[j] = c.total;
        chain[j] = c.by_end;
    }
    let gammas: Vec<JetSeries> = (0..=amax)
        .map(|a| if a == 0 { Ok(zero.clone()) } else { gamma(xcap, ycap, marking, a) })
        .collect::<Result<_>>()?;
    let one = JetSeries::one(xcap, ycap);
    let numerator = bounded_sum(
        xcap,
        ycap,
        |i| {
            let j = i + 1;
            if j > amax {
                return zero.clone();
            }
            &(&(&one + &chain_total[j]) * &one_minus(xcap, ycap, j, 1)) * &gammas[j]
        },
        |i| i + 1,
    )?;
    let base: JetSeries = match hmax {
        None => xy_over_one_minus_x(xcap, ycap),
        Some(n) => x_range(xcap, ycap, 1, n, 1),
    };
    let chain_part = bounded_sum(
        xcap,
        ycap,
        |i| {
            let j = i + 1;
            if j > amax {
                return zero.clone();
            }
            chain_total[j].shift(j, 1)
        },
        |i| 2 * (i + 1) + 1,
    )?;
    let denominator = &(&one - &base) - &chain_part;
    Ok(ClosedPartsB {
        denominator,
        numerator,
        gammas,
        chain,
        chain_total,
    })
}

pub fn closed_j(
    xcap: usize,
    ycap: usize,
    marking: Marking,
    hmax: Option<usize>,
) -> Result<JetSeries> {
    let p = closed_parts_b(xcap, ycap, marking, hmax)?;
    Ok(&JetSeries::one(xcap, ycap) + &(&p.numerator * &p.denominator.inverse()?))
}

/// `J_a = (x^a y + Σ_{j<a} x^j y Γ_{a,j})(J − 1) + (1 − x^a y)γ_a
///   + Σ_{j<a} Γ_{a,j}(1 − x^j y)γ_j`, for every `a ≤ amax`.
pub fn closed_j_a(
    xcap: usize,
    ycap: usize,
    marking: Marking,
    hmax: Option<usize>,
) -> Result<Vec<JetSeries>> {
    let p = closed_parts_b(xcap, ycap, marking, hmax)?;
    let j_minus_1 = &p.numerator * &p.denominator.inverse()?;
    Ok(j_a_from_parts(&p, &j_minus_1))
}

fn j_a_from_parts(p: &ClosedPartsB, j_minus_1: &JetSeries) -> Vec<JetSeries> {
    let (xcap, ycap) = j_minus_1.caps();
    let amax = p.gammas.len() - 1;
    let mut out = vec![JetSeries::zero(xcap, ycap); amax + 1];
    for (a, slot) in out.iter_mut().enumerate().skip(1) {
        let mut coef = JetSeries::xy_pow(xcap, ycap, a, 1);
        let mut rest = &one_minus(xcap, ycap, a, 1) * &p.gammas[a];
        for j in 1..a {
            let g = &p.chain[j][a];
            coef = &coef + &g.shift(j, 1);
            rest = &rest + &(&(g * &one_minus(xcap, ycap, j, 1)) * &p.gammas[j]);
        }
        *slot = &(&coef * j_minus_1) + &rest;
    }
    out
}

/// `J_a = θ_a + Σ_{j<a} Γ_{a,j} θ_j`, with `θ` built from the closed `J`.
pub fn closed_j_a_theta(
    xcap: usize,
    ycap: usize,
    marking: Marking,
    hmax: Option<usize>,
) -> Result<Vec<JetSeries>> {
    let p = closed_parts_b(xcap, ycap, marking, hmax)?;
    let j_minus_1 = &p.numerator * &p.denominator.inverse()?;
    let amax = p.gammas.len() - 1;
    let theta: Vec<JetSeries> = (0..=amax)
        .map(|a| {
            if a == 0 {
                JetSeries::zero(xcap, ycap)
            } else {
                &j_minus_1.shift(a, 1) + &(&one_minus(xcap, ycap, a, 1) * &p.gammas[a])
            }
        })
        .collect();
    let mut out = vec![JetSeries::zero(xcap, ycap); amax + 1];
    for a in 1..=amax {
        let mut acc = theta[a].clone();
        for j in 1..a {
            acc = &acc + &(&p.chain[j][a] * &theta[j]);
        }
        out[a] = acc;
    }
    Ok(out)
}

/// `F` with every `p_{a,b} = p = 1 + ε`:
/// `1 + (p xy/(1−x) + p S) / (1 − xy/(1−x) − S)`,
/// `S = Σ_{s≥0} (p−1)^{s+1} y^{s+2} x^{C(s+3,2)} / Π_{i≤s+2}(1 − x^i)`.
pub fn printed_f_all(xcap: usize, ycap: usize) -> Result<JetSeries> {
    let p = Jet::marked();
    let s = bounded_sum(
        xcap,
        ycap,
        |s| {
            let num = JetSeries::monomial(xcap, ycap, choose2(s + 3), s + 2, Jet::eps().pow(s as u32 + 1));
            let mut den = JetSeries::one(xcap, ycap);
            for i in 1..=(s + 2) {
                den = &den * &one_minus(xcap, ycap, i, 0);
            }
            &num * &den.inverse().expect("unit constant term")
        },
        |s| choose2(s + 3),
    )?;
    let base: JetSeries = xy_over_one_minus_x(xcap, ycap);
    let one = JetSeries::one(xcap, ycap);
    let num = (&base + &s).scale(&p);
    let den = &(&one - &base) - &s;
    Ok(&one + &(&num * &den.inverse()?))
}

/// Total type B corners by cells and columns, as displayed:
/// `xy(1 − x − xy + x²y²) / (1 − x − xy)²`.
pub fn printed_h(xcap: usize, ycap: usize) -> Result<RatSeries> {
    let num: RatSeries = poly(xcap, ycap, &[(1, 1, 1), (2, 1, -1), (2, 2, -1), (3, 3, 1)]);
    let d: RatSeries = poly(xcap, ycap, &[(0, 0, 1), (1, 0, -1), (1, 1, -1)]);
    Ok(&num * &(&d * &d).inverse()?)
}

/// `H(x, 1) = x(x − 1)² / (1 − 2x)²`, as displayed.
pub fn printed_h_x1(xcap: usize) -> Result<RatSeries> {
    let num: RatSeries = poly(xcap, 0, &[(1, 0, 1), (2, 0, -2), (3, 0, 1)]);
    let d: RatSeries = poly(xcap, 0, &[(0, 0, 1), (1, 0, -2)]);
    Ok(&num * &(&d * &d).inverse()?)
}

/// `Γ_j` for a single marked pair, as displayed:
/// `Σ_s (p−1)^{s+1} y^{v(s+1)} x^{vj(s+1) + vwC(s+1,2)} Π_{ℓ≤s}(1 − x^{j+(ℓ+1)w} y)`.
pub fn printed_gamma_single(v: usize, w: usize, j: usize, xcap: usize, ycap: usize) -> Result<JetSeries> {
    bounded_sum(
        xcap,
        ycap,
        |s| {
            let e = v * j * (s + 1) + v * w * choose2(s + 1);
            let mut t = JetSeries::monomial(xcap, ycap, e, v * (s + 1), Jet::eps().pow(s as u32 + 1));
            for l in 0..=s {
                t = &t * &one_minus(xcap, ycap, j + (l + 1) * w, 1);
            }
            t
        },
        |s| v * j * (s + 1) + v * w * choose2(s + 1),
    )
}

/// `F` for a single marked pair, as displayed:
/// `1 + (yx/(1−x) + (1+Γ_w)(1−x^w y)x^{wv}y^v(p−1) + y Σ_j x^j Γ_j)
///  / (1 − xy/(1−x) − y Σ_j x^j Γ_j)`.
pub fn printed_f_single(v: usize, w: usize, xcap: usize, ycap: usize) -> Result<JetSeries> {
    let one = JetSeries::one(xcap, ycap);
    let mut sum = JetSeries::zero(xcap, ycap);
    for j in 1..=xcap {
        sum = &sum + &printed_gamma_single(v, w, j, xcap, ycap)?.shift(j, 1);
    }
    let gw = printed_gamma_single(v, w, w, xcap, ycap)?;
    let marked = JetSeries::monomial(xcap, ycap, w * v, v, Jet::eps());
    let mid = &(&(&one + &gw) * &one_minus(xcap, ycap, w, 1)) * &marked;
    let base: JetSeries = xy_over_one_minus_x(xcap, ycap);
    let num = &(&base + &mid) + &sum;
    let den = &(&one - &base) - &sum;
    Ok(&one + &(&num * &den.inverse()?))
}

/// Total `(v,w)` type B corners, as displayed.
pub fn printed_t(v: usize, w: usize, xcap: usize, ycap: usize) -> Result<RatSeries> {
    let d = &RatSeries::one(xcap, ycap) - &xy_over_one_minus_x(xcap, ycap);
    let d2_inv = (&d * &d).inverse()?;
    let first = &(&one_minus::<Rational>(xcap, ycap, w, 1) * &RatSeries::xy_pow(xcap, ycap, v * w, w)) * &d2_inv;
    let num = &(&RatSeries::xy_pow(xcap, ycap, 2 * v + 3, v + 1) * &one_minus(xcap, ycap, w, 1))
        + &(&RatSeries::xy_pow(xcap, ycap, v + 1, v + 1) * &one_minus(xcap, ycap, w + 1, 1));
    let den = &(&one_minus::<Rational>(xcap, ycap, v + 1, 0) * &one_minus(xcap, ycap, v + 2, 0)) * &(&d * &d);
    Ok(&first + &(&num * &den.inverse()?))
}

/// `T(x, 1)` for type B, as displayed.
pub fn printed_t_x1(v: usize, w: usize, xcap: usize) -> Result<RatSeries> {
    // 1 − x/(1−x)
    let d = &RatSeries::one(xcap, 0) - &x_range(xcap, 0, 1, xcap, 0);
    let d2_inv = (&d * &d).inverse()?;
    let first = &(&one_minus::<Rational>(xcap, 0, w, 0) * &RatSeries::xy_pow(xcap, 0, v * w, 0)) * &d2_inv;
    let num = &(&RatSeries::xy_pow(xcap, 0, 2 * v + 3, 0) * &one_minus(xcap, 0, w, 0))
        + &(&RatSeries::xy_pow(xcap, 0, v + 1, 0) * &one_minus(xcap, 0, w + 1, 0));
    let den = &(&one_minus::<Rational>(xcap, 0, v + 1, 0) * &one_minus(xcap, 0, v + 2, 0)) * &(&d * &d);
    Ok(&first + &(&num * &den.inverse()?))
}

/// Height-one specialisation as displayed: `1 + Σ_m x^m y^m p_{m,1}`.
pub fn printed_j1(xcap: usize, ycap: usize, marking: Marking) -> Result<JetSeries> {
    Ok(&JetSeries::one(xcap, ycap) + &gamma(xcap, ycap, marking, 1)?)
}

/// Displayed `∂J^{(N)}/∂p` at `p = 1`:
/// `(yS − (yS)² + y² Σ_j x^j (x^{j+1} − x^{N+1})/(1−x)) / (1 − yS)²`, `S = Σ_{j≤N} x^j`.
pub fn printed_dj_dp(n: usize, xcap: usize, ycap: usize) -> Result<RatSeries> {
    let ys: RatSeries = x_range(xcap, ycap, 1, n, 1);
    let mut inner = RatSeries::zero(xcap, ycap);
    for j in 1..=n {
        // (x^{j+1} − x^{N+1})/(1 − x) = x^{j+1} + … + x^N
        inner = &inner + &x_range(xcap, ycap, j + 1, n, 0).shift(j, 2);
    }
    let num = &(&ys - &(&ys * &ys)) + &inner;
    let d = &RatSeries::one(xcap, ycap) - &ys;
    Ok(&num * &(&d * &d).inverse()?)
}

/// Displayed `J_N^{(N)}(x, y, 1) = x^N y / (1 − y Σ_{j≤N} x^j)`.
pub fn printed_j_n_unmarked(n: usize, xcap: usize, ycap: usize) -> Result<RatSeries> {
    let d: RatSeries = restricted_den(xcap, ycap, n);
    Ok(&RatSeries::xy_pow(xcap, ycap, n, 1) * &d.inverse()?)
}

/// Displayed `∂J_N^{(N)}/∂p = x^N y (∂J^{(N)}/∂p + (1 − x^N y)/(1 − Σ_j x^j y))`.
pub fn printed_dj_n_dp(n: usize, xcap: usize, ycap: usize) -> Result<RatSeries> {
    let d: RatSeries = restricted_den(xcap, ycap, n);
    let inner = &printed_dj_dp(n, xcap, ycap)? + &(&one_minus(xcap, ycap, n, 1) * &d.inverse()?);
    Ok(&RatSeries::xy_pow(xcap, ycap, n, 1) * &inner)
}

/// Displayed `∂J_N^{(N)}/∂p` at `x = 1`, `y = t`:
/// `t(Nt/(1−Nt) + t²N(N−1)/(2(1−Nt)²) + (1−t)/(1−Nt))`.
pub fn printed_dj_n_dp_1t(n: usize, tcap: usize) -> RatSeries {
    let t = RatSeries::x(tcap, 0);
    let g = inv_one_minus(n as i64, tcap);
    let nn = n as i64;
    let a = (&t * &g).scale(&int(nn));
    let b = (&t.pow(2) * &(&g * &g)).scale(&rat(nn * (nn - 1), 2));
    let c = &one_minus::<Rational>(tcap, 0, 1, 0) * &g;
    &t * &(&(&a + &b) + &c)
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidParameter("block count k must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn check_marking(marking: Marking) -> Result<()> {
    if let Marking::Single { .. } = marking {
        return Err(Error::InvalidParameter(
            "the type B set-partition product holds only when every p_{a,b} is the same".into(),
        ));
    }
    Ok(())
}

/// `p^{1−k}` at the marking's common mark value.
fn boundary_correction(k: usize, marking: Marking) -> Result<Jet> {
    marking.mark(1, 1).pow(k as u32 - 1).inverse().ok_or(Error::NotInvertible)
}

/// `p^{1−k} Π_{N=1}^k J^{(N)}_N` with cells and columns kept.
pub fn pk_bivariate_b(k: usize, xcap: usize, ycap: usize, marking: Marking) -> Result<JetSeries> {
    check_k(k)?;
    check_marking(marking)?;
    let mut p = JetSeries::constant(xcap, ycap, boundary_correction(k, marking)?);
    for n in 1..=k {
        let sol = solve_system_b(xcap, ycap, marking, Some(n))?;
        p = &p * sol.j_a.get(n).cloned().unwrap_or_else(|| JetSeries::zero(xcap, ycap));
    }
    Ok(p)
}

/// `P_k` at `x = 1` via the solver; only for `Unmarked` or `All`.
pub fn pk_series_b(k: usize, ncols_cap: usize, marking: Marking) -> Result<JetSeries> {
    check_k(k)?;
    check_marking(marking)?;
    let mut p = JetSeries::constant(0, ncols_cap, boundary_correction(k, marking)?);
    for n in 1..=k {
        let sol = solve_system_b(n * ncols_cap, ncols_cap, marking, Some(n))?;
        let f = sol.j_a.get(n).cloned().unwrap_or_else(|| JetSeries::zero(n * ncols_cap, ncols_cap));
        p = &p * &f.substitute_x_one();
    }
    Ok(p)
}

/// `P_k` at `x = 1` from the per-column closed form of each factor.
pub fn pk_closed_b(k: usize, ncols_cap: usize, marking: Marking) -> Result<JetSeries> {
    check_k(k)?;
    check_marking(marking)?;
    let mut p = JetSeries::constant(0, ncols_cap, boundary_correction(k, marking)?);
    for n in 1..=k {
        let f = closed_j_a(n * ncols_cap, ncols_cap, marking, Some(n))?;
        let f = f.get(n).cloned().unwrap_or_else(|| JetSeries::zero(n * ncols_cap, ncols_cap));
        p = &p * &f.substitute_x_one();
    }
    Ok(p)
}

/// Displayed `Q_k(x, y) = Π_N x^N y/D_N · (Σ_N ∂J_N^{(N)} / (x^N y/D_N) − k + 1)`.
pub fn printed_qk_xy_b(k: usize, xcap: usize, ycap: usize) -> Result<RatSeries> {
    check_k(k)?;
    let mut prod = RatSeries::one(xcap, ycap);
    let mut sum = RatSeries::constant(xcap, ycap, int(1 - k as i64));
    for n in 1..=k {
        let d: RatSeries = restricted_den(xcap, ycap, n);
        prod = &(&prod * &RatSeries::xy_pow(xcap, ycap, n, 1)) * &d.inverse()?;
        // divide by x^N y at widened caps so the quotient is exact to (xcap, ycap)
        let (wx, wy) = (xcap + n, ycap + 1);
        let wide = &printed_dj_n_dp(n, wx, wy)? * &restricted_den::<Rational>(wx, wy, n);
        sum = &sum + &wide.div_monomial(n, 1)?;
    }
    Ok(&prod * &sum)
}

/// The chain of displayed expressions for `Q_k(1, t)`, in order.
pub fn qk_lines_b(k: usize, tcap: usize) -> Result<Vec<RatSeries>> {
    check_k(k)?;
    let ph = phi(k, tcap)?;
    let t = RatSeries::x(tcap, 0);
    let c = |r: Rational| RatSeries::constant(tcap, 0, r);
    let kk = k as i64;

    let mut s1 = c(int(1 - kk));
    for n in 1..=k {
        let w = &printed_dj_n_dp_1t(n, tcap + 1)
            * &poly::<Rational>(tcap + 1, 0, &[(0, 0, 1), (1, 0, -(n as i64))]);
        s1 = &s1 + &w.div_monomial(1, 0)?;
    }
    let mut s2 = c(int(1 - kk));
    for n in 1..=k {
        let nn = n as i64;
        s2 = &s2
            + &(&c(int(1)) + &(&t.scale(&int(nn - 1)) + &(&t.pow(2) * &inv_one_minus(nn, tcap)).scale(&rat(nn * (nn - 1), 2))));
    }
    let mut s3 = RatSeries::zero(tcap, 0);
    for n in 1..=k {
        s3 = &s3 + &inv_one_minus(n as i64, tcap).scale(&int(n as i64 - 1));
    }
    let bracket3 = &(&c(int(1)) + &t.scale(&rat(choose2(k) as i64, 2))) + &(&t * &s3).scale(&rat(1, 2));
    Ok(vec![&ph * &s1, &ph * &s2, &ph * &bracket3])
}

/// `Q_k(1,t) = φ(t)(1 + (t/2)C(k,2) + (t/2) Σ_N (N−1)/(1−Nt))`.
pub fn qk_closed_b(k: usize, tcap: usize) -> Result<RatSeries> {
    Ok(qk_lines_b(k, tcap)?.pop().expect("three lines"))
}

fn factorial(k: usize) -> Rational {
    (1..=k).fold(int(1), |acc, i| acc * int(i as i64))
}

/// Displayed exponential generating function `Q̃_k(t)` for type B.
pub fn printed_egf_qk_b(k: usize, tcap: usize) -> Result<RatSeries> {
    check_k(k)?;
    let kf = factorial(k);
    let two_kf = &kf * int(2);
    let kk = int(k as i64);
    let e = exp_t(tcap);
    let t = RatSeries::x(tcap, 0);
    let em1 = &e - &RatSeries::one(tcap, 0);
    let col_k = stirling_egf(k, tcap);
    let p0 = col_k.clone();
    let p1 = em1.pow(k as u32).integral_x().scale(&(int(choose2(k) as i64) / &two_kf));
    let d = &em1.pow(k as u32 - 1) * &e;
    let p2 = (&t * &d).scale(&(&kk / &two_kf));
    let p3 = em1.pow(k as u32).scale(&(&kk / &two_kf));
    let p4 = (&t * &d).integral_x().scale(&(&kk / &two_kf));
    Ok(&(&(&(&p0 + &p1) + &p2) - &p3) - &p4)
}

/// Displayed bivariate `Q̃(t, y)` for type B.
pub fn printed_egf_q_b(tcap: usize, ycap: usize) -> Result<RatSeries> {
    let big_e = bell_egf(tcap, ycap);
    let e = lift(&exp_t(tcap), ycap);
    let t = RatSeries::x(tcap, ycap);
    let one = RatSeries::one(tcap, ycap);
    let em1 = &e - &one;
    let p0 = &big_e - &one;
    let p1 = (&(&em1 * &em1) * &big_e).integral_x().shift(0, 2).scale(&rat(1, 4));
    let p2 = (&(&t * &e) * &big_e).shift(0, 1).scale(&rat(1, 2));
    let p3 = (&em1 * &big_e).shift(0, 1).scale(&rat(1, 2));
    let p4 = (&(&t * &e) * &big_e).integral_x().shift(0, 1).scale(&rat(1, 2));
    Ok(&(&(&(&p0 + &p1) + &p2) - &p3) - &p4)
}

/// The two displayed expressions for `∂Q̃/∂t` (type B), in order.
pub fn printed_dq_dt_b(tcap: usize, ycap: usize) -> Result<Vec<RatSeries>> {
    let (big_e, d1, d2) = bell_egf_derivatives(tcap, ycap);
    let t = RatSeries::x(tcap, ycap);
    let one = RatSeries::one(tcap, ycap);
    let e1 = exp_ct(1, tcap, ycap);
    let e2 = exp_ct(2, tcap, ycap);
    let inner = &(&(&(&(&t.scale(&int(2)) - &one) * &e2) * &big_e).shift(0, 1) + &big_e.shift(0, 1))
        + &(&e1 * &big_e).scale(&int(4));
    let line1 = inner.shift(0, 1).scale(&rat(1, 4));
    let a = (&t.scale(&int(2)) - &one).scale(&rat(1, 4));
    let b = (&t.scale(&int(2)) - &one.scale(&int(5))).scale(&rat(1, 4));
    let line2 = &(&(&a * &d2) - &(&b * &d1)) + &big_e.shift(0, 2).scale(&rat(1, 4));
    Ok(vec![line1, line2])
}

/// Total type B corners over partitions of `[n+1]` with `k` blocks.
pub fn setpart_total_b(table: &StirlingBellTable, n: usize, k: usize) -> SetpartTotals {
    let c = rat(5, 4);
    SetpartTotals {
        printed: stirling_combination(table, n, k, &c, &int(1)),
        derived: stirling_combination(table, n, k, &c, &rat(1, 4)),
    }
}

/// Total type B corners over all partitions of `[n+1]`.
pub fn setpart_bell_b(table: &StirlingBellTable, n: usize) -> SetpartTotals {
    let alpha = rat(2 * n as i64 + 5, 4);
    SetpartTotals {
        printed: super::setpart::bell_combination(table, n, &alpha, &rat(n as i64 - 2, 2)),
        derived: super::setpart::bell_combination(table, n, &alpha, &rat(2 * n as i64 - 1, 4)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bargraph_series(xcap: usize, ycap: usize) -> JetSeries {
        let num = one_minus::<Jet>(xcap, ycap, 1, 0);
        let den: JetSeries = poly(xcap, ycap, &[(0, 0, 1), (1, 0, -1), (1, 1, -1)]);
        &num * &den.inverse().unwrap()
    }

    #[test]
    fn unmarked_collapse() {
        let sol = solve_system_b(8, 8, Marking::Unmarked, None).unwrap();
        assert_eq!(sol.j, bargraph_series(8, 8));
        assert_eq!(closed_j(8, 8, Marking::Unmarked, None).unwrap(), sol.j);
    }

    #[test]
    fn marked_small_totals() {
        let sol = solve_system_b(5, 5, Marking::All, None).unwrap();
        assert_eq!(sol.j.coeff(1, 1).deriv, int(1));
        assert_eq!(sol.j.deriv_part().sum_over_y()[4], int(11));
        let single = solve_system_b(3, 3, Marking::Single { v: 1, w: 1 }, None).unwrap();
        assert_eq!(single.j.coeff(1, 1).deriv, int(1));
    }

    #[test]
    fn closed_forms_agree_with_solver() {
        for m in [Marking::All, Marking::Single { v: 1, w: 1 }, Marking::Single { v: 2, w: 1 }] {
            for h in [None, Some(3)] {
                let sol = solve_system_b(9, 6, m, h).unwrap();
                assert_eq!(closed_j(9, 6, m, h).unwrap(), sol.j, "{m:?} {h:?}");
                assert_eq!(closed_j_a(9, 6, m, h).unwrap(), sol.j_a, "{m:?} {h:?}");
                assert_eq!(closed_j_a_theta(9, 6, m, h).unwrap(), sol.j_a, "{m:?} {h:?}");
            }
        }
    }

    #[test]
    fn height_one() {
        let sol = solve_system_b(6, 6, Marking::All, Some(1)).unwrap();
        assert_eq!(sol.j, printed_j1(6, 6, Marking::All).unwrap());
    }

    #[test]
    fn printed_total_b_expansion() {
        let h = printed_h(6, 6).unwrap();
        assert_eq!(*h.coeff(1, 1), int(1));
        assert_eq!(h.sum_over_y()[3], int(5));
        assert_eq!(h.sum_over_y()[4], int(12));
    }

    #[test]
    fn partitions() {
        let p1 = pk_series_b(1, 6, Marking::All).unwrap();
        for n in 1..=6 {
            assert_eq!(p1.coeff(0, n).deriv, int(1));
        }
        assert_eq!(pk_series_b(2, 6, Marking::All).unwrap().coeff(0, 3).deriv, int(4));
        assert_eq!(pk_series_b(3, 6, Marking::All).unwrap().coeff(0, 3).deriv, int(1));
        assert!(pk_series_b(2, 4, Marking::Single { v: 1, w: 1 }).is_err());
    }

    #[test]
    fn qk_closed_small() {
        let q1 = qk_closed_b(1, 8).unwrap();
        for n in 1..=8 {
            assert_eq!(*q1.coeff(n, 0), int(1));
        }
        assert_eq!(*qk_closed_b(2, 8).unwrap().coeff(3, 0), int(4));
        assert_eq!(*qk_closed_b(3, 8).unwrap().coeff(3, 0), int(1));
    }

    #[test]
    fn setpart_totals_small() {
        let t = StirlingBellTable::new(6);
        assert_eq!(setpart_total_b(&t, 2, 2), SetpartTotals { printed: int(4), derived: int(4) });
        assert_eq!(setpart_total_b(&t, 2, 3), SetpartTotals { printed: rat(7, 4), derived: int(1) });
        assert_eq!(setpart_bell_b(&t, 2), SetpartTotals { printed: rat(15, 2), derived: int(6) });
    }
}
