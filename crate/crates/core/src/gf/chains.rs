//! Chain sums over a strictly lower-triangular kernel.
//!
//! Both corner recurrences have the shape `F_a = (source) + Σ_{b<a} K_{ab} F_b`
//! with `x`-order of `K_{ab}` at least `a`. Unrolling gives sums over strictly
//! increasing chains `j = i_{s+1} < i_s < … < i_0`:
//!
//! ```text
//! C_a(j, s) = Σ_{j=i_{s+1}<…<i_0=a} Π_{ℓ=0}^{s} K_{i_ℓ i_{ℓ+1}}
//! C(j, s)   = Σ_a C_a(j, s)
//! ```
//!
//! The `x`-order of `C(j, s)` is at least `Σ_{ℓ≤s} i_ℓ ≥ (s+1)j + C(s+2, 2)`,
//! which bounds the sum over `s`.

use super::JetSeries;
use crate::algebra::bounded_sum;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Kernel {
    xcap: usize,
    ycap: usize,
    amax: usize,
    // entries[a][b], 1 ≤ b < a ≤ amax; `None` for identically zero entries
    entries: Vec<Vec<Option<JetSeries>>>,
}

/// Chain sums from a fixed start `j`, summed over `s ≥ 0`.
#[derive(Debug, Clone)]
pub struct ChainSums {
    /// `Σ_s C(j, s)`.
    pub total: JetSeries,
    /// `by_end[a] = Σ_s C_a(j, s)`; zero for `a ≤ j`.
    pub by_end: Vec<JetSeries>,
}

impl Kernel {
    /// Builds `K_{ab}` for `1 ≤ b < a ≤ amax`. Each entry must have `x`-order
    /// at least `a`.
    pub fn build(
        xcap: usize,
        ycap: usize,
        amax: usize,
        mut entry: impl FnMut(usize, usize) -> Result<JetSeries>,
    ) -> Result<Kernel> {
        let mut entries = vec![Vec::new(); amax + 1];
        for a in 1..=amax {
            entries[a] = vec![None; a];
            for b in 1..a {
                let k = entry(a, b)?;
                if let Some(order) = k.x_order() {
                    if order < a {
                        return Err(Error::BoundViolated {
                            index: a,
                            claimed: a,
                            actual: order,
                        });
                    }
                    entries[a][b] = Some(k);
                }
            }
        }
        Ok(Kernel {
            xcap,
            ycap,
            amax,
            entries,
        })
    }

    pub fn amax(&self) -> usize {
        self.amax
    }

    pub fn get(&self, a: usize, b: usize) -> Option<&JetSeries> {
        self.entries.get(a).and_then(|row| row.get(b)).and_then(Option::as_ref)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Option::is_none)
    }

    /// Nonzero terms of `K_{ab}` as `(i, j, c)`.
    pub fn terms(&self, a: usize, b: usize) -> Vec<(usize, usize, crate::algebra::Jet)> {
        self.get(a, b)
            .map(|k| k.terms().map(|(i, j, c)| (i, j, c.clone())).collect())
            .unwrap_or_default()
    }

    pub fn chain_sums(&self, j: usize) -> Result<ChainSums> {
        let (xcap, ycap, amax) = (self.xcap, self.ycap, self.amax);
        let zero = JetSeries::zero(xcap, ycap);
        let mut by_end = vec![zero.clone(); amax + 1];
        // current[a] = C_a(j, s) for the most recent s
        let mut current: Vec<Option<JetSeries>> = vec![None; amax + 1];
        let total = bounded_sum(
            xcap,
            ycap,
            |s| {
                let next: Vec<Option<JetSeries>> = (0..=amax)
                    .map(|a| {
                        if a <= j {
                            return None;
                        }
                        if s == 0 {
                            return self.get(a, j).cloned();
                        }
                        let mut acc: Option<JetSeries> = None;
                        for m in (j + 1)..a {
                            if let (Some(k), Some(prev)) = (self.get(a, m), &current[m]) {
                                let term = k * prev;
                                acc = Some(match acc {
                                    Some(t) => &t + &term,
                                    None => term,
                                });
                            }
                        }
                        acc
                    })
                    .collect();
                current = next;
                let mut sum = zero.clone();
                for (a, c) in current.iter().enumerate() {
                    if let Some(c) = c {
                        by_end[a] = &by_end[a] + c;
                        sum = &sum + c;
                    }
                }
                sum
            },
            |s| (s + 1) * j + (s + 2) * (s + 1) / 2,
        )?;
        Ok(ChainSums { total, by_end })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::algebra::Jet;

    #[test]
    fn zero_kernel_has_zero_chains() {
        let k = Kernel::build(6, 3, 6, |_, _| Ok(JetSeries::zero(6, 3))).unwrap();
        assert!(k.is_zero());
        let c = k.chain_sums(1).unwrap();
        assert!(c.total.is_zero());
    }

    #[test]
    fn chain_sum_matches_hand_expansion() {
        // K_{ab} = x^a: chains from j=1 are 1 < i_s < … < i_0,
        // C(1,0) = x^2 + x^3 + …, C(1,1) = x^{2+3} + …
        let k = Kernel::build(6, 0, 6, |a, _| Ok(JetSeries::xy_pow(6, 0, a, 0))).unwrap();
        let c = k.chain_sums(1).unwrap();
        // x^5: single-step 5→1, and two-step chains with i_0 + i_1 = 5, i_1 > 1: (3,2)
        assert_eq!(*c.total.coeff(5, 0), Jet::constant(int(2)));
        assert_eq!(*c.total.coeff(2, 0), Jet::constant(int(1)));
        assert_eq!(*c.by_end[3].coeff(5, 0), Jet::constant(int(1)));
    }

    #[test]
    fn kernel_order_is_enforced() {
        let r = Kernel::build(4, 1, 3, |_, _| Ok(JetSeries::x(4, 1)));
        assert!(matches!(r, Err(Error::BoundViolated { .. })));
    }
}
