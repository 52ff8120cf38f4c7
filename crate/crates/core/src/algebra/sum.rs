//! Evaluation of infinite series sums whose terms have growing `x`-order.

use super::series::TruncatedSeries;
use super::Coeff;
use crate::error::{Error, Result};

/// Sums `family(0) + family(1) + …` modulo the caps.
///
/// `min_xorder(i)` is a lower bound on the `x`-order of `family(i)` and must be
/// strictly increasing; summation stops at the first index whose bound exceeds
/// `xcap`, since every later term then vanishes below the caps. `family` is
/// invoked with consecutive indices starting at zero, so it may carry state
/// from one term to the next.
pub fn bounded_sum<C, F, B>(
    xcap: usize,
    ycap: usize,
    mut family: F,
    min_xorder: B,
) -> Result<TruncatedSeries<C>>
where
    C: Coeff,
    F: FnMut(usize) -> TruncatedSeries<C>,
    B: Fn(usize) -> usize,
{
    let mut acc = TruncatedSeries::zero(xcap, ycap);
    let mut previous: Option<usize> = None;
    for index in 0.. {
        let bound = min_xorder(index);
        if let Some(prev) = previous {
            if bound <= prev {
                return Err(Error::NonIncreasingBound {
                    index,
                    previous: prev,
                    current: bound,
                });
            }
        }
        previous = Some(bound);
        if bound > xcap {
            break;
        }
        let term = family(index);
        if let Some(actual) = term.x_order() {
            if actual < bound {
                return Err(Error::BoundViolated {
                    index,
                    claimed: bound,
                    actual,
                });
            }
        }
        acc = acc.try_add(&term)?;
    }
    Ok(acc)
}
