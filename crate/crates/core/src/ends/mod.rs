//! Ends of finitely generated groups through Cayley balls, and integer
//! functions with finite boundary.

mod ai;
mod group;

pub use ai::{almost_invariant_rank, neighborhood, swarup_kernel_test, AiFunction, AiRank};
pub use group::{cayley_ball, CayleyBall, GroupElem, GroupSpec};

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::limits::Limits;

/// Truncated end count of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndsEstimate {
    /// Components of `{r_in ≤ |g| ≤ r_out}` meeting the sphere of radius `r_out`.
    pub count: usize,
    pub r_in: u32,
    pub r_out: u32,
    /// The same count at the next inner radius.
    pub next_count: usize,
    pub stabilized: bool,
    /// The count grew and is at least 3: infinitely many ends are likely.
    pub diverging: bool,
}

fn unbounded_components(ball: &CayleyBall, r_in: u32, r_out: u32) -> usize {
    let (_, reaches) = ball.components(r_in, r_out);
    reaches.iter().filter(|&&r| r).count()
}

/// Counts unbounded directions of the Cayley graph outside the ball of
/// radius `r_in - 1`, using the sphere of radius `r_out` as the horizon.
///
/// The comparison pair is `(r_in + 1, ⌈r_out·(r_in+1)/r_in⌉)`, keeping the ratio.
pub fn ends_estimate(g: &GroupSpec, r_in: u32, r_out: u32, limits: &Limits) -> Result<EndsEstimate> {
    if r_in == 0 {
        return input("inner radius must be at least 1");
    }
    if r_out < 2 * r_in {
        return input("outer radius must be at least twice the inner radius");
    }
    let next_in = r_in + 1;
    let next_out = (r_out * next_in).div_ceil(r_in);
    let ball = cayley_ball(g, next_out, limits)?;
    let count = unbounded_components(&ball, r_in, r_out);
    let next_count = unbounded_components(&ball, next_in, next_out);
    Ok(EndsEstimate {
        count,
        r_in,
        r_out,
        next_count,
        stabilized: count == next_count,
        diverging: next_count > count && count >= 3,
    })
}
