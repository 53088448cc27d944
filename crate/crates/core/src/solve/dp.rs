use super::{full_mask, require_n, require_small_k, MedianResult, PlacementCost, SolverKind};
use crate::distance::KParam;
use crate::error::Result;
use crate::model::{Profile, Ranking};

pub const DP_MAX_N: usize = 24;

/// Subset dynamic program: `best[R]` is the cheapest way to order the
/// unplaced set `R`, with `best[R] = min_c cost(c, R∖c) + best[R∖c]`.
///
/// States are filled in increasing numeric order, which visits every
/// `R ∖ c` before `R`. Reconstruction takes the smallest optimal `c` at each
/// step, giving the lexicographically smallest median.
pub fn median_dp(profile: &Profile, k: KParam) -> Result<MedianResult> {
    require_small_k(k, "dp")?;
    let n = profile.n();
    require_n(n, DP_MAX_N, "dp")?;
    let cost = PlacementCost::new(profile, k);
    let full = full_mask(n);
    let mut best = vec![0u64; 1usize << n];
    for rest in 1..=full {
        let mut value = u64::MAX;
        let mut bits = rest;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let without = rest & !(1 << c);
            let v = cost.cost(c, without) + best[without as usize];
            value = value.min(v);
        }
        best[rest as usize] = value;
    }
    let mut order = Vec::with_capacity(n);
    let mut rest = full;
    while rest != 0 {
        let target = best[rest as usize];
        let c = (0..n)
            .find(|&c| {
                rest >> c & 1 == 1 && {
                    let without = rest & !(1 << c);
                    cost.cost(c, without) + best[without as usize] == target
                }
            })
            .expect("some candidate attains the optimum");
        order.push(c);
        rest &= !(1 << c);
    }
    Ok(MedianResult {
        k,
        optimal_score: best[full as usize],
        medians: vec![Ranking::new(order)?],
        complete: false,
        solver: SolverKind::Dp,
    })
}
