use crate::error::{Error, Result};
use crate::model::{PairTally, ThresholdRatio};

fn check_alpha(alpha: ThresholdRatio) -> Result<()> {
    if alpha.numer() * 2 < alpha.denom() {
        return Err(Error::InvalidThreshold(format!(
            "alpha-Smith sets need alpha >= 1/2, got {alpha}"
        )));
    }
    Ok(())
}

/// Whether every member of `mask` beats every outsider at ratio `alpha`.
fn dominates(pairs: &PairTally, alpha: ThresholdRatio, mask: u64) -> bool {
    let n = pairs.n();
    (0..n).filter(|&x| mask >> x & 1 == 1).all(|x| {
        (0..n)
            .filter(|&y| mask >> y & 1 == 0)
            .all(|y| pairs.at_least(x, y, alpha))
    })
}

/// Smallest nonempty dominant set at ratio `alpha` (non-strict `≥`).
///
/// A dominant set containing `x` must contain every `y` that `x` fails to
/// beat, so the closure of `x` under "fails to beat" is the least dominant
/// set through `x`; the answer is the smallest such closure.
pub fn alpha_smith_set(pairs: &PairTally, alpha: ThresholdRatio) -> Result<Vec<usize>> {
    check_alpha(alpha)?;
    let n = pairs.n();
    let fails: Vec<u64> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| y != x && !pairs.at_least(x, y, alpha))
                .fold(0u64, |acc, y| acc | 1 << y)
        })
        .collect();
    let mut best: Option<u64> = None;
    for x in 0..n {
        let mut closure = 1u64 << x;
        let mut frontier = closure;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = fails[v] & !closure;
            closure |= new;
            frontier |= new;
        }
        if best.is_none_or(|b| closure.count_ones() < b.count_ones()) {
            best = Some(closure);
        }
    }
    Ok(mask_to_vec(best.unwrap_or(0), n))
}

/// Reference version trying every nonempty subset. Limited to `n ≤ 20`.
pub fn alpha_smith_set_bruteforce(pairs: &PairTally, alpha: ThresholdRatio) -> Result<Vec<usize>> {
    check_alpha(alpha)?;
    let n = pairs.n();
    if n > 20 {
        return Err(Error::TooManyCandidates {
            n,
            max: 20,
            solver: "alpha_smith_set_bruteforce",
        });
    }
    let full = (1u64 << n) - 1;
    let best = (1..=full)
        .filter(|&mask| dominates(pairs, alpha, mask))
        .min_by_key(|mask| (mask.count_ones(), *mask))
        .unwrap_or(full);
    Ok(mask_to_vec(best, n))
}

fn mask_to_vec(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&c| mask >> c & 1 == 1).collect()
}
