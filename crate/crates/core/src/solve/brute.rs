use super::{full_mask, require_n, MedianResult, PlacementCost, SolverKind};
use crate::distance::KParam;
use crate::error::Result;
use crate::model::{Profile, Ranking};

pub const BRUTE_FORCE_MAX_N: usize = 10;

struct Search<'a> {
    cost: &'a PlacementCost,
    n: usize,
    all: bool,
    prefix: Vec<usize>,
    best: u64,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn visit(&mut self, rest: u64, acc: u64) {
        if rest == 0 {
            if acc < self.best {
                self.best = acc;
                self.found.clear();
                self.found.push(self.prefix.clone());
            } else if acc == self.best && self.all {
                self.found.push(self.prefix.clone());
            }
            return;
        }
        for c in 0..self.n {
            if rest >> c & 1 == 1 {
                let next = rest & !(1 << c);
                self.prefix.push(c);
                let step = self.cost.cost(c, next);
                self.visit(next, acc + step);
                self.prefix.pop();
            }
        }
    }
}

/// Scores all `n!` rankings. With `all`, returns every optimal ranking;
/// otherwise the lexicographically smallest one.
pub fn median_bruteforce(profile: &Profile, k: KParam, all: bool) -> Result<MedianResult> {
    let n = profile.n();
    require_n(n, BRUTE_FORCE_MAX_N, "brute force")?;
    // Summing per vote keeps this solver independent of the tally path used by DP.
    let cost = PlacementCost::by_votes(profile, k);
    let mut search = Search {
        cost: &cost,
        n,
        all,
        prefix: Vec::with_capacity(n),
        best: u64::MAX,
        found: Vec::new(),
    };
    search.visit(full_mask(n), 0);
    let medians = search
        .found
        .into_iter()
        .map(|order| Ranking::new(order).expect("enumerated permutation"))
        .collect();
    Ok(MedianResult {
        k,
        optimal_score: search.best,
        medians,
        complete: all,
        solver: SolverKind::BruteForce,
    })
}
