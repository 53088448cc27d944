use super::{full_mask, require_n, require_small_k, MedianResult, PlacementCost, SolverKind};
use crate::distance::KParam;
use crate::error::{Error, Result};
use crate::model::{PairTally, Profile, Ranking, TripleTopTally, MAX_CANDIDATES};
use crate::reduce::{ConditionalRule, ConstraintSet, Scheme};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BnbStats {
    pub nodes: u64,
    pub leaves: u64,
    pub bound_prunes: u64,
    pub forced_prunes: u64,
    pub conditional_prunes: u64,
}

/// Cheapest possible charge for the subsets of the unplaced set, taking
/// each pair and triple at its best orientation independently.
struct Relaxation {
    n: usize,
    pair_min: Vec<u64>,
    triple_min: Option<Vec<u64>>,
}

impl Relaxation {
    fn new(pairs: &PairTally, triples: Option<&TripleTopTally>) -> Self {
        let n = pairs.n();
        let m = pairs.m();
        let mut pair_min = vec![0u64; n * n];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    pair_min[a * n + b] = pairs.before(a, b).min(pairs.before(b, a));
                }
            }
        }
        let triple_min = triples.map(|t| {
            let mut table = vec![0u64; n * n * n];
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if a != b && b != c && a != c {
                            let best = t
                                .top_count(a, b, c)
                                .max(t.top_count(b, a, c))
                                .max(t.top_count(c, a, b));
                            table[(a * n + b) * n + c] = m - best;
                        }
                    }
                }
            }
            table
        });
        Relaxation {
            n,
            pair_min,
            triple_min,
        }
    }

    fn full(&self, rest: u64) -> u64 {
        let members: Vec<usize> = (0..self.n).filter(|&c| rest >> c & 1 == 1).collect();
        let mut total = 0;
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate().skip(i + 1) {
                total += self.pair_min[a * self.n + b];
                if let Some(t) = &self.triple_min {
                    for &c in &members[j + 1..] {
                        total += t[(a * self.n + b) * self.n + c];
                    }
                }
            }
        }
        total
    }

    /// Part of the bound that disappears once `c` leaves `rest ∪ {c}`.
    fn removed(&self, c: usize, rest: u64) -> u64 {
        let mut total = 0;
        let mut bits = rest;
        while bits != 0 {
            let a = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            total += self.pair_min[c * self.n + a];
            if let Some(t) = &self.triple_min {
                let mut others = bits;
                while others != 0 {
                    let b = others.trailing_zeros() as usize;
                    others &= others - 1;
                    total += t[(c * self.n + a) * self.n + b];
                }
            }
        }
        total
    }
}

struct Search<'a> {
    n: usize,
    cost: &'a PlacementCost,
    relax: &'a Relaxation,
    preds: Vec<u64>,
    leaders: u64,
    conditional: &'a [ConditionalRule],
    pairs: &'a PairTally,
    bound: u64,
    incumbent: Option<Vec<usize>>,
    prefix: Vec<usize>,
    stats: BnbStats,
}

impl Search<'_> {
    /// Whether a complete ranking scoring `lb` could still replace the
    /// incumbent: strictly better, or equal when nothing was found yet.
    fn worth(&self, lb: u64) -> bool {
        lb < self.bound || (lb == self.bound && self.incumbent.is_none())
    }

    fn visit(&mut self, rest: u64, acc: u64, remaining_lb: u64) {
        self.stats.nodes += 1;
        if rest == 0 {
            self.stats.leaves += 1;
            if !self.conditional.is_empty() {
                let r = Ranking::new(self.prefix.clone()).expect("prefix is a permutation");
                for rule in self.conditional {
                    let flagged = rule
                        .check(self.pairs, &r)
                        .map(|v| !v.is_empty())
                        .unwrap_or(false);
                    if flagged {
                        self.stats.conditional_prunes += 1;
                        return;
                    }
                }
            }
            if self.worth(acc) {
                self.bound = acc;
                self.incumbent = Some(self.prefix.clone());
            }
            return;
        }
        let placed = full_mask(self.n) & !rest;
        for c in 0..self.n {
            if rest >> c & 1 == 0 {
                continue;
            }
            if self.preds[c] & !placed != 0 || (placed == 0 && self.leaders >> c & 1 == 0) {
                self.stats.forced_prunes += 1;
                continue;
            }
            let next = rest & !(1 << c);
            let step = self.cost.cost(c, next);
            let lb = remaining_lb - self.relax.removed(c, next);
            if !self.worth(acc + step + lb) {
                self.stats.bound_prunes += 1;
                continue;
            }
            self.prefix.push(c);
            self.visit(next, acc + step, lb);
            self.prefix.pop();
        }
    }
}

/// Score of the greedy ranking that repeatedly places the cheapest candidate.
fn greedy(cost: &PlacementCost, n: usize) -> u64 {
    let mut rest = full_mask(n);
    let mut total = 0;
    while rest != 0 {
        let (step, c) = (0..n)
            .filter(|&c| rest >> c & 1 == 1)
            .map(|c| (cost.cost(c, rest & !(1 << c)), c))
            .min()
            .expect("nonempty");
        total += step;
        rest &= !(1 << c);
    }
    total
}

pub fn median_bnb(profile: &Profile, k: KParam, constraints: &ConstraintSet) -> Result<MedianResult> {
    median_bnb_with_stats(profile, k, constraints).map(|(r, _)| r)
}

/// Depth-first search over prefixes, pruned by forced pairs, winner sets,
/// the conditional 3-wise rules (at leaves) and a relaxation bound.
///
/// Every true median satisfies all constraints, so the search returns the
/// lexicographically smallest median, like the DP.
pub fn median_bnb_with_stats(
    profile: &Profile,
    k: KParam,
    constraints: &ConstraintSet,
) -> Result<(MedianResult, BnbStats)> {
    require_small_k(k, "bnb")?;
    let n = profile.n();
    require_n(n, MAX_CANDIDATES, "bnb")?;
    if constraints.n() != n {
        return Err(Error::CandidateMismatch {
            expected: n,
            found: constraints.n(),
        });
    }
    let scheme = Scheme::from_k(k).expect("k is 2 or 3");
    let pairs = profile.pair_tally();
    let triples = (k.get() == 3).then(|| profile.triple_tally());
    let relax = Relaxation::new(&pairs, triples.as_ref());
    let cost = PlacementCost::new(profile, k);
    let conditional: &[ConditionalRule] = if scheme == Scheme::ThreeWise {
        constraints.conditional()
    } else {
        &[]
    };
    let full = full_mask(n);
    let mut search = Search {
        n,
        cost: &cost,
        relax: &relax,
        preds: constraints.predecessor_masks(scheme),
        leaders: constraints.allowed_leaders(scheme),
        conditional,
        pairs: &pairs,
        bound: greedy(&cost, n),
        incumbent: None,
        prefix: Vec::with_capacity(n),
        stats: BnbStats::default(),
    };
    let lb = relax.full(full);
    search.visit(full, 0, lb);
    let order = search.incumbent.ok_or_else(|| {
        Error::InvalidProfile("constraints exclude every ranking; were they built for this profile?".into())
    })?;
    Ok((
        MedianResult {
            k,
            optimal_score: search.bound,
            medians: vec![Ranking::new(order)?],
            complete: false,
            solver: SolverKind::BranchAndBound,
        },
        search.stats,
    ))
}
