//! Cost of placing a candidate on top of a set of still-unplaced candidates.
//!
//! Building a ranking left to right, every subset `S` is charged when its
//! first member `c` is placed: the votes whose top of `S` is not `c` disagree.
//! With `R` the unplaced set, the charge of `c` covers all `S ⊆ R` with
//! `c ∈ S` and `2 ≤ |S| ≤ k`.

use crate::distance::KParam;
use crate::model::{PairTally, Profile, TripleTopTally};

fn choose(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Per distinct vote, bitmasks of the candidates ahead of and behind each
/// candidate.
#[derive(Debug, Clone)]
struct VoteMasks {
    ahead: Vec<u64>,
    behind: Vec<u64>,
    weight: u64,
}

#[derive(Debug, Clone)]
enum Backend {
    /// Sums over votes: `|R ∩ ahead| + Σ_j [C(|R|−1, j) − C(|R ∩ behind|, j)]`.
    Votes(Vec<VoteMasks>),
    /// Sums over tallies: pairs `before[y][c]` and triples `m − top(c, a, b)`.
    Tallies {
        pairs: PairTally,
        triples: Option<TripleTopTally>,
    },
}

#[derive(Debug, Clone)]
pub struct PlacementCost {
    n: usize,
    k: usize,
    m: u64,
    backend: Backend,
}

impl PlacementCost {
    /// Chooses the cheaper backend for `k ≤ 3`; larger `k` always sums over votes.
    pub fn new(profile: &Profile, k: KParam) -> Self {
        let n = profile.n();
        let distinct = profile.distinct_votes().len();
        if k.get() > 3 || distinct * 2 <= n * n / 2 {
            Self::by_votes(profile, k)
        } else {
            Self::by_tallies(profile, k)
        }
    }

    pub fn by_votes(profile: &Profile, k: KParam) -> Self {
        let n = profile.n();
        let votes = profile
            .distinct_votes()
            .into_iter()
            .map(|(r, weight)| {
                let mut ahead = vec![0u64; n];
                let mut behind = vec![0u64; n];
                let mut seen = 0u64;
                for &c in r.order() {
                    ahead[c] = seen;
                    seen |= 1 << c;
                }
                let all = seen;
                for c in 0..n {
                    behind[c] = all & !ahead[c] & !(1 << c);
                }
                VoteMasks {
                    ahead,
                    behind,
                    weight,
                }
            })
            .collect();
        PlacementCost {
            n,
            k: k.get(),
            m: profile.m(),
            backend: Backend::Votes(votes),
        }
    }

    /// Only for `k ∈ {2, 3}`.
    pub fn by_tallies(profile: &Profile, k: KParam) -> Self {
        assert!(k.get() <= 3, "tally backend supports k <= 3");
        PlacementCost {
            n: profile.n(),
            k: k.get(),
            m: profile.m(),
            backend: Backend::Tallies {
                pairs: profile.pair_tally(),
                triples: (k.get() == 3).then(|| profile.triple_tally()),
            },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Charge for placing `c` first among `rest`, where `c ∉ rest`.
    pub fn cost(&self, c: usize, rest: u64) -> u64 {
        debug_assert!(rest >> c & 1 == 0);
        match &self.backend {
            Backend::Votes(votes) => {
                let size = rest.count_ones() as u64;
                let pair_only = |v: &VoteMasks| (rest & v.ahead[c]).count_ones() as u64;
                match self.k {
                    2 => votes.iter().map(|v| pair_only(v) * v.weight).sum(),
                    3 => {
                        let all = choose(size, 2);
                        votes
                            .iter()
                            .map(|v| {
                                let b = (rest & v.behind[c]).count_ones() as u64;
                                (pair_only(v) + all - choose(b, 2)) * v.weight
                            })
                            .sum()
                    }
                    k => votes
                        .iter()
                        .map(|v| {
                            let b = (rest & v.behind[c]).count_ones() as u64;
                            let extra: u64 = (2..k as u64)
                                .map(|j| choose(size, j) - choose(b, j))
                                .sum();
                            (pair_only(v) + extra) * v.weight
                        })
                        .sum(),
                }
            }
            Backend::Tallies { pairs, triples } => {
                let mut total = 0u64;
                let mut rem = rest;
                while rem != 0 {
                    let a = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    total += pairs.before(a, c);
                    if let Some(t) = triples {
                        let mut others = rem;
                        while others != 0 {
                            let b = others.trailing_zeros() as usize;
                            others &= others - 1;
                            total += self.m - t.top_count(c, a, b);
                        }
                    }
                }
                total
            }
        }
    }
}
