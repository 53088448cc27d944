//! k-wise Kendall-tau distances.
//!
//! The k-wise distance counts the subsets of at most `k` candidates on which
//! two rankings disagree about the top element. Singletons never disagree and
//! are skipped. For `k = 2` this is the inversion count.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{PairTally, Profile, Ranking, TripleTopTally};

/// Largest subset size considered by the distance, `k ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KParam(usize);

impl KParam {
    pub const TWO: KParam = KParam(2);
    pub const THREE: KParam = KParam(3);

    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidK(k));
        }
        Ok(KParam(k))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for KParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn check_same(pi: &Ranking, sigma: &Ranking) -> Result<()> {
    if pi.len() != sigma.len() {
        return Err(Error::CandidateMismatch {
            expected: pi.len(),
            found: sigma.len(),
        });
    }
    Ok(())
}

/// Exhaustive definition: enumerates every subset of size `2..=k` and
/// compares the two tops. Exponential; meant as a reference.
pub fn distance_oracle(pi: &Ranking, sigma: &Ranking, k: KParam) -> Result<u64> {
    check_same(pi, sigma)?;
    let n = pi.len();
    let mut count = 0u64;
    // Depth-first over subsets in increasing candidate order, carrying the
    // current top under each ranking.
    let mut stack: Vec<(usize, usize, usize, usize)> = Vec::new();
    for first in 0..n {
        stack.push((first, 1, first, first));
    }
    while let Some((last, size, top_pi, top_sigma)) = stack.pop() {
        if size >= 2 && top_pi != top_sigma {
            count += 1;
        }
        if size == k.get() {
            continue;
        }
        for next in last + 1..n {
            let tp = if pi.prefers(next, top_pi) { next } else { top_pi };
            let ts = if sigma.prefers(next, top_sigma) {
                next
            } else {
                top_sigma
            };
            stack.push((next, size + 1, tp, ts));
        }
    }
    Ok(count)
}

/// Number of pairs ordered differently by the two rankings.
pub fn inversions(pi: &Ranking, sigma: &Ranking) -> Result<u64> {
    check_same(pi, sigma)?;
    let order = pi.order();
    let mut count = 0u64;
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i + 1..] {
            if sigma.prefers(b, a) {
                count += 1;
            }
        }
    }
    Ok(count)
}

fn choose2(a: u64) -> u64 {
    a * a.saturating_sub(1) / 2
}

fn choose3(a: u64) -> u64 {
    if a < 3 {
        0
    } else {
        a * (a - 1) * (a - 2) / 6
    }
}

/// Counting formulas for `k ∈ {2, 3}`.
///
/// For `k = 3` a triple agrees on its top `z` exactly when both other members
/// follow `z` in both rankings, so the triple disagreements are
/// `C(n,3) − Σ_z C(a_z, 2)` with `a_z` the candidates behind `z` in both.
pub fn distance_fast(pi: &Ranking, sigma: &Ranking, k: KParam) -> Result<u64> {
    let inv = inversions(pi, sigma)?;
    match k.get() {
        2 => Ok(inv),
        3 => {
            let n = pi.len();
            let mut agreeing = 0u64;
            for z in 0..n {
                let behind_both = pi.order()[pi.position(z) + 1..]
                    .iter()
                    .filter(|&&y| sigma.prefers(z, y))
                    .count() as u64;
                agreeing += choose2(behind_both);
            }
            Ok(inv + choose3(n as u64) - agreeing)
        }
        other => Err(Error::UnsupportedK {
            k: other,
            solver: "distance_fast",
        }),
    }
}

/// Total distance from `pi` to every vote, multiplicities included.
///
/// Uses the counting formulas for `k ≤ 3` and the exhaustive definition
/// otherwise.
pub fn profile_distance(pi: &Ranking, profile: &Profile, k: KParam) -> Result<u64> {
    if pi.len() != profile.n() {
        return Err(Error::CandidateMismatch {
            expected: profile.n(),
            found: pi.len(),
        });
    }
    let mut total = 0u64;
    for (vote, w) in profile.votes() {
        let d = if k.get() <= 3 {
            distance_fast(pi, vote, k)?
        } else {
            distance_oracle(pi, vote, k)?
        };
        total += d * w;
    }
    Ok(total)
}

/// `profile_distance(pi_star) − profile_distance(pi)`; negative when
/// `pi_star` is the better ranking.
pub fn swap_delta(pi: &Ranking, pi_star: &Ranking, profile: &Profile, k: KParam) -> Result<i64> {
    let before = profile_distance(pi, profile, k)?;
    let after = profile_distance(pi_star, profile, k)?;
    Ok(after as i64 - before as i64)
}

/// Scores rankings from precomputed tallies in O(n³), independent of the
/// number of votes.
#[derive(Debug, Clone)]
pub struct TallyScorer {
    k: KParam,
    pairs: PairTally,
    triples: Option<TripleTopTally>,
}

impl TallyScorer {
    pub fn new(profile: &Profile, k: KParam) -> Result<Self> {
        let triples = match k.get() {
            2 => None,
            3 => Some(profile.triple_tally()),
            other => {
                return Err(Error::UnsupportedK {
                    k: other,
                    solver: "TallyScorer",
                })
            }
        };
        Ok(TallyScorer {
            k,
            pairs: profile.pair_tally(),
            triples,
        })
    }

    pub fn k(&self) -> KParam {
        self.k
    }

    pub fn pairs(&self) -> &PairTally {
        &self.pairs
    }

    pub fn triples(&self) -> Option<&TripleTopTally> {
        self.triples.as_ref()
    }

    /// Σ_{x before y in pi} before[y][x] + Σ_S (m − topcount[S][top_S(pi)]).
    pub fn score(&self, pi: &Ranking) -> Result<u64> {
        let n = self.pairs.n();
        if pi.len() != n {
            return Err(Error::CandidateMismatch {
                expected: n,
                found: pi.len(),
            });
        }
        let m = self.pairs.m();
        let order = pi.order();
        let mut total = 0u64;
        for (i, &x) in order.iter().enumerate() {
            for &y in &order[i + 1..] {
                total += self.pairs.before(y, x);
            }
        }
        if let Some(triples) = &self.triples {
            for (i, &w) in order.iter().enumerate() {
                let rest = &order[i + 1..];
                for (j, &a) in rest.iter().enumerate() {
                    for &b in &rest[j + 1..] {
                        total += m - triples.top_count(w, a, b);
                    }
                }
            }
        }
        Ok(total)
    }
}
