use super::thresholds::{
    rational, s_majority_admits, s_majority_pair_threshold, Rational,
};
use super::{alpha_smith_set, ConditionalRule, ConstraintSet, Rule, Scheme};
use crate::distance::{profile_distance, KParam};
use crate::error::{Error, Result};
use crate::model::{PairTally, Profile, ThresholdRatio};
use crate::solve::{MedianResult, SolverKind};

/// Evaluates the unconditional reduction rules on one profile.
pub struct Reducer<'a> {
    profile: &'a Profile,
    pairs: PairTally,
}

impl<'a> Reducer<'a> {
    pub fn new(profile: &'a Profile) -> Self {
        Reducer {
            profile,
            pairs: profile.pair_tally(),
        }
    }

    pub fn pairs(&self) -> &PairTally {
        &self.pairs
    }

    fn n(&self) -> usize {
        self.profile.n()
    }

    fn m(&self) -> u64 {
        self.profile.m()
    }

    fn before(&self, x: usize, y: usize) -> u128 {
        self.pairs.before(x, y) as u128
    }

    fn ordered_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n();
        (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
    }

    /// Strict: `before·n > (n − 1)·m`.
    pub fn extended_always(&self) -> ConstraintSet {
        let (n, m) = (self.n() as u128, self.m() as u128);
        let mut cs = ConstraintSet::new(self.n());
        for (x, y) in self.ordered_pairs() {
            if self.before(x, y) * n > (n - 1) * m {
                cs.force(Scheme::TwoWise, x, y, Rule::ExtendedAlways);
            }
        }
        cs
    }

    /// Strict: `before·(n² − 3n + 4) > (n² − 3n + 3)·m`.
    pub fn unanimity_3wise(&self) -> ConstraintSet {
        let (n, m) = (self.n() as u128, self.m() as u128);
        let d = n * n + 4 - 3 * n;
        let mut cs = ConstraintSet::new(self.n());
        for (x, y) in self.ordered_pairs() {
            if self.before(x, y) * d > (d - 1) * m {
                cs.force(Scheme::ThreeWise, x, y, Rule::Unanimity3);
            }
        }
        cs
    }

    /// Largest `s ≤ 3/4` for which `x` is non-dirty: the smallest winning
    /// share over its duels.
    fn dirtiness_margin(&self, x: usize) -> Rational {
        let m = self.m() as i128;
        let worst = (0..self.n())
            .filter(|&y| y != x)
            .map(|y| self.pairs.before(x, y).max(self.pairs.before(y, x)))
            .min()
            .unwrap_or(self.m());
        rational(worst as i128, m).min(rational(3, 4))
    }

    /// For each non-dirty `x` at some admissible `s`, fixes every duel of `x`
    /// won by a share strictly above `3/2 − s + (s − 1)/(n − 1)`.
    ///
    /// Admissibility grows with `s` and the share threshold falls with `s`,
    /// so the largest usable value, `min(s_x, 3/4)`, is the only one tried.
    pub fn extended_s_majority(&self) -> ConstraintSet {
        let n = self.n();
        let mut cs = ConstraintSet::new(n);
        if n < 3 {
            return cs;
        }
        let m = Rational::from_integer(self.m() as i128);
        for x in 0..n {
            let s = self.dirtiness_margin(x);
            if !s_majority_admits(s, n) {
                continue;
            }
            let q = s_majority_pair_threshold(s, n);
            for y in (0..n).filter(|&y| y != x) {
                if Rational::from_integer(self.pairs.before(x, y) as i128) > q * m {
                    cs.force(Scheme::TwoWise, x, y, Rule::ExtendedSMajority);
                }
                if Rational::from_integer(self.pairs.before(y, x) as i128) > q * m {
                    cs.force(Scheme::TwoWise, y, x, Rule::ExtendedSMajority);
                }
            }
        }
        cs
    }

    /// Strict: `before·(4n − 6) > (3n − 5)·m` against every rival. Any
    /// candidate at `≥ 3/4` everywhere also passes since `3/4 > f(n)`.
    pub fn condorcet_3wise(&self) -> ConstraintSet {
        let (n, m) = (self.n() as u128, self.m() as u128);
        let mut cs = ConstraintSet::new(self.n());
        if self.n() < 2 {
            return cs;
        }
        for x in 0..self.n() {
            let wins = (0..self.n())
                .filter(|&y| y != x)
                .all(|y| self.before(x, y) * (4 * n - 6) > (3 * n - 5) * m);
            if wins {
                cs.certify_winner(Scheme::ThreeWise, x, Rule::Condorcet3);
            }
        }
        cs
    }

    /// Strict: first in more than half of the votes.
    pub fn majority_criterion(&self, scheme: Scheme) -> ConstraintSet {
        let mut cs = ConstraintSet::new(self.n());
        for x in 0..self.n() {
            if 2 * self.profile.first_place_count(x) > self.m() {
                cs.certify_winner(scheme, x, Rule::MajorityCriterion);
            }
        }
        cs
    }

    /// A ranking cast by more than half of the voters is the unique median
    /// for every `k`.
    pub fn majority_vote(&self, k: KParam) -> Result<Option<MedianResult>> {
        for (r, w) in self.profile.distinct_votes() {
            if 2 * w > self.m() {
                let score = profile_distance(&r, self.profile, k)?;
                return Ok(Some(MedianResult {
                    k,
                    optimal_score: score,
                    medians: vec![r],
                    complete: true,
                    solver: SolverKind::MajorityVote,
                }));
            }
        }
        Ok(None)
    }

    fn majority_vote_constraints(&self) -> ConstraintSet {
        let mut cs = ConstraintSet::new(self.n());
        if let Ok(Some(result)) = self.majority_vote(KParam::TWO) {
            for scheme in Scheme::ALL {
                cs.force_ranking(scheme, &result.medians[0], Rule::MajorityVote);
            }
        }
        cs
    }

    fn size_gate(&self, inside: usize) -> bool {
        inside > 0 && 3 * inside <= self.n() + 4
    }

    /// Non-strict `≥ 3/4`: the winner of every 3-wise median lies in the
    /// 3/4-Smith set `I` when `|I| ≤ (|C \ I| + 4)/2`. Inert when `I = C`.
    pub fn smith_3wise(&self) -> Result<ConstraintSet> {
        let mut cs = ConstraintSet::new(self.n());
        let set = alpha_smith_set(&self.pairs, ThresholdRatio::THREE_QUARTERS)?;
        if set.len() < self.n() && self.size_gate(set.len()) {
            cs.restrict_winner(Scheme::ThreeWise, set, Rule::Smith3);
        }
        Ok(cs)
    }

    fn dominates(&self, inside: u64) -> bool {
        let q = ThresholdRatio::THREE_QUARTERS;
        let n = self.n();
        (0..n).filter(|&x| inside >> x & 1 == 1).all(|x| {
            (0..n)
                .filter(|&y| inside >> y & 1 == 0)
                .all(|y| self.pairs.at_least(x, y, q))
        })
    }

    fn force_block(&self, cs: &mut ConstraintSet, inside: u64) {
        let n = self.n();
        for x in (0..n).filter(|&x| inside >> x & 1 == 1) {
            for y in (0..n).filter(|&y| inside >> y & 1 == 0) {
                cs.force(Scheme::ThreeWise, x, y, Rule::Xcc3);
            }
        }
    }

    /// Non-strict `≥ 3/4`: a dominant block `I` with `|I| ≤ (|J| + 4)/2` is
    /// placed above `J = C \ I`.
    ///
    /// Dominant blocks form a chain, and a member of a dominant block of size
    /// `j` beats at least `n − j` rivals, so sorting by the number of 3/4
    /// wins and testing each prefix finds all of them.
    pub fn xcc_3wise(&self) -> ConstraintSet {
        let n = self.n();
        let q = ThresholdRatio::THREE_QUARTERS;
        let mut cs = ConstraintSet::new(n);
        let mut order: Vec<(usize, usize)> = (0..n)
            .map(|x| {
                let wins = (0..n)
                    .filter(|&y| y != x && self.pairs.at_least(x, y, q))
                    .count();
                (wins, x)
            })
            .collect();
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut inside = 0u64;
        for (size, &(_, x)) in order.iter().enumerate().take(n.saturating_sub(1)) {
            inside |= 1 << x;
            if self.size_gate(size + 1) && self.dominates(inside) {
                self.force_block(&mut cs, inside);
            }
        }
        cs
    }

    /// Same rule checked over every proper subset. Limited to `n ≤ 16`.
    pub fn xcc_3wise_exhaustive(&self) -> Result<ConstraintSet> {
        let n = self.n();
        if n > 16 {
            return Err(Error::TooManyCandidates {
                n,
                max: 16,
                solver: "xcc_3wise_exhaustive",
            });
        }
        let mut cs = ConstraintSet::new(n);
        let full = (1u64 << n) - 1;
        for inside in 1..full {
            if self.size_gate(inside.count_ones() as usize) && self.dominates(inside) {
                self.force_block(&mut cs, inside);
            }
        }
        Ok(cs)
    }

    pub fn alpha_smith_set(&self, alpha: ThresholdRatio) -> Result<Vec<usize>> {
        alpha_smith_set(&self.pairs, alpha)
    }

    /// Conditional 3-wise rules that apply to this election size.
    pub fn conditional_rules(&self) -> Vec<ConditionalRule> {
        let mut out = vec![
            ConditionalRule::FiveSix {
                s: ThresholdRatio::FIVE_SIXTHS,
            },
            ConditionalRule::SmallElection,
        ];
        if let Some(b) = ConditionalRule::minimal_bound(self.n()) {
            if b > 0 {
                out.push(ConditionalRule::FiveSixBound { b });
            }
        }
        out
    }

    /// Union of every unconditional rule, transitively closed.
    pub fn run_all(&self) -> Result<ConstraintSet> {
        let mut cs = self.extended_always();
        cs.merge(self.extended_s_majority());
        cs.merge(self.unanimity_3wise());
        cs.merge(self.condorcet_3wise());
        for scheme in Scheme::ALL {
            cs.merge(self.majority_criterion(scheme));
        }
        cs.merge(self.majority_vote_constraints());
        cs.merge(self.smith_3wise()?);
        cs.merge(self.xcc_3wise());
        for rule in self.conditional_rules() {
            cs.add_conditional(rule);
        }
        cs.close()?;
        Ok(cs)
    }
}
