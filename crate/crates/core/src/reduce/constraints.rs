use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{ConditionalRule, Rule, Scheme};
use crate::error::{Error, Result};
use crate::model::{CandidateSet, PairTally, Ranking};

/// `before` precedes `after` in every median of `scheme`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcedPair {
    pub scheme: Scheme,
    pub before: usize,
    pub after: usize,
    pub rules: Vec<Rule>,
}

/// The winner of every median of `scheme` lies in `members`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WinnerSet {
    pub scheme: Scheme,
    pub members: Vec<usize>,
    pub rule: Rule,
}

/// Output of the reduction rules: forced pairs, certified winners, winner
/// sets and the conditional predicates that apply to the election.
#[derive(Debug, Clone, Default)]
pub struct ConstraintSet {
    n: usize,
    forced: BTreeMap<(Scheme, usize, usize), BTreeSet<Rule>>,
    winners: BTreeMap<(Scheme, usize), BTreeSet<Rule>>,
    winner_sets: Vec<WinnerSet>,
    conditional: Vec<ConditionalRule>,
}

impl ConstraintSet {
    pub fn new(n: usize) -> Self {
        ConstraintSet {
            n,
            ..Default::default()
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.forced.is_empty() && self.winners.is_empty() && self.winner_sets.is_empty()
    }

    pub fn force(&mut self, scheme: Scheme, before: usize, after: usize, rule: Rule) {
        debug_assert!(before != after && before < self.n && after < self.n);
        self.forced
            .entry((scheme, before, after))
            .or_default()
            .insert(rule);
    }

    /// Records `winner` as the top of every median and forces it above everyone.
    pub fn certify_winner(&mut self, scheme: Scheme, winner: usize, rule: Rule) {
        self.winners.entry((scheme, winner)).or_default().insert(rule);
        for y in (0..self.n).filter(|&y| y != winner) {
            self.force(scheme, winner, y, rule);
        }
    }

    /// Forces every pair of a ranking known to be the unique median.
    pub fn force_ranking(&mut self, scheme: Scheme, ranking: &Ranking, rule: Rule) {
        self.winners
            .entry((scheme, ranking.top()))
            .or_default()
            .insert(rule);
        let order = ranking.order();
        for (i, &a) in order.iter().enumerate() {
            for &b in &order[i + 1..] {
                self.force(scheme, a, b, rule);
            }
        }
    }

    pub fn restrict_winner(&mut self, scheme: Scheme, mut members: Vec<usize>, rule: Rule) {
        members.sort_unstable();
        members.dedup();
        self.winner_sets.push(WinnerSet {
            scheme,
            members,
            rule,
        });
    }

    pub fn add_conditional(&mut self, rule: ConditionalRule) {
        if !self.conditional.contains(&rule) {
            self.conditional.push(rule);
        }
    }

    pub fn conditional(&self) -> &[ConditionalRule] {
        &self.conditional
    }

    /// Runs every attached conditional rule on a candidate 3-wise median.
    pub fn conditional_violations(
        &self,
        pairs: &PairTally,
        ranking: &Ranking,
    ) -> Result<Vec<super::Violation>> {
        let mut out = Vec::new();
        for rule in &self.conditional {
            out.extend(rule.check(pairs, ranking)?);
        }
        Ok(out)
    }

    pub fn merge(&mut self, other: ConstraintSet) {
        for (key, rules) in other.forced {
            self.forced.entry(key).or_default().extend(rules);
        }
        for (key, rules) in other.winners {
            self.winners.entry(key).or_default().extend(rules);
        }
        self.winner_sets.extend(other.winner_sets);
        for rule in other.conditional {
            self.add_conditional(rule);
        }
    }

    pub fn is_forced(&self, scheme: Scheme, before: usize, after: usize) -> bool {
        self.forced.contains_key(&(scheme, before, after))
    }

    pub fn forced_pairs(&self, scheme: Scheme) -> Vec<ForcedPair> {
        self.forced
            .iter()
            .filter(|((s, _, _), _)| *s == scheme)
            .map(|(&(scheme, before, after), rules)| ForcedPair {
                scheme,
                before,
                after,
                rules: rules.iter().copied().collect(),
            })
            .collect()
    }

    pub fn forced_count(&self, scheme: Scheme) -> usize {
        self.forced.keys().filter(|(s, _, _)| *s == scheme).count()
    }

    pub fn winners(&self, scheme: Scheme) -> Vec<(usize, Vec<Rule>)> {
        self.winners
            .iter()
            .filter(|((s, _), _)| *s == scheme)
            .map(|(&(_, c), rules)| (c, rules.iter().copied().collect()))
            .collect()
    }

    pub fn winner_sets(&self, scheme: Scheme) -> impl Iterator<Item = &WinnerSet> {
        self.winner_sets.iter().filter(move |w| w.scheme == scheme)
    }

    /// For each candidate, the bitmask of candidates forced above it.
    pub fn predecessor_masks(&self, scheme: Scheme) -> Vec<u64> {
        let mut masks = vec![0u64; self.n];
        for &(s, before, after) in self.forced.keys() {
            if s == scheme {
                masks[after] |= 1 << before;
            }
        }
        masks
    }

    /// Bitmask of candidates allowed to head a median of `scheme`.
    pub fn allowed_leaders(&self, scheme: Scheme) -> u64 {
        let mut mask = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        for w in self.winner_sets(scheme) {
            mask &= w.members.iter().fold(0u64, |m, &c| m | (1 << c));
        }
        mask
    }

    /// Adds the transitive consequences of the forced pairs, scheme by scheme.
    /// A cycle means two rules contradict each other and is reported as an error.
    pub fn close(&mut self) -> Result<()> {
        for scheme in Scheme::ALL {
            let mut succ = vec![0u64; self.n];
            for &(s, before, after) in self.forced.keys() {
                if s == scheme {
                    succ[before] |= 1 << after;
                }
            }
            let direct = succ.clone();
            for mid in 0..self.n {
                for i in 0..self.n {
                    if succ[i] >> mid & 1 == 1 {
                        succ[i] |= succ[mid];
                    }
                }
            }
            for a in 0..self.n {
                if succ[a] >> a & 1 == 1 {
                    let b = (0..self.n)
                        .find(|&b| b != a && succ[a] >> b & 1 == 1 && succ[b] >> a & 1 == 1)
                        .unwrap_or(a);
                    return Err(self.cycle_error(scheme, a, b));
                }
            }
            for a in 0..self.n {
                let added = succ[a] & !direct[a];
                for b in (0..self.n).filter(|&b| added >> b & 1 == 1) {
                    self.force(scheme, a, b, Rule::Transitivity);
                }
            }
        }
        Ok(())
    }

    fn cycle_error(&self, scheme: Scheme, a: usize, b: usize) -> Error {
        let mut rules: BTreeSet<Rule> = BTreeSet::new();
        for ((s, _, _), r) in &self.forced {
            if *s == scheme {
                rules.extend(r);
            }
        }
        Error::ConstraintCycle {
            scheme,
            first: a.to_string(),
            second: b.to_string(),
            rules: rules
                .iter()
                .map(|r| r.name())
                .collect::<Vec<_>>()
                .join(", "),
        }
    }

    /// Human-readable lines `x < y  [rule, ...]`, where `x < y` reads
    /// "x precedes y".
    pub fn describe(&self, scheme: Scheme, candidates: &CandidateSet) -> Vec<String> {
        self.forced_pairs(scheme)
            .into_iter()
            .map(|p| {
                format!(
                    "{} < {}  [{}]",
                    candidates.name(p.before),
                    candidates.name(p.after),
                    p.rules
                        .iter()
                        .map(|r| r.name())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })
            .collect()
    }
}
