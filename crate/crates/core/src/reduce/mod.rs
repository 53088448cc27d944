//! Search-space reduction: every quantified majority, Condorcet, Smith and
//! unanimity rule evaluated against a profile.
//!
//! Unconditional rules emit forced pairs ("x before y in every median of the
//! scheme"), certified winners and winner sets. Conditional rules inspect a
//! complete candidate ranking and report why it cannot be a 3-wise median;
//! they are exposed to the solvers as pruning predicates.

mod conditional;
mod constraints;
mod rules;
mod smith;
pub mod thresholds;

pub use conditional::{ConditionalRule, Violation, ViolationKind};
pub use constraints::{ConstraintSet, ForcedPair, WinnerSet};
pub use rules::Reducer;
pub use smith::{alpha_smith_set, alpha_smith_set_bruteforce};

use std::fmt;

use serde::Serialize;

use crate::distance::KParam;
use crate::error::Result;
use crate::model::{Profile, Ranking, ThresholdRatio};

/// Median notion a constraint applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Scheme {
    #[serde(rename = "2wise")]
    TwoWise,
    #[serde(rename = "3wise")]
    ThreeWise,
}

impl Scheme {
    pub const ALL: [Scheme; 2] = [Scheme::TwoWise, Scheme::ThreeWise];

    pub fn k(self) -> KParam {
        match self {
            Scheme::TwoWise => KParam::TWO,
            Scheme::ThreeWise => KParam::THREE,
        }
    }

    pub fn from_k(k: KParam) -> Option<Scheme> {
        match k.get() {
            2 => Some(Scheme::TwoWise),
            3 => Some(Scheme::ThreeWise),
            _ => None,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::TwoWise => "2wise",
            Scheme::ThreeWise => "3wise",
        })
    }
}

/// Rule that certified a constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    ExtendedAlways,
    ExtendedSMajority,
    Unanimity3,
    Condorcet3,
    MajorityCriterion,
    MajorityVote,
    Smith3,
    Xcc3,
    Transitivity,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::ExtendedAlways => "extended-always",
            Rule::ExtendedSMajority => "extended-s-majority",
            Rule::Unanimity3 => "unanimity-3wise",
            Rule::Condorcet3 => "condorcet-3wise",
            Rule::MajorityCriterion => "majority-criterion",
            Rule::MajorityVote => "majority-vote",
            Rule::Smith3 => "smith-3wise",
            Rule::Xcc3 => "xcc-3wise",
            Rule::Transitivity => "transitivity",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Union of all unconditional rules for both schemes, transitively closed,
/// with the conditional 3-wise rules attached as pruning predicates.
pub fn run_all_rules(profile: &Profile) -> Result<ConstraintSet> {
    Reducer::new(profile).run_all()
}

/// Smallest nonempty set whose members each beat every outsider in at least
/// an `alpha` share of the votes. Requires `alpha ≥ 1/2`.
pub fn compute_alpha_smith_set(profile: &Profile, alpha: ThresholdRatio) -> Result<Vec<usize>> {
    alpha_smith_set(&profile.pair_tally(), alpha)
}

/// Checks a putative 3-wise median against the 5/6-majority rule.
///
/// With `lambda = None` the size condition is `|I|(|I| − 4) ≤ 3·#after(x)`
/// and `s ≥ 5/6` is required; with `Some(λ)` it is `#after(x) ≥ λ|I|` and
/// `s ≥ (5λ + 1)/(6λ + 1)` is required.
pub fn rule_56_majority_conditional(
    profile: &Profile,
    median_candidate: &Ranking,
    lambda: Option<ThresholdRatio>,
    s: ThresholdRatio,
) -> Result<Vec<Violation>> {
    let rule = match lambda {
        None => ConditionalRule::five_six(s)?,
        Some(lambda) => ConditionalRule::five_six_lambda(lambda, s)?,
    };
    rule.check(&profile.pair_tally(), median_candidate)
}

/// 5/6-majority rule restricted to medians `A > x > B` with `|B| ≥ b`.
pub fn rule_56_majority_nb(
    profile: &Profile,
    median_candidate: &Ranking,
    b: usize,
) -> Result<Vec<Violation>> {
    ConditionalRule::five_six_bound(profile.n(), b)?
        .check(&profile.pair_tally(), median_candidate)
}

/// Dominated ranking shapes for a candidate pair `(x, z)` with `z ≥_{3/4} x`
/// and `x ≥_{3/4}` everyone else, plus the six-candidate weak 3/4 rule.
pub fn rule_small_election_pruning(
    profile: &Profile,
    median_candidate: &Ranking,
) -> Result<Vec<Violation>> {
    ConditionalRule::SmallElection.check(&profile.pair_tally(), median_candidate)
}
