use std::fmt;

use super::thresholds::{bound_form_admissible, from_threshold, lambda_form_admissible};
use crate::error::{Error, Result};
use crate::model::{PairTally, Ranking, ThresholdRatio};

/// Which conditional rule a ranking violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    FiveSix,
    FiveSixLambda,
    FiveSixBound,
    /// `A z B x C` with `B` nonempty; `A z x B C` is better.
    ShapeGap,
    /// `A z x B` with `A` nonempty; `z x A B` is better.
    ShapeLead,
    /// `A x B z C` with `|B ∪ C| = 5`, `|B| ≤ 2`; `A z x B C` is better.
    ShapeTail,
    SixCandidate,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::FiveSix => "five-six",
            ViolationKind::FiveSixLambda => "five-six-lambda",
            ViolationKind::FiveSixBound => "five-six-bound",
            ViolationKind::ShapeGap => "shape-gap",
            ViolationKind::ShapeLead => "shape-lead",
            ViolationKind::ShapeTail => "shape-tail",
            ViolationKind::SixCandidate => "six-candidate",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evidence that a ranking is not a 3-wise median.
///
/// For the 5/6 and six-candidate rules, `candidate` should precede `other`
/// but does not. For the shape rules, `candidate` is `x`, `other` is `z`, and
/// `rewrite` is a strictly better ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub candidate: usize,
    pub other: usize,
    pub rewrite: Option<Ranking>,
}

/// Predicates on complete rankings that only hold for rankings of a given
/// shape. A nonempty report rules the ranking out as a 3-wise median.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionalRule {
    /// `|I|(|I| − 4) ≤ 3·#after(x)`, with `s ≥ 5/6`.
    FiveSix { s: ThresholdRatio },
    /// `#after(x) ≥ λ|I|`, with `s ≥ (5λ + 1)/(6λ + 1)`.
    FiveSixLambda {
        lambda: ThresholdRatio,
        s: ThresholdRatio,
    },
    /// `s = 5/6`, applied only when `#after(x) ≥ b`.
    FiveSixBound { b: usize },
    /// The three dominated shapes for `z ≥_{3/4} x ≥_{3/4} J`, plus the
    /// six-candidate 3/4 rule.
    SmallElection,
}

impl ConditionalRule {
    pub fn five_six(s: ThresholdRatio) -> Result<Self> {
        if s < ThresholdRatio::FIVE_SIXTHS || s.numer() > s.denom() {
            return Err(Error::Precondition(format!(
                "the 5/6 rule needs 5/6 <= s <= 1, got {s}"
            )));
        }
        Ok(ConditionalRule::FiveSix { s })
    }

    pub fn five_six_lambda(lambda: ThresholdRatio, s: ThresholdRatio) -> Result<Self> {
        if s.numer() > s.denom()
            || !lambda_form_admissible(from_threshold(lambda), from_threshold(s))
        {
            return Err(Error::Precondition(format!(
                "need lambda > 0 and s >= (5 lambda + 1)/(6 lambda + 1), got lambda = {lambda}, s = {s}"
            )));
        }
        Ok(ConditionalRule::FiveSixLambda { lambda, s })
    }

    pub fn five_six_bound(n: usize, b: usize) -> Result<Self> {
        if !bound_form_admissible(n, b) {
            return Err(Error::Precondition(format!(
                "(n - b - 2)(n - b - 6) <= 3b fails for n = {n}, b = {b}"
            )));
        }
        Ok(ConditionalRule::FiveSixBound { b })
    }

    /// Smallest `b` admitted for `n` candidates, if `n ≥ 3`.
    pub fn minimal_bound(n: usize) -> Option<usize> {
        (0..=n).find(|&b| bound_form_admissible(n, b))
    }

    pub fn name(&self) -> String {
        match self {
            ConditionalRule::FiveSix { s } => format!("five-six(s={s})"),
            ConditionalRule::FiveSixLambda { lambda, s } => {
                format!("five-six-lambda(lambda={lambda}, s={s})")
            }
            ConditionalRule::FiveSixBound { b } => format!("five-six-bound(b={b})"),
            ConditionalRule::SmallElection => "small-election".into(),
        }
    }

    pub fn check(&self, pairs: &PairTally, r: &Ranking) -> Result<Vec<Violation>> {
        if r.len() != pairs.n() {
            return Err(Error::CandidateMismatch {
                expected: pairs.n(),
                found: r.len(),
            });
        }
        Ok(match *self {
            ConditionalRule::FiveSix { s } => {
                // |I|(|I| − 4) ≤ 3·#after, signed since |I| < 4 makes the left side negative.
                five_six_core(pairs, r, s, ViolationKind::FiveSix, |i, after| {
                    let i = i as i64;
                    i * (i - 4) <= 3 * after as i64
                })
            }
            ConditionalRule::FiveSixLambda { lambda, s } => {
                five_six_core(pairs, r, s, ViolationKind::FiveSixLambda, |i, after| {
                    after as u128 * lambda.denom() as u128 >= lambda.numer() as u128 * i as u128
                })
            }
            ConditionalRule::FiveSixBound { b } => {
                if !bound_form_admissible(pairs.n(), b) {
                    return Err(Error::Precondition(format!(
                        "(n - b - 2)(n - b - 6) <= 3b fails for n = {}, b = {b}",
                        pairs.n()
                    )));
                }
                five_six_core(
                    pairs,
                    r,
                    ThresholdRatio::FIVE_SIXTHS,
                    ViolationKind::FiveSixBound,
                    |_, after| after >= b,
                )
            }
            ConditionalRule::SmallElection => {
                let mut out = shape_violations(pairs, r);
                out.extend(six_candidate_violations(pairs, r));
                out
            }
        })
    }
}

fn non_dirty(pairs: &PairTally, x: usize, s: ThresholdRatio) -> bool {
    (0..pairs.n())
        .filter(|&y| y != x)
        .all(|y| pairs.at_least(x, y, s) || pairs.at_least(y, x, s))
}

/// Shared body of the 5/6 rules: for each non-dirty `x` whose dominators
/// `I = {z : z ≥_s x}` all precede it and for which `size_ok(|I|, #after(x))`
/// holds, every `y` with `x ≥_s y` must follow `x`.
fn five_six_core(
    pairs: &PairTally,
    r: &Ranking,
    s: ThresholdRatio,
    kind: ViolationKind,
    size_ok: impl Fn(usize, usize) -> bool,
) -> Vec<Violation> {
    let n = pairs.n();
    let mut out = Vec::new();
    for x in 0..n {
        if !non_dirty(pairs, x, s) {
            continue;
        }
        let dominators: Vec<usize> = (0..n)
            .filter(|&z| z != x && pairs.at_least(z, x, s))
            .collect();
        if !dominators.iter().all(|&z| r.prefers(z, x)) {
            continue;
        }
        let after = n - 1 - r.position(x);
        if !size_ok(dominators.len(), after) {
            continue;
        }
        for y in (0..n).filter(|&y| y != x) {
            if pairs.at_least(x, y, s) && r.prefers(y, x) {
                out.push(Violation {
                    kind,
                    candidate: x,
                    other: y,
                    rewrite: None,
                });
            }
        }
    }
    out
}

/// Pairs `(x, z)` with `z ≥_{3/4} x` and `x ≥_{3/4} y` for all other `y`.
fn shape_premises(pairs: &PairTally) -> Vec<(usize, usize)> {
    let n = pairs.n();
    let q = ThresholdRatio::THREE_QUARTERS;
    let mut out = Vec::new();
    for x in 0..n {
        for z in (0..n).filter(|&z| z != x) {
            if pairs.at_least(z, x, q)
                && (0..n)
                    .filter(|&y| y != x && y != z)
                    .all(|y| pairs.at_least(x, y, q))
            {
                out.push((x, z));
            }
        }
    }
    out
}

fn shape_violations(pairs: &PairTally, r: &Ranking) -> Vec<Violation> {
    let n = pairs.n();
    let mut out = Vec::new();
    for (x, z) in shape_premises(pairs) {
        let (px, pz) = (r.position(x), r.position(z));
        let order = r.order();
        let (kind, rewrite) = if pz < px {
            if px > pz + 1 {
                // A z B x C -> A z x B C
                let mut v: Vec<usize> = order.iter().copied().filter(|&c| c != x).collect();
                v.insert(pz + 1, x);
                (ViolationKind::ShapeGap, v)
            } else if pz > 0 {
                // A z x B -> z x A B
                let mut v = vec![z, x];
                v.extend(order.iter().copied().filter(|&c| c != x && c != z));
                (ViolationKind::ShapeLead, v)
            } else {
                continue;
            }
        } else {
            let tail = n - px - 2;
            let gap = pz - px - 1;
            if tail == 5 && gap <= 2 {
                // A x B z C -> A z x B C
                let mut v: Vec<usize> = order.iter().copied().filter(|&c| c != z).collect();
                v.insert(px, z);
                (ViolationKind::ShapeTail, v)
            } else {
                continue;
            }
        };
        out.push(Violation {
            kind,
            candidate: x,
            other: z,
            rewrite: Some(Ranking::new(rewrite).expect("rewrite is a permutation")),
        });
    }
    out
}

/// Six candidates split as `A ∪ {x} ∪ B` with `|A| ≤ 2`, `A ≥_{3/4} x` and
/// `x ≥_{3/4} B`: the election then obeys the 3/4-majority rule, so every
/// candidate non-dirty at 3/4 must follow its 3/4 duels.
fn six_candidate_violations(pairs: &PairTally, r: &Ranking) -> Vec<Violation> {
    let n = pairs.n();
    if n != 6 {
        return Vec::new();
    }
    let q = ThresholdRatio::THREE_QUARTERS;
    let premise = (0..n).any(|x| {
        let above = (0..n)
            .filter(|&y| y != x && pairs.at_least(y, x, q))
            .count();
        let split = (0..n)
            .filter(|&y| y != x)
            .all(|y| pairs.at_least(y, x, q) || pairs.at_least(x, y, q));
        split && above <= 2
    });
    if !premise {
        return Vec::new();
    }
    let mut out = Vec::new();
    for w in (0..n).filter(|&w| non_dirty(pairs, w, q)) {
        for y in (0..n).filter(|&y| y != w) {
            if pairs.at_least(w, y, q) && r.prefers(y, w) {
                out.push(Violation {
                    kind: ViolationKind::SixCandidate,
                    candidate: w,
                    other: y,
                    rewrite: None,
                });
            }
        }
    }
    out
}
