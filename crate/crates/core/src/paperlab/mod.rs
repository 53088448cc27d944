//! Concrete elections with known medians, the two-thirds counterexample
//! family, and checks of the tabulated threshold values.

mod tables;
mod two_thirds;

pub use tables::{verify_threshold_tables, TableCheck};
pub use two_thirds::{
    check_two_thirds_structure, gen_two_thirds_construction, verify_two_thirds_local_swaps,
    SwapReport,
};

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::distance::{profile_distance, KParam};
use crate::error::{Error, Result};
use crate::model::{Profile, ThresholdRatio};
use crate::reduce::{alpha_smith_set, Reducer, Rule, Scheme};
use crate::solve::{median_bruteforce, median_dp};

pub const CONDORCET_LOSER: &str = include_str!("../../assets/condorcet_loser.profile");
pub const REVERSAL: &str = include_str!("../../assets/reversal.profile");
pub const LOWER_3_5: &str = include_str!("../../assets/lower_3_5.profile");
pub const LOWER_5_8: &str = include_str!("../../assets/lower_5_8.profile");
pub const NINE_CAND: &str = include_str!("../../assets/nine_cand.profile");
pub const SMITH_IIA: &str = include_str!("../../assets/smith_iia.profile");

/// A machine-checkable statement about an election.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    /// `ranking` scores `score` at `k`.
    Score {
        k: usize,
        ranking: String,
        score: u64,
    },
    /// The complete set of `k`-wise medians, by exhaustive search.
    MedianSet {
        k: usize,
        medians: Vec<String>,
        score: u64,
    },
    /// `ranking` is the only `k`-wise median, by exhaustive search.
    UniqueMedian { k: usize, ranking: String },
    /// The DP returns `ranking` with `score`.
    DpMedian {
        k: usize,
        ranking: String,
        score: u64,
    },
    /// `winner` precedes each of `losers` in at least `num/den` of the votes.
    DuelsAtLeast {
        winner: String,
        losers: Vec<String>,
        num: u64,
        den: u64,
    },
    /// `loser` precedes each of `winners` in fewer than half of the votes.
    LosesEveryDuel { loser: String },
    /// The smallest share `candidate` wins against any rival is exactly `num/den`.
    MinDuelShare {
        candidate: String,
        num: u64,
        den: u64,
    },
    /// `candidate` is first in `count` votes.
    FirstPlaces { candidate: String, count: u64 },
    /// A rule certifies `candidate` as winner of every median of `scheme`.
    Certified {
        scheme: Scheme,
        rule: Rule,
        candidate: String,
    },
    /// The 3-wise Condorcet rule does not certify `candidate`.
    NotCondorcetCertified { candidate: String },
    SmithSet {
        num: u64,
        den: u64,
        members: Vec<String>,
    },
    /// The 3/4-Smith rule emits no winner set.
    SmithRuleInert,
    /// After restricting to `keep`, the unique `k`-wise median is `ranking`.
    SubElection {
        keep: Vec<String>,
        k: usize,
        ranking: String,
        score: u64,
    },
    /// The profile is the vote-by-vote reversal of `source`.
    MirrorOf { source: &'static str },
}

fn list(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Score { k, ranking, .. } => write!(f, "{k}-wise score of {ranking}"),
            Claim::MedianSet { k, .. } => write!(f, "all {k}-wise medians"),
            Claim::UniqueMedian { k, ranking } => write!(f, "{ranking} is the unique {k}-wise median"),
            Claim::DpMedian { k, .. } => write!(f, "{k}-wise median by dp"),
            Claim::DuelsAtLeast {
                winner,
                losers,
                num,
                den,
            } => write!(f, "{winner} >= {num}/{den} against {}", list(losers)),
            Claim::LosesEveryDuel { loser } => write!(f, "{loser} loses every duel"),
            Claim::MinDuelShare { candidate, .. } => {
                write!(f, "weakest duel share of {candidate}")
            }
            Claim::FirstPlaces { candidate, .. } => write!(f, "first places of {candidate}"),
            Claim::Certified {
                scheme,
                rule,
                candidate,
            } => write!(f, "{rule} certifies {candidate} ({scheme})"),
            Claim::NotCondorcetCertified { candidate } => {
                write!(f, "condorcet-3wise does not certify {candidate}")
            }
            Claim::SmithSet { num, den, .. } => write!(f, "{num}/{den}-Smith set"),
            Claim::SmithRuleInert => write!(f, "smith-3wise size gate blocks the rule"),
            Claim::SubElection { keep, k, .. } => {
                write!(f, "unique {k}-wise median on {}", list(keep))
            }
            Claim::MirrorOf { source } => write!(f, "reversal of {source}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimOutcome {
    pub instance: String,
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl fmt::Display for ClaimOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} (expected {}, computed {})",
            if self.pass { "PASS" } else { "FAIL" },
            self.instance,
            self.claim,
            self.expected,
            self.computed
        )
    }
}

#[derive(Debug, Clone)]
pub struct PaperInstance {
    pub id: &'static str,
    pub summary: &'static str,
    pub profile: Profile,
    pub claims: Vec<Claim>,
}

fn s(v: &str) -> String {
    v.to_string()
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn parse_asset(text: &str) -> Profile {
    Profile::parse(text).expect("bundled profile parses")
}

/// Majority example: `π = w > z1 > … > zn > x > y` cast `m + 1` times and
/// `y > A_i > x > w` once for each `i ≤ m`. `blocks[i]` gives the order of
/// the z's in `A_i` as indices into `0..n`; empty means identity order.
pub fn majority_example(m: usize, n: usize, blocks: &[Vec<usize>]) -> Result<Profile> {
    if m == 0 {
        return Err(Error::InvalidConfig("majority example needs m >= 1".into()));
    }
    let zs: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    let mut labels = vec![s("w")];
    labels.extend(zs.iter().cloned());
    labels.push(s("x"));
    labels.push(s("y"));
    let pi = labels.join(" > ");
    let mut votes = vec![(pi, (m + 1) as u64)];
    for i in 0..m {
        let order: Vec<usize> = match blocks.get(i) {
            Some(b) if !b.is_empty() => b.clone(),
            _ => (0..n).collect(),
        };
        let mut chain = vec![s("y")];
        chain.extend(order.iter().map(|&j| zs[j].clone()));
        chain.push(s("x"));
        chain.push(s("w"));
        votes.push((chain.join(" > "), 1));
    }
    let label_refs: Vec<&str> = labels.iter().map(|l| l.as_str()).collect();
    Profile::from_chains(&label_refs, &votes)
}

/// Random z-blocks for [`majority_example`].
pub fn random_blocks<R: Rng>(m: usize, n: usize, rng: &mut R) -> Vec<Vec<usize>> {
    (0..m)
        .map(|_| {
            let mut b: Vec<usize> = (0..n).collect();
            b.shuffle(rng);
            b
        })
        .collect()
}

fn majority_instance() -> PaperInstance {
    let profile = majority_example(2, 1, &[]).expect("valid parameters");
    let pi = "w > z1 > x > y";
    PaperInstance {
        id: "MAJORITY_EXAMPLE",
        summary: "a ranking cast by a majority is the unique median; y loses to x throughout",
        claims: vec![
            Claim::UniqueMedian {
                k: 2,
                ranking: s(pi),
            },
            Claim::UniqueMedian {
                k: 3,
                ranking: s(pi),
            },
            Claim::DuelsAtLeast {
                winner: s("x"),
                losers: strings(&["y"]),
                num: 1,
                den: 2,
            },
        ],
        profile,
    }
}

/// Every bundled election with its claims.
pub fn instance_catalog() -> Vec<PaperInstance> {
    let loser_median = "z > t > x > y";
    vec![
        PaperInstance {
            id: "CONDORCET_LOSER",
            summary: "a Condorcet loser wins the unique 3-wise median",
            profile: parse_asset(CONDORCET_LOSER),
            claims: vec![
                Claim::LosesEveryDuel { loser: s("z") },
                Claim::Score {
                    k: 3,
                    ranking: s(loser_median),
                    score: 48,
                },
                Claim::MedianSet {
                    k: 3,
                    medians: strings(&[loser_median]),
                    score: 48,
                },
            ],
        },
        PaperInstance {
            id: "REVERSAL",
            summary: "reversing every vote keeps z as the certified 3-wise winner",
            profile: parse_asset(REVERSAL),
            claims: vec![
                Claim::MirrorOf {
                    source: "CONDORCET_LOSER",
                },
                Claim::FirstPlaces {
                    candidate: s("z"),
                    count: 6,
                },
                Claim::Certified {
                    scheme: Scheme::ThreeWise,
                    rule: Rule::MajorityCriterion,
                    candidate: s("z"),
                },
            ],
        },
        PaperInstance {
            id: "LOWER_3_5",
            summary: "three candidates: a 3/5 share in every duel does not make a unique winner",
            profile: parse_asset(LOWER_3_5),
            claims: vec![
                Claim::DuelsAtLeast {
                    winner: s("x"),
                    losers: strings(&["y", "z"]),
                    num: 3,
                    den: 5,
                },
                Claim::MedianSet {
                    k: 3,
                    medians: strings(&["z > x > y", "y > x > z", "x > y > z", "x > z > y"]),
                    score: 21,
                },
            ],
        },
        PaperInstance {
            id: "LOWER_5_8",
            summary: "four candidates: a 5/8 share in every duel does not make a unique winner",
            profile: parse_asset(LOWER_5_8),
            claims: vec![
                Claim::DuelsAtLeast {
                    winner: s("t"),
                    losers: strings(&["x", "y", "z"]),
                    num: 5,
                    den: 8,
                },
                Claim::MedianSet {
                    k: 3,
                    medians: strings(&["z > t > x > y", "t > z > x > y"]),
                    score: 36,
                },
            ],
        },
        PaperInstance {
            id: "NINE_CAND",
            summary: "x4 wins every duel 28/43 and loses the unique 3-wise median",
            profile: parse_asset(NINE_CAND),
            claims: vec![
                Claim::MinDuelShare {
                    candidate: s("x4"),
                    num: 28,
                    den: 43,
                },
                Claim::NotCondorcetCertified { candidate: s("x4") },
                Claim::DpMedian {
                    k: 3,
                    ranking: s("x3 > x4 > x1 > x2 > x5 > x6 > x7 > x8 > x9"),
                    score: 1904,
                },
                Claim::MedianSet {
                    k: 3,
                    medians: strings(&["x3 > x4 > x1 > x2 > x5 > x6 > x7 > x8 > x9"]),
                    score: 1904,
                },
            ],
        },
        PaperInstance {
            id: "SMITH_IIA",
            summary: "removing candidates outside the 3/4-Smith set flips the 3-wise winner to x2",
            profile: parse_asset(SMITH_IIA),
            claims: vec![
                Claim::MedianSet {
                    k: 3,
                    medians: strings(&["x1 > x3 > x4 > x5 > x2 > x6 > x7 > x8"]),
                    score: 114,
                },
                Claim::DuelsAtLeast {
                    winner: s("x2"),
                    losers: strings(&["x1"]),
                    num: 3,
                    den: 4,
                },
                Claim::SmithSet {
                    num: 3,
                    den: 4,
                    members: strings(&["x1", "x2", "x3", "x4", "x5"]),
                },
                Claim::SmithRuleInert,
                Claim::SubElection {
                    keep: strings(&["x1", "x2", "x3", "x4", "x5"]),
                    k: 3,
                    ranking: s("x2 > x1 > x3 > x4 > x5"),
                    score: 25,
                },
            ],
        },
        majority_instance(),
    ]
}

pub fn find_instance(id: &str) -> Option<PaperInstance> {
    instance_catalog()
        .into_iter()
        .find(|i| i.id.eq_ignore_ascii_case(id))
}

fn index(profile: &Profile, label: &str) -> Result<usize> {
    profile
        .candidates()
        .index_of(label)
        .ok_or_else(|| Error::InvalidCandidates(format!("unknown candidate `{label}`")))
}

fn show_rankings(profile: &Profile, rankings: &[crate::model::Ranking]) -> String {
    let names: Vec<String> = rankings
        .iter()
        .map(|r| r.display(profile.candidates()).to_string())
        .collect();
    list(&names)
}

impl PaperInstance {
    pub fn verify(&self) -> Result<Vec<ClaimOutcome>> {
        self.claims.iter().map(|c| self.verify_claim(c)).collect()
    }

    fn outcome(&self, claim: &Claim, expected: String, computed: String) -> ClaimOutcome {
        ClaimOutcome {
            instance: self.id.to_string(),
            claim: claim.to_string(),
            pass: expected == computed,
            expected,
            computed,
        }
    }

    fn verify_claim(&self, claim: &Claim) -> Result<ClaimOutcome> {
        let p = &self.profile;
        let pairs = p.pair_tally();
        Ok(match claim {
            Claim::Score { k, ranking, score } => {
                let r = p.ranking(ranking)?;
                let got = profile_distance(&r, p, KParam::new(*k)?)?;
                self.outcome(claim, score.to_string(), got.to_string())
            }
            Claim::MedianSet { k, medians, score } => {
                let res = median_bruteforce(p, KParam::new(*k)?, true)?;
                let mut expected = medians
                    .iter()
                    .map(|m| p.ranking(m))
                    .collect::<Result<Vec<_>>>()?;
                expected.sort();
                self.outcome(
                    claim,
                    format!("{} @ {score}", show_rankings(p, &expected)),
                    format!("{} @ {}", show_rankings(p, &res.medians), res.optimal_score),
                )
            }
            Claim::UniqueMedian { k, ranking } => {
                let res = median_bruteforce(p, KParam::new(*k)?, true)?;
                self.outcome(
                    claim,
                    format!("{{{ranking}}}"),
                    show_rankings(p, &res.medians),
                )
            }
            Claim::DpMedian { k, ranking, score } => {
                let res = median_dp(p, KParam::new(*k)?)?;
                self.outcome(
                    claim,
                    format!("{ranking} @ {score}"),
                    format!(
                        "{} @ {}",
                        res.medians[0].display(p.candidates()),
                        res.optimal_score
                    ),
                )
            }
            Claim::DuelsAtLeast {
                winner,
                losers,
                num,
                den,
            } => {
                let ratio = ThresholdRatio::new(*num, *den)?;
                let w = index(p, winner)?;
                let mut failing = Vec::new();
                for l in losers {
                    if !pairs.at_least(w, index(p, l)?, ratio) {
                        failing.push(l.clone());
                    }
                }
                self.outcome(claim, s("all"), if failing.is_empty() { s("all") } else { format!("fails {}", list(&failing)) })
            }
            Claim::LosesEveryDuel { loser } => {
                let z = index(p, loser)?;
                let wins: Vec<String> = (0..p.n())
                    .filter(|&y| y != z && 2 * pairs.before(z, y) >= p.m())
                    .map(|y| p.candidates().name(y).to_string())
                    .collect();
                self.outcome(claim, s("{}"), list(&wins))
            }
            Claim::MinDuelShare {
                candidate,
                num,
                den,
            } => {
                let x = index(p, candidate)?;
                let worst = (0..p.n())
                    .filter(|&y| y != x)
                    .map(|y| pairs.before(x, y))
                    .min()
                    .unwrap_or(0);
                self.outcome(claim, format!("{num}/{den}"), format!("{worst}/{}", p.m()))
            }
            Claim::FirstPlaces { candidate, count } => {
                let got = p.first_place_count(index(p, candidate)?);
                self.outcome(claim, count.to_string(), got.to_string())
            }
            Claim::Certified {
                scheme,
                rule,
                candidate,
            } => {
                let cs = Reducer::new(p).run_all()?;
                let x = index(p, candidate)?;
                let got = cs
                    .winners(*scheme)
                    .into_iter()
                    .find(|(c, _)| *c == x)
                    .is_some_and(|(_, rules)| rules.contains(rule));
                self.outcome(claim, s("true"), got.to_string())
            }
            Claim::NotCondorcetCertified { candidate } => {
                let x = index(p, candidate)?;
                let got = Reducer::new(p)
                    .condorcet_3wise()
                    .winners(Scheme::ThreeWise)
                    .iter()
                    .any(|(c, _)| *c == x);
                self.outcome(claim, s("false"), got.to_string())
            }
            Claim::SmithSet { num, den, members } => {
                let set = alpha_smith_set(&pairs, ThresholdRatio::new(*num, *den)?)?;
                let names: Vec<String> = set
                    .iter()
                    .map(|&c| p.candidates().name(c).to_string())
                    .collect();
                self.outcome(claim, list(members), list(&names))
            }
            Claim::SmithRuleInert => {
                let cs = Reducer::new(p).smith_3wise()?;
                let fired = cs.winner_sets(Scheme::ThreeWise).next().is_some();
                self.outcome(claim, s("false"), fired.to_string())
            }
            Claim::SubElection {
                keep,
                k,
                ranking,
                score,
            } => {
                let idx = keep
                    .iter()
                    .map(|l| index(p, l))
                    .collect::<Result<Vec<_>>>()?;
                let sub = p.restrict(&idx)?;
                let res = median_bruteforce(&sub, KParam::new(*k)?, true)?;
                self.outcome(
                    claim,
                    format!("{{{ranking}}} @ {score}"),
                    format!("{} @ {}", show_rankings(&sub, &res.medians), res.optimal_score),
                )
            }
            Claim::MirrorOf { source } => {
                let src = find_instance(source)
                    .ok_or_else(|| Error::InvalidConfig(format!("unknown instance {source}")))?;
                let same = src.profile.mirrored() == *p;
                self.outcome(claim, s("true"), same.to_string())
            }
        })
    }
}
