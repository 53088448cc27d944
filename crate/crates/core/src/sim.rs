//! Seeded random profiles and the applicability of the unanimity-style rules
//! on uniformly random elections.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{CandidateSet, Profile, Ranking};
use crate::reduce::{Reducer, Scheme};

/// 99% two-sided normal quantile.
pub const Z99: f64 = 2.576;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SimRule {
    /// Some pair is ranked the same way by every vote.
    #[serde(rename = "AT")]
    At,
    /// The 2-wise extended always rule fixes some pair.
    #[serde(rename = "2AT")]
    TwoAt,
    /// The 3-wise unanimity rule fixes some pair.
    #[serde(rename = "3AT")]
    ThreeAt,
}

impl SimRule {
    pub const ALL: [SimRule; 3] = [SimRule::At, SimRule::TwoAt, SimRule::ThreeAt];

    pub fn name(self) -> &'static str {
        match self {
            SimRule::At => "AT",
            SimRule::TwoAt => "2AT",
            SimRule::ThreeAt => "3AT",
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl fmt::Display for SimRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SimRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "at" => Ok(SimRule::At),
            "2at" => Ok(SimRule::TwoAt),
            "3at" => Ok(SimRule::ThreeAt),
            other => Err(Error::InvalidConfig(format!("unknown rule `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimConfig {
    pub n: usize,
    pub m: usize,
    pub trials: u64,
    pub seed: u64,
    pub rules: Vec<SimRule>,
}

impl SimConfig {
    pub fn new(n: usize, m: usize, trials: u64, seed: u64) -> Self {
        SimConfig {
            n,
            m,
            trials,
            seed,
            rules: SimRule::ALL.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::InvalidConfig("n and m must be at least 1".into()));
        }
        if self.n > crate::model::MAX_CANDIDATES {
            return Err(Error::InvalidConfig(format!("n = {} is too large", self.n)));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.rules.is_empty() {
            return Err(Error::InvalidConfig("no rules selected".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuleRate {
    pub rule: SimRule,
    pub hits: u64,
    pub percentage: f64,
    pub half_width: f64,
}

impl RuleRate {
    fn new(rule: SimRule, hits: u64, trials: u64) -> Self {
        let p = hits as f64 / trials as f64;
        RuleRate {
            rule,
            hits,
            percentage: 100.0 * p,
            half_width: 100.0 * Z99 * (p * (1.0 - p) / trials as f64).sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApplicabilityReport {
    pub n: usize,
    pub m: usize,
    pub trials: u64,
    pub seed: u64,
    pub percentages: Vec<RuleRate>,
}

impl ApplicabilityReport {
    pub fn rate(&self, rule: SimRule) -> Option<&RuleRate> {
        self.percentages.iter().find(|r| r.rule == rule)
    }

    /// One row in the layout `n | m | AT | 2AT | 3AT`.
    pub fn row(&self) -> String {
        let mut line = format!("{:>3} | {:>3}", self.n, self.m);
        for r in &self.percentages {
            line.push_str(&format!(
                " | {} {:7.3}% ± {:.3}",
                r.rule, r.percentage, r.half_width
            ));
        }
        line
    }
}

fn labels(n: usize) -> CandidateSet {
    CandidateSet::new((1..=n).map(|i| format!("c{i}"))).expect("n is within bounds")
}

/// `m` independent uniform rankings, each with multiplicity one.
pub fn random_profile<R: Rng>(n: usize, m: usize, rng: &mut R) -> Result<Profile> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidConfig("n and m must be at least 1".into()));
    }
    let candidates = labels(n);
    let votes = (0..m)
        .map(|_| {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            Ok((Ranking::new(order)?, 1))
        })
        .collect::<Result<Vec<_>>>()?;
    Profile::new(candidates, votes)
}

/// The trial's own generator: `seed ⊕ trial`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ trial)
}

/// Which of the selected rules fire on `profile`, as a set.
pub fn indicators(profile: &Profile, rules: &[SimRule]) -> Vec<SimRule> {
    let bits = indicator_bits(profile, rules);
    rules.iter().copied().filter(|r| bits & r.bit() != 0).collect()
}

fn indicator_bits(profile: &Profile, rules: &[SimRule]) -> u8 {
    let reducer = Reducer::new(profile);
    let mut bits = 0;
    for &rule in rules {
        let hit = match rule {
            SimRule::At => {
                let pairs = reducer.pairs();
                let n = profile.n();
                (0..n).any(|x| (0..n).any(|y| x != y && pairs.before(x, y) == profile.m()))
            }
            SimRule::TwoAt => reducer.extended_always().forced_count(Scheme::TwoWise) > 0,
            SimRule::ThreeAt => reducer.unanimity_3wise().forced_count(Scheme::ThreeWise) > 0,
        };
        if hit {
            bits |= rule.bit();
        }
    }
    bits
}

/// Per-trial indicators, in trial order.
pub fn trial_indicators(config: &SimConfig) -> Result<Vec<Vec<SimRule>>> {
    config.validate()?;
    (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let profile = random_profile(config.n, config.m, &mut trial_rng(config.seed, t))?;
            Ok(indicators(&profile, &config.rules))
        })
        .collect()
}

pub fn applicability(config: &SimConfig) -> Result<ApplicabilityReport> {
    config.validate()?;
    let counts = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let profile = random_profile(config.n, config.m, &mut trial_rng(config.seed, t))?;
            Ok(indicator_bits(&profile, &config.rules))
        })
        .try_fold(
            || [0u64; 3],
            |mut acc, bits: Result<u8>| {
                let bits = bits?;
                for (i, slot) in acc.iter_mut().enumerate() {
                    *slot += ((bits >> i) & 1) as u64;
                }
                Ok::<_, Error>(acc)
            },
        )
        .try_reduce(|| [0u64; 3], |a, b| Ok([a[0] + b[0], a[1] + b[1], a[2] + b[2]]))?;
    Ok(ApplicabilityReport {
        n: config.n,
        m: config.m,
        trials: config.trials,
        seed: config.seed,
        percentages: config
            .rules
            .iter()
            .map(|&r| RuleRate::new(r, counts[r as usize], config.trials))
            .collect(),
    })
}

/// Upper bound on the number of vote-count vectors enumerated exactly.
pub const EXACT_LIMIT: u128 = 5_000_000;

fn all_rankings(n: usize) -> Vec<Ranking> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Ranking>) {
        if prefix.len() == used.len() {
            out.push(Ranking::new(prefix.clone()).expect("permutation"));
            return;
        }
        for c in 0..used.len() {
            if !used[c] {
                used[c] = true;
                prefix.push(c);
                rec(prefix, used, out);
                prefix.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Exact probabilities (in percent) of each rule firing on `m` uniform votes
/// over `n` candidates, summed over all vote-count vectors with their
/// multinomial weights.
pub fn exact_applicability(n: usize, m: usize) -> Result<Vec<(SimRule, f64)>> {
    if n == 0 || m == 0 || n > 5 {
        return Err(Error::InvalidConfig(
            "exact enumeration needs 1 <= n <= 5 and m >= 1".into(),
        ));
    }
    let rankings = all_rankings(n);
    let r = rankings.len();
    let compositions = binomial((m + r - 1) as u128, (r - 1) as u128);
    if compositions > EXACT_LIMIT {
        return Err(Error::InvalidConfig(format!(
            "{compositions} vote-count vectors exceed the enumeration limit"
        )));
    }
    let ln_fact: Vec<f64> = std::iter::once(0.0)
        .chain((1..=m).scan(0.0, |acc, i| {
            *acc += (i as f64).ln();
            Some(*acc)
        }))
        .collect();
    let ln_base = m as f64 * (r as f64).ln();
    let candidates = labels(n);
    let mut totals = [0.0f64; 3];
    let mut counts = vec![0usize; r];
    let mut visit = |counts: &[usize]| -> Result<()> {
        let votes: Vec<(Ranking, u64)> = counts
            .iter()
            .zip(&rankings)
            .filter(|(&c, _)| c > 0)
            .map(|(&c, rk)| (rk.clone(), c as u64))
            .collect();
        let profile = Profile::new(candidates.clone(), votes)?;
        let bits = indicator_bits(&profile, &SimRule::ALL);
        let ln_w = ln_fact[m] - counts.iter().map(|&c| ln_fact[c]).sum::<f64>() - ln_base;
        let w = ln_w.exp();
        for (i, t) in totals.iter_mut().enumerate() {
            if bits >> i & 1 == 1 {
                *t += w;
            }
        }
        Ok(())
    };
    fn compose(
        i: usize,
        left: usize,
        counts: &mut [usize],
        visit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if i + 1 == counts.len() {
            counts[i] = left;
            return visit(counts);
        }
        for c in 0..=left {
            counts[i] = c;
            compose(i + 1, left - c, counts, visit)?;
        }
        Ok(())
    }
    compose(0, m, &mut counts, &mut visit)?;
    Ok(SimRule::ALL
        .iter()
        .map(|&rule| (rule, 100.0 * totals[rule as usize]))
        .collect())
}

/// Published rows `(n, m, AT, 2AT, 3AT)` in percent.
pub const PUBLISHED_GRID: [(usize, usize, f64, f64, f64); 25] = [
    (3, 3, 52.993, 52.993, 52.993),
    (3, 4, 29.916, 93.208, 29.916),
    (3, 7, 3.452, 80.354, 30.407),
    (3, 10, 0.419, 67.896, 27.414),
    (3, 13, 0.058, 57.042, 23.558),
    (3, 16, 0.005, 47.087, 5.88),
    (3, 19, 0.0, 39.294, 5.453),
    (3, 22, 0.0, 32.635, 4.765),
    (3, 25, 0.0, 26.871, 4.09),
    (3, 28, 0.0, 22.35, 1.079),
    (4, 5, 28.159, 89.767, 28.159),
    (4, 9, 1.713, 62.494, 18.92),
    (4, 13, 0.139, 38.778, 1.935),
    (4, 17, 0.007, 22.962, 1.244),
    (4, 21, 0.001, 13.341, 0.119),
    (4, 25, 0.0, 7.652, 0.104),
    (5, 6, 23.712, 84.405, 23.712),
    (5, 11, 0.973, 42.36, 0.973),
    (5, 16, 0.031, 17.053, 0.531),
    (5, 21, 0.0, 6.425, 0.03),
    (10, 11, 4.038, 33.935, 4.038),
    (10, 15, 0.282, 4.013, 0.282),
    (10, 21, 0.007, 0.95, 0.007),
    (15, 16, 0.327, 4.872, 0.327),
    (20, 21, 0.017, 0.394, 0.017),
];

pub fn published_value(n: usize, m: usize, rule: SimRule) -> Option<f64> {
    PUBLISHED_GRID
        .iter()
        .find(|row| row.0 == n && row.1 == m)
        .map(|row| match rule {
            SimRule::At => row.2,
            SimRule::TwoAt => row.3,
            SimRule::ThreeAt => row.4,
        })
}

/// Standard deviation, in percent, of an estimate of `p_percent` from `trials` samples.
pub fn sigma_percent(p_percent: f64, trials: u64) -> f64 {
    let p = p_percent / 100.0;
    100.0 * (p * (1.0 - p) / trials as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_candidate_votes_are_trivial() {
        let mut rng = trial_rng(1, 0);
        let p = random_profile(1, 4, &mut rng).unwrap();
        assert!(p.votes().iter().all(|(r, _)| r.order() == [0]));
    }

    #[test]
    fn deterministic() {
        let cfg = SimConfig::new(4, 5, 300, 11);
        assert_eq!(applicability(&cfg).unwrap(), applicability(&cfg).unwrap());
    }

    #[test]
    fn exact_three_by_three() {
        // By hand: a unanimous pair exists unless the three votes avoid it;
        // 216 − (count of profiles with no unanimous pair).
        let exact = exact_applicability(3, 3).unwrap();
        let brute = {
            let rankings = all_rankings(3);
            let mut hits = 0;
            for a in &rankings {
                for b in &rankings {
                    for c in &rankings {
                        let unanimous = (0..3).any(|x| {
                            (0..3).any(|y| {
                                x != y && a.prefers(x, y) && b.prefers(x, y) && c.prefers(x, y)
                            })
                        });
                        hits += unanimous as u32;
                    }
                }
            }
            100.0 * hits as f64 / 216.0
        };
        assert!((exact[0].1 - brute).abs() < 1e-9);
        assert!((exact[0].1 - exact[2].1).abs() < 1e-9);
    }

    #[test]
    fn rule_names_parse() {
        for r in SimRule::ALL {
            assert_eq!(r.name().parse::<SimRule>().unwrap(), r);
        }
    }

    #[test]
    fn half_width_matches_formula() {
        let r = RuleRate::new(SimRule::At, 25, 100);
        assert!((r.half_width - 100.0 * Z99 * (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-12);
    }
}
