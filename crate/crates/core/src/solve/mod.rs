//! Exact k-wise medians: exhaustive enumeration, subset dynamic programming
//! and branch and bound over prefixes.
//!
//! Single-median solvers break ties towards the lexicographically smallest
//! ranking (compared as sequences of candidate indices), so all of them
//! return the same ranking.

mod bnb;
mod brute;
mod cost;
mod dp;

pub use bnb::{median_bnb, median_bnb_with_stats, BnbStats};
pub use brute::{median_bruteforce, BRUTE_FORCE_MAX_N};
pub use cost::PlacementCost;
pub use dp::{median_dp, DP_MAX_N};

use std::fmt;
use std::str::FromStr;

use crate::distance::KParam;
use crate::error::{Error, Result};
use crate::model::Ranking;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverKind {
    BruteForce,
    Dp,
    BranchAndBound,
    MajorityVote,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::BruteForce => "brute",
            SolverKind::Dp => "dp",
            SolverKind::BranchAndBound => "bnb",
            SolverKind::MajorityVote => "majority-vote",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(SolverKind::BruteForce),
            "dp" => Ok(SolverKind::Dp),
            "bnb" => Ok(SolverKind::BranchAndBound),
            other => Err(Error::InvalidConfig(format!("unknown solver `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianResult {
    pub k: KParam,
    pub optimal_score: u64,
    /// Sorted lexicographically.
    pub medians: Vec<Ranking>,
    /// Whether `medians` lists every optimal ranking.
    pub complete: bool,
    pub solver: SolverKind,
}

impl MedianResult {
    pub fn median(&self) -> &Ranking {
        &self.medians[0]
    }

    pub fn is_unique(&self) -> bool {
        self.complete && self.medians.len() == 1
    }
}

fn require_small_k(k: KParam, solver: &'static str) -> Result<()> {
    if !(2..=3).contains(&k.get()) {
        return Err(Error::UnsupportedK { k: k.get(), solver });
    }
    Ok(())
}

fn require_n(n: usize, max: usize, solver: &'static str) -> Result<()> {
    if n > max {
        return Err(Error::TooManyCandidates { n, max, solver });
    }
    Ok(())
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
