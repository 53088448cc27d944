//! k-wise Kendall-tau distances, exact k-wise Kemeny medians, and the
//! majority-based rules that shrink the median search space.

pub mod distance;
pub mod error;
pub mod model;
pub mod paperlab;
pub mod reduce;
pub mod sim;
pub mod solve;

pub use distance::{distance_fast, distance_oracle, profile_distance, swap_delta, KParam, TallyScorer};
pub use error::{Error, ParseErrorKind, Result};
pub use model::{CandidateSet, PairTally, Profile, Ranking, ThresholdRatio, TripleTopTally};
pub use reduce::{run_all_rules, ConstraintSet, Rule, Scheme};
pub use solve::{median_bnb, median_bruteforce, median_dp, MedianResult, SolverKind};
