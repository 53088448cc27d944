//! Vote-share thresholds used by the reduction rules.
//!
//! Rational thresholds are exact. The extended s-majority bound involves a
//! square root: the float formula is only used to bracket an integer, which is
//! then accepted or rejected by the defining quadratic in exact arithmetic.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::ThresholdRatio;

pub type Rational = Ratio<i128>;

pub fn rational(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

pub fn from_threshold(t: ThresholdRatio) -> Rational {
    Rational::new(t.numer() as i128, t.denom() as i128)
}

pub fn to_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// `1 − 1/n`: a pair won by a larger share is fixed in every 2-wise median.
pub fn always_threshold(n: usize) -> Rational {
    let n = n as i128;
    rational(n - 1, n)
}

/// `f(n) = (3n − 5)/(4n − 6)`: a candidate beating everyone by a larger share
/// wins every 3-wise median.
pub fn condorcet_threshold(n: usize) -> Rational {
    let n = n as i128;
    rational(3 * n - 5, 4 * n - 6)
}

/// `g(n) = 1 − 1/(n² − 3n + 4)`: the 3-wise counterpart of [`always_threshold`].
pub fn unanimity_threshold(n: usize) -> Rational {
    let n = n as i128;
    let d = n * n - 3 * n + 4;
    rational(d - 1, d)
}

/// Largest election size (as a real) for which the extended s-majority rule
/// holds at threshold `s ∈ [1/2, 3/4)`.
pub fn n_of_s(s: f64) -> f64 {
    (((1.0 - s) * (7.0 - 9.0 * s)).sqrt() + 4.0 - 5.0 * s) / (3.0 - 4.0 * s)
}

/// `s(t, n(t)) = 3/2 − t − (1 − t)/(n(t) − 1)`.
pub fn s_of_t(t: f64) -> f64 {
    1.5 - t - (1.0 - t) / (n_of_s(t) - 1.0)
}

/// `l(s) = 3s/(3 − 4s)`: size parameter of the known s-majority counterexample.
pub fn l_of_s(s: f64) -> f64 {
    3.0 * s / (3.0 - 4.0 * s)
}

/// Exact version of `l(s)`.
pub fn l_of_s_exact(s: Rational) -> Rational {
    rational(3, 1) * s / (rational(3, 1) - rational(4, 1) * s)
}

/// `(3 − 4s)u² − (2 − 2s)u − 2 + 2s ≤ 0` with `u = n − 1`.
pub fn s_majority_admits(s: Rational, n: usize) -> bool {
    let u = Rational::from_integer(n as i128 - 1);
    let two = rational(2, 1);
    let value = (rational(3, 1) - rational(4, 1) * s) * u * u - (two - two * s) * u - two
        + two * s;
    value <= Rational::zero()
}

/// `⌊n(s)⌋`, or `None` when `s = 3/4` (every election size is admitted).
pub fn max_admissible_n(s: Rational) -> Result<Option<usize>> {
    if s < rational(1, 2) || s > rational(3, 4) {
        return Err(Error::InvalidThreshold(format!(
            "s = {s} lies outside [1/2, 3/4]"
        )));
    }
    if s == rational(3, 4) {
        return Ok(None);
    }
    let guess = n_of_s(to_f64(s)).floor().max(1.0) as usize;
    let mut n = guess;
    while s_majority_admits(s, n + 1) {
        n += 1;
    }
    while n > 1 && !s_majority_admits(s, n) {
        n -= 1;
    }
    Ok(Some(n))
}

/// `3/2 − s + (s − 1)/(n − 1)`: share above which a non-dirty candidate's
/// duel is fixed by the extended s-majority rule.
pub fn s_majority_pair_threshold(s: Rational, n: usize) -> Rational {
    rational(3, 2) - s + (s - Rational::one()) / Rational::from_integer(n as i128 - 1)
}

/// `(n − b − 2)(n − b − 6) ≤ 3b` with `n ≥ 3`.
pub fn bound_form_admissible(n: usize, b: usize) -> bool {
    let (n, b) = (n as i64, b as i64);
    n >= 3 && (n - b - 2) * (n - b - 6) <= 3 * b
}

/// `s ≥ (5λ + 1)/(6λ + 1)` with `λ > 0`.
pub fn lambda_form_admissible(lambda: Rational, s: Rational) -> bool {
    lambda > Rational::zero()
        && s >= (rational(5, 1) * lambda + Rational::one()) / (rational(6, 1) * lambda + Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_identities() {
        assert_eq!(condorcet_threshold(4), rational(7, 10));
        assert_eq!(condorcet_threshold(8), rational(19, 26));
        assert_eq!(unanimity_threshold(2), rational(1, 2));
        assert_eq!(unanimity_threshold(3), rational(3, 4));
        assert_eq!(unanimity_threshold(4), rational(7, 8));
        assert_eq!(unanimity_threshold(5), rational(13, 14));
        assert_eq!(always_threshold(12), rational(11, 12));
        assert_eq!(l_of_s_exact(rational(18, 25)), rational(18, 1));
    }

    #[test]
    fn condorcet_threshold_increases_below_three_quarters() {
        for n in 2..200 {
            assert!(condorcet_threshold(n) < condorcet_threshold(n + 1));
            assert!(condorcet_threshold(n) < rational(3, 4));
            assert!(unanimity_threshold(n) < unanimity_threshold(n + 1));
        }
    }

    #[test]
    fn unanimity_is_stricter_than_always_from_three_candidates() {
        assert_eq!(unanimity_threshold(2), always_threshold(2));
        for n in 3..100 {
            assert!(unanimity_threshold(n) > always_threshold(n));
        }
    }

    #[test]
    fn exact_floor_of_n_at_boundary() {
        // n(3/5) = 3 exactly, which floating point lands just below.
        assert!(n_of_s(0.6) < 3.0);
        assert_eq!(max_admissible_n(rational(3, 5)).unwrap(), Some(3));
        assert_eq!(max_admissible_n(rational(1, 2)).unwrap(), Some(2));
        assert_eq!(max_admissible_n(rational(3, 4)).unwrap(), None);
        assert!(max_admissible_n(rational(2, 5)).is_err());
    }

    #[test]
    fn admissible_sizes_grow_with_s() {
        let mut last = 0;
        for num in 500..750 {
            let n = max_admissible_n(rational(num, 1000)).unwrap().unwrap();
            assert!(n >= last);
            last = n;
        }
    }

    #[test]
    fn pair_threshold_at_six_candidates() {
        let q = s_majority_pair_threshold(rational(716, 1000), 6);
        assert!((to_f64(q) - 0.7272).abs() < 1e-9);
        assert!(s_majority_admits(rational(716, 1000), 6));
        assert_eq!(
            s_majority_pair_threshold(rational(3, 4), 6),
            rational(7, 10)
        );
    }

    #[test]
    fn bound_form_examples() {
        assert!(bound_form_admissible(6, 0));
        assert!(bound_form_admissible(14, 6));
        assert!(!bound_form_admissible(14, 3));
        // Smallest admissible b for each listed size.
        for (n, b) in [(6, 0), (8, 2), (10, 3), (12, 4), (14, 6), (16, 7), (18, 9), (20, 11)] {
            assert!(bound_form_admissible(n, b), "({n},{b})");
            if b > 0 {
                assert!(!bound_form_admissible(n, b - 1), "({n},{})", b - 1);
            }
        }
    }

    #[test]
    fn lambda_form_gate() {
        assert!(lambda_form_admissible(rational(1, 1), rational(6, 7)));
        assert!(!lambda_form_admissible(rational(1, 1), rational(5, 6)));
        assert!(!lambda_form_admissible(rational(0, 1), rational(1, 1)));
    }
}
