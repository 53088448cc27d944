use std::fmt;

use serde::Serialize;

use crate::reduce::thresholds::{
    always_threshold, condorcet_threshold, l_of_s, l_of_s_exact, max_admissible_n, n_of_s,
    rational, s_majority_admits, s_majority_pair_threshold, s_of_t, to_f64, unanimity_threshold,
};

/// Published figures are rounded to three decimals.
pub const TABLE_TOLERANCE: f64 = 0.0005;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableCheck {
    pub table: &'static str,
    pub key: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl fmt::Display for TableCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: expected {}, computed {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.table,
            self.key,
            self.expected,
            self.computed
        )
    }
}

fn close(table: &'static str, key: String, expected: f64, computed: f64) -> TableCheck {
    TableCheck {
        table,
        key,
        expected: format!("{expected}"),
        computed: format!("{computed:.6}"),
        pass: (expected - computed).abs() <= TABLE_TOLERANCE,
    }
}

fn exact<T: PartialEq + fmt::Display>(
    table: &'static str,
    key: String,
    expected: T,
    computed: T,
) -> TableCheck {
    TableCheck {
        table,
        key,
        pass: expected == computed,
        expected: expected.to_string(),
        computed: computed.to_string(),
    }
}

pub const ALWAYS_TABLE: [(usize, f64); 9] = [
    (2, 0.5),
    (3, 0.667),
    (4, 0.75),
    (5, 0.8),
    (6, 0.833),
    (8, 0.875),
    (10, 0.9),
    (12, 0.917),
    (20, 0.95),
];

pub const CONDORCET_TABLE: [(usize, f64); 6] = [
    (4, 0.7),
    (8, 0.731),
    (12, 0.738),
    (20, 0.743),
    (30, 0.746),
    (50, 0.747),
];

pub const UNANIMITY_TABLE: [(usize, f64); 8] = [
    (2, 0.5),
    (3, 0.75),
    (4, 0.875),
    (5, 0.929),
    (6, 0.955),
    (8, 0.977),
    (10, 0.987),
    (12, 0.991),
];

/// Rows `(t, s, n, l + 2)` of the s-majority optimality table.
pub const OPTIMALITY_TABLE: [(f64, f64, usize, u64); 12] = [
    (0.5, 0.691, 2, 11),
    (0.6, 0.7, 3, 13),
    (0.7, 0.721, 4, 21),
    (0.71, 0.729, 5, 24),
    (0.72, 0.725, 6, 29),
    (0.73, 0.735, 8, 38),
    (0.74, 0.741, 14, 67),
    (0.742, 0.743, 18, 81),
    (0.744, 0.745, 23, 104),
    (0.746, 0.746, 33, 151),
    (0.748, 0.748, 64, 292),
    (0.749, 0.749, 127, 573),
];

type Fraction = (i128, i128);

/// Sample `(n, s, q)` choices for which the s-majority rule is stated to apply.
pub const SQ_EXAMPLES: [(usize, Fraction, Fraction); 3] = [
    (6, (716, 1000), (728, 1000)),
    (12, (737, 1000), (74, 100)),
    (20, (743, 1000), (744, 1000)),
];

fn decimal(t: f64) -> (i128, i128) {
    let scaled = (t * 1000.0).round() as i128;
    (scaled, 1000)
}

/// Recomputes every tabulated threshold value.
pub fn verify_threshold_tables() -> Vec<TableCheck> {
    let mut out = Vec::new();
    for (n, v) in ALWAYS_TABLE {
        out.push(close("1-1/n", format!("n={n}"), v, to_f64(always_threshold(n))));
    }
    for (n, v) in CONDORCET_TABLE {
        out.push(close("f(n)", format!("n={n}"), v, to_f64(condorcet_threshold(n))));
    }
    for (n, v) in UNANIMITY_TABLE {
        out.push(close("g(n)", format!("n={n}"), v, to_f64(unanimity_threshold(n))));
    }
    for (t, s, n, l2) in OPTIMALITY_TABLE {
        let s_t = s_of_t(t);
        out.push(close("optimality", format!("t={t} s"), s, s_t));
        let (num, den) = decimal(t);
        let n_t = max_admissible_n(rational(num, den))
            .ok()
            .flatten()
            .unwrap_or(usize::MAX);
        out.push(exact("optimality", format!("t={t} n"), n, n_t));
        let l = l_of_s(s_t).ceil() as u64;
        out.push(exact("optimality", format!("t={t} l+2"), l2, l + 2));
        let ratio = (l + 2) as f64 / n_of_s(t);
        out.push(TableCheck {
            table: "optimality",
            key: format!("t={t} 4<(l+2)/n(t)<4.5"),
            expected: "in (4, 4.5)".into(),
            computed: format!("{ratio:.4}"),
            pass: ratio > 4.0 && ratio < 4.5,
        });
    }
    out.push(exact(
        "l(s)",
        "s=0.72".into(),
        rational(18, 1),
        l_of_s_exact(rational(72, 100)),
    ));
    for (n, (sn, sd), (qn, qd)) in SQ_EXAMPLES {
        let s = rational(sn, sd);
        let q = rational(qn, qd);
        let admitted = s_majority_admits(s, n);
        let threshold = s_majority_pair_threshold(s, n);
        out.push(TableCheck {
            table: "(s,q)",
            key: format!("n={n} s={}", to_f64(s)),
            expected: format!("n <= n(s) and q={} > threshold", to_f64(q)),
            computed: format!("admitted={admitted}, threshold={:.5}", to_f64(threshold)),
            pass: admitted && q > threshold,
        });
    }
    out
}
