//! Elections, rankings and the vote tallies every other module reads from.
//!
//! Candidates are addressed by their index in declaration order. A
//! [`Ranking`] stores both the order (position to candidate) and its inverse
//! so precedence tests are O(1).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, ParseErrorKind, Result};

/// Upper bound on the number of candidates, so that candidate subsets fit in a `u64`.
pub const MAX_CANDIDATES: usize = 64;

/// Ordered list of distinct candidate labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl CandidateSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidCandidates("no candidates".into()));
        }
        if names.len() > MAX_CANDIDATES {
            return Err(Error::InvalidCandidates(format!(
                "{} candidates exceed the maximum of {MAX_CANDIDATES}",
                names.len()
            )));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidCandidates(format!(
                    "label `{name}` must be a nonempty token without whitespace"
                )));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidCandidates(format!("duplicate label `{name}`")));
            }
        }
        Ok(CandidateSet { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: a candidate set holds at least one candidate.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, candidate: usize) -> &str {
        &self.names[candidate]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

/// A complete strict order of candidates `0..n`, most preferred first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl Ranking {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::InvalidRanking("empty ranking".into()));
        }
        let mut position = vec![usize::MAX; n];
        for (pos, &c) in order.iter().enumerate() {
            if c >= n {
                return Err(Error::InvalidRanking(format!(
                    "candidate index {c} out of range for {n} candidates"
                )));
            }
            if position[c] != usize::MAX {
                return Err(Error::InvalidRanking(format!("candidate index {c} repeated")));
            }
            position[c] = pos;
        }
        Ok(Ranking { order, position })
    }

    pub fn identity(n: usize) -> Self {
        let order: Vec<usize> = (0..n).collect();
        Ranking {
            position: order.clone(),
            order,
        }
    }

    /// Parses `a > b > c` against a candidate set.
    pub fn parse(text: &str, candidates: &CandidateSet) -> Result<Self> {
        let labels = split_chain(text);
        let mut order = Vec::with_capacity(labels.len());
        for label in &labels {
            match candidates.index_of(label) {
                Some(c) => order.push(c),
                None => {
                    return Err(Error::InvalidRanking(format!("unknown candidate `{label}`")))
                }
            }
        }
        if order.len() != candidates.len() {
            return Err(Error::CandidateMismatch {
                expected: candidates.len(),
                found: order.len(),
            });
        }
        Ranking::new(order)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, candidate: usize) -> usize {
        self.position[candidate]
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    pub fn top(&self) -> usize {
        self.order[0]
    }

    /// True when `a` is ranked before `b`.
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.position[a] < self.position[b]
    }

    /// Highest ranked member of a nonempty subset.
    pub fn top_of(&self, subset: &[usize]) -> usize {
        *subset
            .iter()
            .min_by_key(|&&c| self.position[c])
            .expect("top_of on an empty subset")
    }

    pub fn reversed(&self) -> Ranking {
        let order: Vec<usize> = self.order.iter().rev().copied().collect();
        Ranking::new(order).expect("reversal of a permutation is a permutation")
    }

    /// Renames candidate `c` to `relabel[c]`.
    pub fn relabel(&self, relabel: &[usize]) -> Result<Ranking> {
        Ranking::new(self.order.iter().map(|&c| relabel[c]).collect())
    }

    /// Exchanges the candidates at two positions.
    pub fn swap_positions(&self, i: usize, j: usize) -> Ranking {
        let mut order = self.order.clone();
        order.swap(i, j);
        Ranking::new(order).expect("swap keeps a permutation")
    }

    pub fn display<'a>(&'a self, candidates: &'a CandidateSet) -> RankingDisplay<'a> {
        RankingDisplay {
            ranking: self,
            candidates,
        }
    }
}

pub struct RankingDisplay<'a> {
    ranking: &'a Ranking,
    candidates: &'a CandidateSet,
}

impl fmt::Display for RankingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &c) in self.ranking.order.iter().enumerate() {
            if i > 0 {
                f.write_str(" > ")?;
            }
            f.write_str(self.candidates.name(c))?;
        }
        Ok(())
    }
}

fn split_chain(text: &str) -> Vec<&str> {
    text.split('>')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

/// A multiset of complete rankings over one candidate set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    candidates: CandidateSet,
    votes: Vec<(Ranking, u64)>,
    total: u64,
}

impl Profile {
    pub fn new(candidates: CandidateSet, votes: Vec<(Ranking, u64)>) -> Result<Self> {
        if votes.is_empty() {
            return Err(Error::InvalidProfile("no votes".into()));
        }
        let n = candidates.len();
        let mut total: u64 = 0;
        for (ranking, count) in &votes {
            if ranking.len() != n {
                return Err(Error::CandidateMismatch {
                    expected: n,
                    found: ranking.len(),
                });
            }
            if *count == 0 {
                return Err(Error::InvalidProfile("zero multiplicity".into()));
            }
            total = total
                .checked_add(*count)
                .ok_or_else(|| Error::InvalidProfile("vote count overflows".into()))?;
        }
        Ok(Profile {
            candidates,
            votes,
            total,
        })
    }

    /// Convenience constructor from labels and `a > b > c` vote strings.
    pub fn from_chains<S: AsRef<str>>(labels: &[&str], votes: &[(S, u64)]) -> Result<Self> {
        let candidates = CandidateSet::new(labels.iter().copied())?;
        let votes = votes
            .iter()
            .map(|(text, count)| Ok((Ranking::parse(text.as_ref(), &candidates)?, *count)))
            .collect::<Result<Vec<_>>>()?;
        Profile::new(candidates, votes)
    }

    pub fn candidates(&self) -> &CandidateSet {
        &self.candidates
    }

    /// Number of candidates.
    pub fn n(&self) -> usize {
        self.candidates.len()
    }

    /// Number of votes, multiplicities included.
    pub fn m(&self) -> u64 {
        self.total
    }

    pub fn votes(&self) -> &[(Ranking, u64)] {
        &self.votes
    }

    /// Merges repeated rankings, keeping first-occurrence order.
    pub fn distinct_votes(&self) -> Vec<(Ranking, u64)> {
        let mut seen: HashMap<&Ranking, usize> = HashMap::new();
        let mut out: Vec<(Ranking, u64)> = Vec::new();
        for (r, c) in &self.votes {
            match seen.get(r) {
                Some(&i) => out[i].1 += c,
                None => {
                    seen.insert(r, out.len());
                    out.push((r.clone(), *c));
                }
            }
        }
        out
    }

    pub fn ranking(&self, text: &str) -> Result<Ranking> {
        Ranking::parse(text, &self.candidates)
    }

    /// Candidate `c` becomes candidate `relabel[c]`; labels move with their candidates.
    pub fn relabel(&self, relabel: &[usize]) -> Result<Profile> {
        let n = self.n();
        if relabel.len() != n {
            return Err(Error::CandidateMismatch {
                expected: n,
                found: relabel.len(),
            });
        }
        Ranking::new(relabel.to_vec())?;
        let mut names = vec![String::new(); n];
        for c in 0..n {
            names[relabel[c]] = self.candidates.name(c).to_string();
        }
        let candidates = CandidateSet::new(names)?;
        let votes = self
            .votes
            .iter()
            .map(|(r, w)| Ok((r.relabel(relabel)?, *w)))
            .collect::<Result<Vec<_>>>()?;
        Profile::new(candidates, votes)
    }

    /// Keeps only the listed candidates (in the given order) in the candidate
    /// set and in every vote.
    pub fn restrict(&self, keep: &[usize]) -> Result<Profile> {
        let mut new_index = vec![usize::MAX; self.n()];
        for (i, &c) in keep.iter().enumerate() {
            if c >= self.n() || new_index[c] != usize::MAX {
                return Err(Error::InvalidCandidates(format!("bad candidate index {c}")));
            }
            new_index[c] = i;
        }
        let candidates =
            CandidateSet::new(keep.iter().map(|&c| self.candidates.name(c).to_string()))?;
        let votes = self
            .votes
            .iter()
            .map(|(r, w)| {
                let order = r
                    .order()
                    .iter()
                    .filter(|&&c| new_index[c] != usize::MAX)
                    .map(|&c| new_index[c])
                    .collect();
                Ok((Ranking::new(order)?, *w))
            })
            .collect::<Result<Vec<_>>>()?;
        Profile::new(candidates, votes)
    }

    /// The same election with every vote reversed.
    pub fn mirrored(&self) -> Profile {
        Profile {
            candidates: self.candidates.clone(),
            votes: self
                .votes
                .iter()
                .map(|(r, w)| (r.reversed(), *w))
                .collect(),
            total: self.total,
        }
    }

    /// Number of votes ranking `c` first.
    pub fn first_place_count(&self, c: usize) -> u64 {
        self.votes
            .iter()
            .filter(|(r, _)| r.top() == c)
            .map(|(_, w)| w)
            .sum()
    }

    pub fn pair_tally(&self) -> PairTally {
        PairTally::new(self)
    }

    pub fn triple_tally(&self) -> TripleTopTally {
        TripleTopTally::new(self)
    }

    /// Serializes into the profile text format.
    pub fn to_text(&self) -> String {
        let mut out = String::from("candidates:");
        for name in self.candidates.names() {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        for (r, w) in &self.votes {
            out.push_str(&format!("{w}: {}\n", r.display(&self.candidates)));
        }
        out
    }

    /// Parses the profile text format.
    ///
    /// `#` starts a comment line and blank lines are skipped. The first
    /// significant line declares the candidates, every later line is
    /// `<multiplicity>: <label> > ... > <label>` ranking all of them.
    pub fn parse(text: &str) -> Result<Self> {
        let mut candidates: Option<CandidateSet> = None;
        let mut votes = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some(cands) = &candidates else {
                candidates = Some(parse_header(line, line_no)?);
                continue;
            };
            votes.push(parse_vote(line, line_no, cands)?);
        }
        let Some(candidates) = candidates else {
            return Err(Error::parse(last_line.max(1), ParseErrorKind::MissingHeader));
        };
        if votes.is_empty() {
            return Err(Error::parse(last_line.max(1), ParseErrorKind::EmptyProfile));
        }
        Profile::new(candidates, votes)
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Profile::parse(s)
    }
}

fn parse_header(line: &str, line_no: usize) -> Result<CandidateSet> {
    let rest = line
        .strip_prefix("candidates:")
        .ok_or_else(|| Error::parse(line_no, ParseErrorKind::MissingHeader))?;
    let labels: Vec<&str> = rest.split_whitespace().collect();
    if labels.is_empty() {
        return Err(Error::parse(line_no, ParseErrorKind::NoCandidates));
    }
    if labels.len() > MAX_CANDIDATES {
        return Err(Error::parse(
            line_no,
            ParseErrorKind::TooManyCandidates(labels.len()),
        ));
    }
    let mut seen = HashMap::new();
    for l in &labels {
        if seen.insert(*l, ()).is_some() {
            return Err(Error::parse(
                line_no,
                ParseErrorKind::DuplicateDeclaration(l.to_string()),
            ));
        }
    }
    CandidateSet::new(labels.iter().copied())
        .map_err(|_| Error::parse(line_no, ParseErrorKind::NoCandidates))
}

fn parse_vote(line: &str, line_no: usize, cands: &CandidateSet) -> Result<(Ranking, u64)> {
    let (count, chain) = line
        .split_once(':')
        .ok_or_else(|| Error::parse(line_no, ParseErrorKind::MalformedVote))?;
    let count = count.trim();
    let count: u64 = count
        .parse()
        .map_err(|_| Error::parse(line_no, ParseErrorKind::InvalidMultiplicity(count.into())))?;
    if count == 0 {
        return Err(Error::parse(line_no, ParseErrorKind::ZeroMultiplicity));
    }
    let n = cands.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for label in split_chain(chain) {
        let c = cands.index_of(label).ok_or_else(|| {
            Error::parse(line_no, ParseErrorKind::UnknownCandidate(label.into()))
        })?;
        if seen[c] {
            return Err(Error::parse(
                line_no,
                ParseErrorKind::DuplicateCandidate(label.into()),
            ));
        }
        seen[c] = true;
        order.push(c);
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::parse(
            line_no,
            ParseErrorKind::MissingCandidate(cands.name(missing).into()),
        ));
    }
    Ok((Ranking::new(order)?, count))
}

/// `before[x][y]` = number of votes ranking `x` before `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTally {
    n: usize,
    m: u64,
    before: Vec<u64>,
}

impl PairTally {
    pub fn new(profile: &Profile) -> Self {
        let n = profile.n();
        let mut before = vec![0u64; n * n];
        for (r, w) in profile.votes() {
            let order = r.order();
            for (i, &x) in order.iter().enumerate() {
                for &y in &order[i + 1..] {
                    before[x * n + y] += w;
                }
            }
        }
        PairTally {
            n,
            m: profile.m(),
            before,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn before(&self, x: usize, y: usize) -> u64 {
        self.before[x * self.n + y]
    }

    /// `x ≥_ratio y`: `x` precedes `y` in at least `ratio·m` votes.
    pub fn at_least(&self, x: usize, y: usize, ratio: ThresholdRatio) -> bool {
        ratio.met_by(self.before(x, y), self.m)
    }

    /// `x >_ratio y`: `x` precedes `y` in more than `ratio·m` votes.
    pub fn more_than(&self, x: usize, y: usize, ratio: ThresholdRatio) -> bool {
        ratio.exceeded_by(self.before(x, y), self.m)
    }
}

/// For every triple `{w, a, b}`, the number of votes whose top among the
/// three is `w`. Stored densely as `beats_both[w][a][b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleTopTally {
    n: usize,
    m: u64,
    beats_both: Vec<u64>,
}

impl TripleTopTally {
    pub fn new(profile: &Profile) -> Self {
        let n = profile.n();
        let mut beats_both = vec![0u64; n * n * n];
        for (r, w) in profile.distinct_votes() {
            let order = r.order();
            for (i, &top) in order.iter().enumerate() {
                let rest = &order[i + 1..];
                for (j, &a) in rest.iter().enumerate() {
                    for &b in &rest[j + 1..] {
                        beats_both[(top * n + a) * n + b] += w;
                        beats_both[(top * n + b) * n + a] += w;
                    }
                }
            }
        }
        TripleTopTally {
            n,
            m: profile.m(),
            beats_both,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Votes where `w` is ranked above both `a` and `b`.
    pub fn top_count(&self, w: usize, a: usize, b: usize) -> u64 {
        self.beats_both[(w * self.n + a) * self.n + b]
    }
}

/// An exact nonnegative ratio used as a vote-share threshold.
///
/// All comparisons against vote counts cross-multiply in 128-bit integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThresholdRatio(Ratio<u64>);

impl ThresholdRatio {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::InvalidThreshold("zero denominator".into()));
        }
        Ok(ThresholdRatio(Ratio::new(numerator, denominator)))
    }

    pub const HALF: ThresholdRatio = ThresholdRatio(Ratio::new_raw(1, 2));
    pub const THREE_QUARTERS: ThresholdRatio = ThresholdRatio(Ratio::new_raw(3, 4));
    pub const FIVE_SIXTHS: ThresholdRatio = ThresholdRatio(Ratio::new_raw(5, 6));

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn as_ratio(&self) -> Ratio<u64> {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// `count ≥ self·total`
    pub fn met_by(&self, count: u64, total: u64) -> bool {
        count as u128 * self.denom() as u128 >= self.numer() as u128 * total as u128
    }

    /// `count > self·total`
    pub fn exceeded_by(&self, count: u64, total: u64) -> bool {
        count as u128 * self.denom() as u128 > self.numer() as u128 * total as u128
    }
}

impl fmt::Display for ThresholdRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for ThresholdRatio {
    type Err = Error;

    /// Accepts `p/q`, an integer, or a decimal such as `0.75`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidThreshold(format!("cannot parse `{s}`"));
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q = q.trim().parse().map_err(|_| bad())?;
            return ThresholdRatio::new(p, q);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let int: u64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let den = 10u64.pow(frac.len() as u32);
            let frac: u64 = frac.parse().map_err(|_| bad())?;
            let num = int
                .checked_mul(den)
                .and_then(|v| v.checked_add(frac))
                .ok_or_else(bad)?;
            return ThresholdRatio::new(num, den);
        }
        ThresholdRatio::new(s.parse().map_err(|_| bad())?, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Profile {
        Profile::parse("candidates: a b c\n2: a > b > c\n1: c > b > a").unwrap()
    }

    #[test]
    fn parses_simple_profile() {
        let p = abc();
        assert_eq!(p.n(), 3);
        assert_eq!(p.m(), 3);
        assert_eq!(p.votes().len(), 2);
        assert_eq!(p.candidates().name(2), "c");
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let p = Profile::parse("# header\n\ncandidates: a b\n# vote\n3: b > a\n\n").unwrap();
        assert_eq!(p.m(), 3);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases: &[(&str, usize, ParseErrorKind)] = &[
            (
                "candidates: a b\n1: a > a",
                2,
                ParseErrorKind::DuplicateCandidate("a".into()),
            ),
            (
                "candidates: a b c\n1: a > b",
                2,
                ParseErrorKind::MissingCandidate("c".into()),
            ),
            (
                "candidates: a b\n\n1: a > q",
                3,
                ParseErrorKind::UnknownCandidate("q".into()),
            ),
            ("candidates: a b\n0: a > b", 2, ParseErrorKind::ZeroMultiplicity),
            ("candidates: a b\n", 1, ParseErrorKind::EmptyProfile),
            ("1: a > b", 1, ParseErrorKind::MissingHeader),
            (
                "candidates: a b a\n1: a > b",
                1,
                ParseErrorKind::DuplicateDeclaration("a".into()),
            ),
            (
                "candidates: a b\nx: a > b",
                2,
                ParseErrorKind::InvalidMultiplicity("x".into()),
            ),
            ("candidates: a b\na > b", 2, ParseErrorKind::MalformedVote),
        ];
        for (text, line, kind) in cases {
            assert_eq!(
                Profile::parse(text).unwrap_err(),
                Error::Parse {
                    line: *line,
                    kind: kind.clone()
                },
                "{text:?}"
            );
        }
    }

    #[test]
    fn rejects_more_than_64_candidates() {
        let labels: Vec<String> = (0..65).map(|i| format!("c{i}")).collect();
        let text = format!("candidates: {}\n1: {}", labels.join(" "), labels.join(" > "));
        assert!(matches!(
            Profile::parse(&text),
            Err(Error::Parse {
                line: 1,
                kind: ParseErrorKind::TooManyCandidates(65)
            })
        ));
    }

    #[test]
    fn text_round_trip() {
        let p = abc();
        assert_eq!(Profile::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn ranking_validation() {
        assert!(Ranking::new(vec![0, 2, 1]).is_ok());
        assert!(Ranking::new(vec![0, 0, 1]).is_err());
        assert!(Ranking::new(vec![0, 3, 1]).is_err());
        let r = Ranking::new(vec![2, 0, 1]).unwrap();
        assert_eq!(r.position(2), 0);
        assert!(r.prefers(0, 1));
        assert_eq!(r.top_of(&[1, 0]), 0);
        assert_eq!(r.reversed().order(), &[1, 0, 2]);
    }

    #[test]
    fn unanimous_pair_tally() {
        let p = Profile::parse("candidates: a b c\n3: a > b > c").unwrap();
        let t = p.pair_tally();
        assert_eq!(t.before(0, 1), 3);
        assert_eq!(t.before(0, 2), 3);
        assert_eq!(t.before(1, 2), 3);
        assert_eq!(t.before(2, 0), 0);
    }

    #[test]
    fn triple_tally_direct_reading() {
        let p = Profile::parse("candidates: a b c\n3: a > b > c").unwrap();
        let t = p.triple_tally();
        assert_eq!(t.top_count(0, 1, 2), 3);
        assert_eq!(t.top_count(1, 0, 2), 0);
        assert_eq!(t.top_count(2, 0, 1), 0);

        let p = Profile::parse("candidates: a b c\n1: a > b > c\n1: c > a > b").unwrap();
        let t = p.triple_tally();
        assert_eq!(t.top_count(0, 1, 2), 1);
        assert_eq!(t.top_count(2, 0, 1), 1);
        assert_eq!(t.top_count(1, 0, 2), 0);
    }

    #[test]
    fn threshold_ratio_comparisons() {
        let r: ThresholdRatio = "3/4".parse().unwrap();
        assert!(r.met_by(3, 4));
        assert!(!r.exceeded_by(3, 4));
        assert!(r.exceeded_by(4, 5));
        assert_eq!("0.75".parse::<ThresholdRatio>().unwrap(), r);
        assert_eq!("1".parse::<ThresholdRatio>().unwrap().to_f64(), 1.0);
        assert!("1/0".parse::<ThresholdRatio>().is_err());
        assert!("abc".parse::<ThresholdRatio>().is_err());
        assert!(ThresholdRatio::HALF < ThresholdRatio::THREE_QUARTERS);
    }

    #[test]
    fn restrict_and_mirror() {
        let p = abc();
        let q = p.restrict(&[2, 0]).unwrap();
        assert_eq!(q.candidates().names(), &["c".to_string(), "a".to_string()]);
        assert_eq!(q.votes()[0].0.order(), &[1, 0]);
        let mirrored = p.mirrored();
        assert_eq!(mirrored.votes()[0].0.order(), &[2, 1, 0]);
    }
}
