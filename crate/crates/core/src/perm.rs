//! Permutations, the six statistics, and enumeration of the families
//! `I_n(321)`, `I_n(123)`, `S_n(321)`, `S_n(123)`, all involutions, and `S_n`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("not a permutation of 1..{n}: {entries:?}")]
    NotAPermutation { n: usize, entries: Vec<usize> },
    #[error("invalid entry `{token}` at position {position}")]
    BadToken { token: String, position: usize },
    #[error("unknown pattern `{0}` (expected 321 or 123)")]
    UnknownPattern(String),
    #[error("unknown family `{0}` (expected I321, I123, S321, S123, Inv or All)")]
    UnknownFamily(String),
    #[error("unknown statistic `{0}`")]
    UnknownStat(String),
    #[error("statistic `{0}` cannot be used as a filter (use lead, des, maj or ldes)")]
    UnfilterableStat(Stat),
    #[error("malformed constraint `{0}` (expected stat=value)")]
    BadConstraint(String),
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self, PermError> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotAPermutation { n, entries });
            }
            seen[v] = true;
        }
        Ok(Permutation { entries })
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n).collect(),
        }
    }

    pub fn reversal(n: usize) -> Self {
        Permutation {
            entries: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// `sigma(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    pub fn is_involution(&self) -> bool {
        is_involution(&self.entries)
    }

    pub fn contains_pattern(&self, pattern: Pattern) -> bool {
        contains_pattern(&self.entries, pattern)
    }

    pub fn stats(&self) -> StatRecord {
        StatRecord::of(&self.entries)
    }

    pub fn stat(&self, stat: Stat) -> i64 {
        stat.value(&self.entries)
    }

    /// Cycles ordered by smallest element, each starting at its minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len() + 1];
        let mut out = Vec::new();
        for start in 1..=self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.at(i);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation such as `(1 2)(3)`, fixed points included.
    pub fn cycle_notation(&self) -> String {
        self.cycles()
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries = s
            .split_whitespace()
            .enumerate()
            .map(|(i, tok)| {
                tok.parse::<usize>().map_err(|_| PermError::BadToken {
                    token: tok.to_string(),
                    position: i + 1,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::new(entries)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

pub fn is_involution(entries: &[usize]) -> bool {
    entries.iter().enumerate().all(|(i, &v)| entries[v - 1] == i + 1)
}

/// Linear-time test using prefix extremes and suffix extremes around each
/// middle element.
pub fn contains_pattern(entries: &[usize], pattern: Pattern) -> bool {
    let n = entries.len();
    if n < 3 {
        return false;
    }
    match pattern {
        Pattern::P321 => {
            let mut suffix_min = vec![usize::MAX; n + 1];
            for i in (0..n).rev() {
                suffix_min[i] = suffix_min[i + 1].min(entries[i]);
            }
            let mut prefix_max = 0;
            for j in 0..n {
                let v = entries[j];
                if prefix_max > v && suffix_min[j + 1] < v {
                    return true;
                }
                prefix_max = prefix_max.max(v);
            }
            false
        }
        Pattern::P123 => {
            let mut suffix_max = vec![0; n + 1];
            for i in (0..n).rev() {
                suffix_max[i] = suffix_max[i + 1].max(entries[i]);
            }
            let mut prefix_min = usize::MAX;
            for j in 0..n {
                let v = entries[j];
                if prefix_min < v && suffix_max[j + 1] > v {
                    return true;
                }
                prefix_min = prefix_min.min(v);
            }
            false
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Pattern {
    #[serde(rename = "321")]
    P321,
    #[serde(rename = "123")]
    P123,
}

impl FromStr for Pattern {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "321" => Ok(Pattern::P321),
            "123" => Ok(Pattern::P123),
            other => Err(PermError::UnknownPattern(other.to_string())),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::P321 => "321",
            Pattern::P123 => "123",
        })
    }
}

/// Permutation statistics usable as signs, weights or filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stat {
    Inv,
    Des,
    Maj,
    Ldes,
    Lead,
}

impl Stat {
    pub const ALL: [Stat; 5] = [Stat::Inv, Stat::Des, Stat::Maj, Stat::Ldes, Stat::Lead];

    pub fn name(self) -> &'static str {
        match self {
            Stat::Inv => "inv",
            Stat::Des => "des",
            Stat::Maj => "maj",
            Stat::Ldes => "ldes",
            Stat::Lead => "lead",
        }
    }

    /// Value of the statistic on a one-line permutation. `ldes` is 0 when
    /// there is no descent and `lead` is 0 on the empty permutation.
    pub fn value(self, entries: &[usize]) -> i64 {
        let descents = || (1..entries.len()).filter(|&i| entries[i - 1] > entries[i]);
        match self {
            Stat::Inv => {
                let mut inv = 0;
                for i in 0..entries.len() {
                    for j in i + 1..entries.len() {
                        if entries[i] > entries[j] {
                            inv += 1;
                        }
                    }
                }
                inv
            }
            Stat::Des => descents().count() as i64,
            Stat::Maj => descents().sum::<usize>() as i64,
            Stat::Ldes => descents().next_back().unwrap_or(0) as i64,
            Stat::Lead => entries.first().copied().unwrap_or(0) as i64,
        }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stat {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stat::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| PermError::UnknownStat(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatRecord {
    pub inv: u64,
    pub des_set: Vec<usize>,
    pub des: usize,
    pub maj: u64,
    pub ldes: usize,
    pub lead: Option<usize>,
}

impl StatRecord {
    fn of(entries: &[usize]) -> Self {
        let des_set: Vec<usize> = (1..entries.len()).filter(|&i| entries[i - 1] > entries[i]).collect();
        StatRecord {
            inv: Stat::Inv.value(entries) as u64,
            des: des_set.len(),
            maj: des_set.iter().sum::<usize>() as u64,
            ldes: des_set.last().copied().unwrap_or(0),
            lead: entries.first().copied(),
            des_set,
        }
    }
}

/// The permutation families the verifier sums over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    I321,
    I123,
    S321,
    S123,
    Inv,
    All,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::I321,
        Family::I123,
        Family::S321,
        Family::S123,
        Family::Inv,
        Family::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::I321 => "I321",
            Family::I123 => "I123",
            Family::S321 => "S321",
            Family::S123 => "S123",
            Family::Inv => "Inv",
            Family::All => "All",
        }
    }

    pub fn involutions_only(self) -> bool {
        matches!(self, Family::I321 | Family::I123 | Family::Inv)
    }

    pub fn avoided(self) -> Option<Pattern> {
        match self {
            Family::I321 | Family::S321 => Some(Pattern::P321),
            Family::I123 | Family::S123 => Some(Pattern::P123),
            Family::Inv | Family::All => None,
        }
    }

    pub fn contains(self, p: &Permutation) -> bool {
        (!self.involutions_only() || p.is_involution()) && self.avoided().is_none_or(|pat| !p.contains_pattern(pat))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| PermError::UnknownFamily(s.to_string()))
    }
}

/// `stat = value` restriction for filtered enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Constraint {
    pub stat: Stat,
    pub value: i64,
}

impl Constraint {
    pub fn new(stat: Stat, value: i64) -> Result<Self, PermError> {
        if stat == Stat::Inv {
            return Err(PermError::UnfilterableStat(stat));
        }
        Ok(Constraint { stat, value })
    }

    pub fn accepts(&self, entries: &[usize]) -> bool {
        self.stat.value(entries) == self.value
    }
}

impl FromStr for Constraint {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, value) = s
            .split_once('=')
            .ok_or_else(|| PermError::BadConstraint(s.to_string()))?;
        let stat: Stat = name.trim().parse()?;
        let value = value
            .trim()
            .parse()
            .map_err(|_| PermError::BadConstraint(s.to_string()))?;
        Constraint::new(stat, value)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.stat, self.value)
    }
}

/// Incremental pattern detector for a growing prefix.
///
/// For 321 it keeps the prefix maximum and the largest entry that already
/// has a larger entry before it; a new entry below the latter completes a
/// 321. The 123 case is the mirror image.
#[derive(Debug, Clone, Copy)]
struct PrefixGuard {
    pattern: Option<Pattern>,
    extreme: usize,
    second: usize,
}

impl PrefixGuard {
    fn new(pattern: Option<Pattern>) -> Self {
        match pattern {
            Some(Pattern::P123) => PrefixGuard {
                pattern,
                extreme: usize::MAX,
                second: usize::MAX,
            },
            _ => PrefixGuard {
                pattern,
                extreme: 0,
                second: 0,
            },
        }
    }

    fn push(self, x: usize) -> Option<Self> {
        let mut next = self;
        match self.pattern {
            None => {}
            Some(Pattern::P321) => {
                if self.second > x {
                    return None;
                }
                if self.extreme > x {
                    next.second = x;
                }
                next.extreme = self.extreme.max(x);
            }
            Some(Pattern::P123) => {
                if self.second < x {
                    return None;
                }
                if self.extreme < x {
                    next.second = x;
                }
                next.extreme = self.extreme.min(x);
            }
        }
        Some(next)
    }
}

/// Calls `visit` on every member of `family` of length `n`, in
/// lexicographic order of the one-line notation.
pub fn visit<F: FnMut(&[usize])>(family: Family, n: usize, mut visit: F) {
    visit_from(family, n, None, &mut visit);
}

/// Like [`visit`] but restricted to members whose first entry is `first`.
/// The sets for `first = 1..=n` partition the family, which is how parallel
/// sweeps split work.
pub fn visit_with_first<F: FnMut(&[usize])>(family: Family, n: usize, first: usize, mut visit: F) {
    if first == 0 || first > n {
        return;
    }
    visit_from(family, n, Some(first), &mut visit);
}

fn visit_from<F: FnMut(&[usize])>(family: Family, n: usize, first: Option<usize>, visit: &mut F) {
    let guard = PrefixGuard::new(family.avoided());
    if family.involutions_only() {
        let mut entries = vec![0; n];
        walk_involutions(&mut entries, 0, guard, first, visit);
    } else {
        let mut prefix = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        walk_permutations(n, &mut prefix, &mut used, guard, first, visit);
    }
}

// Values are chosen in increasing order at the first unassigned position;
// positions already fixed by an earlier transposition are forced.
fn walk_involutions<F: FnMut(&[usize])>(
    entries: &mut [usize],
    pos: usize,
    guard: PrefixGuard,
    first: Option<usize>,
    visit: &mut F,
) {
    let n = entries.len();
    if pos == n {
        visit(entries);
        return;
    }
    if entries[pos] != 0 {
        if let Some(g) = guard.push(entries[pos]) {
            walk_involutions(entries, pos + 1, g, None, visit);
        }
        return;
    }
    let me = pos + 1;
    for v in me..=n {
        if first.is_some_and(|f| f != v) {
            continue;
        }
        if v != me && entries[v - 1] != 0 {
            continue;
        }
        let Some(g) = guard.push(v) else { continue };
        entries[pos] = v;
        entries[v - 1] = me;
        walk_involutions(entries, pos + 1, g, None, visit);
        entries[v - 1] = 0;
        entries[pos] = 0;
    }
}

fn walk_permutations<F: FnMut(&[usize])>(
    n: usize,
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    guard: PrefixGuard,
    first: Option<usize>,
    visit: &mut F,
) {
    if prefix.len() == n {
        visit(prefix);
        return;
    }
    for v in 1..=n {
        if used[v] || first.is_some_and(|f| f != v) {
            continue;
        }
        let Some(g) = guard.push(v) else { continue };
        used[v] = true;
        prefix.push(v);
        walk_permutations(n, prefix, used, g, None, visit);
        prefix.pop();
        used[v] = false;
    }
}

/// All members of `family` of length `n` in lexicographic order.
pub fn enumerate(family: Family, n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    visit(family, n, |e| out.push(Permutation::from_entries_unchecked(e.to_vec())));
    out
}

/// Members of `family` satisfying `constraint`, in the same order as [`enumerate`].
pub fn enumerate_filtered(family: Family, n: usize, constraint: Constraint) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut keep = |e: &[usize]| {
        if constraint.accepts(e) {
            out.push(Permutation::from_entries_unchecked(e.to_vec()));
        }
    };
    if constraint.stat == Stat::Lead && constraint.value >= 1 {
        visit_with_first(family, n, constraint.value as usize, keep);
    } else {
        visit(family, n, &mut keep);
    }
    out
}
