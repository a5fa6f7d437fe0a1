//! Lattice paths over north (`N`) and east (`E`) unit steps.
//!
//! A path starts at the origin. Its endpoint is `(x, y) = (#E, #N)`. A peak
//! is an adjacent `NE` pair and a valley an adjacent `EN` pair, each
//! identified with the lattice point between the two steps.
//!
//! `B(n, m)` below denotes the grand Dyck paths with `n` north and `m` east
//! steps (ending at `(m, n)`), and `B_j(n, m)` those beginning with exactly
//! `j` north steps followed by an east step.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("invalid step `{ch}` at position {position} (expected N or E)")]
    BadStep { ch: char, position: usize },
    #[error("path {0} has no east step, so its initial north run index is undefined")]
    NoEastStep(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Step {
    N,
    E,
}

impl Step {
    pub fn flipped(self) -> Step {
        match self {
            Step::N => Step::E,
            Step::E => Step::N,
        }
    }

    fn letter(self) -> char {
        match self {
            Step::N => 'N',
            Step::E => 'E',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LatticePoint {
    pub x: usize,
    pub y: usize,
}

impl LatticePoint {
    pub fn is_odd(&self) -> bool {
        (self.x + self.y) % 2 == 1
    }

    /// Position along the path: the number of steps taken to reach this point.
    pub fn index(&self) -> usize {
        self.x + self.y
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }

    pub fn empty() -> Self {
        LatticePath::default()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn north_count(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::N).count()
    }

    pub fn east_count(&self) -> usize {
        self.len() - self.north_count()
    }

    /// `(x, y) = (#E, #N)`.
    pub fn endpoint(&self) -> (usize, usize) {
        (self.east_count(), self.north_count())
    }

    pub fn last(&self) -> Option<Step> {
        self.steps.last().copied()
    }

    /// True iff the path has `n` steps and never goes below `y = x`.
    pub fn is_partial_dyck(&self, n: usize) -> bool {
        self.len() == n && self.stays_weakly_above_diagonal()
    }

    pub(crate) fn stays_weakly_above_diagonal(&self) -> bool {
        let mut height: i64 = 0;
        for &s in &self.steps {
            height += if s == Step::N { 1 } else { -1 };
            if height < 0 {
                return false;
            }
        }
        true
    }

    fn corners(&self, first: Step, second: Step) -> Vec<LatticePoint> {
        let (mut x, mut y) = (0, 0);
        let mut out = Vec::new();
        for w in self.steps.windows(2) {
            match w[0] {
                Step::N => y += 1,
                Step::E => x += 1,
            }
            if w[0] == first && w[1] == second {
                out.push(LatticePoint { x, y });
            }
        }
        out
    }

    /// Points between adjacent `NE` steps, left to right.
    pub fn peaks(&self) -> Vec<LatticePoint> {
        self.corners(Step::N, Step::E)
    }

    /// Points between adjacent `EN` steps, left to right.
    pub fn valleys(&self) -> Vec<LatticePoint> {
        self.corners(Step::E, Step::N)
    }

    /// Sum of `x + y` over all peaks.
    pub fn sump(&self) -> usize {
        self.steps
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == Step::N && w[1] == Step::E)
            .map(|(i, _)| i + 1)
            .sum()
    }

    pub fn primal_factorization(&self) -> RunFactorization {
        RunFactorization::of(self)
    }

    /// Length `j` of the initial north run; the path lies in `B_j`.
    pub fn b_subset_index(&self) -> Result<usize, PathError> {
        self.steps
            .iter()
            .position(|&s| s == Step::E)
            .ok_or_else(|| PathError::NoEastStep(self.to_string()))
    }

    pub fn duplicated(&self) -> LatticePath {
        LatticePath::new(self.steps.iter().flat_map(|&s| [s, s]).collect())
    }

    pub fn with_step(&self, step: Step) -> LatticePath {
        let mut steps = self.steps.clone();
        steps.push(step);
        LatticePath::new(steps)
    }

    /// The path minus its last step, together with that step.
    pub fn split_last(&self) -> Option<(LatticePath, Step)> {
        let (&last, rest) = self.steps.split_last()?;
        Some((LatticePath::new(rest.to_vec()), last))
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.letter())?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(i, ch)| match ch.to_ascii_uppercase() {
                'N' => Ok(Step::N),
                'E' => Ok(Step::E),
                _ => Err(PathError::BadStep { ch, position: i + 1 }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(LatticePath::new)
    }
}

impl Serialize for LatticePath {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Maximal-run decomposition `mu_0 mu_1 ... mu_d` of a path.
///
/// Even indices hold north runs and odd indices east runs; `mu_0` is empty
/// when the path starts with an east step. Only run lengths are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunFactorization {
    lengths: Vec<usize>,
}

impl RunFactorization {
    fn of(path: &LatticePath) -> Self {
        let mut lengths = vec![0];
        let mut current = Step::N;
        for &s in path.steps() {
            if s == current {
                *lengths.last_mut().unwrap() += 1;
            } else {
                lengths.push(1);
                current = s;
            }
        }
        RunFactorization { lengths }
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Index of the last run.
    pub fn d(&self) -> usize {
        self.lengths.len() - 1
    }

    pub fn len_of(&self, k: usize) -> usize {
        self.lengths.get(k).copied().unwrap_or(0)
    }

    pub fn letter_of(k: usize) -> Step {
        if k.is_multiple_of(2) {
            Step::N
        } else {
            Step::E
        }
    }

    /// Step index where run `k` begins.
    pub fn start_of(&self, k: usize) -> usize {
        self.lengths[..k].iter().sum()
    }

    /// Greatest run index with odd length, if any.
    pub fn last_odd(&self) -> Option<usize> {
        self.lengths.iter().rposition(|&l| l % 2 == 1)
    }

    pub fn all_even(&self) -> bool {
        self.lengths.iter().all(|&l| l % 2 == 0)
    }

    /// The runs as paths, `mu_0` first (possibly empty).
    pub fn runs(&self) -> Vec<LatticePath> {
        self.lengths
            .iter()
            .enumerate()
            .map(|(k, &l)| LatticePath::new(vec![Self::letter_of(k); l]))
            .collect()
    }

    pub fn concat(&self) -> LatticePath {
        LatticePath::new(self.runs().into_iter().flat_map(|r| r.into_steps()).collect())
    }
}

impl fmt::Display for RunFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.runs() {
            if r.is_empty() {
                f.write_str("(ε)")?;
            } else {
                write!(f, "({r})")?;
            }
        }
        Ok(())
    }
}

/// The classes of paths the bijections and involutions move between.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathClass {
    /// `B(north, east)`, optionally restricted to `B_j`.
    Grand {
        north: usize,
        east: usize,
        subset: Option<usize>,
    },
    /// `n`-step paths weakly above `y = x`.
    PartialDyck(usize),
    /// Dyck paths with `n` north and `n` east steps.
    Dyck(usize),
}

impl PathClass {
    pub fn contains(&self, p: &LatticePath) -> bool {
        match *self {
            PathClass::Grand { north, east, subset } => {
                p.endpoint() == (east, north) && subset.is_none_or(|j| p.b_subset_index().ok() == Some(j))
            }
            PathClass::PartialDyck(n) => p.is_partial_dyck(n),
            PathClass::Dyck(n) => p.is_partial_dyck(2 * n) && p.north_count() == n,
        }
    }
}

/// All paths with `north` N steps and `east` E steps, in lexicographic
/// order with `N < E`.
pub fn grand_paths(north: usize, east: usize) -> Vec<LatticePath> {
    let mut out = Vec::with_capacity(binomial(north + east, east) as usize);
    let mut buf = Vec::with_capacity(north + east);
    fn rec(north: usize, east: usize, buf: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
        if north == 0 && east == 0 {
            out.push(LatticePath::new(buf.clone()));
            return;
        }
        if north > 0 {
            buf.push(Step::N);
            rec(north - 1, east, buf, out);
            buf.pop();
        }
        if east > 0 {
            buf.push(Step::E);
            rec(north, east - 1, buf, out);
            buf.pop();
        }
    }
    rec(north, east, &mut buf, &mut out);
    out
}

/// All paths of length `n` weakly above the diagonal.
pub fn partial_dyck_paths(n: usize) -> Vec<LatticePath> {
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(n);
    fn rec(left: usize, height: usize, buf: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
        if left == 0 {
            out.push(LatticePath::new(buf.clone()));
            return;
        }
        buf.push(Step::N);
        rec(left - 1, height + 1, buf, out);
        buf.pop();
        if height > 0 {
            buf.push(Step::E);
            rec(left - 1, height - 1, buf, out);
            buf.pop();
        }
    }
    rec(n, 0, &mut buf, &mut out);
    out
}

/// `|B_j(north, east)|`: paths from `(1, j)` to `(east, north)`.
pub fn b_subset_size(north: usize, east: usize, j: usize) -> u64 {
    if east == 0 || j > north {
        return 0;
    }
    binomial(north - j + east - 1, east - 1)
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}
