//! Bijections between `I_n(321)`, partial Dyck paths `P_n`, and grand Dyck
//! paths `B(floor(n/2), ceil(n/2))`.
//!
//! `delta` reads an involution position by position (`N` where
//! `sigma_i >= i`, `E` otherwise). `xi` matches facing `N`/`E` pairs and
//! turns the first half (rounded up) of the unmatched north steps east.
//! Both preserve peak positions, so `maj(sigma) = sump(delta(sigma)) =
//! sump(xi(delta(sigma)))`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::path::{LatticePath, Step};
use crate::perm::{Pattern, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BijectionError {
    #[error("{0} is not a 321-avoiding involution")]
    NotI321(String),
    #[error("{0} is not a partial Dyck path")]
    NotPartialDyck(String),
    #[error("{path} ends at {actual:?}, expected {expected:?}")]
    WrongEndpoint {
        path: String,
        actual: (usize, usize),
        expected: (usize, usize),
    },
    #[error("path {path} has {actual} steps but n = {expected}")]
    LengthMismatch {
        path: String,
        actual: usize,
        expected: usize,
    },
}

/// A path together with a pairing of some of its north steps with later
/// east steps. Step indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoupledPath {
    pub path: LatticePath,
    /// `(north index, east index)` pairs, sorted by north index.
    pub couples: Vec<(usize, usize)>,
    /// North steps left without a partner, ascending.
    pub uncoupled: Vec<usize>,
    /// East steps left without a partner, ascending. Always empty for the
    /// `delta` coupling of a partial Dyck path.
    pub uncoupled_east: Vec<usize>,
}

impl CoupledPath {
    /// Coupling used to invert `delta`: scanning right to left, each east
    /// step takes the nearest still-uncoupled north step to its left.
    pub fn nearest_left(path: &LatticePath) -> Self {
        let mut pool: BTreeSet<usize> = path
            .steps()
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Step::N)
            .map(|(i, _)| i + 1)
            .collect();
        let mut couples = Vec::new();
        let mut uncoupled_east = Vec::new();
        for (i, &s) in path.steps().iter().enumerate().rev() {
            if s != Step::E {
                continue;
            }
            let east = i + 1;
            match pool.range(..east).next_back().copied() {
                Some(north) => {
                    pool.remove(&north);
                    couples.push((north, east));
                }
                None => uncoupled_east.push(east),
            }
        }
        couples.sort_unstable();
        uncoupled_east.sort_unstable();
        CoupledPath {
            path: path.clone(),
            couples,
            uncoupled: pool.into_iter().collect(),
            uncoupled_east,
        }
    }

    /// Facing-step matching used by `xi`: a north step and a later east
    /// step face each other when the slope-1 segment between their
    /// midpoints stays below the path. Equivalent to bracket matching with
    /// `N` as the opening symbol.
    pub fn facing(path: &LatticePath) -> Self {
        let mut stack = Vec::new();
        let mut couples = Vec::new();
        let mut uncoupled_east = Vec::new();
        for (i, &s) in path.steps().iter().enumerate() {
            match s {
                Step::N => stack.push(i + 1),
                Step::E => match stack.pop() {
                    Some(north) => couples.push((north, i + 1)),
                    None => uncoupled_east.push(i + 1),
                },
            }
        }
        couples.sort_unstable();
        CoupledPath {
            path: path.clone(),
            couples,
            uncoupled: stack,
            uncoupled_east,
        }
    }
}

fn ceil_half(n: usize) -> usize {
    n.div_ceil(2)
}

/// `delta: I_n(321) -> P_n`.
pub fn delta(sigma: &Permutation) -> Result<LatticePath, BijectionError> {
    if !sigma.is_involution() || sigma.contains_pattern(Pattern::P321) {
        return Err(BijectionError::NotI321(sigma.to_string()));
    }
    Ok(LatticePath::new(
        sigma
            .entries()
            .iter()
            .enumerate()
            .map(|(i, &v)| if v > i { Step::N } else { Step::E })
            .collect(),
    ))
}

/// `delta^{-1}: P_n -> I_n(321)`; couples become transpositions and
/// uncoupled north steps fixed points.
pub fn delta_inv(tau: &LatticePath) -> Result<Permutation, BijectionError> {
    if !tau.is_partial_dyck(tau.len()) {
        return Err(BijectionError::NotPartialDyck(tau.to_string()));
    }
    let coupled = CoupledPath::nearest_left(tau);
    debug_assert!(coupled.uncoupled_east.is_empty());
    let mut entries: Vec<usize> = (1..=tau.len()).collect();
    for &(a, b) in &coupled.couples {
        entries[a - 1] = b;
        entries[b - 1] = a;
    }
    Ok(Permutation::from_entries_unchecked(entries))
}

/// `xi: P_n -> B(floor(n/2), ceil(n/2))`.
pub fn xi(tau: &LatticePath) -> Result<LatticePath, BijectionError> {
    if !tau.is_partial_dyck(tau.len()) {
        return Err(BijectionError::NotPartialDyck(tau.to_string()));
    }
    let coupled = CoupledPath::facing(tau);
    let flips = ceil_half(coupled.uncoupled.len());
    let mut steps = tau.steps().to_vec();
    for &i in &coupled.uncoupled[..flips] {
        steps[i - 1] = Step::E;
    }
    Ok(LatticePath::new(steps))
}

/// `xi^{-1}: B(floor(n/2), ceil(n/2)) -> P_n`; unmatched east steps turn north.
pub fn xi_inv(pi: &LatticePath) -> Result<LatticePath, BijectionError> {
    let n = pi.len();
    let expected = (ceil_half(n), n / 2);
    if pi.endpoint() != expected {
        return Err(BijectionError::WrongEndpoint {
            path: pi.to_string(),
            actual: pi.endpoint(),
            expected,
        });
    }
    let coupled = CoupledPath::facing(pi);
    let mut steps = pi.steps().to_vec();
    for &i in &coupled.uncoupled_east {
        steps[i - 1] = Step::N;
    }
    Ok(LatticePath::new(steps))
}

/// `xi . delta`.
pub fn to_grand(sigma: &Permutation) -> Result<LatticePath, BijectionError> {
    xi(&delta(sigma)?)
}

/// Inverse of [`to_grand`]. `n` must equal the path length; it pins the
/// expected endpoint `(ceil(n/2), floor(n/2))`.
pub fn from_grand(pi: &LatticePath, n: usize) -> Result<Permutation, BijectionError> {
    if pi.len() != n {
        return Err(BijectionError::LengthMismatch {
            path: pi.to_string(),
            actual: pi.len(),
            expected: n,
        });
    }
    delta_inv(&xi_inv(pi)?)
}
