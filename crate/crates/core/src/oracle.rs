//! Independent recomputation of joint statistic distributions.
//!
//! Shares nothing with the enumeration in [`crate::perm`]: involutions come
//! from the recursion "1 is fixed, or paired with some j", other families
//! from all `n!` permutations, membership from a cubic pattern scan and the
//! statistics from direct loops.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::perm::{Family, Pattern, Stat};
use crate::poly::LaurentPoly;

/// Largest involution length the oracle accepts.
pub const ORACLE_BOUND: usize = 12;
/// Largest length for families drawn from all of `S_n`.
pub const ORACLE_BOUND_ALL_PERMS: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle refuses {family} at n = {n}; bound is {bound}")]
    BoundExceeded { family: Family, n: usize, bound: usize },
}

/// Joint distribution: `(statA, statB) -> number of permutations`.
pub type OracleTable = BTreeMap<(i64, i64), u64>;

fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn rec(free: &[usize], partial: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some((&a, rest)) = free.split_first() else {
            out.push(partial.clone());
            return;
        };
        partial[a - 1] = a;
        rec(rest, partial, out);
        for (idx, &b) in rest.iter().enumerate() {
            let remaining: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != idx)
                .map(|(_, &v)| v)
                .collect();
            partial[a - 1] = b;
            partial[b - 1] = a;
            rec(&remaining, partial, out);
        }
        partial[a - 1] = 0;
    }
    let free: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    rec(&free, &mut vec![0; n], &mut out);
    out
}

/// Steps `s` to its lexicographic successor; false after the last one.
fn next_permutation(s: &mut [usize]) -> bool {
    let Some(i) = (1..s.len()).rev().find(|&i| s[i - 1] < s[i]) else {
        return false;
    };
    let j = (i..s.len()).rev().find(|&j| s[j] > s[i - 1]).expect("successor exists");
    s.swap(i - 1, j);
    s[i..].reverse();
    true
}

fn has_pattern(s: &[usize], pattern: Pattern) -> bool {
    let n = s.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let hit = match pattern {
                    Pattern::P321 => s[i] > s[j] && s[j] > s[k],
                    Pattern::P123 => s[i] < s[j] && s[j] < s[k],
                };
                if hit {
                    return true;
                }
            }
        }
    }
    false
}

fn stat(s: &[usize], which: Stat) -> i64 {
    let mut inv = 0;
    let mut des = 0;
    let mut maj = 0;
    let mut ldes = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] > s[j] {
                inv += 1;
            }
        }
        if i + 1 < s.len() && s[i] > s[i + 1] {
            des += 1;
            maj += i as i64 + 1;
            ldes = i as i64 + 1;
        }
    }
    match which {
        Stat::Inv => inv,
        Stat::Des => des,
        Stat::Maj => maj,
        Stat::Ldes => ldes,
        Stat::Lead => s.first().map_or(0, |&v| v as i64),
    }
}

/// Members of `family` of length `n`, by brute force.
pub fn brute_force_members(family: Family, n: usize) -> Result<Vec<Vec<usize>>, OracleError> {
    let bound = if family.involutions_only() {
        ORACLE_BOUND
    } else {
        ORACLE_BOUND_ALL_PERMS
    };
    if n > bound {
        return Err(OracleError::BoundExceeded { family, n, bound });
    }
    let keep = |s: &[usize]| family.avoided().is_none_or(|p| !has_pattern(s, p));
    if family.involutions_only() {
        return Ok(involutions(n).into_iter().filter(|s| keep(s)).collect());
    }
    let mut out = Vec::new();
    let mut s: Vec<usize> = (1..=n).collect();
    loop {
        if keep(&s) {
            out.push(s.clone());
        }
        if !next_permutation(&mut s) {
            return Ok(out);
        }
    }
}

pub fn brute_force_oracle(family: Family, n: usize, stats: (Stat, Stat)) -> Result<OracleTable, OracleError> {
    let mut table = OracleTable::new();
    for s in brute_force_members(family, n)? {
        *table.entry((stat(&s, stats.0), stat(&s, stats.1))).or_insert(0) += 1;
    }
    Ok(table)
}

/// `sum (-1)^a q^(scale * b)` over a `(a, b)` table.
pub fn signed_polynomial(table: &OracleTable, scale: i64) -> LaurentPoly {
    LaurentPoly::from_terms(table.iter().map(|(&(a, b), &c)| {
        let c = c as i64;
        (scale * b, if a % 2 == 0 { c } else { -c })
    }))
}

/// `sum q^(scale * b)` over rows with first coordinate `a`.
pub fn slice_polynomial(table: &OracleTable, a: i64, scale: i64) -> LaurentPoly {
    LaurentPoly::from_terms(
        table
            .iter()
            .filter(|(&(x, _), _)| x == a)
            .map(|(&(_, b), &c)| (scale * b, c)),
    )
}
