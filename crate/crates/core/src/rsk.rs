//! Schensted row insertion, its inverse, and the transpose map
//! `I_n(321) <-> I_n(123)`.
//!
//! An involution corresponds to a pair `(Q, Q)`. Transposing `Q` and
//! reverse-inserting `(Q^T, Q^T)` gives another involution whose descent
//! set is the complement of the original one in `{1, ..., n-1}`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::perm::{Pattern, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableauError {
    #[error("rows {0:?} do not form a standard Young tableau")]
    NotStandard(Vec<Vec<usize>>),
    #[error("tableaux have different shapes: {0:?} vs {1:?}")]
    ShapeMismatch(Vec<usize>, Vec<usize>),
    #[error("{0} is not an involution avoiding 321 or 123")]
    NotInDomain(String),
}

/// Strictly increasing rows and columns filled with `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, TableauError> {
        if !is_standard(&rows) {
            return Err(TableauError::NotStandard(rows));
        }
        Ok(StandardTableau { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> StandardTableau {
        let width = self.rows.first().map_or(0, Vec::len);
        let rows = (0..width)
            .map(|c| self.rows.iter().take_while(|r| r.len() > c).map(|r| r[c]).collect())
            .collect();
        StandardTableau { rows }
    }
}

fn is_standard(rows: &[Vec<usize>]) -> bool {
    if rows.iter().any(Vec::is_empty) {
        return false;
    }
    if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
        return false;
    }
    let n: usize = rows.iter().map(Vec::len).sum();
    let mut seen = vec![false; n + 1];
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            if v == 0 || v > n || seen[v] {
                return false;
            }
            seen[v] = true;
            if c > 0 && row[c - 1] >= v {
                return false;
            }
            if r > 0 && rows[r - 1][c] >= v {
                return false;
            }
        }
    }
    true
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(&self.rows).map_err(|_| fmt::Error)?)
    }
}

impl Serialize for StandardTableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StandardTableau {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<usize>>::deserialize(deserializer)?;
        StandardTableau::new(rows).map_err(serde::de::Error::custom)
    }
}

/// Insertion tableau `P` and recording tableau `Q` of `sigma`.
pub fn rsk(sigma: &Permutation) -> (StandardTableau, StandardTableau) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (i, &x) in sigma.entries().iter().enumerate() {
        let mut x = x;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![x]);
                q.push(vec![i + 1]);
                break;
            }
            match p[r].iter().position(|&y| y > x) {
                Some(c) => {
                    std::mem::swap(&mut p[r][c], &mut x);
                    r += 1;
                }
                None => {
                    p[r].push(x);
                    q[r].push(i + 1);
                    break;
                }
            }
        }
    }
    (StandardTableau { rows: p }, StandardTableau { rows: q })
}

/// The permutation whose insertion and recording tableaux are `(p, q)`.
pub fn inverse_rsk(p: &StandardTableau, q: &StandardTableau) -> Result<Permutation, TableauError> {
    if p.shape() != q.shape() {
        return Err(TableauError::ShapeMismatch(p.shape(), q.shape()));
    }
    let n = p.size();
    let mut p_rows = p.rows.clone();
    let mut q_rows = q.rows.clone();
    let mut entries = vec![0; n];
    for m in (1..=n).rev() {
        // In a standard tableau the largest entry sits at the end of its row.
        let r = q_rows
            .iter()
            .position(|row| row.last() == Some(&m))
            .expect("largest entry of a standard tableau is a corner");
        q_rows[r].pop();
        let mut x = p_rows[r].pop().expect("shapes agree");
        for row in p_rows[..r].iter_mut().rev() {
            let c = row.iter().rposition(|&y| y < x).expect("row above has a smaller entry");
            std::mem::swap(&mut row[c], &mut x);
        }
        entries[m - 1] = x;
        if q_rows[r].is_empty() {
            q_rows.pop();
            p_rows.pop();
        }
    }
    Ok(Permutation::from_entries_unchecked(entries))
}

/// `sigma -> sigma^T`, the preimage of `(Q^T, Q^T)` where `(Q, Q) = rsk(sigma)`.
pub fn transpose_involution(sigma: &Permutation) -> Result<Permutation, TableauError> {
    let in_domain =
        sigma.is_involution() && (!sigma.contains_pattern(Pattern::P321) || !sigma.contains_pattern(Pattern::P123));
    if !in_domain {
        return Err(TableauError::NotInDomain(sigma.to_string()));
    }
    let (_, q) = rsk(sigma);
    let qt = q.transpose();
    inverse_rsk(&qt, &qt)
}
