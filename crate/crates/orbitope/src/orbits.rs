//! Lexicographic order, lex-max membership, canonicalization under the
//! column group, and brute-force vertex enumeration.
//!
//! Matrices are ordered by the row-major position order
//! `(1,1) < (1,2) < … < (p,q)`: the matrix with a 1 at the first differing
//! position is the larger one. The orbitope vertices are exactly the
//! matrices of the row mode that are maximal within their orbit, which has
//! a direct test per group:
//!
//! * full symmetric group — columns in non-increasing lexicographic order,
//! * cyclic group, packing — column 1 not smaller than any other column,
//! * cyclic group, partitioning — a 1-entry at position `(1,1)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::index::{BinaryMatrix, CellIndex, Group, RowMode, Shape};
use crate::{Error, Result};

/// Enumeration guard: refuse brute-force scans with more candidates than
/// this (`2^24`), unless explicitly overridden.
pub const ENUMERATION_GUARD: u128 = 1 << 24;

/// The column action a shape induces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupAction {
    /// The `q` cyclic shifts of the columns.
    CyclicShift { q: u32 },
    /// All `q!` column permutations; only ever applied through sorting.
    FullSymmetric { q: u32 },
}

impl GroupAction {
    pub fn of(shape: &Shape) -> GroupAction {
        match shape.group {
            Group::Cyclic => GroupAction::CyclicShift { q: shape.q },
            Group::Symmetric => GroupAction::FullSymmetric { q: shape.q },
        }
    }
}

/// Row-major lexicographic comparison of two matrices on the same grid.
/// Symmetric-shape matrices compare as their zero-padded full matrices.
pub fn lex_compare(a: &BinaryMatrix, b: &BinaryMatrix) -> Result<Ordering> {
    if a.shape().p != b.shape().p || a.shape().q != b.shape().q {
        return Err(Error::ShapeMismatch(format!(
            "cannot compare {}x{} with {}x{}",
            a.shape().p,
            a.shape().q,
            b.shape().p,
            b.shape().q
        )));
    }
    Ok(compare_position_sets(a.support().iter().copied(), b.support().iter().copied()))
}

/// First-difference comparison of two ascending position streams; the
/// stream holding the earlier position is the larger matrix.
fn compare_position_sets<I, J, P>(a: I, b: J) -> Ordering
where
    P: Ord,
    I: IntoIterator<Item = P>,
    J: IntoIterator<Item = P>,
{
    let mut a = a.into_iter();
    let mut b = b.into_iter();
    loop {
        match (a.next(), b.next()) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(x), Some(y)) => match x.cmp(&y) {
                Ordering::Equal => continue,
                // earlier 1-entry wins
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            },
        }
    }
}

fn column_row_lists(support: &BTreeSet<CellIndex>, q: u32) -> Vec<Vec<u32>> {
    let mut cols = vec![Vec::new(); q as usize];
    for cell in support {
        cols[cell.j as usize - 1].push(cell.i);
    }
    for rows in &mut cols {
        rows.sort_unstable();
    }
    cols
}

/// Lexicographic comparison of two 0/1 columns given as ascending row lists.
fn compare_columns(a: &[u32], b: &[u32]) -> Ordering {
    compare_position_sets(a.iter().copied(), b.iter().copied())
}

/// Whether `m` is the maximum of its orbit under the shape's column action.
pub fn is_lex_max(m: &BinaryMatrix) -> bool {
    let shape = m.shape();
    match shape.group {
        Group::Symmetric => {
            let cols = column_row_lists(m.support(), shape.q);
            cols.windows(2).all(|w| compare_columns(&w[0], &w[1]) != Ordering::Less)
        }
        Group::Cyclic => match shape.row_mode {
            RowMode::Partitioning => m.contains(CellIndex::new(1, 1)),
            RowMode::Packing => {
                let cols = column_row_lists(m.support(), shape.q);
                cols[1..].iter().all(|c| compare_columns(&cols[0], c) != Ordering::Less)
            }
        },
    }
}

/// Canonicalizes a raw support set under the column action: column sorting
/// for the symmetric group, best cyclic shift for the cyclic group.
pub fn canonicalize_support(support: &BTreeSet<CellIndex>, q: u32, group: Group) -> BTreeSet<CellIndex> {
    match group {
        Group::Symmetric => {
            let mut cols = column_row_lists(support, q);
            cols.sort_by(|a, b| compare_columns(b, a));
            let mut out = BTreeSet::new();
            for (idx, rows) in cols.iter().enumerate() {
                for &i in rows {
                    out.insert(CellIndex::new(i, idx as u32 + 1));
                }
            }
            out
        }
        Group::Cyclic => {
            let mut best: Option<BTreeSet<CellIndex>> = None;
            for r in 0..q {
                let rotated: BTreeSet<CellIndex> = support
                    .iter()
                    .map(|c| CellIndex::new(c.i, (c.j - 1 + r) % q + 1))
                    .collect();
                let better = match &best {
                    None => true,
                    Some(b) => {
                        compare_position_sets(rotated.iter().copied(), b.iter().copied())
                            == Ordering::Greater
                    }
                };
                if better {
                    best = Some(rotated);
                }
            }
            best.unwrap_or_default()
        }
    }
}

/// The lex-max member of `m`'s orbit.
pub fn canonicalize(m: &BinaryMatrix) -> BinaryMatrix {
    let support = canonicalize_support(m.support(), m.shape().q, m.shape().group);
    BinaryMatrix::new(*m.shape(), support)
        .expect("the lex-max orbit member satisfies the row mode and triangle invariants")
}

/// Number of candidate matrices the brute-force scan would visit.
pub fn candidate_count(shape: &Shape) -> u128 {
    let base = match shape.row_mode {
        RowMode::Packing => shape.q as u128 + 1,
        RowMode::Partitioning => shape.q as u128,
    };
    let mut total: u128 = 1;
    for _ in 0..shape.p {
        total = total.saturating_mul(base);
    }
    total
}

/// Streams the orbitope's vertex set: the row-mode matrices passing
/// [`is_lex_max`], in lexicographic order of their row-choice vectors.
///
/// Refuses shapes whose candidate space exceeds [`ENUMERATION_GUARD`]; the
/// CLI's `--unsafe-no-guard` flag reaches for
/// [`enumerate_vertices_unguarded`] instead.
pub fn enumerate_vertices(shape: &Shape) -> Result<VertexStream> {
    let count = candidate_count(shape);
    if count > ENUMERATION_GUARD {
        return Err(Error::Capacity(format!(
            "vertex enumeration would scan {count} candidates, above the 2^24 guard"
        )));
    }
    Ok(enumerate_vertices_unguarded(shape))
}

pub fn enumerate_vertices_unguarded(shape: &Shape) -> VertexStream {
    VertexStream { shape: *shape, choices: Vec::new(), done: false }
}

#[derive(Debug)]
pub struct VertexStream {
    shape: Shape,
    /// Current row-choice odometer; empty until the first `next`.
    choices: Vec<u32>,
    done: bool,
}

impl VertexStream {
    fn low(&self) -> u32 {
        match self.shape.row_mode {
            RowMode::Packing => 0,
            RowMode::Partitioning => 1,
        }
    }

    /// Advances the odometer; returns false when the space is exhausted.
    fn advance(&mut self) -> bool {
        if self.choices.is_empty() {
            self.choices = vec![self.low(); self.shape.p as usize];
            return true;
        }
        for idx in (0..self.choices.len()).rev() {
            let hi = self.shape.row_width(idx as u32 + 1);
            if self.choices[idx] < hi {
                self.choices[idx] += 1;
                for later in idx + 1..self.choices.len() {
                    self.choices[later] = self.low();
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for VertexStream {
    type Item = BinaryMatrix;

    fn next(&mut self) -> Option<BinaryMatrix> {
        if self.done {
            return None;
        }
        loop {
            if !self.advance() {
                self.done = true;
                return None;
            }
            let m = BinaryMatrix::from_row_choices(self.shape, &self.choices)
                .expect("odometer choices satisfy the row mode");
            if is_lex_max(&m) {
                return Some(m);
            }
        }
    }
}
