//! Exact brute-force oracles: vertex/description equivalence checks,
//! affine rank and dimension, facet certification, total-unimodularity
//! spot checks, and enumeration-based optimization.
//!
//! Everything here runs on exact rational arithmetic; the rank and
//! determinant kernels clear denominators row-wise and run fraction-free
//! (Bareiss) elimination over integers, so no floating point ever enters a
//! correctness claim.

use std::collections::BTreeSet;

use num::rational::BigRational;
use num::{BigInt, Integer, One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::descriptions::{ConstraintClass, LinearConstraint, Sense};
use crate::index::{BinaryMatrix, CellIndex, FractionalPoint, Shape};
use crate::orbits::{enumerate_vertices, lex_compare, ENUMERATION_GUARD};
use crate::{Error, Result};

/// A dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<RationalMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::Domain(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<RationalMatrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Domain("ragged rows".into()));
        }
        RationalMatrix::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<RationalMatrix> {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    /// Clears denominators row by row (rank-preserving) into integers.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = &self.entries[r * self.cols..(r + 1) * self.cols];
                let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
            })
            .collect()
    }

    /// Exact rank via fraction-free elimination.
    pub fn rank(&self) -> usize {
        integer_rank(self.integer_rows())
    }

    /// Exact determinant of a square matrix.
    pub fn determinant(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::Domain(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        // factor out the row scalings applied by integer_rows
        let mut scale = BigRational::one();
        for r in 0..self.rows {
            let row = &self.entries[r * self.cols..(r + 1) * self.cols];
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            scale *= BigRational::from_integer(lcm);
        }
        let det = integer_determinant(self.integer_rows());
        Ok(BigRational::from_integer(det) / scale)
    }
}

/// Rank of an integer matrix by Bareiss elimination: each step divides
/// exactly by the previous pivot, keeping every intermediate an integer.
fn integer_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut col = 0;
    while rank < nrows && col < ncols {
        let Some(pivot_row) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else {
            col += 1;
            continue;
        };
        a.swap(rank, pivot_row);
        let pivot = a[rank][col].clone();
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let num = &a[r][c] * &pivot - &a[r][col] * &a[rank][c];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                a[r][c] = num / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        col += 1;
    }
    rank
}

/// Determinant of a square integer matrix by Bareiss elimination.
fn integer_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut sign = false;
    for k in 0..n {
        let Some(pivot_row) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if pivot_row != k {
            a.swap(k, pivot_row);
            sign = !sign;
        }
        let pivot = a[k][k].clone();
        for r in k + 1..n {
            for c in k + 1..n {
                let num = &a[r][c] * &pivot - &a[r][k] * &a[k][c];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                a[r][c] = num / &prev;
            }
            a[r][k] = BigInt::zero();
        }
        prev = pivot;
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Affine rank of a point set: the linear rank of the differences to the
/// first point, i.e. the dimension of the affine hull.
pub fn affine_rank(points: &[FractionalPoint<BigRational>]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Err(Error::Domain("affine rank of an empty point set".into()));
    };
    let shape = first.shape();
    let cols = shape.cell_count();
    let mut rows = Vec::with_capacity(points.len().saturating_sub(1));
    for p in &points[1..] {
        if !p.shape().same_index_set(shape) {
            return Err(Error::ShapeMismatch("affine rank needs points on one index set".into()));
        }
        rows.push((0..cols).map(|k| &p.values()[k] - &first.values()[k]).collect());
    }
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(RationalMatrix::from_rows(rows)?.rank())
}

fn indicator_points(vertices: &[BinaryMatrix]) -> Vec<FractionalPoint<BigRational>> {
    vertices.iter().map(FractionalPoint::indicator).collect()
}

/// Dimension of the orbitope: affine rank of its vertex set.
pub fn orbitope_dimension(shape: &Shape) -> Result<usize> {
    let vertices: Vec<_> = enumerate_vertices(shape)?.collect();
    affine_rank(&indicator_points(&vertices))
}

/// Outcome of checking one inequality against the full vertex set.
#[derive(Debug, Clone, PartialEq)]
pub enum FaceCertificate {
    /// Valid, and the tight vertices span an affine space of dimension
    /// `dim − 1`.
    Facet,
    /// Valid but lower-dimensional; carries the affine dimension of the
    /// tight set (−1 when no vertex is tight).
    LowerDim(i64),
    /// Some vertex violates the inequality.
    Invalid(BinaryMatrix),
}

/// The vertices satisfying the constraint with equality.
pub fn tight_vertices(shape: &Shape, c: &LinearConstraint) -> Result<Vec<BinaryMatrix>> {
    let mut tight = Vec::new();
    for m in enumerate_vertices(shape)? {
        if c.tight_at_vertex(&m)? {
            tight.push(m);
        }
    }
    Ok(tight)
}

/// Certifies whether a valid inequality defines a facet, by the affine
/// rank of its tight vertex set.
pub fn certify_face(shape: &Shape, c: &LinearConstraint) -> Result<FaceCertificate> {
    let vertices: Vec<_> = enumerate_vertices(shape)?.collect();
    let dim = affine_rank(&indicator_points(&vertices))?;
    let mut tight = Vec::new();
    for m in vertices {
        if !c.satisfied_by_vertex(&m)? {
            return Ok(FaceCertificate::Invalid(m));
        }
        if c.tight_at_vertex(&m)? {
            tight.push(m);
        }
    }
    if tight.is_empty() {
        return Ok(FaceCertificate::LowerDim(-1));
    }
    let tight_rank = affine_rank(&indicator_points(&tight))? as i64;
    if tight_rank == dim as i64 - 1 {
        Ok(FaceCertificate::Facet)
    } else {
        Ok(FaceCertificate::LowerDim(tight_rank))
    }
}

/// Result of comparing a description's 0/1 solutions with the vertex set.
#[derive(Debug, Clone, Serialize)]
pub struct IntegralityReport {
    pub matches: bool,
    pub solution_count: usize,
    pub vertex_count: usize,
    /// Vertices missing from the solution set (first few).
    pub missing: Vec<Vec<(u32, u32)>>,
    /// Solutions that are not vertices (first few).
    pub extra: Vec<Vec<(u32, u32)>>,
}

const REPORT_SAMPLES: usize = 10;

/// Per-row 0/1 candidate supports implied by the row-sum constraints that
/// are present in the system: an equation leaves `width` choices, an
/// inequality `width + 1`, an uncovered row all `2^width` subsets.
fn row_candidates(shape: &Shape, constraints: &[LinearConstraint]) -> Result<Vec<Vec<Vec<u32>>>> {
    let mut row_sense: Vec<Option<Sense>> = vec![None; shape.p as usize + 1];
    for c in constraints {
        if c.class != ConstraintClass::RowSum {
            continue;
        }
        let cells = c.cells()?;
        let Some(&(first, _)) = cells.first() else { continue };
        let i = first.i;
        let full_row = cells.len() == shape.row_width(i) as usize
            && cells.iter().all(|(cell, coef)| cell.i == i && **coef == BigRational::one())
            && c.rhs == BigRational::one();
        if !full_row {
            continue;
        }
        let slot = &mut row_sense[i as usize];
        // an equation binds tighter than an inequality
        if c.sense == Sense::Eq || slot.is_none() {
            *slot = Some(c.sense);
        }
    }

    let mut candidates = Vec::with_capacity(shape.p as usize);
    for i in 1..=shape.p {
        let width = shape.row_width(i);
        let row: Vec<Vec<u32>> = match row_sense[i as usize] {
            Some(Sense::Eq) => (1..=width).map(|j| vec![j]).collect(),
            Some(_) => std::iter::once(Vec::new()).chain((1..=width).map(|j| vec![j])).collect(),
            None => {
                // all subsets, in ascending bitmask order
                (0u64..(1u64 << width))
                    .map(|mask| (1..=width).filter(|j| mask >> (j - 1) & 1 == 1).collect())
                    .collect()
            }
        };
        candidates.push(row);
    }
    Ok(candidates)
}

/// Enumerates the 0/1 points of the shape's index set satisfying every
/// constraint, and compares them with the enumerated vertex set. Rows are
/// factored through their own row-sum constraints where present, so the
/// candidate space stays near the vertex count; the `2^24` guard applies
/// to the factored space.
pub fn check_integrality(shape: &Shape, constraints: &[LinearConstraint]) -> Result<IntegralityReport> {
    check_integrality_jobs(shape, constraints, 1)
}

/// [`check_integrality`] with the candidate scan split across `jobs`
/// worker threads; the merge keeps the deterministic scan order.
pub fn check_integrality_jobs(
    shape: &Shape,
    constraints: &[LinearConstraint],
    jobs: usize,
) -> Result<IntegralityReport> {
    let candidates = row_candidates(shape, constraints)?;
    let total: u128 = candidates.iter().map(|row| row.len() as u128).product();
    if total > ENUMERATION_GUARD {
        return Err(Error::Capacity(format!(
            "integrality check would scan {total} candidates, above the 2^24 guard"
        )));
    }
    let total = total as u64;

    let scan = |from: u64, to: u64| -> Result<Vec<BTreeSet<CellIndex>>> {
        let mut found = Vec::new();
        'candidate: for mut index in from..to {
            let mut support = BTreeSet::new();
            for (row_idx, row) in candidates.iter().enumerate().rev() {
                let pick = (index % row.len() as u64) as usize;
                index /= row.len() as u64;
                for &j in &row[pick] {
                    support.insert(CellIndex::new(row_idx as u32 + 1, j));
                }
            }
            for c in constraints {
                let mut lhs = BigRational::zero();
                for (cell, coef) in c.cells()? {
                    if support.contains(&cell) {
                        lhs += coef;
                    }
                }
                let ok = match c.sense {
                    Sense::Le => lhs <= c.rhs,
                    Sense::Ge => lhs >= c.rhs,
                    Sense::Eq => lhs == c.rhs,
                };
                if !ok {
                    continue 'candidate;
                }
            }
            found.push(support);
        }
        Ok(found)
    };

    let solutions: Vec<BTreeSet<CellIndex>> = if jobs <= 1 || total < 2 {
        scan(0, total)?
    } else {
        let jobs = jobs.min(total as usize).max(1);
        let chunk = total.div_ceil(jobs as u64);
        let pieces = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs as u64)
                .map(|w| {
                    let scan = &scan;
                    let from = w * chunk;
                    let to = ((w + 1) * chunk).min(total);
                    scope.spawn(move || scan(from, to))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect::<Vec<_>>()
        });
        let mut merged = Vec::new();
        for piece in pieces {
            merged.extend(piece?);
        }
        merged
    };

    let solution_set: BTreeSet<_> = solutions.iter().cloned().collect();
    let vertex_set: BTreeSet<_> = enumerate_vertices(shape)?.map(|m| m.support().clone()).collect();
    let missing: Vec<_> = vertex_set
        .difference(&solution_set)
        .take(REPORT_SAMPLES)
        .map(|s| s.iter().map(|c| (c.i, c.j)).collect())
        .collect();
    let extra: Vec<_> = solution_set
        .difference(&vertex_set)
        .take(REPORT_SAMPLES)
        .map(|s| s.iter().map(|c| (c.i, c.j)).collect())
        .collect();
    Ok(IntegralityReport {
        matches: solution_set == vertex_set,
        solution_count: solution_set.len(),
        vertex_count: vertex_set.len(),
        missing,
        extra,
    })
}

/// Enumerates the integer points of the box `[lo, hi]^cells` satisfying
/// every constraint. This is the witness search for non-redundancy drop
/// tests, where relaxations beyond 0/1 matter.
pub fn enumerate_box_solutions(
    shape: &Shape,
    constraints: &[LinearConstraint],
    lo: i64,
    hi: i64,
) -> Result<Vec<Vec<i64>>> {
    if lo > hi {
        return Err(Error::Domain("empty box".into()));
    }
    let cells: Vec<CellIndex> = shape.cells().collect();
    let base = (hi - lo + 1) as u128;
    let total = base.checked_pow(cells.len() as u32).unwrap_or(u128::MAX);
    if total > ENUMERATION_GUARD {
        return Err(Error::Capacity(format!(
            "box enumeration would scan {total} candidates, above the 2^24 guard"
        )));
    }
    let prepared: Vec<(Vec<(usize, BigRational)>, Sense, &BigRational)> = constraints
        .iter()
        .map(|c| {
            let terms = c
                .cells()?
                .into_iter()
                .map(|(cell, coef)| (shape.cell_offset(cell), coef.clone()))
                .collect();
            Ok((terms, c.sense, &c.rhs))
        })
        .collect::<Result<_>>()?;

    let mut out = Vec::new();
    let mut values = vec![lo; cells.len()];
    'outer: loop {
        let feasible = prepared.iter().all(|(terms, sense, rhs)| {
            let lhs: BigRational = terms
                .iter()
                .map(|(off, coef)| coef * BigRational::from_integer(values[*off].into()))
                .sum();
            match sense {
                Sense::Le => lhs <= **rhs,
                Sense::Ge => lhs >= **rhs,
                Sense::Eq => lhs == **rhs,
            }
        });
        if feasible {
            out.push(values.clone());
        }
        for idx in (0..values.len()).rev() {
            if values[idx] < hi {
                values[idx] += 1;
                for later in values.iter_mut().skip(idx + 1) {
                    *later = lo;
                }
                continue 'outer;
            }
        }
        break;
    }
    Ok(out)
}

/// Report of a total-unimodularity sampling run.
#[derive(Debug, Clone, Serialize)]
pub struct TuReport {
    pub trials: u64,
    pub seed: u64,
    pub max_order: usize,
    /// Sampled submatrices whose determinant left {−1, 0, 1}: the rows,
    /// columns, and determinant of each offender (first few).
    pub violations: Vec<(Vec<usize>, Vec<usize>, String)>,
    pub violation_count: u64,
}

/// Samples `trials` random square submatrices of order at most `max_order`
/// and reports exact determinants outside `{−1, 0, 1}`. The sampler is
/// seeded for reproducible reports.
pub fn tu_spot_check(m: &RationalMatrix, trials: u64, max_order: usize, seed: u64) -> Result<TuReport> {
    let one = BigRational::one();
    for e in &m.entries {
        if !e.is_zero() && e.abs() != one {
            return Err(Error::Domain("TU spot check expects a 0/±1 matrix".into()));
        }
    }
    if m.rows == 0 || m.cols == 0 {
        return Err(Error::Domain("TU spot check needs a nonempty matrix".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = max_order.min(m.rows).min(m.cols).max(1);
    let mut violations = Vec::new();
    let mut violation_count = 0;
    for _ in 0..trials {
        let order = rand::Rng::gen_range(&mut rng, 1..=cap);
        let rows = rand::seq::index::sample(&mut rng, m.rows, order).into_vec();
        let cols = rand::seq::index::sample(&mut rng, m.cols, order).into_vec();
        let sub: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| m.get(r, c).to_integer()).collect())
            .collect();
        let det = integer_determinant(sub);
        if det.abs() > BigInt::one() {
            violation_count += 1;
            if violations.len() < REPORT_SAMPLES {
                violations.push((rows, cols, det.to_string()));
            }
        }
    }
    Ok(TuReport { trials, seed, max_order, violations, violation_count })
}

/// The coefficient matrix of a constraint list over the shape's index set
/// (one row per constraint, one column per cell).
pub fn coefficient_matrix(shape: &Shape, constraints: &[LinearConstraint]) -> Result<RationalMatrix> {
    let cols = shape.cell_count();
    let mut rows = Vec::with_capacity(constraints.len());
    for c in constraints {
        let mut row = vec![BigRational::zero(); cols];
        for (cell, coef) in c.cells()? {
            row[shape.cell_offset(cell)] = coef.clone();
        }
        rows.push(row);
    }
    RationalMatrix::from_rows(rows)
}

/// Enumeration-based optimization oracle: evaluates every vertex, breaking
/// value ties toward the lexicographically greatest matrix so the result
/// is canonical.
pub fn oracle_optimize(
    shape: &Shape,
    costs: &FractionalPoint<BigRational>,
) -> Result<(BigRational, BinaryMatrix)> {
    if !costs.shape().same_index_set(shape) {
        return Err(Error::ShapeMismatch("cost vector indexes a different grid".into()));
    }
    let mut best: Option<(BigRational, BinaryMatrix)> = None;
    for m in enumerate_vertices(shape)? {
        let value = costs.sum_over(m.support().iter().copied())?;
        let better = match &best {
            None => true,
            Some((bv, bm)) => {
                value > *bv
                    || (value == *bv && lex_compare(&m, bm)? == std::cmp::Ordering::Greater)
            }
        };
        if better {
            best = Some((value, m));
        }
    }
    best.ok_or_else(|| Error::Domain("the vertex set is empty".into()))
}
