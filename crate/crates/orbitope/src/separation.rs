//! Linear-time exact separation: shifted column inequalities for the
//! symmetric group, and the full constraint families for the cyclic group.
//!
//! The SCI separator runs one `O(pq)` dynamic program computing, for every
//! `⟨η,j⟩`, the weight `ω⟨η,j⟩` of a `w`-minimal shifting of `col⟨η,j⟩`:
//!
//! ```text
//! ω⟨1,j⟩ = min { w⟨1,ℓ⟩ : ℓ ≤ j }
//! ω⟨η,1⟩ = ω⟨η−1,1⟩ + w⟨η,1⟩
//! ω⟨η,j⟩ = min { ω⟨η,j−1⟩,  ω⟨η−1,j⟩ + w⟨η,j⟩ }
//! ```
//!
//! together with a choice table that reconstructs a minimal shifting in
//! `O(η)` steps: case 1 keeps the shifting of the column one to the left,
//! case 2 takes `⟨η,j⟩` itself and recurses one diagonal up. An SCI with
//! bar leader `⟨η,j⟩` is violated iff the bar value `β(i,j)` exceeds
//! `ω⟨η,j−1⟩`, so one pass over the leaders finds a most-violated cut.

use crate::descriptions::{cyclic_lex, fixing, nonneg, row_sum, sci_constraint, upper_bound, LinearConstraint, Sense};
use crate::index::{CellIndex, DiagCoord, FractionalPoint, Group, RowMode, Sci, Shape, ShiftedColumn};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// A violated constraint together with the amount by which the point
/// breaks it (strictly above the separation tolerance).
#[derive(Debug, Clone)]
pub struct Violation<T: Scalar> {
    pub constraint: LinearConstraint,
    pub amount: T,
}

/// Which reconstruction move produced `ω⟨η,j⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Choice {
    /// Keep the minimal shifting of `col⟨η,j−1⟩`.
    StepLeft,
    /// Take `⟨η,j⟩` and extend the minimal shifting of `col⟨η−1,j⟩`.
    TakeCell,
}

/// The `ω` and choice tables of the separation dynamic program, stored
/// over the triangle in the shape's dense layout.
#[derive(Debug, Clone)]
pub struct ShiftingTables<T: Scalar> {
    shape: Shape,
    omega: Vec<T>,
    choice: Vec<Choice>,
}

/// Runs the dynamic program for a symmetric-mode weight vector in `O(pq)`.
pub fn build_shifting_tables<T: Scalar>(w: &FractionalPoint<T>) -> Result<ShiftingTables<T>> {
    let shape = *w.shape();
    if shape.group != Group::Symmetric {
        return Err(Error::ShapeMismatch("shifting tables need a symmetric-mode point".into()));
    }
    let values = w.values();
    let off = |d: DiagCoord| shape.cell_offset(CellIndex::new(d.j + d.eta - 1, d.j));

    let mut omega = vec![T::zero(); shape.cell_count()];
    let mut choice = vec![Choice::TakeCell; shape.cell_count()];
    for eta in 1..=shape.p {
        for j in 1..=shape.q.min(shape.p - eta + 1) {
            let here = off(DiagCoord::new(eta, j));
            let w_here = &values[here];
            if eta == 1 && j == 1 {
                omega[here] = w_here.clone();
            } else if j == 1 {
                let up = off(DiagCoord::new(eta - 1, 1));
                omega[here] = omega[up].add(w_here);
            } else {
                // case 2 value; eta = 1 recurses to the empty shifting
                let take = if eta == 1 {
                    w_here.clone()
                } else {
                    omega[off(DiagCoord::new(eta - 1, j))].add(w_here)
                };
                let left = &omega[off(DiagCoord::new(eta, j - 1))];
                if *left <= take {
                    omega[here] = left.clone();
                    choice[here] = Choice::StepLeft;
                } else {
                    omega[here] = take;
                }
            }
        }
    }
    Ok(ShiftingTables { shape, omega, choice })
}

impl<T: Scalar> ShiftingTables<T> {
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Weight of a `w`-minimal shifting of `col(target)`.
    pub fn omega(&self, target: DiagCoord) -> Result<&T> {
        let cell = self.shape.diag_to_cell(target)?;
        Ok(&self.omega[self.shape.cell_offset(cell)])
    }

    /// Reconstructs a `w`-minimal shifting of `col(target)` from the
    /// choice table, in `O(η + j)` steps.
    pub fn reconstruct_shifting(&self, target: DiagCoord) -> Result<ShiftedColumn> {
        self.shape.diag_to_cell(target)?;
        let mut cols = vec![0u32; target.eta as usize];
        let (mut eta, mut j) = (target.eta, target.j);
        while eta > 0 {
            if j == 1 {
                // only col<eta,1> itself shifts col<eta,1>
                for e in 1..=eta {
                    cols[e as usize - 1] = 1;
                }
                break;
            }
            let cell = CellIndex::new(j + eta - 1, j);
            match self.choice[self.shape.cell_offset(cell)] {
                Choice::StepLeft => j -= 1,
                Choice::TakeCell => {
                    cols[eta as usize - 1] = j;
                    eta -= 1;
                }
            }
        }
        ShiftedColumn::from_columns(cols)
    }
}

/// Bar values `β(i,j) = x(B(i,j))` for every triangle cell, by suffix sums
/// along each row.
#[derive(Debug, Clone)]
pub struct BarPrefixSums<T: Scalar> {
    shape: Shape,
    beta: Vec<T>,
}

pub fn bar_sums<T: Scalar>(x: &FractionalPoint<T>) -> Result<BarPrefixSums<T>> {
    let shape = *x.shape();
    if shape.group != Group::Symmetric {
        return Err(Error::ShapeMismatch("bar sums need a symmetric-mode point".into()));
    }
    let values = x.values();
    let mut beta = vec![T::zero(); shape.cell_count()];
    for i in 1..=shape.p {
        let width = shape.row_width(i);
        let row_base = shape.cell_offset(CellIndex::new(i, 1));
        let mut acc = T::zero();
        for j in (1..=width).rev() {
            let idx = row_base + j as usize - 1;
            acc = acc.add(&values[idx]);
            beta[idx] = acc.clone();
        }
    }
    Ok(BarPrefixSums { shape, beta })
}

impl<T: Scalar> BarPrefixSums<T> {
    pub fn beta(&self, cell: CellIndex) -> Result<&T> {
        self.shape.cell_to_diag(cell)?;
        Ok(&self.beta[self.shape.cell_offset(cell)])
    }
}

/// Finds a most-violated shifted column inequality at `x`, or `None` when
/// every SCI holds within `tol`. Ties break toward the smallest leader
/// column, then the smallest diagonal. Points outside `[0,1]` are accepted;
/// see [`FractionalPoint::bounds_violations`] for diagnostics.
pub fn separate_sci<T: Scalar>(x: &FractionalPoint<T>, tol: &T) -> Result<Option<Violation<T>>> {
    let shape = *x.shape();
    let tables = build_shifting_tables(x)?;
    let bars = bar_sums(x)?;

    let mut best: Option<(T, DiagCoord)> = None;
    for j in 2..=shape.q {
        for eta in 1..=(shape.p - j + 1) {
            let cell = CellIndex::new(j + eta - 1, j);
            let idx = shape.cell_offset(cell);
            let gap = bars.beta[idx].sub(&tables.omega[shape.cell_offset(CellIndex::new(j - 1 + eta - 1, j - 1))]);
            match &best {
                Some((amount, _)) if !(gap > *amount) => {}
                _ => best = Some((gap, DiagCoord::new(eta, j))),
            }
        }
    }

    let Some((gap, leader)) = best else {
        return Ok(None); // q < 2: no SCIs exist
    };
    if !(gap > *tol) {
        return Ok(None);
    }
    let shifted = tables.reconstruct_shifting(DiagCoord::new(leader.eta, leader.j - 1))?;
    let leader_cell = shape.diag_to_cell(leader)?;
    let sci = Sci::new(leader_cell, shifted, &shape)?;
    let constraint = sci_constraint(&sci);
    // report the re-evaluated violation so the certificate always matches
    let amount = constraint.violation_at(x)?;
    Ok(Some(Violation { constraint, amount }))
}

/// Checks the cyclic-orbitope constraint family at `x` in `O(pq)`:
/// bounds and fixings of row 1, nonnegativity, row sums, and (packing) the
/// lexicographic inequalities via prefix sums of column 1. Returns a
/// most-violated constraint, scanning in description order and keeping the
/// first maximum.
pub fn separate_cyclic<T: Scalar>(x: &FractionalPoint<T>, tol: &T) -> Result<Option<Violation<T>>> {
    let shape = *x.shape();
    if shape.group != Group::Cyclic {
        return Err(Error::ShapeMismatch("separate_cyclic needs a cyclic-mode point".into()));
    }
    let packing = shape.row_mode == RowMode::Packing;
    let one = T::from_rational(&num::One::one());
    let at = |i: u32, j: u32| x.get(CellIndex::new(i, j)).expect("cell in grid");

    enum Candidate {
        Fix(CellIndex, u8),
        Bound11Low,
        Bound11High,
        Nonneg(CellIndex),
        RowSum(u32),
        Lex(u32),
    }

    let mut best: Option<(T, Candidate)> = None;
    let consider = |amount: T, cand: Candidate, best: &mut Option<(T, Candidate)>| {
        match best {
            Some((current, _)) if !(amount > *current) => {}
            _ => *best = Some((amount, cand)),
        }
    };

    let x11 = at(1, 1);
    if packing {
        consider(T::zero().sub(x11), Candidate::Bound11Low, &mut best);
        consider(x11.sub(&one), Candidate::Bound11High, &mut best);
    } else {
        let d = x11.sub(&one);
        let amount = if d < T::zero() { T::zero().sub(&d) } else { d };
        consider(amount, Candidate::Fix(CellIndex::new(1, 1), 1), &mut best);
    }
    for j in 2..=shape.q {
        let v = at(1, j);
        let amount = if *v < T::zero() { T::zero().sub(v) } else { v.clone() };
        consider(amount, Candidate::Fix(CellIndex::new(1, j), 0), &mut best);
    }
    for i in 2..=shape.p {
        for j in 1..=shape.q {
            consider(T::zero().sub(at(i, j)), Candidate::Nonneg(CellIndex::new(i, j)), &mut best);
        }
    }
    for i in 2..=shape.p {
        let mut sum = T::zero();
        for j in 1..=shape.q {
            sum = sum.add(at(i, j));
        }
        let d = sum.sub(&one);
        let amount = if packing {
            d
        } else if d < T::zero() {
            T::zero().sub(&d)
        } else {
            d
        };
        consider(amount, Candidate::RowSum(i), &mut best);
    }
    if packing {
        // prefix sums of column 1 make each lex row O(q)
        let mut col1_prefix = at(1, 1).clone();
        for i in 2..=shape.p {
            let mut tail = T::zero();
            for j in 2..=shape.q {
                tail = tail.add(at(i, j));
            }
            consider(tail.sub(&col1_prefix), Candidate::Lex(i), &mut best);
            col1_prefix = col1_prefix.add(at(i, 1));
        }
    }

    let Some((amount, cand)) = best else {
        return Ok(None);
    };
    if !(amount > *tol) {
        return Ok(None);
    }
    let constraint = match cand {
        Candidate::Fix(cell, v) => fixing(cell, v),
        Candidate::Bound11Low => nonneg(CellIndex::new(1, 1)),
        Candidate::Bound11High => upper_bound(CellIndex::new(1, 1)),
        Candidate::Nonneg(cell) => nonneg(cell),
        Candidate::RowSum(i) => row_sum(&shape, i, if packing { Sense::Le } else { Sense::Eq }),
        Candidate::Lex(i) => cyclic_lex(&shape, i)?,
    };
    let amount = constraint.violation_at(x)?;
    Ok(Some(Violation { constraint, amount }))
}

/// Separation entry point dispatching on the point's group, with the
/// numeric type's default tolerance.
pub fn separate<T: Scalar>(x: &FractionalPoint<T>, tol: Option<T>) -> Result<Option<Violation<T>>> {
    let tol = tol.unwrap_or_else(T::default_tolerance);
    match x.shape().group {
        Group::Symmetric => separate_sci(x, &tol),
        Group::Cyclic => separate_cyclic(x, &tol),
    }
}
