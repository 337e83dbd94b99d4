//! Generators for the complete (and non-redundant) linear descriptions of
//! the four orbitope families, constraint constructors, facet
//! classification, and the partitioning/packing projection.
//!
//! Cyclic-group orbitopes are described by bounds, fixings of row 1,
//! row-sum constraints and (packing) one lexicographic inequality per row;
//! the coefficient matrices are totally unimodular. Symmetric-group
//! orbitopes need the shifted column inequalities `x(B) − x(S) ≤ 0` on top
//! of bounds and row sums; the full SCI family is exponential in `q`, so
//! description streams are lazy and collection is capped.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::index::{bar_of, column_segment, BinaryMatrix, CellIndex, DiagCoord, FractionalPoint, Group, RowMode, Sci, Shape, ShiftedColumn};
use crate::scalar::{parse_rational, rational_to_string, Scalar};
use crate::{Error, Result};

/// Default cap when materializing a description into memory.
pub const COLLECT_CAP: usize = 1_000_000;

/// A model variable: a matrix cell or (in coloring models) a color-use
/// indicator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(CellIndex),
    Y(u32),
}

impl Var {
    /// The LP-file spelling: `x_<i>_<j>` or `y_<j>`.
    pub fn name(&self) -> String {
        match self {
            Var::X(c) => format!("x_{}_{}", c.i, c.j),
            Var::Y(j) => format!("y_{j}"),
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        let mut parts = s.split('_');
        match parts.next()? {
            "x" => {
                let i = parts.next()?.parse().ok()?;
                let j = parts.next()?.parse().ok()?;
                if parts.next().is_some() {
                    return None;
                }
                Some(Var::X(CellIndex::new(i, j)))
            }
            "y" => {
                let j = parts.next()?.parse().ok()?;
                if parts.next().is_some() {
                    return None;
                }
                Some(Var::Y(j))
            }
            _ => None,
        }
    }
}

impl Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Var::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad variable name {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

/// Families a constraint can belong to; part of the serialized format so
/// solver-side filtering stays possible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConstraintClass {
    Nonneg,
    UpperBound,
    Fixing,
    RowSum,
    CyclicLex,
    ColumnIneq,
    #[serde(rename = "SCI")]
    Sci,
    MdZabala,
    #[serde(rename = "CliqueSCI")]
    CliqueSci,
    /// Coloring-model rows `x_{ij} + x_{kj} ≤ y_j`.
    EdgeColor,
}

impl ConstraintClass {
    /// Lowercase tag used in LP-file constraint names.
    pub fn tag(&self) -> &'static str {
        match self {
            ConstraintClass::Nonneg => "nonneg",
            ConstraintClass::UpperBound => "upper",
            ConstraintClass::Fixing => "fixing",
            ConstraintClass::RowSum => "rowsum",
            ConstraintClass::CyclicLex => "cycliclex",
            ConstraintClass::ColumnIneq => "colineq",
            ConstraintClass::Sci => "sci",
            ConstraintClass::MdZabala => "mdzabala",
            ConstraintClass::CliqueSci => "cliquesci",
            ConstraintClass::EdgeColor => "edgecolor",
        }
    }
}

/// Cut-object payload carried by SCI-family constraints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct ConstraintMeta {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leader: Option<CellIndex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bar: Option<crate::index::Bar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shifted_column: Option<ShiftedColumn>,
    /// Clique vertices for combined clique-SCI cuts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clique: Option<Vec<u32>>,
    /// Color index for combined clique-SCI cuts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<u32>,
}

impl ConstraintMeta {
    fn is_empty(&self) -> bool {
        self.leader.is_none()
            && self.bar.is_none()
            && self.shifted_column.is_none()
            && self.clique.is_none()
            && self.color.is_none()
    }
}

/// A sparse linear constraint with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ConstraintRepr", into = "ConstraintRepr")]
pub struct LinearConstraint {
    pub coeffs: BTreeMap<Var, BigRational>,
    pub sense: Sense,
    pub rhs: BigRational,
    pub class: ConstraintClass,
    pub meta: Option<ConstraintMeta>,
}

#[derive(Serialize, Deserialize)]
struct CoefRepr {
    var: Var,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct ConstraintRepr {
    coeffs: Vec<CoefRepr>,
    sense: Sense,
    rhs: String,
    class: ConstraintClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<ConstraintMeta>,
}

impl TryFrom<ConstraintRepr> for LinearConstraint {
    type Error = Error;

    fn try_from(repr: ConstraintRepr) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for c in &repr.coeffs {
            let value = parse_rational(&c.coef)
                .ok_or_else(|| Error::Parse(format!("bad coefficient {:?}", c.coef)))?;
            if !value.is_zero() {
                coeffs.insert(c.var, value);
            }
        }
        let rhs = parse_rational(&repr.rhs).ok_or_else(|| Error::Parse(format!("bad rhs {:?}", repr.rhs)))?;
        LinearConstraint::new(coeffs, repr.sense, rhs, repr.class, repr.meta)
    }
}

impl From<LinearConstraint> for ConstraintRepr {
    fn from(c: LinearConstraint) -> Self {
        ConstraintRepr {
            coeffs: c
                .coeffs
                .iter()
                .map(|(var, coef)| CoefRepr { var: *var, coef: rational_to_string(coef) })
                .collect(),
            sense: c.sense,
            rhs: rational_to_string(&c.rhs),
            class: c.class,
            meta: c.meta,
        }
    }
}

impl LinearConstraint {
    pub fn new(
        coeffs: BTreeMap<Var, BigRational>,
        sense: Sense,
        rhs: BigRational,
        class: ConstraintClass,
        meta: Option<ConstraintMeta>,
    ) -> Result<LinearConstraint> {
        if coeffs.is_empty() {
            return Err(Error::Domain("constraint needs at least one coefficient".into()));
        }
        let meta = meta.filter(|m| !m.is_empty());
        Ok(LinearConstraint { coeffs, sense, rhs, class, meta })
    }

    /// Cells carrying nonzero coefficients; errors on y-variables, which
    /// never appear in orbitope descriptions.
    pub fn cells(&self) -> Result<Vec<(CellIndex, &BigRational)>> {
        self.coeffs
            .iter()
            .map(|(var, coef)| match var {
                Var::X(cell) => Ok((*cell, coef)),
                Var::Y(j) => Err(Error::Domain(format!("constraint mentions y_{j} outside a coloring model"))),
            })
            .collect()
    }

    /// Left-hand side value at a fractional point.
    pub fn lhs_at<T: Scalar>(&self, x: &FractionalPoint<T>) -> Result<T> {
        let mut total = T::zero();
        for (cell, coef) in self.cells()? {
            let term = T::from_rational(coef).mul(x.get(cell)?);
            total = total.add(&term);
        }
        Ok(total)
    }

    /// Left-hand side value at a 0/1 matrix, exactly.
    pub fn lhs_at_vertex(&self, m: &BinaryMatrix) -> Result<BigRational> {
        let mut total = zero();
        for (cell, coef) in self.cells()? {
            if m.contains(cell) {
                total += coef;
            }
        }
        Ok(total)
    }

    /// How far the point sits on the infeasible side: `lhs − rhs` for `≤`,
    /// `rhs − lhs` for `≥`, `|lhs − rhs|` for `=`. Non-positive means
    /// satisfied.
    pub fn violation_at<T: Scalar>(&self, x: &FractionalPoint<T>) -> Result<T> {
        let lhs = self.lhs_at(x)?;
        let rhs = T::from_rational(&self.rhs);
        Ok(match self.sense {
            Sense::Le => lhs.sub(&rhs),
            Sense::Ge => rhs.sub(&lhs),
            Sense::Eq => {
                let d = lhs.sub(&rhs);
                if d < T::zero() {
                    T::zero().sub(&d)
                } else {
                    d
                }
            }
        })
    }

    pub fn satisfied_by_vertex(&self, m: &BinaryMatrix) -> Result<bool> {
        let lhs = self.lhs_at_vertex(m)?;
        Ok(match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        })
    }

    pub fn tight_at_vertex(&self, m: &BinaryMatrix) -> Result<bool> {
        Ok(self.lhs_at_vertex(m)? == self.rhs)
    }

    /// Anchor cell used for LP-file constraint names.
    pub fn name_anchor(&self) -> (u32, u32) {
        if let Some(meta) = &self.meta {
            if let Some(leader) = meta.leader {
                return (leader.i, leader.j);
            }
        }
        match self.coeffs.keys().next() {
            Some(Var::X(c)) => (c.i, c.j),
            Some(Var::Y(j)) => (0, *j),
            None => (0, 0),
        }
    }
}

fn one() -> BigRational {
    BigRational::one()
}

fn zero() -> BigRational {
    num::Zero::zero()
}

fn minus_one() -> BigRational {
    -BigRational::one()
}

/// `x_{ij} ≥ 0`.
pub fn nonneg(cell: CellIndex) -> LinearConstraint {
    let coeffs = BTreeMap::from([(Var::X(cell), one())]);
    LinearConstraint::new(coeffs, Sense::Ge, zero(), ConstraintClass::Nonneg, None).unwrap()
}

/// `x_{ij} ≤ 1`.
pub fn upper_bound(cell: CellIndex) -> LinearConstraint {
    let coeffs = BTreeMap::from([(Var::X(cell), one())]);
    LinearConstraint::new(coeffs, Sense::Le, one(), ConstraintClass::UpperBound, None).unwrap()
}

/// `x_{ij} = value`.
pub fn fixing(cell: CellIndex, value: u8) -> LinearConstraint {
    let coeffs = BTreeMap::from([(Var::X(cell), one())]);
    let rhs = BigRational::from_integer(value.into());
    LinearConstraint::new(coeffs, Sense::Eq, rhs, ConstraintClass::Fixing, None).unwrap()
}

/// `x(row i) = 1` or `x(row i) ≤ 1`.
pub fn row_sum(shape: &Shape, i: u32, sense: Sense) -> LinearConstraint {
    let coeffs = shape.row_cells(i).map(|c| (Var::X(c), one())).collect();
    LinearConstraint::new(coeffs, sense, one(), ConstraintClass::RowSum, None).unwrap()
}

/// The cyclic-packing lexicographic inequality for row `i ≥ 2`:
/// `Σ_{j=2}^q x_{ij} − Σ_{k=1}^{i−1} x_{k1} ≤ 0`.
pub fn cyclic_lex(shape: &Shape, i: u32) -> Result<LinearConstraint> {
    if i < 2 || i > shape.p {
        return Err(Error::OutOfRange(format!("lex inequality rows run from 2 to p, got {i}")));
    }
    let mut coeffs = BTreeMap::new();
    for j in 2..=shape.q {
        coeffs.insert(Var::X(CellIndex::new(i, j)), one());
    }
    for k in 1..i {
        coeffs.insert(Var::X(CellIndex::new(k, 1)), minus_one());
    }
    LinearConstraint::new(coeffs, Sense::Le, zero(), ConstraintClass::CyclicLex, None)
}

fn sci_like_constraint(sci: &Sci, class: ConstraintClass) -> LinearConstraint {
    let mut coeffs = BTreeMap::new();
    for cell in sci.bar().cells() {
        coeffs.insert(Var::X(cell), one());
    }
    for cell in sci.shifted_column().cells() {
        coeffs.insert(Var::X(cell), minus_one());
    }
    let meta = ConstraintMeta {
        leader: Some(sci.leader()),
        bar: Some(*sci.bar()),
        shifted_column: Some(sci.shifted_column().clone()),
        ..ConstraintMeta::default()
    };
    LinearConstraint::new(coeffs, Sense::Le, zero(), class, Some(meta)).unwrap()
}

/// The shifted column inequality `x(B) − x(S) ≤ 0` as a sparse row.
pub fn sci_constraint(sci: &Sci) -> LinearConstraint {
    sci_like_constraint(sci, ConstraintClass::Sci)
}

/// The column inequality with leader `(i,j)`: the SCI whose shifted column
/// is the unshifted `col(i−1, j−1)`.
pub fn column_inequality(leader: CellIndex, shape: &Shape) -> Result<LinearConstraint> {
    if leader.j < 2 {
        return Err(Error::Domain("column inequalities need j >= 2".into()));
    }
    let eta = leader.i - leader.j + 1;
    let sc = ShiftedColumn::column(DiagCoord::new(eta, leader.j - 1), shape)?;
    let sci = Sci::new(leader, sc, shape)?;
    Ok(sci_like_constraint(&sci, ConstraintClass::ColumnIneq))
}

/// The single-cell symmetry-breaking inequality
/// `x_{ij} − Σ_k x_{k,j−1} ≤ 0` restricted to the triangle (the sum runs
/// over `col(i−1,j−1)`; cells above the diagonal are fixed to zero).
pub fn md_zabala(i: u32, j: u32, shape: &Shape) -> Result<LinearConstraint> {
    if j < 2 {
        return Err(Error::Domain("the symmetry-breaking inequality needs j >= 2".into()));
    }
    let cell = CellIndex::new(i, j);
    shape.cell_to_diag(cell)?;
    let mut coeffs = BTreeMap::from([(Var::X(cell), one())]);
    for c in column_segment(i - 1, j - 1, shape)? {
        coeffs.insert(Var::X(c), minus_one());
    }
    let meta = ConstraintMeta { leader: Some(cell), ..ConstraintMeta::default() };
    LinearConstraint::new(coeffs, Sense::Le, zero(), ConstraintClass::MdZabala, Some(meta))
}

/// Whether the full SCI family or only the non-redundant subfamily of the
/// summary systems is streamed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Redundancy {
    Full,
    NonRedundant,
}

/// A restartable stream of the constraints describing one orbitope.
#[derive(Debug, Clone, Copy)]
pub struct Description {
    shape: Shape,
    redundancy: Redundancy,
}

/// The complete description of the shape's orbitope. For cyclic shapes the
/// theorem systems are already non-redundant and `redundancy` is ignored.
pub fn describe(shape: &Shape, redundancy: Redundancy) -> Result<Description> {
    match (shape.group, shape.row_mode) {
        (Group::Cyclic, RowMode::Partitioning) => describe_cyclic_partitioning(shape),
        (Group::Cyclic, RowMode::Packing) => describe_cyclic_packing(shape),
        (Group::Symmetric, _) => describe_symmetric(shape, redundancy),
    }
}

/// `x₁₁ = 1`, `x_{1j} = 0` for `j ≥ 2`, nonnegativity on rows `2..=p`, and
/// row-sum equations on rows `2..=p`.
pub fn describe_cyclic_partitioning(shape: &Shape) -> Result<Description> {
    expect_shape(shape, Group::Cyclic, RowMode::Partitioning)?;
    Ok(Description { shape: *shape, redundancy: Redundancy::NonRedundant })
}

/// `0 ≤ x₁₁ ≤ 1`, `x_{1j} = 0` for `j ≥ 2`, nonnegativity on rows `2..=p`,
/// row-sum inequalities, and the lexicographic inequalities.
pub fn describe_cyclic_packing(shape: &Shape) -> Result<Description> {
    expect_shape(shape, Group::Cyclic, RowMode::Packing)?;
    Ok(Description { shape: *shape, redundancy: Redundancy::NonRedundant })
}

/// Row sums, nonnegativity and shifted column inequalities. `Full` streams
/// every SCI; `NonRedundant` keeps the summary-system subfamily
/// (`c₁ = c₂`, `c₁ ≥ 2` in partitioning mode, and `j = c₁ + 1` for
/// single-cell shifted columns) and drops the nonnegativity rows on
/// diagonal cells `(j,j)` with `j < q`.
pub fn describe_symmetric(shape: &Shape, redundancy: Redundancy) -> Result<Description> {
    if shape.group != Group::Symmetric {
        return Err(Error::ShapeMismatch("describe_symmetric needs a symmetric shape".into()));
    }
    Ok(Description { shape: *shape, redundancy })
}

fn expect_shape(shape: &Shape, group: Group, mode: RowMode) -> Result<()> {
    if shape.group != group || shape.row_mode != mode {
        return Err(Error::ShapeMismatch(format!(
            "description needs a {group:?}/{mode:?} shape, got {:?}/{:?}",
            shape.group, shape.row_mode
        )));
    }
    Ok(())
}

impl Description {
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn redundancy(&self) -> Redundancy {
        self.redundancy
    }

    /// A fresh constraint stream. Emission order is deterministic:
    /// fixings/bounds, nonnegativity (row-major), row sums, then the
    /// lexicographic or SCI family.
    pub fn iter(&self) -> Box<dyn Iterator<Item = LinearConstraint>> {
        let shape = self.shape;
        match (shape.group, shape.row_mode) {
            (Group::Cyclic, RowMode::Partitioning) => {
                let fix = std::iter::once(fixing(CellIndex::new(1, 1), 1))
                    .chain((2..=shape.q).map(move |j| fixing(CellIndex::new(1, j), 0)));
                let nn = (2..=shape.p)
                    .flat_map(move |i| (1..=shape.q).map(move |j| nonneg(CellIndex::new(i, j))));
                let sums = (2..=shape.p).map(move |i| row_sum(&shape, i, Sense::Eq));
                Box::new(fix.chain(nn).chain(sums))
            }
            (Group::Cyclic, RowMode::Packing) => {
                let bounds = [nonneg(CellIndex::new(1, 1)), upper_bound(CellIndex::new(1, 1))];
                let fix = (2..=shape.q).map(move |j| fixing(CellIndex::new(1, j), 0));
                let nn = (2..=shape.p)
                    .flat_map(move |i| (1..=shape.q).map(move |j| nonneg(CellIndex::new(i, j))));
                let sums = (2..=shape.p).map(move |i| row_sum(&shape, i, Sense::Le));
                let lex = (2..=shape.p).map(move |i| cyclic_lex(&shape, i).expect("row in range"));
                Box::new(bounds.into_iter().chain(fix).chain(nn).chain(sums).chain(lex))
            }
            (Group::Symmetric, mode) => {
                let sense = match mode {
                    RowMode::Partitioning => Sense::Eq,
                    RowMode::Packing => Sense::Le,
                };
                let redundancy = self.redundancy;
                let sums = (1..=shape.p).map(move |i| row_sum(&shape, i, sense));
                let nn = shape
                    .cells()
                    .filter(move |c| {
                        redundancy == Redundancy::Full || !(c.i == c.j && c.j < shape.q)
                    })
                    .map(nonneg);
                let scis = SciFamily::new(shape, redundancy).map(|sci| sci_constraint(&sci));
                Box::new(sums.chain(nn).chain(scis))
            }
        }
    }

    /// Materializes the stream, refusing beyond `cap` (default
    /// [`COLLECT_CAP`]) since the full SCI family is exponential in `q`.
    pub fn collect_with_cap(&self, cap: usize) -> Result<Vec<LinearConstraint>> {
        let mut out = Vec::new();
        for c in self.iter() {
            if out.len() >= cap {
                return Err(Error::Capacity(format!("description exceeds the collection cap of {cap} constraints")));
            }
            out.push(c);
        }
        Ok(out)
    }

    pub fn collect(&self) -> Result<Vec<LinearConstraint>> {
        self.collect_with_cap(COLLECT_CAP)
    }
}

/// Streams the SCI objects of a symmetric description: leaders in
/// row-major order, shifted-column sequences in ascending lexicographic
/// order per leader.
pub struct SciFamily {
    shape: Shape,
    redundancy: Redundancy,
    leaders: Vec<CellIndex>,
    leader_idx: usize,
    /// Pending column sequence for the current leader; `None` requests the
    /// first sequence of the next leader.
    seq: Option<Vec<u32>>,
}

impl SciFamily {
    pub fn new(shape: Shape, redundancy: Redundancy) -> SciFamily {
        let leaders = shape.cells().filter(|c| c.j >= 2).collect();
        SciFamily { shape, redundancy, leaders, leader_idx: 0, seq: None }
    }

    /// Smallest admissible shifted-column entry: partitioning's
    /// non-redundant family starts at 2 (column-1 entries only duplicate
    /// nonnegativity facets).
    fn low(&self) -> u32 {
        match (self.redundancy, self.shape.row_mode) {
            (Redundancy::NonRedundant, RowMode::Partitioning) => 2,
            _ => 1,
        }
    }

    /// First sequence for a leader, or `None` when the leader admits no SCI
    /// under the active family restrictions.
    fn first_seq(&self, leader: CellIndex) -> Option<Vec<u32>> {
        let eta = (leader.i - leader.j + 1) as usize;
        let hi = leader.j - 1;
        match self.redundancy {
            Redundancy::Full => {
                if hi >= 1 {
                    Some(vec![1; eta])
                } else {
                    None
                }
            }
            Redundancy::NonRedundant => {
                let lo = self.low();
                if eta == 1 {
                    // single-cell shifted columns only pair with the
                    // adjacent diagonal bar: j = c1 + 1
                    if hi >= lo {
                        Some(vec![hi])
                    } else {
                        None
                    }
                } else if hi >= lo {
                    Some(vec![lo; eta])
                } else {
                    None
                }
            }
        }
    }

    /// Next nondecreasing sequence within the family, in lexicographic
    /// order.
    fn next_seq(&self, leader: CellIndex, seq: &[u32]) -> Option<Vec<u32>> {
        let hi = leader.j - 1;
        let eta = seq.len();
        match self.redundancy {
            Redundancy::Full => {
                let mut next = seq.to_vec();
                for idx in (0..eta).rev() {
                    if next[idx] < hi {
                        next[idx] += 1;
                        let v = next[idx];
                        for later in next.iter_mut().skip(idx + 1) {
                            *later = v;
                        }
                        return Some(next);
                    }
                }
                None
            }
            Redundancy::NonRedundant => {
                if eta == 1 {
                    return None; // exactly one sequence per diagonal leader
                }
                // advance positions 2..eta; position 1 mirrors position 2
                let mut next = seq.to_vec();
                for idx in (1..eta).rev() {
                    if next[idx] < hi {
                        next[idx] += 1;
                        let v = next[idx];
                        for later in next.iter_mut().skip(idx + 1) {
                            *later = v;
                        }
                        next[0] = next[1];
                        return Some(next);
                    }
                }
                None
            }
        }
    }
}

impl Iterator for SciFamily {
    type Item = Sci;

    fn next(&mut self) -> Option<Sci> {
        loop {
            let leader = *self.leaders.get(self.leader_idx)?;
            let seq = match self.seq.take() {
                None => self.first_seq(leader),
                Some(prev) => self.next_seq(leader, &prev),
            };
            match seq {
                Some(cols) => {
                    self.seq = Some(cols.clone());
                    let sc = ShiftedColumn::from_columns(cols).expect("sequences are nondecreasing");
                    return Some(Sci::new(leader, sc, &self.shape).expect("family sequences satisfy the SCI invariants"));
                }
                None => {
                    self.leader_idx += 1;
                    self.seq = None;
                }
            }
        }
    }
}

/// Why an SCI fails to define a facet, and what dominates it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SciException {
    /// `c₁ = 1` in partitioning mode; dominated by a nonnegativity facet.
    FirstColumn,
    /// `η ≥ 2` with `c₁ < c₂`; dominated by the SCI with `c₁` raised
    /// to `c₂`.
    ShiftGap,
    /// `η = 1` with the bar away from the adjacent diagonal cell
    /// (`j > c₁ + 1`); dominated by the adjacent diagonal SCI.
    DiagonalStep,
}

impl SciException {
    /// The exception's index in the facet propositions: packing lists
    /// ShiftGap, DiagonalStep as I, II; partitioning lists FirstColumn,
    /// ShiftGap, DiagonalStep as I, II, III.
    pub fn index(&self, mode: RowMode) -> u8 {
        match (mode, self) {
            (RowMode::Packing, SciException::ShiftGap) => 1,
            (RowMode::Packing, SciException::DiagonalStep) => 2,
            (RowMode::Packing, SciException::FirstColumn) => 0, // not a packing exception
            (RowMode::Partitioning, SciException::FirstColumn) => 1,
            (RowMode::Partitioning, SciException::ShiftGap) => 2,
            (RowMode::Partitioning, SciException::DiagonalStep) => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SciClassification {
    Facet,
    NonFacet { exception: SciException, dominating: LinearConstraint },
}

/// Classifies an SCI as facet-defining or not for the shape's orbitope,
/// materializing the dominating facet for the non-facets.
pub fn classify_sci(sci: &Sci, shape: &Shape) -> Result<SciClassification> {
    let cols = sci.shifted_column().columns();
    let eta = sci.shifted_column().eta();
    let leader = sci.leader();

    if shape.row_mode == RowMode::Partitioning && cols[0] == 1 {
        // dominated by x_{i1} >= 0 for the bar's row
        let dominating = nonneg(CellIndex::new(leader.i, 1));
        return Ok(SciClassification::NonFacet { exception: SciException::FirstColumn, dominating });
    }
    if eta >= 2 && cols[0] < cols[1] {
        let mut raised = cols.to_vec();
        raised[0] = raised[1];
        let sc = ShiftedColumn::from_columns(raised)?;
        let dominating = sci_constraint(&Sci::new(leader, sc, shape)?);
        return Ok(SciClassification::NonFacet { exception: SciException::ShiftGap, dominating });
    }
    if eta == 1 && leader.j != cols[0] + 1 {
        let c1 = cols[0];
        let sc = ShiftedColumn::from_columns(vec![c1])?;
        let step_leader = CellIndex::new(c1 + 1, c1 + 1);
        let dominating = sci_constraint(&Sci::new(step_leader, sc, shape)?);
        return Ok(SciClassification::NonFacet { exception: SciException::DiagonalStep, dominating });
    }
    Ok(SciClassification::Facet)
}

/// Shape of the orthogonal projection image: `orbipart(p,q)` maps onto
/// `orbipack(p−1,q−1)` by dropping row 1 and column 1.
pub fn projected_shape(source: &Shape) -> Result<Shape> {
    if source.group != Group::Symmetric || source.row_mode != RowMode::Partitioning {
        return Err(Error::ShapeMismatch("the projection starts from symmetric partitioning shapes".into()));
    }
    if source.p < 2 || source.q < 2 {
        return Err(Error::InvalidShape("projection needs p, q >= 2".into()));
    }
    Shape::new_relaxed(source.p - 1, source.q - 1, Group::Symmetric, RowMode::Packing)
}

/// Projects a partitioning vertex to the packing vertex one size down:
/// drops row 1 and column 1 and reindexes `(i,j) → (i−1,j−1)`.
pub fn project_part_to_pack(m: &BinaryMatrix) -> Result<BinaryMatrix> {
    let target = projected_shape(m.shape())?;
    let support = m
        .support()
        .iter()
        .filter(|c| c.j >= 2)
        .map(|c| CellIndex::new(c.i - 1, c.j - 1))
        .collect();
    BinaryMatrix::new(target, support)
}

/// Inverse of [`project_part_to_pack`]: row `i` of the lift takes the
/// packing row `i−1` shifted right by one, with a column-1 entry exactly
/// when that row was empty (`φ(y)_{i1} = 1 − y(row_{i−1})`).
pub fn lift_pack_to_part(m: &BinaryMatrix) -> Result<BinaryMatrix> {
    let source = m.shape();
    if source.group != Group::Symmetric || source.row_mode != RowMode::Packing {
        return Err(Error::ShapeMismatch("the lift starts from symmetric packing shapes".into()));
    }
    let target = Shape::new_relaxed(source.p + 1, source.q + 1, Group::Symmetric, RowMode::Partitioning)?;
    let mut choices = vec![1u32; target.p as usize];
    for i in 2..=target.p {
        let below = m.row_choice(i - 1);
        if below > 0 {
            choices[i as usize - 1] = below + 1;
        }
    }
    BinaryMatrix::from_row_choices(target, &choices)
}

/// Projects a constraint along the same map; constraints touching column 1
/// are not projectable.
pub fn project_constraint(c: &LinearConstraint, source: &Shape) -> Result<LinearConstraint> {
    let target = projected_shape(source)?;
    let mut coeffs = BTreeMap::new();
    for (cell, coef) in c.cells()? {
        if cell.j == 1 && !coef.is_zero() {
            return Err(Error::Domain(format!(
                "constraint has a nonzero coefficient on column-1 cell ({},{}) and cannot be projected",
                cell.i, cell.j
            )));
        }
        coeffs.insert(Var::X(CellIndex::new(cell.i - 1, cell.j - 1)), coef.clone());
    }
    let meta = match &c.meta {
        None => None,
        Some(meta) => {
            let leader = meta.leader.map(|l| CellIndex::new(l.i - 1, l.j - 1));
            let bar = match leader {
                Some(l) if meta.bar.is_some() => Some(bar_of(l, &target)?),
                _ => None,
            };
            let shifted_column = match &meta.shifted_column {
                None => None,
                Some(sc) => Some(ShiftedColumn::from_columns(sc.columns().iter().map(|&c| c - 1).collect())?),
            };
            Some(ConstraintMeta { leader, bar, shifted_column, clique: meta.clique.clone(), color: meta.color })
        }
    };
    LinearConstraint::new(coeffs, c.sense, c.rhs.clone(), c.class, meta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::enumerate_vertices;
    use crate::scalar::rational_from_i64;

    fn shape(p: u32, q: u32, group: Group, mode: RowMode) -> Shape {
        Shape::new(p, q, group, mode).unwrap()
    }

    #[test]
    fn cyclic_partitioning_count_formula() {
        let s = shape(3, 2, Group::Cyclic, RowMode::Partitioning);
        let d = describe_cyclic_partitioning(&s).unwrap();
        let rows = d.collect().unwrap();
        assert_eq!(rows.len(), 8); // 1 + (q-1) + (p-1)q + (p-1)
        for (p, q) in [(4u32, 3u32), (5, 5), (2, 2)] {
            let s = shape(p, q, Group::Cyclic, RowMode::Partitioning);
            let rows = describe_cyclic_partitioning(&s).unwrap().collect().unwrap();
            assert_eq!(rows.len() as u32, 1 + (q - 1) + (p - 1) * q + (p - 1));
        }
    }

    #[test]
    fn cyclic_packing_lex_row() {
        let s = shape(2, 2, Group::Cyclic, RowMode::Packing);
        let rows = describe_cyclic_packing(&s).unwrap().collect().unwrap();
        assert_eq!(rows.len(), 7);
        let lex: Vec<_> = rows.iter().filter(|c| c.class == ConstraintClass::CyclicLex).collect();
        assert_eq!(lex.len(), 1);
        // x_22 - x_11 <= 0
        let expected: BTreeMap<Var, BigRational> = BTreeMap::from([
            (Var::X(CellIndex::new(2, 2)), rational_from_i64(1)),
            (Var::X(CellIndex::new(1, 1)), rational_from_i64(-1)),
        ]);
        assert_eq!(lex[0].coeffs, expected);
        assert_eq!(lex[0].sense, Sense::Le);
        assert!(lex[0].rhs.is_zero());
    }

    #[test]
    fn every_vertex_satisfies_every_description_row() {
        for &group in &[Group::Cyclic, Group::Symmetric] {
            for &mode in &[RowMode::Packing, RowMode::Partitioning] {
                for (p, q) in [(2, 2), (3, 2), (3, 3), (4, 3), (5, 5)] {
                    let s = shape(p, q, group, mode);
                    let rows = describe(&s, Redundancy::NonRedundant).unwrap().collect().unwrap();
                    for m in enumerate_vertices(&s).unwrap() {
                        for c in &rows {
                            assert!(
                                c.satisfied_by_vertex(&m).unwrap(),
                                "{group:?}/{mode:?} p={p} q={q}: vertex {:?} violates {c:?}",
                                m.support()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn full_sci_stream_matches_independent_enumeration() {
        // independent nested enumeration of (leader, nondecreasing sequence)
        let s = shape(3, 3, Group::Symmetric, RowMode::Partitioning);
        let mut expected = Vec::new();
        for leader in s.cells().filter(|c| c.j >= 2) {
            let eta = (leader.i - leader.j + 1) as usize;
            let hi = leader.j - 1;
            let mut stack = vec![(Vec::new(), 1u32)];
            while let Some((prefix, lo)) = stack.pop() {
                if prefix.len() == eta {
                    expected.push((leader, prefix));
                    continue;
                }
                // depth-first, descending push order -> ascending pop order
                for c in (lo..=hi).rev() {
                    let mut next = prefix.clone();
                    next.push(c);
                    stack.push((next, c));
                }
            }
        }
        let got: Vec<(CellIndex, Vec<u32>)> = SciFamily::new(s, Redundancy::Full)
            .map(|sci| (sci.leader(), sci.shifted_column().columns().to_vec()))
            .collect();
        assert_eq!(got.len(), 4);
        let expected_set: std::collections::BTreeSet<_> = expected.into_iter().collect();
        let got_set: std::collections::BTreeSet<_> = got.into_iter().collect();
        assert_eq!(got_set, expected_set);
    }

    #[test]
    fn nonredundant_family_restrictions() {
        // partitioning excludes c1 = 1: the SCI with S = {(1,1)}, bar {(2,2)}
        let s = shape(3, 3, Group::Symmetric, RowMode::Partitioning);
        let has_c1_eq_1 = SciFamily::new(s, Redundancy::NonRedundant)
            .any(|sci| sci.shifted_column().columns()[0] == 1);
        assert!(!has_c1_eq_1);

        // packing keeps it: eta=1, c1=1, j=2=c1+1
        let s = shape(2, 2, Group::Symmetric, RowMode::Packing);
        let scis: Vec<_> = SciFamily::new(s, Redundancy::NonRedundant).collect();
        assert_eq!(scis.len(), 1);
        assert_eq!(scis[0].leader(), CellIndex::new(2, 2));
        assert_eq!(scis[0].shifted_column().columns(), &[1]);

        // eta = 1 leaders away from the diagonal step are excluded
        let s = shape(4, 4, Group::Symmetric, RowMode::Packing);
        for sci in SciFamily::new(s, Redundancy::NonRedundant) {
            let cols = sci.shifted_column().columns();
            if cols.len() == 1 {
                assert_eq!(sci.leader().j, cols[0] + 1);
            } else {
                assert_eq!(cols[0], cols[1]);
            }
        }
    }

    #[test]
    fn sci_constraint_structure() {
        let s = shape(10, 7, Group::Symmetric, RowMode::Packing);
        // leader (9,5), q=7: bar {(9,5),(9,6),(9,7)}, S = col(8,4)
        let c = column_inequality(CellIndex::new(9, 5), &s).unwrap();
        let plus: Vec<_> = c.coeffs.iter().filter(|(_, v)| v.is_positive()).map(|(k, _)| *k).collect();
        let minus: Vec<_> = c.coeffs.iter().filter(|(_, v)| v.is_negative()).map(|(k, _)| *k).collect();
        assert_eq!(
            plus,
            vec![
                Var::X(CellIndex::new(9, 5)),
                Var::X(CellIndex::new(9, 6)),
                Var::X(CellIndex::new(9, 7))
            ]
        );
        assert_eq!(minus.len(), 5);
        assert!(minus.contains(&Var::X(CellIndex::new(4, 4))));
        assert!(minus.contains(&Var::X(CellIndex::new(8, 4))));

        // md_zabala(2,2) equals column_inequality(2,2) coefficients for q=2
        let s = shape(2, 2, Group::Symmetric, RowMode::Packing);
        let mz = md_zabala(2, 2, &s).unwrap();
        let ci = column_inequality(CellIndex::new(2, 2), &s).unwrap();
        assert_eq!(mz.coeffs, ci.coeffs);
        assert!(md_zabala(2, 1, &s).is_err());
        assert!(column_inequality(CellIndex::new(2, 1), &s).is_err());

        // coefficients sum to |B| - eta
        let s = shape(10, 7, Group::Symmetric, RowMode::Packing);
        let sc = ShiftedColumn::from_columns(vec![2, 3, 3, 4, 4]).unwrap();
        let sci = Sci::new(CellIndex::new(9, 5), sc, &s).unwrap();
        let row = sci_constraint(&sci);
        let total: BigRational = row.coeffs.values().sum();
        assert_eq!(total, rational_from_i64(3 - 5));
    }

    #[test]
    fn classify_examples() {
        let pack = shape(4, 4, Group::Symmetric, RowMode::Packing);
        let part = shape(4, 4, Group::Symmetric, RowMode::Partitioning);

        // S = {(1,1)}, bar {(2,2)}: packing facet, partitioning exception I
        let sc = ShiftedColumn::from_columns(vec![1]).unwrap();
        let sci = Sci::new(CellIndex::new(2, 2), sc, &pack).unwrap();
        assert_eq!(classify_sci(&sci, &pack).unwrap(), SciClassification::Facet);
        match classify_sci(&sci, &part).unwrap() {
            SciClassification::NonFacet { exception, dominating } => {
                assert_eq!(exception, SciException::FirstColumn);
                assert_eq!(exception.index(RowMode::Partitioning), 1);
                assert_eq!(dominating.class, ConstraintClass::Nonneg);
                assert!(dominating.coeffs.contains_key(&Var::X(CellIndex::new(2, 1))));
            }
            other => panic!("expected a non-facet, got {other:?}"),
        }

        // eta=2 with c1 < c2: packing exception I, dominated by c1 := c2
        let sc = ShiftedColumn::from_columns(vec![1, 2]).unwrap();
        let sci = Sci::new(CellIndex::new(4, 3), sc, &pack).unwrap();
        match classify_sci(&sci, &pack).unwrap() {
            SciClassification::NonFacet { exception, dominating } => {
                assert_eq!(exception, SciException::ShiftGap);
                assert_eq!(exception.index(RowMode::Packing), 1);
                let sc = dominating.meta.unwrap().shifted_column.unwrap();
                assert_eq!(sc.columns(), &[2, 2]);
            }
            other => panic!("expected a non-facet, got {other:?}"),
        }

        // eta=1 with j > c1+1: diagonal-step exception
        let sc = ShiftedColumn::from_columns(vec![1]).unwrap();
        let sci = Sci::new(CellIndex::new(3, 3), sc, &pack).unwrap();
        match classify_sci(&sci, &pack).unwrap() {
            SciClassification::NonFacet { exception, dominating } => {
                assert_eq!(exception, SciException::DiagonalStep);
                assert_eq!(dominating.meta.unwrap().leader.unwrap(), CellIndex::new(2, 2));
            }
            other => panic!("expected a non-facet, got {other:?}"),
        }
    }

    #[test]
    fn projection_examples() {
        let part = shape(3, 2, Group::Symmetric, RowMode::Partitioning);
        let v = BinaryMatrix::from_row_choices(part, &[1, 2, 2]).unwrap();
        let image = project_part_to_pack(&v).unwrap();
        assert_eq!(image.shape().p, 2);
        assert_eq!(image.shape().q, 1);
        let support: Vec<(u32, u32)> = image.support().iter().map(|c| (c.i, c.j)).collect();
        assert_eq!(support, vec![(1, 1), (2, 1)]);
        assert_eq!(lift_pack_to_part(&image).unwrap(), v);

        // lift . project is the identity on vertices
        for p in 2..=6u32 {
            for q in 2..=p {
                let s = shape(p, q, Group::Symmetric, RowMode::Partitioning);
                for v in enumerate_vertices(&s).unwrap() {
                    let image = project_part_to_pack(&v).unwrap();
                    assert_eq!(lift_pack_to_part(&image).unwrap(), v);
                }
            }
        }
    }

    #[test]
    fn projection_image_is_the_packing_vertex_set() {
        for p in 2..=6u32 {
            for q in 2..=p {
                let s = shape(p, q, Group::Symmetric, RowMode::Partitioning);
                let image: std::collections::BTreeSet<_> = enumerate_vertices(&s)
                    .unwrap()
                    .map(|v| project_part_to_pack(&v).unwrap())
                    .collect();
                let target = projected_shape(&s).unwrap();
                let expected: std::collections::BTreeSet<_> =
                    crate::orbits::enumerate_vertices_unguarded(&target).collect();
                assert_eq!(image, expected, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn constraint_projection() {
        let s = shape(4, 3, Group::Symmetric, RowMode::Partitioning);
        let sc = ShiftedColumn::from_columns(vec![2]).unwrap();
        let sci = Sci::new(CellIndex::new(3, 3), sc, &s).unwrap();
        let row = sci_constraint(&sci);
        let projected = project_constraint(&row, &s).unwrap();
        assert!(projected.coeffs.contains_key(&Var::X(CellIndex::new(2, 2))));
        assert!(projected.coeffs.contains_key(&Var::X(CellIndex::new(1, 1))));
        let sc = projected.meta.unwrap().shifted_column.unwrap();
        assert_eq!(sc.columns(), &[1]);

        // row sums touch column 1 and do not project
        let sum = row_sum(&s, 2, Sense::Eq);
        assert!(project_constraint(&sum, &s).is_err());
    }

    #[test]
    fn constraint_json_round_trip() {
        let s = shape(4, 3, Group::Symmetric, RowMode::Packing);
        let row = column_inequality(CellIndex::new(4, 3), &s).unwrap();
        let js = serde_json::to_string(&row).unwrap();
        assert!(js.contains("\"x_4_3\""));
        let back: LinearConstraint = serde_json::from_str(&js).unwrap();
        assert_eq!(row, back);
    }
}
