//! Index arithmetic, matrix/point containers, and the shifted-column / bar
//! cut objects.
//!
//! Everything is 1-based: matrix positions are `(i,j)` with row `i ∈ [1,p]`
//! and column `j ∈ [1,q]`. Under the symmetric group the index set is the
//! lower-triangular set `I_{p,q} = {(i,j) : i ≥ j}` (entries above the
//! diagonal are identically zero on lex-maximal matrices); under the cyclic
//! group it is the full grid. Diagonal coordinates `⟨η,j⟩ = (j+η−1, j)`
//! address triangle cells by diagonal `η` (counted from the main diagonal)
//! and column `j`.

use std::collections::BTreeSet;

use num::rational::BigRational;
use num::One;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::{Error, Result};

/// Group acting on the matrix columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Cyclic,
    Symmetric,
}

/// Row restriction: at most one 1-entry per row (packing) or exactly one
/// (partitioning).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowMode {
    Packing,
    Partitioning,
}

/// Problem dimensions plus group and row-mode tags.
///
/// Symmetric shapes are canonicalized at construction: a requested `q > p`
/// is clamped to `p` (the extra columns are identically zero on the index
/// set) and the original value is recorded so callers can map results back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Shape {
    pub p: u32,
    pub q: u32,
    pub group: Group,
    pub row_mode: RowMode,
    /// Set when a symmetric shape was canonicalized from a wider request.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub requested_q: Option<u32>,
}

#[derive(Deserialize)]
struct ShapeRepr {
    p: u32,
    q: u32,
    group: Group,
    row_mode: RowMode,
    #[serde(default)]
    requested_q: Option<u32>,
}

impl<'de> Deserialize<'de> for Shape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ShapeRepr::deserialize(d)?;
        let q = repr.requested_q.unwrap_or(repr.q);
        Shape::new(repr.p, q, repr.group, repr.row_mode).map_err(serde::de::Error::custom)
    }
}

impl Shape {
    pub fn new(p: u32, q: u32, group: Group, row_mode: RowMode) -> Result<Shape> {
        let shape = Self::new_relaxed(p, q, group, row_mode)?;
        if shape.group == Group::Symmetric && shape.q < 2 {
            return Err(Error::InvalidShape(format!(
                "symmetric shapes need q >= 2 after canonicalization, got p={p}, q={q}"
            )));
        }
        Ok(shape)
    }

    /// Like [`Shape::new`] but admits symmetric `q = 1`, which arises as the
    /// projection target `orbipack(p-1, q-1)` of a partitioning orbitope
    /// with `q = 2`.
    pub(crate) fn new_relaxed(p: u32, q: u32, group: Group, row_mode: RowMode) -> Result<Shape> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidShape(format!("p and q must be positive, got p={p}, q={q}")));
        }
        let (q_eff, requested_q) = match group {
            Group::Symmetric if q > p => (p, Some(q)),
            _ => (q, None),
        };
        Ok(Shape { p, q: q_eff, group, row_mode, requested_q })
    }

    /// Number of columns usable in row `i`: `q` on the full grid,
    /// `min(i, q)` on the triangle.
    pub fn row_width(&self, i: u32) -> u32 {
        match self.group {
            Group::Cyclic => self.q,
            Group::Symmetric => i.min(self.q),
        }
    }

    pub fn contains(&self, cell: CellIndex) -> bool {
        cell.i >= 1 && cell.i <= self.p && cell.j >= 1 && cell.j <= self.row_width(cell.i)
    }

    /// Size of the index set: `pq` for the grid, `pq − q(q−1)/2` for the
    /// triangle.
    pub fn cell_count(&self) -> usize {
        match self.group {
            Group::Cyclic => self.p as usize * self.q as usize,
            Group::Symmetric => {
                let (p, q) = (self.p as usize, self.q as usize);
                p * q - q * (q - 1) / 2
            }
        }
    }

    /// Dense row-major position of a cell within the index set.
    pub fn cell_offset(&self, cell: CellIndex) -> usize {
        debug_assert!(self.contains(cell));
        let (i, j) = (cell.i as usize, cell.j as usize);
        match self.group {
            Group::Cyclic => (i - 1) * self.q as usize + (j - 1),
            Group::Symmetric => {
                let q = self.q as usize;
                let before = if i - 1 <= q {
                    (i - 1) * i / 2
                } else {
                    q * (q + 1) / 2 + (i - 1 - q) * q
                };
                before + (j - 1)
            }
        }
    }

    /// Row-major iterator over the index set.
    pub fn cells(&self) -> impl Iterator<Item = CellIndex> {
        let shape = *self;
        (1..=shape.p).flat_map(move |i| (1..=shape.row_width(i)).map(move |j| CellIndex::new(i, j)))
    }

    pub fn row_cells(&self, i: u32) -> impl Iterator<Item = CellIndex> {
        (1..=self.row_width(i)).map(move |j| CellIndex::new(i, j))
    }

    /// Whether two shapes index the same grid (group and dimensions).
    pub fn same_index_set(&self, other: &Shape) -> bool {
        self.p == other.p && self.q == other.q && self.group == other.group
    }

    /// Converts `⟨η,j⟩` to `(j+η−1, j)`.
    pub fn diag_to_cell(&self, d: DiagCoord) -> Result<CellIndex> {
        if d.eta == 0 || d.j == 0 || d.j > self.q {
            return Err(Error::OutOfRange(format!("diagonal coordinate <{},{}> invalid for {}x{}", d.eta, d.j, self.p, self.q)));
        }
        let i = d.j + d.eta - 1;
        if i > self.p {
            return Err(Error::OutOfRange(format!(
                "diagonal coordinate <{},{}> leaves the grid: row {} > p = {}",
                d.eta, d.j, i, self.p
            )));
        }
        Ok(CellIndex::new(i, d.j))
    }

    /// Converts a triangle cell `(i,j)` (with `i ≥ j`) to `⟨i−j+1, j⟩`.
    pub fn cell_to_diag(&self, cell: CellIndex) -> Result<DiagCoord> {
        if cell.i == 0 || cell.j == 0 || cell.i > self.p || cell.j > self.q {
            return Err(Error::OutOfRange(format!("cell ({},{}) outside the {}x{} grid", cell.i, cell.j, self.p, self.q)));
        }
        if cell.i < cell.j {
            return Err(Error::OutOfRange(format!(
                "cell ({},{}) lies above the diagonal and has no <eta,j> coordinate",
                cell.i, cell.j
            )));
        }
        Ok(DiagCoord { eta: cell.i - cell.j + 1, j: cell.j })
    }
}

/// A 1-based matrix position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "(u32, u32)", from = "(u32, u32)")]
pub struct CellIndex {
    pub i: u32,
    pub j: u32,
}

impl CellIndex {
    pub fn new(i: u32, j: u32) -> Self {
        CellIndex { i, j }
    }
}

impl From<(u32, u32)> for CellIndex {
    fn from((i, j): (u32, u32)) -> Self {
        CellIndex { i, j }
    }
}

impl From<CellIndex> for (u32, u32) {
    fn from(c: CellIndex) -> Self {
        (c.i, c.j)
    }
}

/// A triangle cell addressed by diagonal and column: `⟨η,j⟩ = (j+η−1, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "(u32, u32)", from = "(u32, u32)")]
pub struct DiagCoord {
    pub eta: u32,
    pub j: u32,
}

impl DiagCoord {
    pub fn new(eta: u32, j: u32) -> Self {
        DiagCoord { eta, j }
    }
}

impl From<(u32, u32)> for DiagCoord {
    fn from((eta, j): (u32, u32)) -> Self {
        DiagCoord { eta, j }
    }
}

impl From<DiagCoord> for (u32, u32) {
    fn from(d: DiagCoord) -> Self {
        (d.eta, d.j)
    }
}

/// The vertical segment `col(i,j) = {(j,j), (j+1,j), …, (i,j)}`.
pub fn column_segment(i: u32, j: u32, shape: &Shape) -> Result<Vec<CellIndex>> {
    let cell = CellIndex::new(i, j);
    shape.cell_to_diag(cell)?; // validates membership in the triangle
    Ok((j..=i).map(|r| CellIndex::new(r, j)).collect())
}

/// A 0/1 matrix stored by its support, satisfying the row-mode invariant
/// (and the triangle restriction under the symmetric group).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BinaryMatrix {
    shape: Shape,
    support: BTreeSet<CellIndex>,
}

#[derive(Deserialize)]
struct BinaryMatrixRepr {
    shape: Shape,
    support: BTreeSet<CellIndex>,
}

impl<'de> Deserialize<'de> for BinaryMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = BinaryMatrixRepr::deserialize(d)?;
        BinaryMatrix::new(repr.shape, repr.support).map_err(serde::de::Error::custom)
    }
}

impl BinaryMatrix {
    pub fn new(shape: Shape, support: BTreeSet<CellIndex>) -> Result<BinaryMatrix> {
        let mut rows_seen = vec![0u32; shape.p as usize + 1];
        for &cell in &support {
            if !shape.contains(cell) {
                return Err(Error::OutOfRange(format!(
                    "support cell ({},{}) outside the index set",
                    cell.i, cell.j
                )));
            }
            rows_seen[cell.i as usize] += 1;
        }
        for i in 1..=shape.p {
            let count = rows_seen[i as usize];
            match shape.row_mode {
                RowMode::Packing if count > 1 => {
                    return Err(Error::Domain(format!("packing matrix has {count} entries in row {i}")));
                }
                RowMode::Partitioning if count != 1 => {
                    return Err(Error::Domain(format!(
                        "partitioning matrix has {count} entries in row {i}, expected exactly 1"
                    )));
                }
                _ => {}
            }
        }
        Ok(BinaryMatrix { shape, support })
    }

    /// One choice per row: `0` means an empty row (packing only), `j ≥ 1`
    /// puts the row's 1-entry at column `j`.
    pub fn from_row_choices(shape: Shape, choices: &[u32]) -> Result<BinaryMatrix> {
        if choices.len() != shape.p as usize {
            return Err(Error::Domain(format!(
                "expected {} row choices, got {}",
                shape.p,
                choices.len()
            )));
        }
        let mut support = BTreeSet::new();
        for (idx, &j) in choices.iter().enumerate() {
            if j > 0 {
                support.insert(CellIndex::new(idx as u32 + 1, j));
            }
        }
        BinaryMatrix::new(shape, support)
    }

    /// The all-zero matrix; only packing shapes admit it.
    pub fn zero(shape: Shape) -> Result<BinaryMatrix> {
        BinaryMatrix::new(shape, BTreeSet::new())
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn support(&self) -> &BTreeSet<CellIndex> {
        &self.support
    }

    pub fn contains(&self, cell: CellIndex) -> bool {
        self.support.contains(&cell)
    }

    /// Rows carrying a 1-entry in column `j`, ascending.
    pub fn column_rows(&self, j: u32) -> Vec<u32> {
        self.support.iter().filter(|c| c.j == j).map(|c| c.i).collect()
    }

    /// The column of the row's 1-entry, or 0 for an empty row.
    pub fn row_choice(&self, i: u32) -> u32 {
        self.support.iter().find(|c| c.i == i).map_or(0, |c| c.j)
    }
}

/// A dense rational or float point over a shape's index set. Houses
/// separation inputs `x*` and cost/weight vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalPoint<T: Scalar> {
    shape: Shape,
    values: Vec<T>,
}

impl<T: Scalar> FractionalPoint<T> {
    pub fn from_values(shape: Shape, values: Vec<T>) -> Result<Self> {
        if values.len() != shape.cell_count() {
            return Err(Error::Domain(format!(
                "expected {} values for the index set, got {}",
                shape.cell_count(),
                values.len()
            )));
        }
        Ok(FractionalPoint { shape, values })
    }

    pub fn from_fn(shape: Shape, mut f: impl FnMut(CellIndex) -> T) -> Self {
        let values = shape.cells().map(&mut f).collect();
        FractionalPoint { shape, values }
    }

    pub fn constant(shape: Shape, value: T) -> Self {
        Self::from_fn(shape, |_| value.clone())
    }

    /// The 0/1 indicator point of a matrix, with 1 mapped through
    /// [`Scalar::from_rational`].
    pub fn indicator(m: &BinaryMatrix) -> Self {
        let one = T::from_rational(&BigRational::one());
        Self::from_fn(*m.shape(), |cell| if m.contains(cell) { one.clone() } else { T::zero() })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, cell: CellIndex) -> Result<&T> {
        if !self.shape.contains(cell) {
            return Err(Error::OutOfRange(format!("cell ({},{}) outside the index set", cell.i, cell.j)));
        }
        Ok(&self.values[self.shape.cell_offset(cell)])
    }

    /// `x(S) = Σ_{(i,j)∈S} x_{ij}`, exact on the rational path.
    pub fn sum_over<I>(&self, cells: I) -> Result<T>
    where
        I: IntoIterator<Item = CellIndex>,
    {
        let mut total = T::zero();
        for cell in cells {
            total = total.add(self.get(cell)?);
        }
        Ok(total)
    }

    /// Cells whose value falls outside `[0,1]`; separation accepts such
    /// points, this is the diagnostics hook.
    pub fn bounds_violations(&self) -> Vec<CellIndex> {
        let zero = T::zero();
        let one = T::from_rational(&BigRational::one());
        self.shape
            .cells()
            .filter(|&cell| {
                let v = &self.values[self.shape.cell_offset(cell)];
                *v < zero || *v > one
            })
            .collect()
    }
}

/// Serialized form of a point: rationals travel as strings, floats as JSON
/// numbers, so the numeric tag survives the wire format.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "PointRepr", into = "PointRepr")]
pub enum AnyPoint {
    Rational(FractionalPoint<BigRational>),
    Float(FractionalPoint<f64>),
}

#[derive(Serialize, Deserialize)]
struct PointRepr {
    shape: Shape,
    values: Vec<ValueRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ValueRepr {
    Exact(String),
    Approx(f64),
}

impl TryFrom<PointRepr> for AnyPoint {
    type Error = Error;

    fn try_from(repr: PointRepr) -> Result<Self> {
        let all_exact = repr.values.iter().all(|v| matches!(v, ValueRepr::Exact(_)));
        let all_float = repr.values.iter().all(|v| matches!(v, ValueRepr::Approx(_)));
        if all_exact {
            let mut values = Vec::with_capacity(repr.values.len());
            for v in &repr.values {
                let ValueRepr::Exact(s) = v else { unreachable!() };
                let r = crate::scalar::parse_rational(s)
                    .ok_or_else(|| Error::Parse(format!("bad rational literal {s:?}")))?;
                values.push(r);
            }
            Ok(AnyPoint::Rational(FractionalPoint::from_values(repr.shape, values)?))
        } else if all_float {
            let values = repr
                .values
                .iter()
                .map(|v| {
                    let ValueRepr::Approx(f) = v else { unreachable!() };
                    *f
                })
                .collect();
            Ok(AnyPoint::Float(FractionalPoint::from_values(repr.shape, values)?))
        } else {
            Err(Error::Parse(
                "point values must be all strings (rational) or all numbers (float)".into(),
            ))
        }
    }
}

impl From<AnyPoint> for PointRepr {
    fn from(p: AnyPoint) -> Self {
        match p {
            AnyPoint::Rational(p) => PointRepr {
                shape: p.shape,
                values: p.values.iter().map(|r| ValueRepr::Exact(crate::scalar::rational_to_string(r))).collect(),
            },
            AnyPoint::Float(p) => PointRepr {
                shape: p.shape,
                values: p.values.iter().map(|&f| ValueRepr::Approx(f)).collect(),
            },
        }
    }
}

impl AnyPoint {
    pub fn shape(&self) -> &Shape {
        match self {
            AnyPoint::Rational(p) => p.shape(),
            AnyPoint::Float(p) => p.shape(),
        }
    }
}

/// A shifted column `S = {⟨1,c₁⟩, …, ⟨η,c_η⟩}` with nondecreasing columns:
/// one cell per diagonal, each shifted weakly left of the column it shifts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ShiftedColumnRepr", into = "ShiftedColumnRepr")]
pub struct ShiftedColumn {
    cols: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct ShiftedColumnRepr {
    entries: Vec<DiagCoord>,
}

impl TryFrom<ShiftedColumnRepr> for ShiftedColumn {
    type Error = Error;

    fn try_from(repr: ShiftedColumnRepr) -> Result<Self> {
        for (idx, d) in repr.entries.iter().enumerate() {
            if d.eta as usize != idx + 1 {
                return Err(Error::Domain(format!(
                    "shifted column entries must carry diagonals 1..eta in order, found eta {} at position {}",
                    d.eta,
                    idx + 1
                )));
            }
        }
        ShiftedColumn::from_columns(repr.entries.iter().map(|d| d.j).collect())
    }
}

impl From<ShiftedColumn> for ShiftedColumnRepr {
    fn from(sc: ShiftedColumn) -> Self {
        ShiftedColumnRepr { entries: sc.entries().collect() }
    }
}

impl ShiftedColumn {
    /// Builds `{⟨1,c₁⟩, …, ⟨η,c_η⟩}` from the column sequence; the sequence
    /// must be nonempty and nondecreasing.
    pub fn from_columns(cols: Vec<u32>) -> Result<ShiftedColumn> {
        if cols.is_empty() {
            return Err(Error::Domain("shifted column must have at least one entry".into()));
        }
        if cols[0] == 0 {
            return Err(Error::Domain("shifted column entries are 1-based".into()));
        }
        if cols.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Domain(format!("shifted column sequence {cols:?} is not nondecreasing")));
        }
        Ok(ShiftedColumn { cols })
    }

    /// The unshifted column `col⟨η,j⟩` as a shifted column.
    pub fn column(d: DiagCoord, shape: &Shape) -> Result<ShiftedColumn> {
        shape.diag_to_cell(d)?;
        Self::from_columns(vec![d.j; d.eta as usize])
    }

    /// Checks that every entry lies in the shape's triangle.
    pub fn validate_for(&self, shape: &Shape) -> Result<()> {
        for d in self.entries() {
            shape.diag_to_cell(d)?;
        }
        Ok(())
    }

    pub fn eta(&self) -> u32 {
        self.cols.len() as u32
    }

    pub fn last_column(&self) -> u32 {
        *self.cols.last().expect("nonempty by construction")
    }

    pub fn columns(&self) -> &[u32] {
        &self.cols
    }

    pub fn entries(&self) -> impl Iterator<Item = DiagCoord> + '_ {
        self.cols.iter().enumerate().map(|(idx, &c)| DiagCoord::new(idx as u32 + 1, c))
    }

    pub fn cells(&self) -> impl Iterator<Item = CellIndex> + '_ {
        self.entries().map(|d| CellIndex::new(d.j + d.eta - 1, d.j))
    }

    /// `S` is a shifting of `col⟨η,j⟩` exactly when it has length `η` and
    /// its last column is at most `j`.
    pub fn is_shifting_of(&self, d: DiagCoord) -> bool {
        self.eta() == d.eta && self.last_column() <= d.j
    }
}

/// A horizontal bar `B = {(i,j), (i,j+1), …, (i,min(i,q))}` with its leader
/// `(i,j)` as the leftmost cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "BarRepr", into = "BarRepr")]
pub struct Bar {
    leader: CellIndex,
    end_column: u32,
}

#[derive(Serialize, Deserialize)]
struct BarRepr {
    leader: CellIndex,
    cells: Vec<CellIndex>,
}

impl TryFrom<BarRepr> for Bar {
    type Error = Error;

    fn try_from(repr: BarRepr) -> Result<Self> {
        let expected: Vec<CellIndex> =
            (repr.leader.j..=repr.leader.j + repr.cells.len() as u32 - 1)
                .map(|j| CellIndex::new(repr.leader.i, j))
                .collect();
        if repr.cells.is_empty() || repr.cells != expected {
            return Err(Error::Domain("bar cells must run contiguously from the leader".into()));
        }
        Ok(Bar { leader: repr.leader, end_column: expected.last().unwrap().j })
    }
}

impl From<Bar> for BarRepr {
    fn from(bar: Bar) -> Self {
        BarRepr { leader: bar.leader, cells: bar.cells().collect() }
    }
}

/// The bar with the given leader: row `i` from column `j` to `min(i,q)`.
pub fn bar_of(leader: CellIndex, shape: &Shape) -> Result<Bar> {
    shape.cell_to_diag(leader)?; // leader must sit in the triangle
    Ok(Bar { leader, end_column: leader.i.min(shape.q) })
}

impl Bar {
    pub fn leader(&self) -> CellIndex {
        self.leader
    }

    pub fn len(&self) -> usize {
        (self.end_column - self.leader.j + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cells(&self) -> impl Iterator<Item = CellIndex> + '_ {
        (self.leader.j..=self.end_column).map(move |j| CellIndex::new(self.leader.i, j))
    }
}

/// A shifted column inequality `x(B) − x(S) ≤ 0`: a bar with leader
/// `⟨η,j⟩`, `j ≥ 2`, and a shifting `S` of `col⟨η,j−1⟩`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SciRepr", into = "SciRepr")]
pub struct Sci {
    bar: Bar,
    shifted_column: ShiftedColumn,
}

#[derive(Serialize, Deserialize)]
struct SciRepr {
    bar: Bar,
    shifted_column: ShiftedColumn,
}

impl TryFrom<SciRepr> for Sci {
    type Error = Error;

    fn try_from(repr: SciRepr) -> Result<Self> {
        Sci::from_parts(repr.bar, repr.shifted_column)
    }
}

impl From<Sci> for SciRepr {
    fn from(sci: Sci) -> Self {
        SciRepr { bar: sci.bar, shifted_column: sci.shifted_column }
    }
}

impl Sci {
    pub fn new(leader: CellIndex, shifted_column: ShiftedColumn, shape: &Shape) -> Result<Sci> {
        let bar = bar_of(leader, shape)?;
        shifted_column.validate_for(shape)?;
        Sci::from_parts(bar, shifted_column)
    }

    fn from_parts(bar: Bar, shifted_column: ShiftedColumn) -> Result<Sci> {
        let leader = bar.leader();
        if leader.j < 2 {
            return Err(Error::Domain("SCI leaders need column j >= 2".into()));
        }
        let eta = leader.i - leader.j + 1;
        if !shifted_column.is_shifting_of(DiagCoord::new(eta, leader.j - 1)) {
            return Err(Error::Domain(format!(
                "shifted column (eta {}, last column {}) is not a shifting of col<{},{}>",
                shifted_column.eta(),
                shifted_column.last_column(),
                eta,
                leader.j - 1
            )));
        }
        Ok(Sci { bar, shifted_column })
    }

    pub fn bar(&self) -> &Bar {
        &self.bar
    }

    pub fn shifted_column(&self) -> &ShiftedColumn {
        &self.shifted_column
    }

    pub fn leader(&self) -> CellIndex {
        self.bar.leader()
    }
}
