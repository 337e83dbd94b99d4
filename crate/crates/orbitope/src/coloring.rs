//! Symmetry-broken graph-coloring IP models: DIMACS in, LP out.
//!
//! The base model has variables `x_{ij}` (vertex `i` gets color `j`) over
//! the full `[n]×[C]` grid and `y_j` (color `j` is used), edge-color rows
//! `x_{ij} + x_{kj} ≤ y_j`, assignment rows `Σ_j x_{ij} = 1`, binary
//! bounds, and `min Σ y_j` as objective. Color permutations act on the
//! columns of `x`, so any orbitope-based family for the symmetric group on
//! shape `(n, C)` breaks the symmetry: the triangle fixings `x_{ij} = 0`
//! (`i < j`) plus, per flag, the single-cell inequalities, the column
//! inequalities, or the non-redundant shifted column inequality family.
//! Clique-strengthened SCIs `Σ_{i∈W} x_{ij} − x(S) ≤ 0` combine both kinds
//! of structure.

use std::collections::{BTreeMap, BTreeSet};

use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::descriptions::{
    column_inequality, fixing, md_zabala, sci_constraint, ConstraintClass, ConstraintMeta,
    LinearConstraint, Redundancy, SciFamily, Sense, Var,
};
use crate::index::{CellIndex, Group, RowMode, Shape, ShiftedColumn};
use crate::{Error, Result};

/// A loopless undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: u32,
    /// Normalized to `u < v`.
    edges: BTreeSet<(u32, u32)>,
}

impl Graph {
    pub fn new(n: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Domain(format!("loop edge at vertex {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::OutOfRange(format!("edge ({u},{v}) outside vertex range 1..={n}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(u32, u32)> {
        &self.edges
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn isolated_vertices(&self) -> Vec<u32> {
        let mut touched = vec![false; self.n as usize + 1];
        for &(u, v) in &self.edges {
            touched[u as usize] = true;
            touched[v as usize] = true;
        }
        (1..=self.n).filter(|&v| !touched[v as usize]).collect()
    }
}

/// Parses the DIMACS `.col` format: `c` comment lines, one `p edge n m`
/// line, and `e u v` edge lines (duplicates merged, loops rejected).
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n: Option<u32> = None;
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if n.is_some() {
                    return Err(Error::Parse(format!("line {}: duplicate problem line", lineno + 1)));
                }
                let kind = tokens.next().unwrap_or("");
                if !(kind.starts_with("edge") || kind.starts_with("col")) {
                    return Err(Error::Parse(format!("line {}: expected 'p edge <n> <m>'", lineno + 1)));
                }
                let vertices: u32 = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("line {}: bad vertex count", lineno + 1)))?;
                // the edge count is informational; the e-lines are authoritative
                n = Some(vertices);
            }
            Some("e") => {
                let Some(n) = n else {
                    return Err(Error::Parse(format!("line {}: edge before the problem line", lineno + 1)));
                };
                let u: u32 = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("line {}: bad edge endpoint", lineno + 1)))?;
                let v: u32 = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("line {}: bad edge endpoint", lineno + 1)))?;
                if u == v {
                    return Err(Error::Parse(format!("line {}: loop edge at {u}", lineno + 1)));
                }
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::Parse(format!("line {}: endpoint outside 1..={n}", lineno + 1)));
                }
                edges.push((u, v));
            }
            Some(other) => {
                return Err(Error::Parse(format!("line {}: unknown record {other:?}", lineno + 1)));
            }
            None => {}
        }
    }
    let n = n.ok_or_else(|| Error::Parse("missing problem line".into()))?;
    Graph::new(n, edges)
}

/// Maximal cliques grown greedily from each vertex in index order,
/// deduplicated, at most `cap` returned.
pub fn greedy_cliques(g: &Graph, cap: usize) -> Vec<Vec<u32>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for seed in 1..=g.n() {
        let mut clique = vec![seed];
        for candidate in 1..=g.n() {
            if candidate == seed {
                continue;
            }
            if clique.iter().all(|&v| g.has_edge(v, candidate)) {
                clique.push(candidate);
            }
        }
        clique.sort_unstable();
        if seen.insert(clique.clone()) {
            out.push(clique);
            if out.len() >= cap {
                break;
            }
        }
    }
    out
}

/// Which symmetry-breaking family is appended to the base model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryBreaking {
    None,
    MdZabala,
    ColumnIneq,
    SciNonRedundant,
}

/// A symmetry-broken coloring model for a graph and a color bound.
#[derive(Debug, Clone)]
pub struct ColoringModel {
    graph: Graph,
    colors: u32,
    sb: SymmetryBreaking,
    /// Shape `(n, C)` under the symmetric group; the source of the
    /// orbitope families. `q` is clamped to `min(n, C)`.
    sb_shape: Shape,
    warnings: Vec<String>,
}

/// Builds the coloring model. `C ≥ 2` is required; `C > n` and isolated
/// vertices produce warnings (the latter get explicit `x ≤ y` rows so `y`
/// keeps its meaning).
pub fn build_model(g: &Graph, colors: u32, sb: SymmetryBreaking) -> Result<ColoringModel> {
    if colors < 2 {
        return Err(Error::Domain(format!("need at least 2 colors, got {colors}")));
    }
    let mut warnings = Vec::new();
    if colors > g.n() {
        warnings.push(format!("color bound {colors} exceeds the vertex count {}", g.n()));
    }
    let isolated = g.isolated_vertices();
    if !isolated.is_empty() {
        warnings.push(format!(
            "isolated vertices {isolated:?}: adding explicit x <= y rows for them"
        ));
    }
    let sb_shape = Shape::new_relaxed(g.n(), colors, Group::Symmetric, RowMode::Partitioning)?;
    Ok(ColoringModel { graph: g.clone(), colors, sb, sb_shape, warnings })
}

impl ColoringModel {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    pub fn sb(&self) -> SymmetryBreaking {
        self.sb
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn x_vars(&self) -> Vec<Var> {
        let c = self.colors;
        (1..=self.graph.n()).flat_map(|i| (1..=c).map(move |j| Var::X(CellIndex::new(i, j)))).collect()
    }

    pub fn y_vars(&self) -> Vec<Var> {
        (1..=self.colors).map(Var::Y).collect()
    }

    /// `min Σ_j y_j`.
    pub fn objective(&self) -> BTreeMap<Var, BigRational> {
        self.y_vars().into_iter().map(|v| (v, BigRational::one())).collect()
    }

    /// Edge-color rows `x_{ij} + x_{kj} − y_j ≤ 0` for every edge and
    /// color.
    fn edge_color_rows(&self) -> impl Iterator<Item = LinearConstraint> + '_ {
        self.graph.edges().iter().flat_map(move |&(u, v)| {
            (1..=self.colors).map(move |j| {
                let coeffs = BTreeMap::from([
                    (Var::X(CellIndex::new(u, j)), BigRational::one()),
                    (Var::X(CellIndex::new(v, j)), BigRational::one()),
                    (Var::Y(j), -BigRational::one()),
                ]);
                LinearConstraint::new(coeffs, Sense::Le, BigRational::zero(), ConstraintClass::EdgeColor, None)
                    .expect("nonempty")
            })
        })
    }

    /// Assignment rows `Σ_j x_{ij} = 1`.
    fn assignment_rows(&self) -> impl Iterator<Item = LinearConstraint> + '_ {
        (1..=self.graph.n()).map(move |i| {
            let coeffs =
                (1..=self.colors).map(|j| (Var::X(CellIndex::new(i, j)), BigRational::one())).collect();
            LinearConstraint::new(coeffs, Sense::Eq, BigRational::one(), ConstraintClass::RowSum, None)
                .expect("nonempty")
        })
    }

    /// `x_{vj} − y_j ≤ 0` for isolated vertices, which the edge-color rows
    /// do not reach.
    fn isolated_rows(&self) -> impl Iterator<Item = LinearConstraint> + '_ {
        self.graph.isolated_vertices().into_iter().flat_map(move |v| {
            (1..=self.colors).map(move |j| {
                let coeffs = BTreeMap::from([
                    (Var::X(CellIndex::new(v, j)), BigRational::one()),
                    (Var::Y(j), -BigRational::one()),
                ]);
                LinearConstraint::new(coeffs, Sense::Le, BigRational::zero(), ConstraintClass::UpperBound, None)
                    .expect("nonempty")
            })
        })
    }

    /// The appended symmetry-breaking family: triangle fixings
    /// `x_{ij} = 0` for `i < j`, then the flagged orbitope family on the
    /// shape `(n, C)`.
    pub fn sb_constraints(&self) -> Box<dyn Iterator<Item = LinearConstraint> + '_> {
        if self.sb == SymmetryBreaking::None {
            return Box::new(std::iter::empty());
        }
        let n = self.graph.n();
        let colors = self.colors;
        let fixings = (1..=n)
            .flat_map(move |i| (i + 1..=colors).map(move |j| fixing(CellIndex::new(i, j), 0)));
        let shape = self.sb_shape;
        match self.sb {
            SymmetryBreaking::None => unreachable!(),
            SymmetryBreaking::MdZabala => {
                let rows = shape
                    .cells()
                    .filter(|c| c.j >= 2)
                    .map(move |c| md_zabala(c.i, c.j, &shape).expect("triangle cell with j >= 2"));
                Box::new(fixings.chain(rows))
            }
            SymmetryBreaking::ColumnIneq => {
                let rows = shape
                    .cells()
                    .filter(|c| c.j >= 2)
                    .map(move |c| column_inequality(c, &shape).expect("triangle cell with j >= 2"));
                Box::new(fixings.chain(rows))
            }
            SymmetryBreaking::SciNonRedundant => {
                let rows = SciFamily::new(shape, Redundancy::NonRedundant).map(|sci| sci_constraint(&sci));
                Box::new(fixings.chain(rows))
            }
        }
    }

    /// Every model row: edge-color, assignment, isolated-vertex bounds,
    /// then the symmetry-breaking family (binary bounds are declared on
    /// the variables, not emitted as rows).
    pub fn constraints(&self) -> impl Iterator<Item = LinearConstraint> + '_ {
        self.edge_color_rows()
            .chain(self.assignment_rows())
            .chain(self.isolated_rows())
            .chain(self.sb_constraints())
    }

    pub fn collect_constraints(&self, cap: usize) -> Result<Vec<LinearConstraint>> {
        let mut out = Vec::new();
        for c in self.constraints() {
            if out.len() >= cap {
                return Err(Error::Capacity(format!("model exceeds the collection cap of {cap} constraints")));
            }
            out.push(c);
        }
        Ok(out)
    }

    /// Renders the model as an LP file with binary variables and the
    /// `min Σ y_j` objective.
    pub fn to_lp(&self, cap: usize) -> Result<String> {
        let mut lp = crate::lpfile::LpFile::new(format!(
            "coloring model: n={} m={} C={} sb={:?}",
            self.graph.n(),
            self.graph.edges().len(),
            self.colors,
            self.sb
        ));
        lp.set_objective(crate::lpfile::Objective::Minimize, self.objective());
        for c in self.collect_constraints(cap)? {
            lp.add_constraint(c);
        }
        lp.declare_binary(self.x_vars().into_iter().chain(self.y_vars()));
        Ok(lp.render())
    }
}

/// Evaluates a constraint at a 0/1 assignment given by the x-support and
/// the y-indicator vector (index 0 unused).
pub fn satisfied_by_assignment(
    c: &LinearConstraint,
    x_support: &BTreeSet<CellIndex>,
    y_used: &[bool],
) -> Result<bool> {
    let mut lhs = BigRational::zero();
    for (var, coef) in &c.coeffs {
        let on = match var {
            Var::X(cell) => x_support.contains(cell),
            Var::Y(j) => *y_used
                .get(*j as usize)
                .ok_or_else(|| Error::OutOfRange(format!("y_{j} outside the color range")))?,
        };
        if on {
            lhs += coef;
        }
    }
    Ok(match c.sense {
        Sense::Le => lhs <= c.rhs,
        Sense::Eq => lhs == c.rhs,
        Sense::Ge => lhs >= c.rhs,
    })
}

/// The combined clique-SCI cut `Σ_{i∈W} x_{ij} − x(S) ≤ 0` for a clique
/// `W`, a color `j ≥ 2`, and a shifted column `S` with `c_{|S|} ≤ j−1`
/// covering every diagonal `i−j+1`, `i ∈ W`.
pub fn clique_sci_cut(
    g: &Graph,
    colors: u32,
    clique: &[u32],
    color: u32,
    shifted: &ShiftedColumn,
) -> Result<LinearConstraint> {
    if clique.is_empty() {
        return Err(Error::Domain("empty clique".into()));
    }
    let mut sorted = clique.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != clique.len() {
        return Err(Error::Domain("clique vertices must be distinct".into()));
    }
    for &v in &sorted {
        if v == 0 || v > g.n() {
            return Err(Error::OutOfRange(format!("clique vertex {v} outside 1..={}", g.n())));
        }
    }
    for (a_idx, &a) in sorted.iter().enumerate() {
        for &b in &sorted[a_idx + 1..] {
            if !g.has_edge(a, b) {
                return Err(Error::Domain(format!("vertices {a} and {b} are not adjacent; not a clique")));
            }
        }
    }
    if color < 2 || color > colors {
        return Err(Error::Domain(format!("color must lie in 2..={colors}, got {color}")));
    }
    let shape = Shape::new_relaxed(g.n(), colors, Group::Symmetric, RowMode::Partitioning)?;
    shifted.validate_for(&shape)?;
    if shifted.last_column() > color - 1 {
        return Err(Error::Domain(format!(
            "shifted column reaches column {}, past the shifting bound {}",
            shifted.last_column(),
            color - 1
        )));
    }
    for &i in &sorted {
        if i < color {
            return Err(Error::Domain(format!(
                "clique vertex {i} sits above the diagonal for color {color}"
            )));
        }
        let eta = i - color + 1;
        if eta > shifted.eta() {
            return Err(Error::Domain(format!(
                "clique vertex {i} needs a shifted column of length at least {eta}, got {}",
                shifted.eta()
            )));
        }
    }

    let mut coeffs: BTreeMap<Var, BigRational> = sorted
        .iter()
        .map(|&i| (Var::X(CellIndex::new(i, color)), BigRational::one()))
        .collect();
    for cell in shifted.cells() {
        coeffs.insert(Var::X(cell), -BigRational::one());
    }
    let meta = ConstraintMeta {
        clique: Some(sorted),
        color: Some(color),
        shifted_column: Some(shifted.clone()),
        ..ConstraintMeta::default()
    };
    LinearConstraint::new(coeffs, Sense::Le, BigRational::zero(), ConstraintClass::CliqueSci, Some(meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::canonicalize_support;
    use crate::scalar::rational_from_i64;
    use num::rational::BigRational;

    fn k3() -> Graph {
        Graph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn dimacs_examples() {
        let g = parse_dimacs("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g, k3());

        // duplicates merge
        let g = parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.edges().len(), 1);

        // loops are rejected
        assert!(parse_dimacs("p edge 2 1\ne 1 1\n").is_err());
        // endpoints are range-checked
        assert!(parse_dimacs("p edge 2 1\ne 1 5\n").is_err());
        // edges need the problem line
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("q edge 1 0\n").is_err());
    }

    #[test]
    fn greedy_clique_examples() {
        assert_eq!(greedy_cliques(&k3(), 10), vec![vec![1, 2, 3]]);

        let edgeless = Graph::new(3, []).unwrap();
        assert_eq!(greedy_cliques(&edgeless, 10), vec![vec![1], vec![2], vec![3]]);

        let path = Graph::new(3, [(1, 2), (2, 3)]).unwrap();
        assert_eq!(greedy_cliques(&path, 10), vec![vec![1, 2], vec![2, 3]]);

        // cap is honored
        assert_eq!(greedy_cliques(&edgeless, 2).len(), 2);
    }

    #[test]
    fn base_model_counts() {
        let model = build_model(&k3(), 3, SymmetryBreaking::None).unwrap();
        let rows = model.collect_constraints(10_000).unwrap();
        let edge_color = rows.iter().filter(|c| c.class == ConstraintClass::EdgeColor).count();
        let assignment = rows.iter().filter(|c| c.class == ConstraintClass::RowSum).count();
        assert_eq!(edge_color, 9);
        assert_eq!(assignment, 3);
        assert_eq!(rows.len(), 12);
        assert!(model.warnings().is_empty());
        assert!(build_model(&k3(), 1, SymmetryBreaking::None).is_err());
    }

    #[test]
    fn md_zabala_family_in_the_triangle() {
        let model = build_model(&k3(), 3, SymmetryBreaking::MdZabala).unwrap();
        let rows: Vec<_> = model.sb_constraints().collect();
        let fixings = rows.iter().filter(|c| c.class == ConstraintClass::Fixing).count();
        let mdz: Vec<_> = rows.iter().filter(|c| c.class == ConstraintClass::MdZabala).collect();
        assert_eq!(fixings, 3); // (1,2), (1,3), (2,3)
        let leaders: Vec<(u32, u32)> = mdz
            .iter()
            .map(|c| {
                let l = c.meta.as_ref().unwrap().leader.unwrap();
                (l.i, l.j)
            })
            .collect();
        assert_eq!(leaders, vec![(2, 2), (3, 2), (3, 3)]);
    }

    #[test]
    fn uniform_point_is_feasible_without_symmetry_breaking() {
        let model = build_model(&k3(), 3, SymmetryBreaking::None).unwrap();
        let third = BigRational::new(1.into(), 3.into());
        let two_thirds = BigRational::new(2.into(), 3.into());
        for c in model.constraints() {
            let mut lhs = BigRational::zero();
            for (var, coef) in &c.coeffs {
                let value = match var {
                    Var::X(_) => &third,
                    Var::Y(_) => &two_thirds,
                };
                lhs += coef * value;
            }
            let ok = match c.sense {
                Sense::Le => lhs <= c.rhs,
                Sense::Eq => lhs == c.rhs,
                Sense::Ge => lhs >= c.rhs,
            };
            assert!(ok, "uniform point violates {c:?}");
        }
        // objective value 2
        let objective: BigRational = model.objective().values().map(|c| c * &two_thirds).sum();
        assert_eq!(objective, rational_from_i64(2));

        // with symmetry breaking the fixings cut the uniform point off
        let model = build_model(&k3(), 3, SymmetryBreaking::SciNonRedundant).unwrap();
        let cut = model.sb_constraints().any(|c| {
            let lhs: BigRational = c
                .coeffs
                .iter()
                .map(|(var, coef)| match var {
                    Var::X(_) => coef * &third,
                    Var::Y(_) => coef * &two_thirds,
                })
                .sum();
            match c.sense {
                Sense::Le => lhs > c.rhs,
                Sense::Eq => lhs != c.rhs,
                Sense::Ge => lhs < c.rhs,
            }
        });
        assert!(cut);
    }

    #[test]
    fn clique_sci_examples() {
        let g = Graph::new(3, [(2, 3)]).unwrap();
        let sc = ShiftedColumn::from_columns(vec![1, 1]).unwrap();
        let cut = clique_sci_cut(&g, 3, &[2, 3], 2, &sc).unwrap();
        let expected: BTreeMap<Var, BigRational> = BTreeMap::from([
            (Var::X(CellIndex::new(2, 2)), BigRational::one()),
            (Var::X(CellIndex::new(3, 2)), BigRational::one()),
            (Var::X(CellIndex::new(1, 1)), -BigRational::one()),
            (Var::X(CellIndex::new(2, 1)), -BigRational::one()),
        ]);
        assert_eq!(cut.coeffs, expected);

        // validity on all lex-max feasible colorings of the graph
        let model = build_model(&g, 3, SymmetryBreaking::SciNonRedundant).unwrap();
        for support in feasible_lexmax_colorings(&model) {
            let y = used_columns(&support, 3);
            assert!(satisfied_by_assignment(&cut, &support, &y).unwrap());
        }

        // single-vertex cliques degrade to a single-cell bar
        let cut = clique_sci_cut(&g, 3, &[2], 2, &ShiftedColumn::from_columns(vec![1]).unwrap()).unwrap();
        assert_eq!(cut.coeffs.len(), 2);

        // side condition: vertex 3 needs |S| >= 2 for color 2
        let err = clique_sci_cut(&g, 3, &[3], 2, &ShiftedColumn::from_columns(vec![1]).unwrap());
        assert!(err.is_err());
        // non-clique rejected
        let err = clique_sci_cut(&g, 3, &[1, 2], 2, &sc);
        assert!(err.is_err());
    }

    fn used_columns(support: &BTreeSet<CellIndex>, colors: u32) -> Vec<bool> {
        let mut used = vec![false; colors as usize + 1];
        for cell in support {
            used[cell.j as usize] = true;
        }
        used
    }

    /// All proper colorings whose x-matrix satisfies the model's
    /// symmetry-breaking rows, by brute force over color assignments.
    fn feasible_lexmax_colorings(model: &ColoringModel) -> Vec<BTreeSet<CellIndex>> {
        let n = model.graph().n();
        let c = model.colors();
        let sb_rows: Vec<_> = model.sb_constraints().collect();
        let mut out = Vec::new();
        let mut assignment = vec![1u32; n as usize];
        'outer: loop {
            let proper = model
                .graph()
                .edges()
                .iter()
                .all(|&(u, v)| assignment[u as usize - 1] != assignment[v as usize - 1]);
            if proper {
                let support: BTreeSet<CellIndex> = assignment
                    .iter()
                    .enumerate()
                    .map(|(idx, &col)| CellIndex::new(idx as u32 + 1, col))
                    .collect();
                let y = used_columns(&support, c);
                if sb_rows.iter().all(|r| satisfied_by_assignment(r, &support, &y).unwrap()) {
                    out.push(support);
                }
            }
            for idx in (0..assignment.len()).rev() {
                if assignment[idx] < c {
                    assignment[idx] += 1;
                    for later in assignment.iter_mut().skip(idx + 1) {
                        *later = 1;
                    }
                    continue 'outer;
                }
            }
            break;
        }
        out
    }

    #[test]
    fn sci_model_solutions_are_canonical_colorings() {
        // path on 4 vertices, 3 colors
        let g = Graph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let model = build_model(&g, 3, SymmetryBreaking::SciNonRedundant).unwrap();
        let solutions = feasible_lexmax_colorings(&model);

        // brute-force orbit representatives: canonicalize every proper
        // coloring under column permutations and deduplicate
        let mut canon = BTreeSet::new();
        let mut assignment = vec![1u32; 4];
        'outer: loop {
            let proper =
                g.edges().iter().all(|&(u, v)| assignment[u as usize - 1] != assignment[v as usize - 1]);
            if proper {
                let support: BTreeSet<CellIndex> = assignment
                    .iter()
                    .enumerate()
                    .map(|(idx, &col)| CellIndex::new(idx as u32 + 1, col))
                    .collect();
                canon.insert(canonicalize_support(&support, 3, Group::Symmetric));
            }
            for idx in (0..assignment.len()).rev() {
                if assignment[idx] < 3 {
                    assignment[idx] += 1;
                    for later in assignment.iter_mut().skip(idx + 1) {
                        *later = 1;
                    }
                    continue 'outer;
                }
            }
            break;
        }

        let solution_set: BTreeSet<_> = solutions.into_iter().collect();
        assert_eq!(solution_set, canon);

        // each solution extends to a full model solution with minimal y
        for support in &solution_set {
            let y = used_columns(support, 3);
            for row in model.collect_constraints(10_000).unwrap() {
                assert!(satisfied_by_assignment(&row, support, &y).unwrap());
            }
        }
    }

    #[test]
    fn isolated_vertices_get_explicit_upper_rows() {
        let g = Graph::new(3, [(1, 2)]).unwrap();
        let model = build_model(&g, 2, SymmetryBreaking::None).unwrap();
        assert_eq!(model.warnings().len(), 1);
        let uppers = model
            .constraints()
            .filter(|c| c.class == ConstraintClass::UpperBound)
            .count();
        assert_eq!(uppers, 2); // vertex 3, colors 1 and 2
    }

    #[test]
    fn lp_output_has_binaries_and_objective() {
        let model = build_model(&k3(), 3, SymmetryBreaking::SciNonRedundant).unwrap();
        let text = model.to_lp(10_000).unwrap();
        assert!(text.starts_with("\\ coloring model: n=3 m=3 C=3"));
        assert!(text.contains("Minimize\n obj: y_1 + y_2 + y_3\n"));
        assert!(text.contains("Binaries\n"));
        assert!(text.contains(" x_3_2\n"));
        assert!(text.contains("edgecolor_1_1: x_1_1 + x_2_1 - y_1 <= 0"));
    }
}
