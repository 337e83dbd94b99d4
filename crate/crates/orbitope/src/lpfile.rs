//! Textual LP emission (CPLEX-LP dialect).
//!
//! Variables are written `x_<i>_<j>` and `y_<j>`, constraints
//! `<class>_<i>_<j>[_k]` with `_k` disambiguating repeats. Exact rationals
//! are written as decimals when they terminate; otherwise every
//! coefficient in the file is scaled by one common factor announced in a
//! comment header.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::rational::BigRational;
use num::{BigInt, Integer, One, Signed, Zero};

use crate::descriptions::{Description, LinearConstraint, Sense, Var};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Minimize,
    Maximize,
}

/// Accumulates an LP model and renders it in one pass.
#[derive(Debug, Clone)]
pub struct LpFile {
    title: String,
    objective_sense: Objective,
    objective: BTreeMap<Var, BigRational>,
    rows: Vec<(String, LinearConstraint)>,
    name_uses: BTreeMap<String, u32>,
    free: Vec<Var>,
    binaries: Vec<Var>,
}

impl LpFile {
    pub fn new(title: impl Into<String>) -> LpFile {
        LpFile {
            title: title.into(),
            objective_sense: Objective::Minimize,
            objective: BTreeMap::new(),
            rows: Vec::new(),
            name_uses: BTreeMap::new(),
            free: Vec::new(),
            binaries: Vec::new(),
        }
    }

    pub fn set_objective(&mut self, sense: Objective, terms: BTreeMap<Var, BigRational>) {
        self.objective_sense = sense;
        self.objective = terms;
    }

    /// Adds a row under its derived `<class>_<i>_<j>[_k]` name.
    pub fn add_constraint(&mut self, c: LinearConstraint) -> String {
        let (i, j) = c.name_anchor();
        let base = format!("{}_{}_{}", c.class.tag(), i, j);
        let uses = self.name_uses.entry(base.clone()).or_insert(0);
        *uses += 1;
        let name = if *uses == 1 { base } else { format!("{base}_{uses}") };
        self.rows.push((name.clone(), c));
        name
    }

    /// Declares variables as free (the emitted rows carry all bounds).
    pub fn declare_free(&mut self, vars: impl IntoIterator<Item = Var>) {
        self.free.extend(vars);
    }

    pub fn declare_binary(&mut self, vars: impl IntoIterator<Item = Var>) {
        self.binaries.extend(vars);
    }

    fn all_rationals(&self) -> impl Iterator<Item = &BigRational> {
        self.objective
            .values()
            .chain(self.rows.iter().flat_map(|(_, c)| c.coeffs.values().chain(std::iter::once(&c.rhs))))
    }

    pub fn render(&self) -> String {
        // one global scale factor keeps every row equivalent
        let scale = self
            .all_rationals()
            .filter(|r| !has_terminating_decimal(r))
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let scaled = scale != BigInt::one();

        let mut out = String::new();
        let _ = writeln!(out, "\\ {}", self.title);
        if scaled {
            let _ = writeln!(out, "\\ all coefficients and right-hand sides scaled by {scale}");
        }
        out.push_str(match self.objective_sense {
            Objective::Minimize => "Minimize\n",
            Objective::Maximize => "Maximize\n",
        });
        out.push_str(" obj:");
        out.push_str(&render_terms(&self.objective, &scale));
        out.push('\n');
        out.push_str("Subject To\n");
        for (name, c) in &self.rows {
            let _ = write!(out, " {name}:");
            out.push_str(&render_terms(&c.coeffs, &scale));
            let sense = match c.sense {
                Sense::Le => "<=",
                Sense::Eq => "=",
                Sense::Ge => ">=",
            };
            let _ = writeln!(out, " {} {}", sense, render_number(&(&c.rhs * BigRational::from_integer(scale.clone()))));
        }
        if !self.free.is_empty() || !self.binaries.is_empty() {
            out.push_str("Bounds\n");
            for v in &self.free {
                let _ = writeln!(out, " {} free", v.name());
            }
        }
        if !self.binaries.is_empty() {
            out.push_str("Binaries\n");
            for v in &self.binaries {
                let _ = writeln!(out, " {}", v.name());
            }
        }
        out.push_str("End\n");
        out
    }
}

fn render_terms(terms: &BTreeMap<Var, BigRational>, scale: &BigInt) -> String {
    let mut out = String::new();
    let mut first = true;
    for (var, coef) in terms {
        let coef = coef * BigRational::from_integer(scale.clone());
        let mag = coef.abs();
        let sign = if coef.is_negative() { "-" } else { "+" };
        if first {
            if coef.is_negative() {
                out.push_str(" -");
            }
            first = false;
        } else {
            out.push(' ');
            out.push_str(sign);
        }
        if mag != BigRational::one() {
            let _ = write!(out, " {}", render_number(&mag));
        }
        let _ = write!(out, " {}", var.name());
    }
    out
}

fn has_terminating_decimal(r: &BigRational) -> bool {
    let mut d = r.denom().clone();
    for base in [2u32, 5] {
        let b = BigInt::from(base);
        while (&d % &b).is_zero() {
            d /= &b;
        }
    }
    d == BigInt::one()
}

/// Renders a terminating rational as a decimal (integers stay bare).
fn render_number(r: &BigRational) -> String {
    debug_assert!(has_terminating_decimal(r));
    if r.denom() == &BigInt::one() {
        return r.numer().to_string();
    }
    let mut d = r.denom().clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    let digits = twos.max(fives);
    let ten = BigInt::from(10u32).pow(digits);
    let scaled = (r.numer() * &ten / r.denom()).abs();
    let text = scaled.to_string();
    let text = format!("{:0>width$}", text, width = digits as usize + 1);
    let split = text.len() - digits as usize;
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{}.{}", &text[..split], &text[split..])
}

/// Renders a description as an LP file with free variables (the rows carry
/// every bound) and no objective.
pub fn description_to_lp(d: &Description, cap: usize) -> Result<String> {
    let mut lp = LpFile::new(format!(
        "{:?} {:?} orbitope, p={} q={}",
        d.shape().group,
        d.shape().row_mode,
        d.shape().p,
        d.shape().q
    ));
    for c in d.collect_with_cap(cap)? {
        lp.add_constraint(c);
    }
    lp.declare_free(d.shape().cells().map(Var::X));
    Ok(lp.render())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptions::{describe_cyclic_partitioning, nonneg, sci_constraint, Redundancy};
    use crate::index::{CellIndex, DiagCoord, Group, RowMode, Sci, Shape, ShiftedColumn};

    #[test]
    fn renders_decimals_and_integers() {
        assert_eq!(render_number(&BigRational::new(1.into(), 2.into())), "0.5");
        assert_eq!(render_number(&BigRational::new((-7).into(), 4.into())), "-1.75");
        assert_eq!(render_number(&BigRational::new(3.into(), 1.into())), "3");
        assert_eq!(render_number(&BigRational::new(1.into(), 125.into())), "0.008");
        assert!(!has_terminating_decimal(&BigRational::new(1.into(), 3.into())));
    }

    #[test]
    fn cyclic_partitioning_lp_snapshot() {
        let s = Shape::new(3, 2, Group::Cyclic, RowMode::Partitioning).unwrap();
        let d = describe_cyclic_partitioning(&s).unwrap();
        let text = description_to_lp(&d, 1000).unwrap();
        let expected = "\\ Cyclic Partitioning orbitope, p=3 q=2\n\
                        Minimize\n obj:\n\
                        Subject To\n\
                        \u{20}fixing_1_1: x_1_1 = 1\n\
                        \u{20}fixing_1_2: x_1_2 = 0\n\
                        \u{20}nonneg_2_1: x_2_1 >= 0\n\
                        \u{20}nonneg_2_2: x_2_2 >= 0\n\
                        \u{20}nonneg_3_1: x_3_1 >= 0\n\
                        \u{20}nonneg_3_2: x_3_2 >= 0\n\
                        \u{20}rowsum_2_1: x_2_1 + x_2_2 = 1\n\
                        \u{20}rowsum_3_1: x_3_1 + x_3_2 = 1\n\
                        Bounds\n\
                        \u{20}x_1_1 free\n x_1_2 free\n x_2_1 free\n x_2_2 free\n x_3_1 free\n x_3_2 free\n\
                        End\n";
        assert_eq!(text, expected);
        // eight constraints, as the count formula says
        assert_eq!(text.lines().filter(|l| l.contains(" = ") || l.contains(" >= ") || l.contains(" <= ")).count(), 8);
    }

    #[test]
    fn name_collisions_get_counters() {
        let s = Shape::new(4, 4, Group::Symmetric, RowMode::Packing).unwrap();
        let mut lp = LpFile::new("t");
        let sc1 = ShiftedColumn::column(DiagCoord::new(2, 1), &s).unwrap();
        let sc2 = ShiftedColumn::column(DiagCoord::new(2, 2), &s).unwrap();
        let a = lp.add_constraint(sci_constraint(&Sci::new(CellIndex::new(4, 3), sc1, &s).unwrap()));
        let b = lp.add_constraint(sci_constraint(&Sci::new(CellIndex::new(4, 3), sc2, &s).unwrap()));
        assert_eq!(a, "sci_4_3");
        assert_eq!(b, "sci_4_3_2");
    }

    #[test]
    fn non_terminating_coefficients_scale_the_file() {
        let mut lp = LpFile::new("scaled");
        let mut row = nonneg(CellIndex::new(1, 1));
        row.coeffs.insert(Var::X(CellIndex::new(1, 1)), BigRational::new(1.into(), 3.into()));
        lp.add_constraint(row);
        let text = lp.render();
        assert!(text.contains("scaled by 3"));
        assert!(text.contains("nonneg_1_1: x_1_1 >= 0"));
    }

    #[test]
    fn description_lp_round_trips_through_redundancy_modes() {
        let s = Shape::new(4, 3, Group::Symmetric, RowMode::Partitioning).unwrap();
        let full = crate::descriptions::describe_symmetric(&s, Redundancy::Full).unwrap();
        let lean = crate::descriptions::describe_symmetric(&s, Redundancy::NonRedundant).unwrap();
        let full_text = description_to_lp(&full, 10_000).unwrap();
        let lean_text = description_to_lp(&lean, 10_000).unwrap();
        assert!(full_text.len() > lean_text.len());
        assert!(lean_text.contains("sci_"));
    }
}
