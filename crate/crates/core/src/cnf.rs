//! Propositional building blocks: variables, literals, clauses, formulas and
//! points of the Boolean space.
//!
//! Variables are 1-based, following the DIMACS convention. Internally a
//! variable `x_i` occupies slot `i - 1` of points and cubes.

use std::collections::HashMap;
use std::fmt;
use std::ops::Not;

use crate::error::{Error, Result};

/// A Boolean variable `x_i`, `i >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    /// Panics if `index` is zero.
    pub fn new(index: u32) -> Var {
        assert!(index >= 1, "variable indices are 1-based");
        Var(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    /// 0-based position of the variable inside points and cubes.
    pub fn slot(self) -> usize {
        (self.0 - 1) as usize
    }

    pub fn from_slot(slot: usize) -> Var {
        Var(slot as u32 + 1)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A literal: a variable or its negation.
///
/// Literals order by variable first, negative before positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    var: Var,
    positive: bool,
}

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit { var, positive }
    }

    pub fn pos(index: u32) -> Lit {
        Lit::new(Var::new(index), true)
    }

    pub fn neg(index: u32) -> Lit {
        Lit::new(Var::new(index), false)
    }

    /// Returns `None` for zero.
    pub fn from_dimacs(value: i64) -> Option<Lit> {
        if value == 0 || value.unsigned_abs() > u32::MAX as u64 {
            return None;
        }
        Some(Lit::new(Var::new(value.unsigned_abs() as u32), value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var.index() as i64;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    /// The value of the variable that makes this literal true.
    pub fn satisfying_value(self) -> bool {
        self.positive
    }

    pub fn is_true_under(self, point: &Point) -> bool {
        point.get(self.var) == self.positive
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit::new(self.var, !self.positive)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var.index())
        } else {
            write!(f, "¬x{}", self.var.index())
        }
    }
}

/// A disjunction of literals over distinct variables, kept sorted by variable.
///
/// Two clauses are equal iff they have the same literal set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    /// Builds a clause, collapsing duplicate literals. A clause containing a
    /// literal and its negation is rejected.
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Result<Clause> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        if let Some(w) = lits.windows(2).find(|w| w[0].var() == w[1].var()) {
            return Err(Error::contract(format!(
                "tautological clause: {} appears in both polarities",
                w[0].var()
            )));
        }
        Ok(Clause { lits })
    }

    pub fn from_dimacs(values: &[i64]) -> Result<Clause> {
        let lits = values
            .iter()
            .map(|&v| Lit::from_dimacs(v).ok_or_else(|| Error::contract("literal 0 inside clause")))
            .collect::<Result<Vec<_>>>()?;
        Clause::new(lits)
    }

    pub fn empty() -> Clause {
        Clause { lits: Vec::new() }
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var())
    }

    /// The literal of `var` in this clause, if any.
    pub fn lit_of(&self, var: Var) -> Option<Lit> {
        self.lits
            .binary_search_by_key(&var, |l| l.var())
            .ok()
            .map(|i| self.lits[i])
    }

    pub fn max_var(&self) -> Option<Var> {
        self.lits.last().map(|l| l.var())
    }

    /// Unchecked evaluation. Panics if a clause variable lies outside the point.
    pub fn is_satisfied_by(&self, point: &Point) -> bool {
        self.lits.iter().any(|l| l.is_true_under(point))
    }

    pub fn is_falsified_by(&self, point: &Point) -> bool {
        !self.is_satisfied_by(point)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        for l in &self.lits {
            s.push_str(&l.to_dimacs().to_string());
            s.push(' ');
        }
        s.push('0');
        s
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return write!(f, "⊥");
        }
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, " ∨ ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Result of evaluating a clause at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluation {
    Satisfied,
    Falsified,
}

/// Checked clause evaluation.
pub fn evaluate_clause(clause: &Clause, point: &Point) -> Result<Evaluation> {
    check_clause_fits(clause, point.len())?;
    Ok(if clause.is_satisfied_by(point) {
        Evaluation::Satisfied
    } else {
        Evaluation::Falsified
    })
}

pub(crate) fn check_clause_fits(clause: &Clause, num_vars: usize) -> Result<()> {
    match clause.max_var() {
        Some(v) if v.index() as usize > num_vars => Err(Error::contract(format!(
            "clause mentions {v} but the space has {num_vars} variables"
        ))),
        _ => Ok(()),
    }
}

/// The variable two clauses clash on, when they clash on exactly one.
pub fn resolvable_on(c1: &Clause, c2: &Clause) -> Option<Var> {
    let (mut i, mut j) = (0, 0);
    let mut clash = None;
    let (a, b) = (c1.lits(), c2.lits());
    while i < a.len() && j < b.len() {
        match a[i].var().cmp(&b[j].var()) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if a[i] != b[j] {
                    if clash.is_some() {
                        return None;
                    }
                    clash = Some(a[i].var());
                }
                i += 1;
                j += 1;
            }
        }
    }
    clash
}

/// Resolvent of `c1` and `c2` on `pivot`.
pub fn resolve(c1: &Clause, c2: &Clause, pivot: Var) -> Result<Clause> {
    if resolvable_on(c1, c2) != Some(pivot) {
        return Err(Error::contract(format!(
            "clauses ({c1}) and ({c2}) are not resolvable on {pivot}"
        )));
    }
    Clause::new(
        c1.lits()
            .iter()
            .chain(c2.lits())
            .copied()
            .filter(|l| l.var() != pivot),
    )
}

/// Stable 1-based clause identifier inside a [`CnfFormula`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClauseId(pub u32);

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A CNF formula over `num_vars` variables.
///
/// Clauses are append-only: ids never change once assigned. Clauses with ids
/// above `original_count` were learned.
#[derive(Clone, Debug, Default)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
    original_count: usize,
    index: HashMap<Clause, ClauseId>,
}

impl PartialEq for CnfFormula {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars
            && self.clauses == other.clauses
            && self.original_count == other.original_count
    }
}

impl Eq for CnfFormula {}

impl CnfFormula {
    pub fn new(num_vars: usize) -> CnfFormula {
        CnfFormula {
            num_vars,
            ..Default::default()
        }
    }

    /// Builds a formula from input clauses (none of them counted as learned).
    pub fn from_clauses(
        num_vars: usize,
        clauses: impl IntoIterator<Item = Clause>,
    ) -> Result<Self> {
        let mut f = CnfFormula::new(num_vars);
        for c in clauses {
            f.add_clause(c)?;
        }
        Ok(f)
    }

    /// Convenience constructor from DIMACS-style integer lists.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| Clause::from_dimacs(c))
            .collect::<Result<Vec<_>>>()?;
        CnfFormula::from_clauses(num_vars, clauses)
    }

    /// Appends an input clause. Only valid before any clause was learned.
    pub fn add_clause(&mut self, clause: Clause) -> Result<ClauseId> {
        if self.original_count != self.clauses.len() {
            return Err(Error::contract(
                "input clauses cannot follow learned clauses",
            ));
        }
        let id = self.push(clause)?;
        self.original_count += 1;
        Ok(id)
    }

    /// Appends a learned clause with a fresh id.
    pub fn add_learned(&mut self, clause: Clause) -> Result<ClauseId> {
        self.push(clause)
    }

    fn push(&mut self, clause: Clause) -> Result<ClauseId> {
        check_clause_fits(&clause, self.num_vars)?;
        let id = ClauseId(self.clauses.len() as u32 + 1);
        self.index.entry(clause.clone()).or_insert(id);
        self.clauses.push(clause);
        Ok(id)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn original_count(&self) -> usize {
        self.original_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Panics on an id that does not belong to this formula.
    pub fn clause(&self, id: ClauseId) -> &Clause {
        &self.clauses[id.0 as usize - 1]
    }

    pub fn get(&self, id: ClauseId) -> Option<&Clause> {
        (id.0 as usize)
            .checked_sub(1)
            .and_then(|i| self.clauses.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = (ClauseId, &Clause)> {
        self.clauses
            .iter()
            .enumerate()
            .map(|(i, c)| (ClauseId(i as u32 + 1), c))
    }

    /// Id of the first clause equal (as a literal set) to `clause`.
    pub fn find(&self, clause: &Clause) -> Option<ClauseId> {
        self.index.get(clause).copied()
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.index.contains_key(clause)
    }

    /// The input clauses only.
    pub fn original(&self) -> CnfFormula {
        let mut f = CnfFormula::new(self.num_vars);
        for c in &self.clauses[..self.original_count] {
            f.add_clause(c.clone()).expect("clause already validated");
        }
        f
    }

    /// Ids of the clauses falsified by `point`, in formula order.
    pub fn falsified_clauses(&self, point: &Point) -> Result<Vec<ClauseId>> {
        self.check_arity(point.len())?;
        Ok(self
            .iter()
            .filter(|(_, c)| c.is_falsified_by(point))
            .map(|(id, _)| id)
            .collect())
    }

    pub fn is_satisfied_by(&self, point: &Point) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied_by(point))
    }

    pub(crate) fn check_arity(&self, len: usize) -> Result<()> {
        if len != self.num_vars {
            return Err(Error::contract(format!(
                "arity mismatch: formula has {} variables, got {len}",
                self.num_vars
            )));
        }
        Ok(())
    }
}

/// A complete assignment to all variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    bits: Vec<bool>,
}

impl Point {
    pub fn zeros(num_vars: usize) -> Point {
        Point {
            bits: vec![false; num_vars],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Point {
        Point { bits }
    }

    /// Parses a bit string such as `"010011"` (value of `x1` first).
    pub fn parse(s: &str) -> Result<Point> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::contract(format!("invalid point character {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Point::from_bits)
    }

    /// Point number `index` in lexicographic order of bit strings (`x1` most significant).
    pub fn from_index(num_vars: usize, index: u64) -> Point {
        Point {
            bits: (0..num_vars)
                .map(|slot| (index >> (num_vars - 1 - slot)) & 1 == 1)
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, var: Var) -> bool {
        self.bits[var.slot()]
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.bits[var.slot()] = value;
    }

    pub fn flipped(&self, var: Var) -> Point {
        let mut p = self.clone();
        p.bits[var.slot()] ^= true;
        p
    }

    pub fn hamming(&self, other: &Point) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// 1-neighborhood of `point` w.r.t. a clause it falsifies: one flipped point
/// per literal, in literal order.
pub fn point_nbhd(point: &Point, clause: &Clause) -> Result<Vec<Point>> {
    if evaluate_clause(clause, point)? == Evaluation::Satisfied {
        return Err(Error::contract(format!(
            "point {point} satisfies ({clause}); its neighborhood is undefined"
        )));
    }
    Ok(clause.vars().map(|v| point.flipped(v)).collect())
}
