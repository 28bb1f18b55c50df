//! Cubes: Cartesian products `B_1 × … × B_n` of non-empty subsets of `{0,1}`.
//!
//! A cube doubles as a conjunction of literals over its singleton
//! components, and is the cluster type of the cube-based engine.

use std::fmt;

use num_bigint::BigUint;

use crate::cnf::{check_clause_fits, resolvable_on, resolve, Clause, Lit, Point, Var};
use crate::error::{Error, Result};

/// One component `B_i` of a cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    /// `{0}`
    Zero,
    /// `{1}`
    One,
    /// `{0,1}`
    Both,
}

impl Component {
    pub fn from_value(value: bool) -> Component {
        if value {
            Component::One
        } else {
            Component::Zero
        }
    }

    /// The singleton value, or `None` for `Both`.
    pub fn value(self) -> Option<bool> {
        match self {
            Component::Zero => Some(false),
            Component::One => Some(true),
            Component::Both => None,
        }
    }

    pub fn is_literal(self) -> bool {
        self != Component::Both
    }

    pub fn contains(self, value: bool) -> bool {
        match self.value() {
            Some(v) => v == value,
            None => true,
        }
    }

    /// Subset test on the underlying value sets.
    pub fn is_subset_of(self, other: Component) -> bool {
        other == Component::Both || self == other
    }

    pub fn union(self, other: Component) -> Component {
        if self == other {
            self
        } else {
            Component::Both
        }
    }

    pub fn intersect(self, other: Component) -> Option<Component> {
        match (self, other) {
            (Component::Both, x) | (x, Component::Both) => Some(x),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    comps: Vec<Component>,
}

impl Cube {
    /// The whole space `B^n`.
    pub fn full(num_vars: usize) -> Cube {
        Cube {
            comps: vec![Component::Both; num_vars],
        }
    }

    pub fn from_components(comps: Vec<Component>) -> Cube {
        Cube { comps }
    }

    /// The single-point cube.
    pub fn from_point(point: &Point) -> Cube {
        Cube {
            comps: point
                .bits()
                .iter()
                .map(|&b| Component::from_value(b))
                .collect(),
        }
    }

    /// The cube denoted by a conjunction of literals.
    pub fn from_lits(num_vars: usize, lits: impl IntoIterator<Item = Lit>) -> Result<Cube> {
        let mut cube = Cube::full(num_vars);
        for l in lits {
            let slot = l.var().slot();
            if slot >= num_vars {
                return Err(Error::contract(format!(
                    "literal {l} outside a {num_vars}-variable space"
                )));
            }
            let want = Component::from_value(l.is_positive());
            match cube.comps[slot] {
                Component::Both => cube.comps[slot] = want,
                c if c == want => {}
                _ => {
                    return Err(Error::contract(format!(
                        "conjunction contains both polarities of {}",
                        l.var()
                    )))
                }
            }
        }
        Ok(cube)
    }

    pub fn from_dimacs(num_vars: usize, values: &[i64]) -> Result<Cube> {
        let lits = values
            .iter()
            .map(|&v| Lit::from_dimacs(v).ok_or_else(|| Error::contract("literal 0 inside cube")))
            .collect::<Result<Vec<_>>>()?;
        Cube::from_lits(num_vars, lits)
    }

    /// `Unsat(C)`: every point falsifying `clause`. The empty clause gives the
    /// full cube.
    pub fn unsat_of(clause: &Clause, num_vars: usize) -> Result<Cube> {
        check_clause_fits(clause, num_vars)?;
        let mut cube = Cube::full(num_vars);
        for l in clause.lits() {
            cube.comps[l.var().slot()] = Component::from_value(!l.satisfying_value());
        }
        Ok(cube)
    }

    pub fn num_vars(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.comps
    }

    pub fn component(&self, var: Var) -> Component {
        self.comps[var.slot()]
    }

    /// The literal components as a conjunction, in variable order.
    pub fn literals(&self) -> impl Iterator<Item = Lit> + '_ {
        self.comps
            .iter()
            .enumerate()
            .filter_map(|(slot, c)| c.value().map(|v| Lit::new(Var::from_slot(slot), v)))
    }

    pub fn literal_count(&self) -> usize {
        self.comps.iter().filter(|c| c.is_literal()).count()
    }

    pub fn free_count(&self) -> usize {
        self.comps.len() - self.literal_count()
    }

    pub fn free_vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_literal())
            .map(|(slot, _)| Var::from_slot(slot))
    }

    /// Number of points, `2^(free components)`.
    pub fn point_count(&self) -> BigUint {
        BigUint::from(1u32) << self.free_count()
    }

    pub fn contains_point(&self, point: &Point) -> bool {
        self.comps
            .iter()
            .zip(point.bits())
            .all(|(c, &b)| c.contains(b))
    }

    /// `inner ⊆ self`.
    pub fn contains(&self, inner: &Cube) -> bool {
        debug_assert_eq!(self.comps.len(), inner.comps.len());
        inner
            .comps
            .iter()
            .zip(&self.comps)
            .all(|(i, o)| i.is_subset_of(*o))
    }

    pub fn intersects(&self, other: &Cube) -> bool {
        self.comps
            .iter()
            .zip(&other.comps)
            .all(|(a, b)| a.intersect(*b).is_some())
    }

    pub fn intersection(&self, other: &Cube) -> Option<Cube> {
        self.comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.intersect(*b))
            .collect::<Option<Vec<_>>>()
            .map(Cube::from_components)
    }

    /// Component-wise union: the smallest cube containing both.
    pub fn hull(&self, other: &Cube) -> Cube {
        Cube {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.union(*b))
                .collect(),
        }
    }

    /// `self ⊆ Unsat(clause)`.
    pub fn falsifies(&self, clause: &Clause) -> bool {
        clause
            .lits()
            .iter()
            .all(|l| self.comps[l.var().slot()].value() == Some(!l.satisfying_value()))
    }

    /// Every point of the cube satisfies `clause`.
    pub fn satisfies(&self, clause: &Clause) -> bool {
        clause
            .lits()
            .iter()
            .any(|l| self.comps[l.var().slot()].value() == Some(l.satisfying_value()))
    }

    /// `self ∩ Unsat(clause) ≠ ∅`.
    pub fn meets_unsat(&self, clause: &Clause) -> bool {
        !self.satisfies(clause)
    }

    /// The two halves of the cube on a free variable.
    pub fn split(&self, var: Var) -> Result<(Cube, Cube)> {
        self.check_var(var)?;
        if self.component(var) != Component::Both {
            return Err(Error::contract(format!(
                "cannot split {self} on {var}: component is already a literal"
            )));
        }
        let mut zero = self.clone();
        let mut one = self.clone();
        zero.comps[var.slot()] = Component::Zero;
        one.comps[var.slot()] = Component::One;
        Ok((zero, one))
    }

    /// 1-neighborhood cube in direction `var`: the literal component is
    /// replaced by its complement.
    pub fn nbhd_dir(&self, var: Var) -> Result<Cube> {
        self.check_var(var)?;
        let flipped = match self.component(var) {
            Component::Zero => Component::One,
            Component::One => Component::Zero,
            Component::Both => {
                return Err(Error::contract(format!(
                    "no neighborhood cube of {self} in direction {var}: component is free"
                )))
            }
        };
        let mut out = self.clone();
        out.comps[var.slot()] = flipped;
        Ok(out)
    }

    /// `Nbhd(P, C)`: one neighborhood cube per variable of a falsified clause.
    pub fn nbhd(&self, clause: &Clause) -> Result<Vec<Cube>> {
        check_clause_fits(clause, self.num_vars())?;
        if !self.falsifies(clause) {
            return Err(Error::contract(format!(
                "cube {self} does not falsify ({clause})"
            )));
        }
        clause.vars().map(|v| self.nbhd_dir(v)).collect()
    }

    /// Iterates over all points, in lexicographic order. Exponential; meant for
    /// small cubes and tests.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        let free: Vec<usize> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_literal())
            .map(|(s, _)| s)
            .collect();
        let k = free.len();
        assert!(k < 64, "cube too large to enumerate");
        let base: Vec<bool> = self.comps.iter().map(|c| c.value() == Some(true)).collect();
        (0..(1u64 << k)).map(move |idx| {
            let mut bits = base.clone();
            for (j, &slot) in free.iter().enumerate() {
                bits[slot] = (idx >> (k - 1 - j)) & 1 == 1;
            }
            Point::from_bits(bits)
        })
    }

    /// Signed-literal form, e.g. `-2 -3`; empty for the full cube.
    pub fn to_dimacs(&self) -> String {
        self.literals()
            .map(|l| l.to_dimacs().to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn check_var(&self, var: Var) -> Result<()> {
        if var.slot() >= self.num_vars() {
            return Err(Error::contract(format!(
                "{var} outside a {}-variable cube",
                self.num_vars()
            )));
        }
        Ok(())
    }
}

/// Conjunction form, e.g. `¬x2 x4`; `⊤` for the full cube.
impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for l in self.literals() {
            if any {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
            any = true;
        }
        if !any {
            f.write_str("⊤")?;
        }
        Ok(())
    }
}

/// Merges `p1` (falsifying `c1`) with `p2` (falsifying `c2`) on `pivot`.
///
/// Returns the component-wise union together with the resolvent, or `None`
/// when any precondition fails: the clauses must be resolvable on `pivot`,
/// each cube must falsify its clause, and both cubes must falsify every
/// literal of the resolvent. Under these conditions the union contains both
/// cubes and falsifies the resolvent.
pub fn merge(p1: &Cube, p2: &Cube, pivot: Var, c1: &Clause, c2: &Clause) -> Option<(Cube, Clause)> {
    if p1.num_vars() != p2.num_vars() || pivot.slot() >= p1.num_vars() {
        return None;
    }
    if resolvable_on(c1, c2) != Some(pivot) || !p1.falsifies(c1) || !p2.falsifies(c2) {
        return None;
    }
    let resolvent = resolve(c1, c2, pivot).ok()?;
    if !p1.falsifies(&resolvent) || !p2.falsifies(&resolvent) {
        return None;
    }
    let merged = p1.hull(p2);
    debug_assert!(merged.falsifies(&resolvent));
    Some((merged, resolvent))
}
