//! Permutational symmetry: variable permutations, symmetry checks, orbits
//! of points, and the search for point sets stable modulo a symmetry group.
//!
//! Points are pushed forward along a permutation: `π(p)[π(i)] = p[i]`. With
//! this convention `p` falsifies `C` iff `π(p)` falsifies `π(C)`.

mod modsym;
mod pigeonhole;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::cnf::{Clause, CnfFormula, Lit, Point, Var};
use crate::error::{Error, Result};

pub use modsym::{
    expand_mod_sym_to_ssp, gen_ssp_mod_symmetry, verify_stable_mod_symmetry, ModSymConfig,
};
pub use pigeonhole::{ph_formula, ph_symmetry_generators, PhInstance};

/// Default bound on the number of points visited by one orbit search.
pub const DEFAULT_ORBIT_LIMIT: usize = 1_000_000;

/// A bijection on the variables `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    /// `images[slot]` is the slot `slot` is sent to.
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(num_vars: usize) -> Permutation {
        Permutation {
            images: (0..num_vars).collect(),
        }
    }

    /// From 1-based images: `images[i - 1] = π(x_i)`.
    pub fn from_images(images: &[u32]) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut slots = Vec::with_capacity(n);
        for &img in images {
            let s = (img as usize).wrapping_sub(1);
            if s >= n || seen[s] {
                return Err(Error::contract(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[s] = true;
            slots.push(s);
        }
        Ok(Permutation { images: slots })
    }

    /// Swaps `x_a` and `x_b`.
    pub fn transposition(num_vars: usize, a: Var, b: Var) -> Result<Permutation> {
        if a.slot() >= num_vars || b.slot() >= num_vars {
            return Err(Error::contract(format!(
                "transposition ({a} {b}) outside 1..={num_vars}"
            )));
        }
        let mut p = Permutation::identity(num_vars);
        p.images.swap(a.slot(), b.slot());
        Ok(p)
    }

    /// Parses cycle notation such as `(1 4)(2 5)(3 6)`. An empty string or
    /// `()` is the identity.
    pub fn from_cycles(num_vars: usize, text: &str) -> Result<Permutation> {
        let mut perm = Permutation::identity(num_vars);
        let mut moved = HashSet::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(inner) = rest.strip_prefix('(') else {
                return Err(Error::contract(format!(
                    "expected '(' in cycle notation {text:?}"
                )));
            };
            let Some(close) = inner.find(')') else {
                return Err(Error::contract(format!("unclosed cycle in {text:?}")));
            };
            let cycle = inner[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .ok()
                        .filter(|&v| v >= 1 && v <= num_vars)
                        .ok_or_else(|| Error::contract(format!("bad variable {t:?} in cycle")))
                })
                .collect::<Result<Vec<_>>>()?;
            for (k, &v) in cycle.iter().enumerate() {
                if !moved.insert(v) {
                    return Err(Error::contract(format!(
                        "variable {v} appears twice in {text:?}"
                    )));
                }
                perm.images[v - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
            rest = inner[close + 1..].trim_start();
        }
        Ok(perm)
    }

    pub fn num_vars(&self) -> usize {
        self.images.len()
    }

    pub fn apply_var(&self, var: Var) -> Var {
        Var::from_slot(self.images[var.slot()])
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&s| self.images[s]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `π(p)`, with `π(p)[π(i)] = p[i]`.
    pub fn apply_point(&self, point: &Point) -> Result<Point> {
        if point.len() != self.num_vars() {
            return Err(Error::contract(format!(
                "point of length {} under a permutation of {} variables",
                point.len(),
                self.num_vars()
            )));
        }
        Ok(self.push_point(point))
    }

    pub(crate) fn push_point(&self, point: &Point) -> Point {
        let mut bits = vec![false; point.len()];
        for (i, &b) in point.bits().iter().enumerate() {
            bits[self.images[i]] = b;
        }
        Point::from_bits(bits)
    }

    /// Relabels variables, keeping polarities.
    pub fn apply_clause(&self, clause: &Clause) -> Clause {
        Clause::new(
            clause
                .lits()
                .iter()
                .map(|l| Lit::new(self.apply_var(l.var()), l.is_positive())),
        )
        .expect("relabeling a clause cannot create a tautology")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut done = vec![false; self.images.len()];
        let mut any = false;
        for start in 0..self.images.len() {
            if done[start] || self.images[start] == start {
                continue;
            }
            f.write_str("(")?;
            let mut s = start;
            let mut first = true;
            while !done[s] {
                done[s] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{}", s + 1)?;
                first = false;
                s = self.images[s];
            }
            f.write_str(")")?;
            any = true;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// `π(F)` equals `F` as a multiset of clauses.
pub fn is_symmetric(formula: &CnfFormula, perm: &Permutation) -> bool {
    if perm.num_vars() != formula.num_vars() {
        return false;
    }
    let mut counts: HashMap<&Clause, i64> = HashMap::new();
    for c in formula.clauses() {
        *counts.entry(c).or_default() += 1;
    }
    let mut images: HashMap<Clause, i64> = HashMap::new();
    for c in formula.clauses() {
        *images.entry(perm.apply_clause(c)).or_default() += 1;
    }
    images.len() == counts.len()
        && images
            .iter()
            .all(|(c, k)| counts.get(c).copied() == Some(*k))
}

/// A permutation group given by generators; the identity is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    num_vars: usize,
    generators: Vec<Permutation>,
}

/// Three-valued answer of a bounded orbit search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitAnswer {
    Yes,
    No,
    Unknown,
}

impl SymmetryGroup {
    pub fn new(num_vars: usize, generators: Vec<Permutation>) -> Result<SymmetryGroup> {
        if let Some(g) = generators.iter().find(|g| g.num_vars() != num_vars) {
            return Err(Error::contract(format!(
                "generator {g} acts on {} variables, expected {num_vars}",
                g.num_vars()
            )));
        }
        Ok(SymmetryGroup {
            num_vars,
            generators,
        })
    }

    pub fn trivial(num_vars: usize) -> SymmetryGroup {
        SymmetryGroup {
            num_vars,
            generators: Vec::new(),
        }
    }

    /// One permutation per non-empty, non-comment line in cycle notation.
    pub fn parse(num_vars: usize, text: &str) -> Result<SymmetryGroup> {
        let mut gens = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
                continue;
            }
            let perm = Permutation::from_cycles(num_vars, line).map_err(|e| match e {
                Error::Contract(msg) => Error::parse(i + 1, msg),
                other => other,
            })?;
            gens.push(perm);
        }
        SymmetryGroup::new(num_vars, gens)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Cycle notation, one generator per line.
    pub fn to_text(&self) -> String {
        self.generators.iter().map(|g| format!("{g}\n")).collect()
    }

    /// Breadth-first orbit of `point`, each member paired with a group
    /// element mapping `point` onto it. Fails once more than `limit` points
    /// have been reached.
    pub fn orbit_with_maps(
        &self,
        point: &Point,
        limit: usize,
    ) -> Result<Vec<(Point, Permutation)>> {
        let mut seen: HashSet<Point> = HashSet::from([point.clone()]);
        let mut out = vec![(point.clone(), Permutation::identity(self.num_vars))];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &self.generators {
                let q = g.push_point(&out[i].0);
                if seen.insert(q.clone()) {
                    if out.len() >= limit {
                        return Err(Error::OrbitOverflow { limit });
                    }
                    let map = g.compose(&out[i].1);
                    out.push((q, map));
                    queue.push_back(out.len() - 1);
                }
            }
        }
        Ok(out)
    }

    /// Visits orbit members until `stop` returns true. Returns `Some(true)`
    /// if stopped, `Some(false)` if the orbit was exhausted, `None` when the
    /// limit was hit first.
    pub(crate) fn search_orbit(
        &self,
        point: &Point,
        limit: usize,
        mut stop: impl FnMut(&Point) -> bool,
    ) -> Option<bool> {
        if stop(point) {
            return Some(true);
        }
        let mut seen: HashSet<Point> = HashSet::from([point.clone()]);
        let mut queue = VecDeque::from([point.clone()]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.push_point(&p);
                if seen.contains(&q) {
                    continue;
                }
                if stop(&q) {
                    return Some(true);
                }
                if seen.len() >= limit {
                    return None;
                }
                seen.insert(q.clone());
                queue.push_back(q);
            }
        }
        Some(false)
    }

    /// Size of the group itself, by orbit search on the permutations.
    /// Exponential; intended for small groups.
    pub fn order(&self, limit: usize) -> Option<usize> {
        let id = Permutation::identity(self.num_vars);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.compose(&p);
                if seen.insert(q.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    queue.push_back(q);
                }
            }
        }
        Some(seen.len())
    }
}

/// Are `p1` and `p2` in the same orbit? Explores at most `limit` points.
pub fn in_same_orbit(p1: &Point, p2: &Point, group: &SymmetryGroup, limit: usize) -> OrbitAnswer {
    if p1.len() != p2.len() {
        return OrbitAnswer::No;
    }
    match group.search_orbit(p1, limit.max(1), |q| q == p2) {
        Some(true) => OrbitAnswer::Yes,
        Some(false) => OrbitAnswer::No,
        None => OrbitAnswer::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Point {
        Point::parse(s).unwrap()
    }

    #[test]
    fn cycles_round_trip() {
        let p = Permutation::from_cycles(6, "(1 4)(2 5)(3 6)").unwrap();
        assert_eq!(p.apply_var(Var::new(1)), Var::new(4));
        assert_eq!(p.apply_var(Var::new(6)), Var::new(3));
        assert_eq!(p.to_string(), "(1 4)(2 5)(3 6)");
        let q = Permutation::from_cycles(4, "(1 2 3)").unwrap();
        assert_eq!(q.to_string(), "(1 2 3)");
        assert_eq!(
            Permutation::from_cycles(3, "").unwrap(),
            Permutation::identity(3)
        );
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(Permutation::from_cycles(3, "(1 4)").is_err());
        assert!(Permutation::from_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::from_cycles(3, "(1 2").is_err());
    }

    #[test]
    fn point_action() {
        let id = Permutation::identity(4);
        assert_eq!(id.apply_point(&pt("1011")).unwrap(), pt("1011"));
        let swap = Permutation::transposition(3, Var::new(1), Var::new(2)).unwrap();
        assert_eq!(swap.apply_point(&pt("100")).unwrap(), pt("010"));
        let cyc = Permutation::from_cycles(3, "(1 2 3)").unwrap();
        // value of x1 moves to x2, x2 to x3, x3 to x1
        assert_eq!(cyc.apply_point(&pt("100")).unwrap(), pt("010"));
        assert_eq!(cyc.apply_point(&pt("001")).unwrap(), pt("100"));
        assert!(cyc.apply_point(&pt("10")).is_err());
    }

    #[test]
    fn clause_action() {
        let swap = Permutation::transposition(3, Var::new(1), Var::new(2)).unwrap();
        let c = Clause::from_dimacs(&[1, -3]).unwrap();
        assert_eq!(
            swap.apply_clause(&c),
            Clause::from_dimacs(&[2, -3]).unwrap()
        );
        assert_eq!(Permutation::identity(3).apply_clause(&c), c);
    }

    #[test]
    fn symmetry_check() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1]]).unwrap();
        let swap = Permutation::transposition(2, Var::new(1), Var::new(2)).unwrap();
        assert!(!is_symmetric(&f, &swap));
        let g = CnfFormula::from_dimacs_clauses(2, &[&[1], &[2], &[-1, -2]]).unwrap();
        assert!(is_symmetric(&g, &swap));
        // multiset, not set: a duplicated clause must map onto a duplicate
        let h = CnfFormula::from_dimacs_clauses(2, &[&[1], &[1], &[2]]).unwrap();
        assert!(!is_symmetric(&h, &swap));
    }

    #[test]
    fn orbits() {
        let swap = Permutation::transposition(2, Var::new(1), Var::new(2)).unwrap();
        let g = SymmetryGroup::new(2, vec![swap]).unwrap();
        assert_eq!(
            in_same_orbit(&pt("10"), &pt("01"), &g, 100),
            OrbitAnswer::Yes
        );
        assert_eq!(
            in_same_orbit(&pt("10"), &pt("10"), &g, 100),
            OrbitAnswer::Yes
        );
        assert_eq!(
            in_same_orbit(&pt("00"), &pt("11"), &g, 100),
            OrbitAnswer::No
        );

        let gens = (1..6)
            .map(|i| Permutation::transposition(6, Var::new(i), Var::new(i + 1)).unwrap())
            .collect();
        let s6 = SymmetryGroup::new(6, gens).unwrap();
        // orbit of 111000 under S6 has 20 points
        assert_eq!(s6.orbit_with_maps(&pt("111000"), 100).unwrap().len(), 20);
        assert!(matches!(
            s6.orbit_with_maps(&pt("111000"), 10),
            Err(Error::OrbitOverflow { .. })
        ));
        assert_eq!(
            in_same_orbit(&pt("111000"), &pt("000111"), &s6, 3),
            OrbitAnswer::Unknown
        );
        assert_eq!(s6.order(1000), Some(720));
    }

    #[test]
    fn orbit_maps_are_correct() {
        let gens = vec![
            Permutation::from_cycles(4, "(1 2 3 4)").unwrap(),
            Permutation::from_cycles(4, "(1 2)").unwrap(),
        ];
        let g = SymmetryGroup::new(4, gens).unwrap();
        let p = pt("1100");
        for (q, map) in g.orbit_with_maps(&p, 100).unwrap() {
            assert_eq!(map.apply_point(&p).unwrap(), q);
        }
    }

    #[test]
    fn parse_group_file() {
        let g = SymmetryGroup::parse(6, "c comment\n(1 4)(2 5)(3 6)\n\n(1 2)(4 5)\n").unwrap();
        assert_eq!(g.generators().len(), 2);
        assert_eq!(g.to_text(), "(1 4)(2 5)(3 6)\n(1 2)(4 5)\n");
        assert!(matches!(
            SymmetryGroup::parse(3, "(1 2)\n(1 9)\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
