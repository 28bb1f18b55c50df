//! Cube coverage queries: is a cube contained in the union of a set of cubes?
//!
//! Both the query and the exact union count work by recursive splitting of
//! the target cube, a DPLL-style search over the complement of the cover.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::cnf::Var;
use crate::cube::{Component, Cube};
use crate::error::{Error, Result};

/// Which covers take part in a coverage query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CoverageScope {
    /// Every cube of the set.
    #[default]
    Full,
    /// Only cubes sharing at least one literal component with the target.
    /// A `Covered` answer is exact; `Uncovered` may be spurious.
    SharedLiteral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CoverageConfig {
    pub scope: CoverageScope,
    /// Maximum number of splits per query, 0 for unlimited.
    pub split_budget: u64,
}

impl CoverageConfig {
    pub fn full() -> CoverageConfig {
        CoverageConfig::default()
    }

    pub fn shared_literal() -> CoverageConfig {
        CoverageConfig {
            scope: CoverageScope::SharedLiteral,
            split_budget: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Covered,
    Uncovered,
    /// The split budget ran out before a decision.
    Unknown,
}

fn shares_literal(a: &Cube, b: &Cube) -> bool {
    a.components()
        .iter()
        .zip(b.components())
        .any(|(x, y)| x.is_literal() && x == y)
}

/// Decides whether `target ⊆ Union(covers)`.
pub fn is_covered<'a>(
    target: &Cube,
    covers: impl IntoIterator<Item = &'a Cube>,
    config: &CoverageConfig,
) -> Result<Coverage> {
    let mut relevant = Vec::new();
    for c in covers {
        if c.num_vars() != target.num_vars() {
            return Err(Error::contract(format!(
                "arity mismatch in coverage query: {} vs {}",
                c.num_vars(),
                target.num_vars()
            )));
        }
        if config.scope == CoverageScope::SharedLiteral && !shares_literal(target, c) {
            continue;
        }
        if c.intersects(target) {
            relevant.push(c);
        }
    }
    let mut budget = Budget {
        left: config.split_budget,
        limited: config.split_budget > 0,
    };
    Ok(match covered_rec(target.clone(), &relevant, &mut budget) {
        Some(true) => Coverage::Covered,
        Some(false) => Coverage::Uncovered,
        None => Coverage::Unknown,
    })
}

struct Budget {
    left: u64,
    limited: bool,
}

impl Budget {
    fn take(&mut self) -> bool {
        if !self.limited {
            return true;
        }
        if self.left == 0 {
            return false;
        }
        self.left -= 1;
        true
    }
}

/// `covers` only holds cubes intersecting `target`.
fn covered_rec(target: Cube, covers: &[&Cube], budget: &mut Budget) -> Option<bool> {
    if covers.is_empty() {
        return Some(false);
    }
    if covers.iter().any(|c| c.contains(&target)) {
        return Some(true);
    }
    let var = split_var(&target, covers);
    if !budget.take() {
        return None;
    }
    let (lo, hi) = target.split(var).expect("split variable is free in target");
    let mut unknown = false;
    for half in [lo, hi] {
        let sub: Vec<&Cube> = covers
            .iter()
            .copied()
            .filter(|c| c.intersects(&half))
            .collect();
        match covered_rec(half, &sub, budget) {
            Some(true) => {}
            Some(false) => return Some(false),
            None => unknown = true,
        }
    }
    if unknown {
        None
    } else {
        Some(true)
    }
}

/// Lowest-index variable free in `target` where the largest cover has a
/// literal. The largest cover does not contain `target`, so such a variable
/// exists.
fn split_var(target: &Cube, covers: &[&Cube]) -> Var {
    let largest = covers
        .iter()
        .min_by_key(|c| c.literal_count())
        .expect("non-empty cover list");
    target
        .components()
        .iter()
        .zip(largest.components())
        .position(|(t, c)| *t == Component::Both && c.is_literal())
        .map(Var::from_slot)
        .expect("an intersecting, non-containing cube fixes a free variable of the target")
}

/// Number of points of `target` outside `Union(covers)`.
pub fn uncovered_count<'a>(target: &Cube, covers: impl IntoIterator<Item = &'a Cube>) -> BigUint {
    let relevant: Vec<&Cube> = covers
        .into_iter()
        .filter(|c| c.intersects(target))
        .collect();
    uncovered_rec(target.clone(), &relevant)
}

fn uncovered_rec(target: Cube, covers: &[&Cube]) -> BigUint {
    if covers.is_empty() {
        return target.point_count();
    }
    if covers.iter().any(|c| c.contains(&target)) {
        return BigUint::zero();
    }
    let var = split_var(&target, covers);
    let (lo, hi) = target.split(var).expect("split variable is free in target");
    [lo, hi]
        .into_iter()
        .map(|half| {
            let sub: Vec<&Cube> = covers
                .iter()
                .copied()
                .filter(|c| c.intersects(&half))
                .collect();
            uncovered_rec(half, &sub)
        })
        .sum()
}

/// Exact `|Union(covers)|`.
pub fn union_count(covers: &[Cube], num_vars: usize) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for (i, c) in covers.iter().enumerate() {
        if c.num_vars() != num_vars {
            return Err(Error::contract("arity mismatch in union count"));
        }
        total += uncovered_count(c, &covers[..i]);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(n: usize, lits: &[i64]) -> Cube {
        Cube::from_dimacs(n, lits).unwrap()
    }

    #[test]
    fn covered_examples() {
        let full = CoverageConfig::full();
        let p1 = cube(4, &[-2, -3]);
        assert_eq!(is_covered(&p1, [&p1], &full).unwrap(), Coverage::Covered);

        let covers = [cube(4, &[-2, -3]), cube(4, &[2, -3])];
        assert_eq!(
            is_covered(&cube(4, &[2, 3]), &covers, &full).unwrap(),
            Coverage::Uncovered
        );
        // the two halves together cover ¬x3
        assert_eq!(
            is_covered(&cube(4, &[-3]), &covers, &full).unwrap(),
            Coverage::Covered
        );
        assert_eq!(
            is_covered(&cube(4, &[1, 2]), [&Cube::full(4)], &full).unwrap(),
            Coverage::Covered
        );
    }

    #[test]
    fn empty_cover() {
        let none: [Cube; 0] = [];
        assert_eq!(
            is_covered(&cube(3, &[1]), &none, &CoverageConfig::full()).unwrap(),
            Coverage::Uncovered
        );
    }

    #[test]
    fn shared_literal_scope_can_miss() {
        let covers = [cube(3, &[-1]), cube(3, &[1])];
        let t = cube(3, &[2]);
        assert_eq!(
            is_covered(&t, &covers, &CoverageConfig::full()).unwrap(),
            Coverage::Covered
        );
        assert_eq!(
            is_covered(&t, &covers, &CoverageConfig::shared_literal()).unwrap(),
            Coverage::Uncovered
        );
    }

    #[test]
    fn budget_exhaustion() {
        let covers = [cube(3, &[-1]), cube(3, &[1])];
        let cfg = CoverageConfig {
            scope: CoverageScope::Full,
            split_budget: 1,
        };
        assert_eq!(
            is_covered(&Cube::full(3), &covers, &cfg).unwrap(),
            Coverage::Covered
        );
        let covers = [cube(3, &[-1]), cube(3, &[1, -2]), cube(3, &[1, 2])];
        assert_eq!(
            is_covered(&Cube::full(3), &covers, &cfg).unwrap(),
            Coverage::Unknown
        );
    }

    #[test]
    fn arity_mismatch() {
        assert!(is_covered(&cube(3, &[1]), [&cube(2, &[1])], &CoverageConfig::full()).is_err());
    }

    #[test]
    fn counts() {
        let covers = [cube(4, &[-2, -3]), cube(4, &[2, -3])];
        assert_eq!(union_count(&covers, 4).unwrap(), BigUint::from(8u32));
        assert_eq!(union_count(&[], 5).unwrap(), BigUint::zero());
        assert_eq!(
            union_count(&[Cube::full(3)], 3).unwrap(),
            BigUint::from(8u32)
        );
        let overlapping = [cube(3, &[1]), cube(3, &[2])];
        assert_eq!(union_count(&overlapping, 3).unwrap(), BigUint::from(6u32));
    }
}
