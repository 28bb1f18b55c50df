use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;

use ssc_sat::dimacs::{parse_dimacs, to_dimacs_string};
use ssc_sat::symmetry::Permutation;
use ssc_sat::{
    is_covered, merge, point_nbhd, resolvable_on, resolve, union_count, Clause, CnfFormula,
    Component, Coverage, CoverageConfig, Cube, Lit, Point, Var,
};

fn point(n: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(any::<bool>(), n).prop_map(Point::from_bits)
}

fn component() -> impl Strategy<Value = Component> {
    prop_oneof![
        Just(Component::Zero),
        Just(Component::One),
        Just(Component::Both)
    ]
}

fn cube(n: usize) -> impl Strategy<Value = Cube> {
    prop::collection::vec(component(), n).prop_map(Cube::from_components)
}

/// A clause over `1..=n` given as one optional sign per variable.
fn clause(n: usize) -> impl Strategy<Value = Clause> {
    prop::collection::vec(prop::option::of(any::<bool>()), n).prop_map(|signs| {
        Clause::new(
            signs
                .into_iter()
                .enumerate()
                .filter_map(|(i, s)| s.map(|pos| Lit::new(Var::from_slot(i), pos))),
        )
        .unwrap()
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn all_points(n: usize) -> impl Iterator<Item = Point> {
    (0..1u64 << n).map(move |i| Point::from_index(n, i))
}

fn point_set(cube: &Cube) -> BTreeSet<String> {
    cube.points().map(|p| p.to_string()).collect()
}

/// A point and a clause it falsifies.
fn point_and_falsified_clause(max_n: usize) -> impl Strategy<Value = (Point, Clause)> {
    (1..=max_n).prop_flat_map(|n| {
        (point(n), prop::collection::vec(any::<bool>(), n)).prop_map(|(p, chosen)| {
            let lits = chosen.iter().enumerate().filter(|(_, &c)| c).map(|(i, _)| {
                let v = Var::from_slot(i);
                Lit::new(v, !p.get(v))
            });
            let c = Clause::new(lits).unwrap();
            (p, c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn neighborhood_commutes_with_permutation(
        (p, c, pi) in point_and_falsified_clause(8)
            .prop_flat_map(|(p, c)| { let n = p.len(); (Just(p), Just(c), permutation(n)) })
    ) {
        let image: HashSet<Point> = point_nbhd(&p, &c).unwrap().iter().map(|q| pi.apply_point(q).unwrap()).collect();
        let moved: HashSet<Point> = point_nbhd(&pi.apply_point(&p).unwrap(), &pi.apply_clause(&c))
            .unwrap()
            .into_iter()
            .collect();
        prop_assert_eq!(image, moved);
    }

    #[test]
    fn permutation_preserves_falsification(
        (p, c, pi) in (1usize..=8).prop_flat_map(|n| (point(n), clause(n), permutation(n)))
    ) {
        let q = pi.apply_point(&p).unwrap();
        prop_assert_eq!(c.is_falsified_by(&p), pi.apply_clause(&c).is_falsified_by(&q));
    }

    #[test]
    fn composition_acts_in_order(
        (p, a, b) in (1usize..=8).prop_flat_map(|n| (point(n), permutation(n), permutation(n)))
    ) {
        let direct = a.apply_point(&b.apply_point(&p).unwrap()).unwrap();
        prop_assert_eq!(a.compose(&b).apply_point(&p).unwrap(), direct);
        prop_assert_eq!(a.inverse().apply_point(&a.apply_point(&p).unwrap()).unwrap(), p.clone());
        prop_assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn unsat_cube_is_the_falsifying_set((n, c) in (1usize..=6).prop_flat_map(|n| (Just(n), clause(n)))) {
        let u = Cube::unsat_of(&c, n).unwrap();
        let expect: BTreeSet<String> = all_points(n).filter(|p| c.is_falsified_by(p)).map(|p| p.to_string()).collect();
        prop_assert_eq!(point_set(&u), expect);
        prop_assert!(u.falsifies(&c));
    }

    #[test]
    fn falsifies_and_satisfies_agree_with_points(
        (q, c) in (1usize..=6).prop_flat_map(|n| (cube(n), clause(n)))
    ) {
        prop_assert_eq!(q.falsifies(&c), q.points().all(|p| c.is_falsified_by(&p)));
        prop_assert_eq!(q.satisfies(&c), q.points().all(|p| c.is_satisfied_by(&p)));
    }

    #[test]
    fn split_partitions((q, slot) in (1usize..=6).prop_flat_map(|n| (cube(n), 0..n))) {
        let v = Var::from_slot(slot);
        match q.split(v) {
            Ok((lo, hi)) => {
                prop_assert_eq!(q.component(v), Component::Both);
                let (a, b) = (point_set(&lo), point_set(&hi));
                prop_assert!(a.is_disjoint(&b));
                prop_assert_eq!(a.union(&b).cloned().collect::<BTreeSet<_>>(), point_set(&q));
            }
            Err(_) => prop_assert!(q.component(v).is_literal()),
        }
    }

    #[test]
    fn nbhd_dir_flips_every_point((q, slot) in (1usize..=6).prop_flat_map(|n| (cube(n), 0..n))) {
        let v = Var::from_slot(slot);
        match q.nbhd_dir(v) {
            Ok(r) => {
                let flipped: BTreeSet<String> = q.points().map(|p| p.flipped(v).to_string()).collect();
                prop_assert_eq!(point_set(&r), flipped);
                prop_assert_eq!(r.nbhd_dir(v).unwrap(), q.clone());
            }
            Err(_) => prop_assert_eq!(q.component(v), Component::Both),
        }
    }

    #[test]
    fn coverage_matches_enumeration(
        (target, covers) in (1usize..=6).prop_flat_map(|n| (cube(n), prop::collection::vec(cube(n), 0..6)))
    ) {
        let n = target.num_vars();
        let inside = |p: &Point| covers.iter().any(|c| c.contains_point(p));
        let truth = target.points().all(|p| inside(&p));
        let full = is_covered(&target, &covers, &CoverageConfig::full()).unwrap();
        prop_assert_eq!(full == Coverage::Covered, truth);
        prop_assert_ne!(full, Coverage::Unknown);
        let shared = is_covered(&target, &covers, &CoverageConfig::shared_literal()).unwrap();
        if shared == Coverage::Covered {
            prop_assert!(truth);
        }
        let count = all_points(n).filter(|p| inside(p)).count();
        prop_assert_eq!(union_count(&covers, n).unwrap(), count.into());
    }

    #[test]
    fn merge_falsifies_the_resolvent(
        (n, c1, c2, p1, p2) in (2usize..=6).prop_flat_map(|n| (Just(n), clause(n), clause(n), cube(n), cube(n)))
    ) {
        let Some(pivot) = resolvable_on(&c1, &c2) else { return Ok(()) };
        let resolvent = resolve(&c1, &c2, pivot).unwrap();
        // Any point satisfying both antecedents satisfies the resolvent.
        for p in all_points(n) {
            if c1.is_satisfied_by(&p) && c2.is_satisfied_by(&p) {
                prop_assert!(resolvent.is_satisfied_by(&p));
            }
        }
        // Force the preconditions onto random cubes.
        let force = |cube: &Cube, c: &Clause| {
            let mut comps = cube.components().to_vec();
            for l in c.lits() {
                comps[l.var().slot()] = Component::from_value(!l.is_positive());
            }
            Cube::from_components(comps)
        };
        let (q1, q2) = (force(&force(&p1, &c1), &resolvent), force(&force(&p2, &c2), &resolvent));
        let (m, r) = merge(&q1, &q2, pivot, &c1, &c2).expect("preconditions hold");
        prop_assert_eq!(&r, &resolvent);
        prop_assert!(m.falsifies(&resolvent));
        prop_assert!(m.contains(&q1) && m.contains(&q2));
    }

    #[test]
    fn dimacs_round_trip((n, clauses) in (1usize..=8).prop_flat_map(|n| (Just(n), prop::collection::vec(clause(n), 0..12)))) {
        let f = CnfFormula::from_clauses(n, clauses).unwrap();
        let back = parse_dimacs(&to_dimacs_string(&f)).unwrap();
        prop_assert!(back.warnings.is_empty());
        prop_assert_eq!(back.formula, f);
    }
}
