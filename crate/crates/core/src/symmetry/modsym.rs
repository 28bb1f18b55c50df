use std::collections::{HashMap, HashSet};

use crate::cnf::{ClauseId, CnfFormula, Point};
use crate::error::{Error, Result};
use crate::ssp::{gen_ssp_filtered, transport_clause, SspConfig, SspResult, Violation};

use super::{is_symmetric, SymmetryGroup, DEFAULT_ORBIT_LIMIT};

#[derive(Clone, Debug)]
pub struct ModSymConfig {
    pub ssp: SspConfig,
    /// Node bound for each orbit search.
    pub orbit_limit: usize,
}

impl Default for ModSymConfig {
    fn default() -> Self {
        ModSymConfig {
            ssp: SspConfig::default(),
            orbit_limit: DEFAULT_ORBIT_LIMIT,
        }
    }
}

fn check_group(formula: &CnfFormula, group: &SymmetryGroup) -> Result<(), Violation> {
    if group.num_vars() != formula.num_vars() {
        return Err(Violation::Arity {
            element: "symmetry group".into(),
        });
    }
    match group
        .generators()
        .iter()
        .find(|g| !is_symmetric(formula, g))
    {
        Some(g) => Err(Violation::NotSymmetric {
            generator: g.to_string(),
        }),
        None => Ok(()),
    }
}

/// Point-by-point search that skips a neighborhood point whenever a point
/// symmetric to it has already been reached.
///
/// An `Unsatisfiable` outcome carries a set that is stable modulo `group`,
/// not a plain stable set; see [`expand_mod_sym_to_ssp`].
pub fn gen_ssp_mod_symmetry(
    formula: &CnfFormula,
    group: &SymmetryGroup,
    init: &Point,
    config: &ModSymConfig,
) -> Result<SspResult> {
    check_group(formula, group).map_err(|v| Error::contract(v.to_string()))?;
    let limit = config.orbit_limit.max(1);
    gen_ssp_filtered(formula, init, &config.ssp, |q, known| {
        // An inconclusive search admits the point: that only costs work.
        group.search_orbit(q, limit, |r| known.contains(r)) != Some(true)
    })
}

/// Checks stability modulo `group`: every neighborhood point is either in
/// the set or symmetric to a member. The generators must be symmetries of
/// the formula, and an orbit search hitting `limit` fails the check.
pub fn verify_stable_mod_symmetry(
    formula: &CnfFormula,
    points: &[Point],
    transport: &HashMap<Point, ClauseId>,
    group: &SymmetryGroup,
    limit: usize,
) -> Result<(), Violation> {
    if points.is_empty() {
        return Err(Violation::Empty);
    }
    check_group(formula, group)?;
    let members: HashSet<&Point> = points.iter().collect();
    for p in points {
        if p.len() != formula.num_vars() {
            return Err(Violation::Arity {
                element: p.to_string(),
            });
        }
        let (id, clause) = transport_clause(formula, p, transport.get(p))?;
        if !clause.is_falsified_by(p) {
            return Err(Violation::NotFalsified {
                element: p.to_string(),
                clause: id,
            });
        }
        for v in clause.vars() {
            let q = p.flipped(v);
            match group.search_orbit(&q, limit.max(1), |r| members.contains(r)) {
                Some(true) => {}
                Some(false) => {
                    return Err(Violation::Escapes {
                        element: p.to_string(),
                        clause: id,
                        neighbor: q.to_string(),
                    })
                }
                None => {
                    return Err(Violation::OrbitLimit {
                        neighbor: q.to_string(),
                    })
                }
            }
        }
    }
    Ok(())
}

/// Closes a set stable modulo symmetry under the group. A point `π(p)`
/// receives the transport clause `π(g(p))`. Fails with
/// [`Error::OrbitOverflow`] when more than `limit` points would be produced.
pub fn expand_mod_sym_to_ssp(
    formula: &CnfFormula,
    points: &[Point],
    transport: &HashMap<Point, ClauseId>,
    group: &SymmetryGroup,
    limit: usize,
) -> Result<(Vec<Point>, HashMap<Point, ClauseId>)> {
    check_group(formula, group).map_err(|v| Error::contract(v.to_string()))?;
    let mut out = Vec::new();
    let mut g = HashMap::new();
    for p in points {
        if g.contains_key(p) {
            continue;
        }
        let (id, clause) = transport_clause(formula, p, transport.get(p))
            .map_err(|v| Error::contract(v.to_string()))?;
        let remaining = limit.saturating_sub(out.len());
        let orbit = group
            .orbit_with_maps(p, remaining)
            .map_err(|_| Error::OrbitOverflow { limit })?;
        for (q, map) in orbit {
            if g.contains_key(&q) {
                continue;
            }
            if out.len() >= limit {
                return Err(Error::OrbitOverflow { limit });
            }
            let image = map.apply_clause(clause);
            let image_id = if map.is_identity() {
                id
            } else {
                formula.find(&image).ok_or_else(|| {
                    Error::contract(format!("permuted clause ({image}) is not in the formula"))
                })?
            };
            g.insert(q.clone(), image_id);
            out.push(q);
        }
    }
    Ok((out, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ssp::{gen_ssp, verify_ssp, SspOutcome};
    use crate::symmetry::{ph_formula, ph_symmetry_generators};

    fn unsat(r: SspResult) -> (Vec<Point>, HashMap<Point, ClauseId>) {
        match r.outcome {
            SspOutcome::Unsatisfiable { points, transport } => (points, transport),
            other => panic!("expected UNSAT, got {other:?}"),
        }
    }

    #[test]
    fn ph21_round_trip() {
        let (f, inst) = ph_formula(2, 1);
        let group = ph_symmetry_generators(&inst);
        let r =
            gen_ssp_mod_symmetry(&f, &group, &Point::zeros(2), &ModSymConfig::default()).unwrap();
        let (pts, g) = unsat(r);
        assert_eq!(
            verify_stable_mod_symmetry(&f, &pts, &g, &group, 1000),
            Ok(())
        );

        let (all, all_g) = expand_mod_sym_to_ssp(&f, &pts, &g, &group, 1000).unwrap();
        assert_eq!(verify_ssp(&f, &all, &all_g), Ok(()));
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn removing_a_reached_point_breaks_it() {
        let (f, inst) = ph_formula(3, 2);
        let group = ph_symmetry_generators(&inst);
        let r =
            gen_ssp_mod_symmetry(&f, &group, &Point::zeros(6), &ModSymConfig::default()).unwrap();
        let (pts, g) = unsat(r);
        // The start point may have no predecessor; every later point was
        // admitted because no symmetric copy was present.
        assert_eq!(pts[0], Point::zeros(6));
        for skip in 1..pts.len() {
            let fewer: Vec<Point> = pts
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, p)| p.clone())
                .collect();
            assert!(verify_stable_mod_symmetry(&f, &fewer, &g, &group, 1000).is_err());
        }
    }

    #[test]
    fn trivial_group_matches_plain_search() {
        let (f, _) = ph_formula(3, 2);
        let trivial = SymmetryGroup::trivial(6);
        let a =
            gen_ssp_mod_symmetry(&f, &trivial, &Point::zeros(6), &ModSymConfig::default()).unwrap();
        let b = gen_ssp(&f, &Point::zeros(6), &SspConfig::default()).unwrap();
        assert_eq!(a.outcome, b.outcome);
        let (pts, g) = unsat(b);
        assert_eq!(
            verify_stable_mod_symmetry(&f, &pts, &g, &trivial, 10),
            Ok(())
        );
        let (same, same_g) = expand_mod_sym_to_ssp(&f, &pts, &g, &trivial, 1 << 10).unwrap();
        assert_eq!(same, pts);
        assert_eq!(same_g, g);
    }

    #[test]
    fn non_symmetry_rejected() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1]]).unwrap();
        let swap =
            super::super::Permutation::transposition(2, crate::Var::new(1), crate::Var::new(2))
                .unwrap();
        let group = SymmetryGroup::new(2, vec![swap]).unwrap();
        assert!(
            gen_ssp_mod_symmetry(&f, &group, &Point::zeros(2), &ModSymConfig::default()).is_err()
        );
    }

    #[test]
    fn expansion_overflow() {
        let (f, inst) = ph_formula(4, 3);
        let group = ph_symmetry_generators(&inst);
        let r =
            gen_ssp_mod_symmetry(&f, &group, &Point::zeros(12), &ModSymConfig::default()).unwrap();
        let (pts, g) = unsat(r);
        assert!(matches!(
            expand_mod_sym_to_ssp(&f, &pts, &g, &group, 64),
            Err(Error::OrbitOverflow { limit: 64 })
        ));
        let (all, all_g) = expand_mod_sym_to_ssp(&f, &pts, &g, &group, 1 << 12).unwrap();
        assert_eq!(verify_ssp(&f, &all, &all_g), Ok(()));
    }
}
