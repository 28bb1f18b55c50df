//! Construction of stable sets of clusters where every cluster is a cube.
//!
//! The engine keeps a boundary of cubes awaiting expansion and a body of
//! expanded cubes. A popped cube that falsifies no clause is split; one that
//! falsifies a clause is first offered for merging with a boundary cube
//! (learning the resolvent of the two falsified clauses), and otherwise has
//! its neighborhood cubes added to the boundary before it joins the body.
//! When the boundary runs dry the body is a certificate of
//! unsatisfiability.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::cnf::{Clause, ClauseId, CnfFormula, Point, Var};
use crate::coverage::{is_covered, uncovered_count, Coverage, CoverageConfig};
use crate::cube::{merge, Component, Cube};
use crate::error::{Error, Result};
use crate::ssp::{transport_clause, ClausePick, PopPolicy, Violation};
use crate::trace::{TraceEvent, TraceRecord, Tracer};
use crate::Verdict;

/// How the boundary is seeded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InitStrategy {
    /// A single cube; `None` means the whole space.
    SingleCube(Option<Cube>),
    /// One cube `Unsat(C)` per input clause, in formula order.
    NeStyle,
}

impl Default for InitStrategy {
    fn default() -> Self {
        InitStrategy::SingleCube(None)
    }
}

/// Choice of the variable a clause-free cube is split on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SplitHeuristic {
    /// Lowest-index free variable occurring in some clause that meets the cube.
    #[default]
    FirstIntersecting,
    /// Lowest-index free variable of the meeting clause with the fewest free
    /// variables (the one closest to being falsified).
    MostConstrained,
}

#[derive(Clone, Debug)]
pub struct SscConfig {
    pub init: InitStrategy,
    pub pop: PopPolicy,
    pub clause_pick: ClausePick,
    pub split: SplitHeuristic,
    pub merge_enabled: bool,
    pub coverage: CoverageConfig,
    pub trace: bool,
    /// Record `|Union(Body)| + |F|` after every iteration.
    pub track_xi: bool,
    pub max_iterations: Option<u64>,
}

impl Default for SscConfig {
    fn default() -> Self {
        SscConfig {
            init: InitStrategy::default(),
            pop: PopPolicy::Fifo,
            clause_pick: ClausePick::First,
            split: SplitHeuristic::FirstIntersecting,
            merge_enabled: true,
            coverage: CoverageConfig::full(),
            trace: false,
            track_xi: true,
            max_iterations: None,
        }
    }
}

/// A clause derived by one resolution step while merging.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LearnedClause {
    pub id: ClauseId,
    pub clause: Clause,
    pub antecedents: [ClauseId; 2],
    pub pivot: Var,
}

/// One sample of the progress measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiSample {
    pub iteration: u64,
    pub body_points: BigUint,
    pub clauses: usize,
}

impl XiSample {
    pub fn xi(&self) -> BigUint {
        &self.body_points + BigUint::from(self.clauses)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SscOutcome {
    /// Every point of the cube satisfies the formula.
    Satisfiable(Cube),
    /// `body` in insertion order; `transport` maps each body cube to a clause
    /// of the extended formula it falsifies.
    Unsatisfiable {
        body: Vec<Cube>,
        transport: HashMap<Cube, ClauseId>,
    },
}

#[derive(Clone, Debug)]
pub struct SscResult {
    pub outcome: SscOutcome,
    /// Input clauses followed by the learned ones.
    pub formula: CnfFormula,
    pub learned: Vec<LearnedClause>,
    pub iterations: u64,
    pub xi_log: Vec<XiSample>,
    pub trace: Vec<TraceRecord>,
}

impl SscResult {
    pub fn verdict(&self) -> Verdict {
        match self.outcome {
            SscOutcome::Satisfiable(_) => Verdict::Sat,
            SscOutcome::Unsatisfiable { .. } => Verdict::Unsat,
        }
    }
}

/// A successful pairwise merge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeOutcome {
    /// The popped cube followed by its partner.
    pub merged: Vec<Cube>,
    pub cube: Cube,
    pub clause: Clause,
    pub antecedents: [ClauseId; 2],
    pub pivot: Var,
}

/// Looks for a boundary cube that merges with `p`.
///
/// Partners are scanned in boundary order; for each, the clauses falsified by
/// `p` are tried in formula order against the partner's falsified clauses.
/// Only merges whose resolvent is not yet in `formula` are accepted.
pub fn merge_cubes<'a>(
    boundary: impl IntoIterator<Item = &'a Cube>,
    p: &Cube,
    formula: &CnfFormula,
) -> Option<MergeOutcome> {
    let own: Vec<(ClauseId, &Clause)> = formula.iter().filter(|(_, c)| p.falsifies(c)).collect();
    if own.is_empty() {
        return None;
    }
    for q in boundary {
        if q == p || q.num_vars() != p.num_vars() {
            continue;
        }
        // The partner must carry the opposite literal on some variable of a
        // clause falsified by `p`.
        let opposite = |c: &Clause| {
            c.lits()
                .iter()
                .any(|l| q.component(l.var()) == Component::from_value(l.satisfying_value()))
        };
        if !own.iter().any(|(_, c)| opposite(c)) {
            continue;
        }
        let theirs: Vec<(ClauseId, &Clause)> =
            formula.iter().filter(|(_, c)| q.falsifies(c)).collect();
        for (id1, c1) in &own {
            for l in c1.lits() {
                if q.component(l.var()) != Component::from_value(l.satisfying_value()) {
                    continue;
                }
                for (id2, c2) in &theirs {
                    if c2.lit_of(l.var()) != Some(!*l) {
                        continue;
                    }
                    if let Some((cube, clause)) = merge(p, q, l.var(), c1, c2) {
                        if formula.contains(&clause) {
                            continue;
                        }
                        return Some(MergeOutcome {
                            merged: vec![p.clone(), q.clone()],
                            cube,
                            clause,
                            antecedents: [*id1, *id2],
                            pivot: l.var(),
                        });
                    }
                }
            }
        }
    }
    None
}

/// Split variable under the default heuristic.
pub fn pick_split_var(cube: &Cube, formula: &CnfFormula) -> Result<Var> {
    pick_split_var_with(cube, formula, SplitHeuristic::default())
}

pub fn pick_split_var_with(
    cube: &Cube,
    formula: &CnfFormula,
    heuristic: SplitHeuristic,
) -> Result<Var> {
    let free_in = |c: &Clause| -> Vec<Var> {
        c.vars()
            .filter(|v| cube.component(*v) == Component::Both)
            .collect()
    };
    let meeting = formula.clauses().iter().filter(|c| cube.meets_unsat(c));
    let chosen = match heuristic {
        SplitHeuristic::FirstIntersecting => meeting.flat_map(free_in).min(),
        SplitHeuristic::MostConstrained => meeting
            .map(free_in)
            .filter(|vs| !vs.is_empty())
            .min_by_key(|vs| vs.len())
            .and_then(|vs| vs.into_iter().min()),
    };
    chosen.ok_or_else(|| {
        Error::contract(format!(
            "cube {cube} has no free variable in a clause it meets; nothing to split"
        ))
    })
}

struct Engine<'c> {
    config: &'c SscConfig,
    formula: CnfFormula,
    boundary: VecDeque<Cube>,
    in_boundary: HashSet<Cube>,
    body: Vec<Cube>,
    transport: HashMap<Cube, ClauseId>,
    learned: Vec<LearnedClause>,
    body_points: BigUint,
    xi_log: Vec<XiSample>,
    tracer: Tracer,
}

impl Engine<'_> {
    fn pop(&mut self) -> Option<Cube> {
        let p = match self.config.pop {
            PopPolicy::Fifo => self.boundary.pop_front(),
            PopPolicy::Lifo => self.boundary.pop_back(),
        }?;
        self.in_boundary.remove(&p);
        Some(p)
    }

    /// Puts cubes where the popped cube was, so they are popped next.
    fn push_in_place(&mut self, cubes: Vec<Cube>) {
        match self.config.pop {
            PopPolicy::Fifo => {
                for c in cubes.into_iter().rev() {
                    self.in_boundary.insert(c.clone());
                    self.boundary.push_front(c);
                }
            }
            PopPolicy::Lifo => {
                for c in cubes.into_iter().rev() {
                    self.in_boundary.insert(c.clone());
                    self.boundary.push_back(c);
                }
            }
        }
    }

    fn push_back(&mut self, cube: Cube) {
        self.in_boundary.insert(cube.clone());
        self.boundary.push_back(cube);
    }

    fn remove_from_boundary(&mut self, cube: &Cube) {
        if self.in_boundary.remove(cube) {
            if let Some(i) = self.boundary.iter().position(|c| c == cube) {
                self.boundary.remove(i);
            }
        }
    }

    fn uncovered(&self, cube: &Cube) -> Result<bool> {
        if self.in_boundary.contains(cube) || self.transport.contains_key(cube) {
            return Ok(false);
        }
        let total = self.body.iter().chain(self.boundary.iter());
        // Unknown counts as uncovered: the cube is merely re-explored.
        Ok(is_covered(cube, total, &self.config.coverage)? != Coverage::Covered)
    }

    fn add_to_body(&mut self, cube: Cube, clause: ClauseId) {
        if self.config.track_xi {
            self.body_points += uncovered_count(&cube, &self.body);
        }
        self.transport.insert(cube.clone(), clause);
        self.body.push(cube);
    }

    fn log_xi(&mut self, iteration: u64) {
        if self.config.track_xi {
            self.xi_log.push(XiSample {
                iteration,
                body_points: self.body_points.clone(),
                clauses: self.formula.len(),
            });
        }
    }
}

/// Decides `formula` by building a stable set of cube clusters.
pub fn gen_ssc(formula: &CnfFormula, config: &SscConfig) -> Result<SscResult> {
    let n = formula.num_vars();
    let mut engine = Engine {
        config,
        formula: formula.clone(),
        boundary: VecDeque::new(),
        in_boundary: HashSet::new(),
        body: Vec::new(),
        transport: HashMap::new(),
        learned: Vec::new(),
        body_points: BigUint::zero(),
        xi_log: Vec::new(),
        tracer: Tracer::new(config.trace),
    };

    let init: Vec<Cube> = match &config.init {
        InitStrategy::SingleCube(None) => vec![Cube::full(n)],
        InitStrategy::SingleCube(Some(c)) => {
            if c.num_vars() != n {
                return Err(Error::contract(format!(
                    "initial cube has {} variables, formula has {n}",
                    c.num_vars()
                )));
            }
            vec![c.clone()]
        }
        InitStrategy::NeStyle => {
            let mut seen = HashSet::new();
            let mut cubes = Vec::new();
            for c in formula.clauses() {
                let u = Cube::unsat_of(c, n)?;
                if seen.insert(u.clone()) {
                    cubes.push(u);
                }
            }
            if cubes.is_empty() {
                cubes.push(Cube::full(n));
            }
            cubes
        }
    };
    for c in &init {
        engine.push_back(c.clone());
    }
    engine
        .tracer
        .emit(|| TraceEvent::Initialize { boundary: init });

    let mut iteration = 0u64;
    while let Some(p) = engine.pop() {
        if let Some(limit) = config.max_iterations {
            if iteration >= limit {
                return Err(Error::IterationLimit(limit));
            }
        }
        iteration += 1;

        // Its neighborhood was generated already.
        if engine.transport.contains_key(&p) {
            engine.log_xi(iteration);
            continue;
        }

        let mut falsified = Vec::new();
        let mut meets_any = false;
        for (id, c) in engine.formula.iter() {
            if p.falsifies(c) {
                falsified.push(id);
            } else if !meets_any && p.meets_unsat(c) {
                meets_any = true;
            }
        }

        if falsified.is_empty() {
            if !meets_any {
                engine
                    .tracer
                    .emit(|| TraceEvent::Satisfied { cube: p.clone() });
                engine.tracer.emit(|| TraceEvent::Finish {
                    verdict: Verdict::Sat,
                    body: engine.body.len(),
                    learned: engine.learned.len(),
                });
                engine.log_xi(iteration);
                return Ok(SscResult {
                    outcome: SscOutcome::Satisfiable(p),
                    formula: engine.formula,
                    learned: engine.learned,
                    iterations: iteration,
                    xi_log: engine.xi_log,
                    trace: engine.tracer.finish(),
                });
            }
            let var = pick_split_var_with(&p, &engine.formula, config.split)?;
            let (lo, hi) = p.split(var)?;
            let mut added = Vec::new();
            for half in [&lo, &hi] {
                if engine.uncovered(half)? {
                    added.push(half.clone());
                }
            }
            engine.tracer.emit(|| TraceEvent::Split {
                cube: p.clone(),
                var,
                halves: [lo.clone(), hi.clone()],
                added: added.clone(),
            });
            engine.push_in_place(added);
            engine.log_xi(iteration);
            continue;
        }

        if config.merge_enabled {
            if let Some(m) = merge_cubes(engine.boundary.iter(), &p, &engine.formula) {
                for q in &m.merged[1..] {
                    engine.remove_from_boundary(q);
                }
                let id = engine.formula.add_learned(m.clause.clone())?;
                engine.learned.push(LearnedClause {
                    id,
                    clause: m.clause.clone(),
                    antecedents: m.antecedents,
                    pivot: m.pivot,
                });
                engine.tracer.emit(|| TraceEvent::Merge {
                    merged: m.merged.clone(),
                    pivot: m.pivot,
                    result: m.cube.clone(),
                    learned_id: id,
                    learned: m.clause.clone(),
                    antecedents: m.antecedents,
                });
                if !engine.in_boundary.contains(&m.cube) {
                    engine.push_in_place(vec![m.cube]);
                }
                engine.log_xi(iteration);
                continue;
            }
        }

        let id = config.clause_pick.pick(&engine.formula, &falsified);
        let mut added = Vec::new();
        let mut covered = Vec::new();
        for q in p.nbhd(engine.formula.clause(id))? {
            if engine.uncovered(&q)? {
                engine.push_back(q.clone());
                added.push(q);
            } else {
                covered.push(q);
            }
        }
        engine.tracer.emit(|| TraceEvent::Nbhd {
            cube: p.clone(),
            clause: id,
            added,
            covered,
        });
        engine.tracer.emit(|| TraceEvent::MoveToBody {
            cube: p.clone(),
            clause: id,
        });
        engine.add_to_body(p, id);
        engine.log_xi(iteration);
    }

    engine.tracer.emit(|| TraceEvent::Finish {
        verdict: Verdict::Unsat,
        body: engine.body.len(),
        learned: engine.learned.len(),
    });
    Ok(SscResult {
        outcome: SscOutcome::Unsatisfiable {
            body: engine.body,
            transport: engine.transport,
        },
        formula: engine.formula,
        learned: engine.learned,
        iterations: iteration,
        xi_log: engine.xi_log,
        trace: engine.tracer.finish(),
    })
}

/// Checks that `clusters` is a stable set of clusters: each cluster falsifies
/// its transport clause and every neighborhood cube of it w.r.t. that clause
/// lies inside the union of all clusters.
pub fn verify_ssc(
    formula: &CnfFormula,
    clusters: &[Cube],
    transport: &HashMap<Cube, ClauseId>,
) -> Result<(), Violation> {
    if clusters.is_empty() {
        return Err(Violation::Empty);
    }
    let n = formula.num_vars();
    for p in clusters {
        if p.num_vars() != n {
            return Err(Violation::Arity {
                element: p.to_string(),
            });
        }
        let (id, clause) = transport_clause(formula, p, transport.get(p))?;
        if !p.falsifies(clause) {
            return Err(Violation::NotFalsified {
                element: p.to_string(),
                clause: id,
            });
        }
        for v in clause.vars() {
            let q = p
                .nbhd_dir(v)
                .expect("falsified clause variables are literal components");
            let cov =
                is_covered(&q, clusters, &CoverageConfig::full()).expect("arity checked above");
            if cov != Coverage::Covered {
                return Err(Violation::Escapes {
                    element: p.to_string(),
                    clause: id,
                    neighbor: q.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Expands clusters into an explicit point set. Each point takes the transport
/// clause of the first cluster containing it.
pub fn expand_to_points(
    clusters: &[Cube],
    transport: &HashMap<Cube, ClauseId>,
) -> (Vec<Point>, HashMap<Point, ClauseId>) {
    let mut points = Vec::new();
    let mut g = HashMap::new();
    for c in clusters {
        let Some(&id) = transport.get(c) else {
            continue;
        };
        for p in c.points() {
            if let std::collections::hash_map::Entry::Vacant(e) = g.entry(p.clone()) {
                e.insert(id);
                points.push(p);
            }
        }
    }
    (points, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ssp::verify_ssp;

    fn cube(n: usize, lits: &[i64]) -> Cube {
        Cube::from_dimacs(n, lits).unwrap()
    }

    fn cl(lits: &[i64]) -> Clause {
        Clause::from_dimacs(lits).unwrap()
    }

    /// Five clauses over four variables; unsatisfiable.
    fn five() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(4, &[&[2, 3], &[1, -2], &[-1, -2, 3], &[-3, 4], &[-3, -4]])
            .unwrap()
    }

    fn golden_config() -> SscConfig {
        SscConfig {
            init: InitStrategy::SingleCube(Some(cube(4, &[-2, -3]))),
            trace: true,
            ..Default::default()
        }
    }

    #[test]
    fn golden_run() {
        let r = gen_ssc(&five(), &golden_config()).unwrap();
        let SscOutcome::Unsatisfiable { body, transport } = &r.outcome else {
            panic!("expected UNSAT");
        };
        assert_eq!(
            body,
            &vec![
                cube(4, &[-2, -3]),
                cube(4, &[2, -3]),
                cube(4, &[-2, 3]),
                cube(4, &[2, 3])
            ]
        );
        let learned: Vec<(Clause, Var)> = r
            .learned
            .iter()
            .map(|l| (l.clause.clone(), l.pivot))
            .collect();
        assert_eq!(
            learned,
            vec![(cl(&[-2, 3]), Var::new(1)), (cl(&[-3]), Var::new(4))]
        );
        assert_eq!(r.learned[0].antecedents, [ClauseId(2), ClauseId(3)]);
        assert_eq!(r.learned[1].antecedents, [ClauseId(4), ClauseId(5)]);
        assert_eq!(verify_ssc(&r.formula, body, transport), Ok(()));
    }

    #[test]
    fn merge_partner_search() {
        let mut f = five();
        let p2a = cube(4, &[-1, 2, -3]);
        let p2b = cube(4, &[1, 2, -3]);
        let p3 = cube(4, &[-2, 3]);
        let m = merge_cubes([&p2b, &p3], &p2a, &f).unwrap();
        assert_eq!(m.merged, vec![p2a.clone(), p2b.clone()]);
        assert_eq!(m.cube, cube(4, &[2, -3]));
        assert_eq!(m.clause, cl(&[-2, 3]));
        assert_eq!(m.pivot, Var::new(1));

        f.add_learned(m.clause).unwrap();
        let p3a = cube(4, &[-2, 3, -4]);
        let p3b = cube(4, &[-2, 3, 4]);
        let p4 = cube(4, &[2, 3]);
        let m = merge_cubes([&p3b, &p4], &p3a, &f).unwrap();
        assert_eq!(m.cube, p3);
        assert_eq!(m.clause, cl(&[-3]));

        assert!(merge_cubes([&p2a], &p2a, &five()).is_none());
        assert!(merge_cubes(std::iter::empty(), &p2a, &five()).is_none());
    }

    #[test]
    fn merge_requires_novel_resolvent() {
        let mut f = five();
        f.add_learned(cl(&[-2, 3])).unwrap();
        let p2a = cube(4, &[-1, 2, -3]);
        let p2b = cube(4, &[1, 2, -3]);
        assert!(merge_cubes([&p2b], &p2a, &f).is_none());
    }

    #[test]
    fn split_variable_choice() {
        assert_eq!(
            pick_split_var(&cube(4, &[2, -3]), &five()).unwrap(),
            Var::new(1)
        );
        assert_eq!(
            pick_split_var(&cube(4, &[-2, 3]), &five()).unwrap(),
            Var::new(4)
        );
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, -3]]).unwrap();
        assert_eq!(
            pick_split_var(&cube(3, &[-1, -2]), &f).unwrap(),
            Var::new(3)
        );
        assert!(pick_split_var(&cube(3, &[1]), &f).is_err());

        let f = CnfFormula::from_dimacs_clauses(4, &[&[1, 2, 3], &[-4, 3]]).unwrap();
        assert_eq!(
            pick_split_var_with(&Cube::full(4), &f, SplitHeuristic::MostConstrained).unwrap(),
            Var::new(3)
        );
    }

    #[test]
    fn satisfiable_by_splitting() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
        let r = gen_ssc(&f, &SscConfig::default()).unwrap();
        let SscOutcome::Satisfiable(w) = r.outcome else {
            panic!("expected SAT")
        };
        assert!(w.satisfies(&cl(&[1, 2])));
    }

    #[test]
    fn ne_style_contradiction() {
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        let cfg = SscConfig {
            init: InitStrategy::NeStyle,
            ..Default::default()
        };
        let r = gen_ssc(&f, &cfg).unwrap();
        let SscOutcome::Unsatisfiable { body, transport } = &r.outcome else {
            panic!("expected UNSAT")
        };
        assert_eq!(r.learned.len(), 1);
        assert!(r.learned[0].clause.is_empty());
        assert_eq!(body, &vec![Cube::full(1)]);
        assert_eq!(verify_ssc(&r.formula, body, transport), Ok(()));
    }

    #[test]
    fn verifier_rejects_partial_set() {
        let f = five();
        let p1 = cube(4, &[-2, -3]);
        let g = HashMap::from([(p1.clone(), ClauseId(1))]);
        assert!(matches!(
            verify_ssc(&f, &[p1], &g),
            Err(Violation::Escapes { .. })
        ));
        let mut f = CnfFormula::new(2);
        let id = f.add_clause(Clause::empty()).unwrap();
        let g = HashMap::from([(Cube::full(2), id)]);
        assert_eq!(verify_ssc(&f, &[Cube::full(2)], &g), Ok(()));
    }

    #[test]
    fn golden_body_expands_to_points() {
        let r = gen_ssc(&five(), &golden_config()).unwrap();
        let SscOutcome::Unsatisfiable { body, transport } = &r.outcome else {
            panic!("expected UNSAT")
        };
        let (pts, g) = expand_to_points(body, transport);
        assert_eq!(pts.len(), 16);
        assert_eq!(verify_ssp(&r.formula, &pts, &g), Ok(()));
    }

    #[test]
    fn xi_never_decreases() {
        let r = gen_ssc(&five(), &golden_config()).unwrap();
        assert_eq!(r.xi_log.len() as u64, r.iterations);
        for w in r.xi_log.windows(2) {
            assert!(w[0].xi() <= w[1].xi());
        }
        assert_eq!(r.xi_log.last().unwrap().body_points, BigUint::from(16u32));
    }
}
