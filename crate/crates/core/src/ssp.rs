//! Point-by-point construction of stable sets of points, and their checker.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::cnf::{point_nbhd, Clause, ClauseId, CnfFormula, Point};
use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::trace::{TraceEvent, TraceRecord, Tracer};
use crate::Verdict;

/// Which end of the boundary queue the next element is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PopPolicy {
    /// Oldest first (breadth-first).
    #[default]
    Fifo,
    /// Newest first (depth-first).
    Lifo,
}

/// Which falsified clause becomes the transport value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ClausePick {
    /// First falsified clause in formula order.
    #[default]
    First,
    /// Shortest falsified clause, ties broken by formula order.
    Shortest,
}

impl ClausePick {
    pub(crate) fn pick(self, formula: &CnfFormula, candidates: &[ClauseId]) -> ClauseId {
        match self {
            ClausePick::First => candidates[0],
            ClausePick::Shortest => *candidates
                .iter()
                .min_by_key(|id| formula.clause(**id).len())
                .expect("non-empty candidate list"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SspConfig {
    pub pop: PopPolicy,
    pub clause_pick: ClausePick,
    pub trace: bool,
    /// Abort with [`Error::IterationLimit`] after this many iterations.
    pub max_iterations: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SspOutcome {
    Satisfiable(Point),
    /// `points` in the order they entered the body.
    Unsatisfiable {
        points: Vec<Point>,
        transport: HashMap<Point, ClauseId>,
    },
}

#[derive(Clone, Debug)]
pub struct SspResult {
    pub outcome: SspOutcome,
    pub iterations: u64,
    pub trace: Vec<TraceRecord>,
}

impl SspResult {
    pub fn verdict(&self) -> Verdict {
        match self.outcome {
            SspOutcome::Satisfiable(_) => Verdict::Sat,
            SspOutcome::Unsatisfiable { .. } => Verdict::Unsat,
        }
    }
}

/// Grows a set of falsifying points from `init` until either a satisfying
/// point is reached or the set becomes stable.
pub fn gen_ssp(formula: &CnfFormula, init: &Point, config: &SspConfig) -> Result<SspResult> {
    gen_ssp_filtered(formula, init, config, |_, _| true)
}

/// Shared driver: `admit(point, known)` decides whether a fresh neighborhood
/// point enters the boundary. `known` holds every point of Body ∪ Boundary.
pub(crate) fn gen_ssp_filtered(
    formula: &CnfFormula,
    init: &Point,
    config: &SspConfig,
    mut admit: impl FnMut(&Point, &HashSet<Point>) -> bool,
) -> Result<SspResult> {
    formula.check_arity(init.len())?;
    let mut tracer = Tracer::new(config.trace);
    let mut boundary: VecDeque<Point> = VecDeque::from([init.clone()]);
    let mut known: HashSet<Point> = HashSet::from([init.clone()]);
    let mut body: Vec<Point> = Vec::new();
    let mut transport: HashMap<Point, ClauseId> = HashMap::new();
    let mut iterations = 0u64;
    tracer.emit(|| TraceEvent::Initialize {
        boundary: vec![Cube::from_point(init)],
    });

    loop {
        let p = match config.pop {
            PopPolicy::Fifo => boundary.pop_front(),
            PopPolicy::Lifo => boundary.pop_back(),
        };
        let Some(p) = p else { break };
        if let Some(limit) = config.max_iterations {
            if iterations >= limit {
                return Err(Error::IterationLimit(limit));
            }
        }
        iterations += 1;

        let falsified = formula.falsified_clauses(&p)?;
        if falsified.is_empty() {
            tracer.emit(|| TraceEvent::Satisfied {
                cube: Cube::from_point(&p),
            });
            tracer.emit(|| TraceEvent::Finish {
                verdict: Verdict::Sat,
                body: body.len(),
                learned: 0,
            });
            return Ok(SspResult {
                outcome: SspOutcome::Satisfiable(p),
                iterations,
                trace: tracer.finish(),
            });
        }
        let id = config.clause_pick.pick(formula, &falsified);
        let mut added = Vec::new();
        let mut covered = Vec::new();
        for q in point_nbhd(&p, formula.clause(id))? {
            if known.contains(&q) || !admit(&q, &known) {
                covered.push(q);
            } else {
                known.insert(q.clone());
                boundary.push_back(q.clone());
                added.push(q);
            }
        }
        tracer.emit(|| TraceEvent::Nbhd {
            cube: Cube::from_point(&p),
            clause: id,
            added: added.iter().map(Cube::from_point).collect(),
            covered: covered.iter().map(Cube::from_point).collect(),
        });
        tracer.emit(|| TraceEvent::MoveToBody {
            cube: Cube::from_point(&p),
            clause: id,
        });
        transport.insert(p.clone(), id);
        body.push(p);
    }

    tracer.emit(|| TraceEvent::Finish {
        verdict: Verdict::Unsat,
        body: body.len(),
        learned: 0,
    });
    Ok(SspResult {
        outcome: SspOutcome::Unsatisfiable {
            points: body,
            transport,
        },
        iterations,
        trace: tracer.finish(),
    })
}

/// Why a candidate certificate is not stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Empty,
    MissingTransport {
        element: String,
    },
    UnknownClause {
        element: String,
        clause: ClauseId,
    },
    NotFalsified {
        element: String,
        clause: ClauseId,
    },
    Escapes {
        element: String,
        clause: ClauseId,
        neighbor: String,
    },
    /// Orbit search hit its node limit before reaching a decision.
    OrbitLimit {
        neighbor: String,
    },
    NotSymmetric {
        generator: String,
    },
    Arity {
        element: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "the set is empty"),
            Violation::MissingTransport { element } => {
                write!(f, "{element} has no transport clause")
            }
            Violation::UnknownClause { element, clause } => {
                write!(f, "{element} is mapped to unknown clause {clause}")
            }
            Violation::NotFalsified { element, clause } => {
                write!(
                    f,
                    "{element} does not falsify its transport clause {clause}"
                )
            }
            Violation::Escapes {
                element,
                clause,
                neighbor,
            } => write!(
                f,
                "neighbor {neighbor} of {element} w.r.t. clause {clause} lies outside the set"
            ),
            Violation::OrbitLimit { neighbor } => {
                write!(f, "orbit search for {neighbor} exceeded its limit")
            }
            Violation::NotSymmetric { generator } => {
                write!(f, "the formula is not symmetric under {generator}")
            }
            Violation::Arity { element } => write!(f, "{element} has the wrong arity"),
        }
    }
}

impl std::error::Error for Violation {}

pub(crate) fn transport_clause<'f, K: fmt::Display>(
    formula: &'f CnfFormula,
    element: &K,
    transport: Option<&ClauseId>,
) -> Result<(ClauseId, &'f Clause), Violation> {
    let id = *transport.ok_or_else(|| Violation::MissingTransport {
        element: element.to_string(),
    })?;
    let clause = formula.get(id).ok_or_else(|| Violation::UnknownClause {
        element: element.to_string(),
        clause: id,
    })?;
    Ok((id, clause))
}

/// Checks that `points` is stable w.r.t. `formula` and `transport`: every
/// point falsifies its clause and the point's neighborhood w.r.t. that clause
/// stays inside the set.
pub fn verify_ssp(
    formula: &CnfFormula,
    points: &[Point],
    transport: &HashMap<Point, ClauseId>,
) -> Result<(), Violation> {
    if points.is_empty() {
        return Err(Violation::Empty);
    }
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
            if !members.contains(&q) {
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
