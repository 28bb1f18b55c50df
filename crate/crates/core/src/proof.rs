//! Line-oriented certificates and their independent checker.
//!
//! ```text
//! learn <new-id> <lit...> 0 from <id1> <id2> pivot <var>
//! perm <cycles>
//! cluster <lit...> 0 clause <id>
//! witness <lit...> 0
//! result SAT|UNSAT
//! ```
//!
//! Lines that are `c` or start with `c ` are comments. An UNSAT proof lists
//! the learned clauses in order, then the clusters with their transport
//! clauses. When `perm` lines are present the clusters must be single
//! points and the set is checked for stability modulo the generated group.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{self, Write};

use crate::cnf::{resolvable_on, resolve, Clause, ClauseId, CnfFormula, Lit, Point, Var};
use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::ssc::{verify_ssc, SscOutcome, SscResult};
use crate::ssp::{verify_ssp, SspOutcome, SspResult, Violation};
use crate::symmetry::{
    verify_stable_mod_symmetry, Permutation, SymmetryGroup, DEFAULT_ORBIT_LIMIT,
};
use crate::Verdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofStep {
    Learn {
        id: ClauseId,
        clause: Clause,
        from: [ClauseId; 2],
        pivot: Var,
    },
    /// A symmetry generator in cycle notation.
    Perm(String),
    Cluster {
        lits: Vec<Lit>,
        clause: ClauseId,
    },
    Witness(Vec<Lit>),
    Result(Verdict),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Proof {
    /// Each step with the 1-based line it came from (0 when built in memory).
    pub steps: Vec<(usize, ProofStep)>,
}

fn lits_text(lits: &[Lit]) -> String {
    let mut s = String::new();
    for l in lits {
        let _ = write!(s, "{} ", l.to_dimacs());
    }
    s.push('0');
    s
}

fn cube_lits(cube: &Cube) -> Vec<Lit> {
    cube.literals().collect()
}

fn point_lits(point: &Point) -> Vec<Lit> {
    cube_lits(&Cube::from_point(point))
}

impl Proof {
    fn push(&mut self, step: ProofStep) {
        self.steps.push((0, step));
    }

    pub fn from_ssc(result: &SscResult) -> Proof {
        let mut proof = Proof::default();
        match &result.outcome {
            SscOutcome::Satisfiable(cube) => {
                proof.push(ProofStep::Witness(cube_lits(cube)));
                proof.push(ProofStep::Result(Verdict::Sat));
            }
            SscOutcome::Unsatisfiable { body, transport } => {
                for l in &result.learned {
                    proof.push(ProofStep::Learn {
                        id: l.id,
                        clause: l.clause.clone(),
                        from: l.antecedents,
                        pivot: l.pivot,
                    });
                }
                for cube in body {
                    proof.push(ProofStep::Cluster {
                        lits: cube_lits(cube),
                        clause: transport[cube],
                    });
                }
                proof.push(ProofStep::Result(Verdict::Unsat));
            }
        }
        proof
    }

    /// Certificate for a point search; pass the group when the set is only
    /// stable modulo symmetry.
    pub fn from_ssp(result: &SspResult, group: Option<&SymmetryGroup>) -> Proof {
        let mut proof = Proof::default();
        match &result.outcome {
            SspOutcome::Satisfiable(p) => {
                proof.push(ProofStep::Witness(point_lits(p)));
                proof.push(ProofStep::Result(Verdict::Sat));
            }
            SspOutcome::Unsatisfiable { points, transport } => {
                if let Some(group) = group {
                    for g in group.generators() {
                        proof.push(ProofStep::Perm(g.to_string()));
                    }
                }
                for p in points {
                    proof.push(ProofStep::Cluster {
                        lits: point_lits(p),
                        clause: transport[p],
                    });
                }
                proof.push(ProofStep::Result(Verdict::Unsat));
            }
        }
        proof
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (_, step) in &self.steps {
            match step {
                ProofStep::Learn {
                    id,
                    clause,
                    from,
                    pivot,
                } => {
                    let _ = writeln!(
                        out,
                        "learn {} {} from {} {} pivot {}",
                        id.0,
                        lits_text(clause.lits()),
                        from[0].0,
                        from[1].0,
                        pivot.index()
                    );
                }
                ProofStep::Perm(cycles) => {
                    let _ = writeln!(out, "perm {cycles}");
                }
                ProofStep::Cluster { lits, clause } => {
                    let _ = writeln!(out, "cluster {} clause {}", lits_text(lits), clause.0);
                }
                ProofStep::Witness(lits) => {
                    let _ = writeln!(out, "witness {}", lits_text(lits));
                }
                ProofStep::Result(v) => {
                    let _ = writeln!(out, "result {v}");
                }
            }
        }
        out
    }

    pub fn write(&self, mut sink: impl Write) -> io::Result<()> {
        sink.write_all(self.to_text().as_bytes())
    }

    pub fn parse(text: &str) -> Result<Proof> {
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line == "c" || line.starts_with("c ") {
                continue;
            }
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let step = match keyword {
                "learn" => parse_learn(line_no, rest)?,
                "perm" => ProofStep::Perm(rest.trim().to_string()),
                "cluster" => {
                    let (lits, tail) = take_lits(line_no, rest)?;
                    match tail.as_slice() {
                        ["clause", id] => ProofStep::Cluster {
                            lits,
                            clause: ClauseId(parse_num(line_no, id)?),
                        },
                        _ => {
                            return Err(Error::parse(
                                line_no,
                                "expected `clause <id>` after the cube",
                            ))
                        }
                    }
                }
                "witness" => {
                    let (lits, tail) = take_lits(line_no, rest)?;
                    if !tail.is_empty() {
                        return Err(Error::parse(line_no, "trailing tokens after witness"));
                    }
                    ProofStep::Witness(lits)
                }
                "result" => match rest.trim() {
                    "SAT" => ProofStep::Result(Verdict::Sat),
                    "UNSAT" => ProofStep::Result(Verdict::Unsat),
                    other => {
                        return Err(Error::parse(line_no, format!("unknown result {other:?}")))
                    }
                },
                other => return Err(Error::parse(line_no, format!("unknown record {other:?}"))),
            };
            steps.push((line_no, step));
        }
        Ok(Proof { steps })
    }

    /// The claimed verdict, if the proof has a `result` line.
    pub fn claimed(&self) -> Option<Verdict> {
        self.steps.iter().rev().find_map(|(_, s)| match s {
            ProofStep::Result(v) => Some(*v),
            _ => None,
        })
    }
}

fn parse_num(line: usize, tok: &str) -> Result<u32> {
    tok.parse()
        .ok()
        .filter(|&v| v > 0)
        .ok_or_else(|| Error::parse(line, format!("expected a positive integer, got {tok:?}")))
}

/// Reads literals up to the terminating 0 and returns the remaining tokens.
fn take_lits(line: usize, rest: &str) -> Result<(Vec<Lit>, Vec<&str>)> {
    let mut toks = rest.split_whitespace();
    let mut lits = Vec::new();
    loop {
        let Some(tok) = toks.next() else {
            return Err(Error::parse(
                line,
                "literal list is missing its terminating 0",
            ));
        };
        let v: i64 = tok
            .parse()
            .map_err(|_| Error::parse(line, format!("bad literal {tok:?}")))?;
        match Lit::from_dimacs(v) {
            Some(l) => lits.push(l),
            None => break,
        }
    }
    Ok((lits, toks.collect()))
}

fn parse_learn(line: usize, rest: &str) -> Result<ProofStep> {
    let (id_tok, rest) = rest
        .trim_start()
        .split_once(char::is_whitespace)
        .ok_or_else(|| Error::parse(line, "truncated learn record"))?;
    let id = ClauseId(parse_num(line, id_tok)?);
    let (lits, tail) = take_lits(line, rest)?;
    let clause = Clause::new(lits).map_err(|e| Error::parse(line, e.to_string()))?;
    match tail.as_slice() {
        ["from", a, b, "pivot", v] => Ok(ProofStep::Learn {
            id,
            clause,
            from: [ClauseId(parse_num(line, a)?), ClauseId(parse_num(line, b)?)],
            pivot: Var::new(parse_num(line, v)?),
        }),
        _ => Err(Error::parse(line, "expected `from <id> <id> pivot <var>`")),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ProofError {
    #[error("line {line}: {msg}")]
    Step { line: usize, msg: String },
    #[error("certificate rejected: {0}")]
    Unstable(#[from] Violation),
    #[error("{0}")]
    Malformed(String),
}

fn step_err(line: usize, msg: impl Into<String>) -> ProofError {
    ProofError::Step {
        line,
        msg: msg.into(),
    }
}

/// Checks `proof` against the input `formula` and returns the verdict it
/// establishes. Learned clauses are re-derived by resolution before the
/// clusters are checked, so the certificate is judged against the extended
/// formula.
pub fn check_proof(
    formula: &CnfFormula,
    proof: &Proof,
) -> std::result::Result<Verdict, ProofError> {
    let n = formula.num_vars();
    let mut f = formula.original();
    let mut perms = Vec::new();
    let mut clusters: Vec<Cube> = Vec::new();
    let mut transport: HashMap<Cube, ClauseId> = HashMap::new();
    let mut witness = None;
    let mut result = None;

    for (line, step) in &proof.steps {
        let line = *line;
        if result.is_some() {
            return Err(step_err(line, "record after the result line"));
        }
        match step {
            ProofStep::Learn {
                id,
                clause,
                from,
                pivot,
            } => {
                if !clusters.is_empty() {
                    return Err(step_err(line, "learn record after a cluster"));
                }
                let expected = ClauseId(f.len() as u32 + 1);
                if *id != expected {
                    return Err(step_err(
                        line,
                        format!("expected clause id {expected}, got {id}"),
                    ));
                }
                let (Some(c1), Some(c2)) = (f.get(from[0]), f.get(from[1])) else {
                    return Err(step_err(line, "antecedent does not exist yet"));
                };
                if resolvable_on(c1, c2) != Some(*pivot) {
                    return Err(step_err(
                        line,
                        format!(
                            "clauses {} and {} do not resolve on {pivot}",
                            from[0], from[1]
                        ),
                    ));
                }
                let derived = resolve(c1, c2, *pivot).map_err(|e| step_err(line, e.to_string()))?;
                if derived != *clause {
                    return Err(step_err(
                        line,
                        format!("resolvent is ({derived}), not ({clause})"),
                    ));
                }
                f.add_learned(derived)
                    .map_err(|e| step_err(line, e.to_string()))?;
            }
            ProofStep::Perm(text) => {
                let p =
                    Permutation::from_cycles(n, text).map_err(|e| step_err(line, e.to_string()))?;
                perms.push(p);
            }
            ProofStep::Cluster { lits, clause } => {
                let cube = Cube::from_lits(n, lits.iter().copied())
                    .map_err(|e| step_err(line, e.to_string()))?;
                if transport.insert(cube.clone(), *clause).is_some() {
                    return Err(step_err(line, "duplicate cluster"));
                }
                clusters.push(cube);
            }
            ProofStep::Witness(lits) => {
                let cube = Cube::from_lits(n, lits.iter().copied())
                    .map_err(|e| step_err(line, e.to_string()))?;
                witness = Some((line, cube));
            }
            ProofStep::Result(v) => result = Some(*v),
        }
    }

    match result {
        None => Err(ProofError::Malformed("no result line".into())),
        Some(Verdict::Sat) => {
            let Some((line, cube)) = witness else {
                return Err(ProofError::Malformed(
                    "SAT claimed without a witness".into(),
                ));
            };
            match formula.clauses().iter().position(|c| !cube.satisfies(c)) {
                None => Ok(Verdict::Sat),
                Some(i) => Err(step_err(
                    line,
                    format!("witness does not satisfy clause {}", i + 1),
                )),
            }
        }
        Some(Verdict::Unsat) => {
            if witness.is_some() {
                return Err(ProofError::Malformed(
                    "UNSAT proof carries a witness".into(),
                ));
            }
            if !perms.is_empty() || clusters.iter().all(|c| c.free_count() == 0) {
                let points: Vec<Point> = clusters.iter().filter_map(as_point).collect();
                if points.len() != clusters.len() {
                    return Err(ProofError::Malformed(
                        "clusters must be points when perm records are present".into(),
                    ));
                }
                let g: HashMap<Point, ClauseId> = points
                    .iter()
                    .zip(&clusters)
                    .map(|(p, c)| (p.clone(), transport[c]))
                    .collect();
                if perms.is_empty() {
                    verify_ssp(&f, &points, &g)?;
                } else {
                    let group = SymmetryGroup::new(n, perms)
                        .map_err(|e| ProofError::Malformed(e.to_string()))?;
                    verify_stable_mod_symmetry(&f, &points, &g, &group, DEFAULT_ORBIT_LIMIT)?;
                }
            } else {
                verify_ssc(&f, &clusters, &transport)?;
            }
            Ok(Verdict::Unsat)
        }
    }
}

fn as_point(cube: &Cube) -> Option<Point> {
    if cube.free_count() != 0 {
        return None;
    }
    Some(Point::from_bits(
        cube.components()
            .iter()
            .map(|c| c.value().expect("literal"))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ssc::{gen_ssc, InitStrategy, SscConfig};
    use crate::ssp::{gen_ssp, SspConfig};
    use crate::symmetry::{gen_ssp_mod_symmetry, ph_formula, ph_symmetry_generators, ModSymConfig};

    fn five() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(4, &[&[2, 3], &[1, -2], &[-1, -2, 3], &[-3, 4], &[-3, -4]])
            .unwrap()
    }

    fn golden() -> SscResult {
        let config = SscConfig {
            init: InitStrategy::SingleCube(Some(Cube::from_dimacs(4, &[-2, -3]).unwrap())),
            ..Default::default()
        };
        gen_ssc(&five(), &config).unwrap()
    }

    #[test]
    fn golden_proof_text() {
        let text = Proof::from_ssc(&golden()).to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "learn 6 -2 3 0 from 2 3 pivot 1");
        assert_eq!(lines[1], "learn 7 -3 0 from 4 5 pivot 4");
        assert_eq!(lines.last(), Some(&"result UNSAT"));
        assert_eq!(lines.len(), 2 + 4 + 1);
    }

    #[test]
    fn round_trip_and_check() {
        let proof = Proof::from_ssc(&golden());
        let parsed = Proof::parse(&proof.to_text()).unwrap();
        assert_eq!(parsed.to_text(), proof.to_text());
        assert_eq!(check_proof(&five(), &parsed).unwrap(), Verdict::Unsat);
    }

    #[test]
    fn tampering_detected() {
        let text = Proof::from_ssc(&golden()).to_text();
        let bad_pivot = text.replacen("pivot 1", "pivot 2", 1);
        assert!(check_proof(&five(), &Proof::parse(&bad_pivot).unwrap()).is_err());

        let bad_clause = text.replacen("learn 6 -2 3 0", "learn 6 3 0", 1);
        assert!(check_proof(&five(), &Proof::parse(&bad_clause).unwrap()).is_err());

        let dropped: String = text
            .lines()
            .filter(|l| !l.starts_with("cluster 2 3 0") && !l.starts_with("cluster -2 3 0"))
            .map(|l| format!("{l}\n"))
            .collect();
        assert_ne!(dropped, text);
        assert!(matches!(
            check_proof(&five(), &Proof::parse(&dropped).unwrap()),
            Err(ProofError::Unstable(_))
        ));

        let no_result: String = text
            .lines()
            .filter(|l| !l.starts_with("result"))
            .map(|l| format!("{l}\n"))
            .collect();
        assert!(check_proof(&five(), &Proof::parse(&no_result).unwrap()).is_err());
    }

    #[test]
    fn sat_proof() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1], &[1, 2]]).unwrap();
        let r = gen_ssp(&f, &Point::zeros(2), &SspConfig::default()).unwrap();
        let text = Proof::from_ssp(&r, None).to_text();
        assert_eq!(text, "witness 1 -2 0\nresult SAT\n");
        assert_eq!(
            check_proof(&f, &Proof::parse(&text).unwrap()).unwrap(),
            Verdict::Sat
        );
        let lie = "witness -1 -2 0\nresult SAT\n";
        assert!(check_proof(&f, &Proof::parse(lie).unwrap()).is_err());
    }

    #[test]
    fn point_and_symmetry_proofs() {
        let (f, inst) = ph_formula(3, 2);
        let r = gen_ssp(&f, &Point::zeros(6), &SspConfig::default()).unwrap();
        let text = Proof::from_ssp(&r, None).to_text();
        assert_eq!(
            check_proof(&f, &Proof::parse(&text).unwrap()).unwrap(),
            Verdict::Unsat
        );

        let group = ph_symmetry_generators(&inst);
        let r =
            gen_ssp_mod_symmetry(&f, &group, &Point::zeros(6), &ModSymConfig::default()).unwrap();
        let text = Proof::from_ssp(&r, Some(&group)).to_text();
        assert!(text.starts_with("perm "));
        assert_eq!(
            check_proof(&f, &Proof::parse(&text).unwrap()).unwrap(),
            Verdict::Unsat
        );
        // Without the group the reduced set is not stable.
        let stripped: String = text
            .lines()
            .filter(|l| !l.starts_with("perm"))
            .map(|l| format!("{l}\n"))
            .collect();
        assert!(check_proof(&f, &Proof::parse(&stripped).unwrap()).is_err());
    }

    #[test]
    fn parse_errors() {
        for (text, line) in [
            ("c x\nbogus 1\n", 2),
            ("cluster 1 2 clause 3\n", 1),
            ("learn 6 -2 3 0 from 3 pivot 1\n", 1),
            ("result MAYBE\n", 1),
            ("witness 1 0 extra\n", 1),
        ] {
            match Proof::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
