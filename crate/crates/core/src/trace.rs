//! Step-by-step execution traces of the engines.
//!
//! One line per record:
//!
//! ```text
//! <step> initialize boundary <cube>…
//! <step> split <cube> on <var> -> <cube> <cube> add <cube>…
//! <step> merge <cube> <cube> on <var> -> <cube> learn <id> <clause> from <id> <id>
//! <step> nbhd <cube> clause <id> add <cube>… covered <cube>…
//! <step> move-to-body <cube> clause <id>
//! <step> satisfied <cube>
//! <step> finish SAT|UNSAT body <count> learned <count>
//! ```
//!
//! Cubes print as `[-2 -3]` and clauses as `(-2 3)`; an empty list prints as
//! `-`. The pretty style uses `[¬x2 ¬x3]` and `(¬x2 ∨ x3)` instead.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::cnf::{Clause, ClauseId, Var};
use crate::cube::Cube;
use crate::Verdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Initialize {
        boundary: Vec<Cube>,
    },
    Nbhd {
        cube: Cube,
        clause: ClauseId,
        added: Vec<Cube>,
        covered: Vec<Cube>,
    },
    Split {
        cube: Cube,
        var: Var,
        halves: [Cube; 2],
        added: Vec<Cube>,
    },
    Merge {
        merged: Vec<Cube>,
        pivot: Var,
        result: Cube,
        learned_id: ClauseId,
        learned: Clause,
        antecedents: [ClauseId; 2],
    },
    MoveToBody {
        cube: Cube,
        clause: ClauseId,
    },
    Satisfied {
        cube: Cube,
    },
    Finish {
        verdict: Verdict,
        body: usize,
        learned: usize,
    },
}

impl TraceEvent {
    pub fn kind(&self) -> &'static str {
        match self {
            TraceEvent::Initialize { .. } => "initialize",
            TraceEvent::Nbhd { .. } => "nbhd",
            TraceEvent::Split { .. } => "split",
            TraceEvent::Merge { .. } => "merge",
            TraceEvent::MoveToBody { .. } => "move-to-body",
            TraceEvent::Satisfied { .. } => "satisfied",
            TraceEvent::Finish { .. } => "finish",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub step: u64,
    pub event: TraceEvent,
}

/// Collects records when enabled; a no-op otherwise.
#[derive(Debug, Default)]
pub(crate) struct Tracer {
    records: Option<Vec<TraceRecord>>,
    step: u64,
}

impl Tracer {
    pub(crate) fn new(enabled: bool) -> Tracer {
        Tracer {
            records: enabled.then(Vec::new),
            step: 0,
        }
    }

    /// The closure runs only when tracing is on.
    pub(crate) fn emit(&mut self, event: impl FnOnce() -> TraceEvent) {
        if let Some(records) = &mut self.records {
            self.step += 1;
            records.push(TraceRecord {
                step: self.step,
                event: event(),
            });
        }
    }

    pub(crate) fn finish(self) -> Vec<TraceRecord> {
        self.records.unwrap_or_default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TraceStyle {
    /// Signed integer literals.
    #[default]
    Dimacs,
    /// `¬x` notation.
    Pretty,
}

fn cube_text(out: &mut String, cube: &Cube, style: TraceStyle) {
    out.push('[');
    match style {
        TraceStyle::Dimacs => out.push_str(&cube.to_dimacs()),
        TraceStyle::Pretty => {
            let lits: Vec<String> = cube.literals().map(|l| l.to_string()).collect();
            out.push_str(&lits.join(" "));
        }
    }
    out.push(']');
}

fn cubes_text(out: &mut String, cubes: &[Cube], style: TraceStyle) {
    if cubes.is_empty() {
        out.push('-');
    }
    for (i, c) in cubes.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        cube_text(out, c, style);
    }
}

fn clause_text(out: &mut String, clause: &Clause, style: TraceStyle) {
    out.push('(');
    let lits: Vec<String> = clause
        .lits()
        .iter()
        .map(|l| match style {
            TraceStyle::Dimacs => l.to_dimacs().to_string(),
            TraceStyle::Pretty => l.to_string(),
        })
        .collect();
    out.push_str(&lits.join(match style {
        TraceStyle::Dimacs => " ",
        TraceStyle::Pretty => " ∨ ",
    }));
    out.push(')');
}

fn var_text(var: Var, style: TraceStyle) -> String {
    match style {
        TraceStyle::Dimacs => var.index().to_string(),
        TraceStyle::Pretty => var.to_string(),
    }
}

/// Renders one record as a line (without newline).
pub fn render_record(record: &TraceRecord, style: TraceStyle) -> String {
    let mut s = format!("{} {}", record.step, record.event.kind());
    match &record.event {
        TraceEvent::Initialize { boundary } => {
            s.push_str(" boundary ");
            cubes_text(&mut s, boundary, style);
        }
        TraceEvent::Nbhd {
            cube,
            clause,
            added,
            covered,
        } => {
            s.push(' ');
            cube_text(&mut s, cube, style);
            let _ = write!(s, " clause {clause} add ");
            cubes_text(&mut s, added, style);
            s.push_str(" covered ");
            cubes_text(&mut s, covered, style);
        }
        TraceEvent::Split {
            cube,
            var,
            halves,
            added,
        } => {
            s.push(' ');
            cube_text(&mut s, cube, style);
            let _ = write!(s, " on {} -> ", var_text(*var, style));
            cubes_text(&mut s, halves, style);
            s.push_str(" add ");
            cubes_text(&mut s, added, style);
        }
        TraceEvent::Merge {
            merged,
            pivot,
            result,
            learned_id,
            learned,
            antecedents,
        } => {
            s.push(' ');
            cubes_text(&mut s, merged, style);
            let _ = write!(s, " on {} -> ", var_text(*pivot, style));
            cube_text(&mut s, result, style);
            let _ = write!(s, " learn {learned_id} ");
            clause_text(&mut s, learned, style);
            let _ = write!(s, " from {} {}", antecedents[0], antecedents[1]);
        }
        TraceEvent::MoveToBody { cube, clause } => {
            s.push(' ');
            cube_text(&mut s, cube, style);
            let _ = write!(s, " clause {clause}");
        }
        TraceEvent::Satisfied { cube } => {
            s.push(' ');
            cube_text(&mut s, cube, style);
        }
        TraceEvent::Finish {
            verdict,
            body,
            learned,
        } => {
            let _ = write!(s, " {verdict} body {body} learned {learned}");
        }
    }
    s
}

pub fn write_trace<W: Write>(
    records: &[TraceRecord],
    style: TraceStyle,
    mut sink: W,
) -> io::Result<()> {
    for r in records {
        writeln!(sink, "{}", render_record(r, style))?;
    }
    sink.flush()
}
