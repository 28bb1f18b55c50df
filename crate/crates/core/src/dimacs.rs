//! DIMACS CNF reading and writing.

use std::io::{self, Read, Write};

use crate::cnf::{Clause, CnfFormula, Lit};
use crate::error::{Error, Result};

/// A parsed file together with non-fatal complaints about it.
#[derive(Clone, Debug)]
pub struct Dimacs {
    pub formula: CnfFormula,
    pub warnings: Vec<String>,
}

/// Parses DIMACS CNF text. Comment lines start with `c`; clauses may span
/// lines and must end with `0`. A clause count in the header that disagrees
/// with the body only produces a warning.
pub fn parse_dimacs(text: &str) -> Result<Dimacs> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut formula = CnfFormula::new(0);
    let mut pending: Vec<Lit> = Vec::new();
    let mut pending_line = 0;
    let mut count = 0usize;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate problem line"));
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let (vars, clauses) = match fields.as_slice() {
                ["p", "cnf", v, c] => (
                    v.parse::<usize>()
                        .map_err(|_| Error::parse(line_no, format!("bad variable count {v:?}")))?,
                    c.parse::<usize>()
                        .map_err(|_| Error::parse(line_no, format!("bad clause count {c:?}")))?,
                ),
                _ => return Err(Error::parse(line_no, "expected `p cnf <vars> <clauses>`")),
            };
            if vars > u32::MAX as usize / 2 {
                return Err(Error::parse(line_no, "variable count too large"));
            }
            header = Some((vars, clauses, line_no));
            formula = CnfFormula::new(vars);
            continue;
        }
        let Some((num_vars, _, _)) = header else {
            return Err(Error::parse(line_no, "clause before the problem line"));
        };
        for tok in trimmed.split_whitespace() {
            let value: i64 = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad literal {tok:?}")))?;
            if value == 0 {
                let clause = Clause::new(pending.drain(..)).map_err(|e| match e {
                    Error::Contract(msg) => Error::parse(line_no, msg),
                    other => other,
                })?;
                formula
                    .add_clause(clause)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
                count += 1;
                continue;
            }
            if value.unsigned_abs() as usize > num_vars {
                return Err(Error::parse(
                    line_no,
                    format!(
                        "variable {} exceeds the declared {num_vars}",
                        value.unsigned_abs()
                    ),
                ));
            }
            if pending.is_empty() {
                pending_line = line_no;
            }
            pending.push(Lit::from_dimacs(value).expect("non-zero"));
        }
    }

    let Some((_, declared, header_line)) = header else {
        return Err(Error::parse(
            text.lines().count().max(1),
            "missing problem line",
        ));
    };
    if !pending.is_empty() {
        return Err(Error::parse(
            pending_line,
            "clause is missing its terminating 0",
        ));
    }
    let mut warnings = Vec::new();
    if declared != count {
        warnings.push(format!(
            "line {header_line}: header declares {declared} clauses but {count} were read"
        ));
    }
    Ok(Dimacs { formula, warnings })
}

/// Reads and parses a DIMACS stream.
pub fn read_dimacs(mut reader: impl Read) -> Result<Dimacs> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_dimacs(&text)
}

/// Writes the input clauses of `formula` (learned clauses are left out).
pub fn write_dimacs(formula: &CnfFormula, mut sink: impl Write) -> io::Result<()> {
    let n = formula.original_count();
    writeln!(sink, "p cnf {} {}", formula.num_vars(), n)?;
    for c in &formula.clauses()[..n] {
        writeln!(sink, "{}", c.to_dimacs())?;
    }
    Ok(())
}

pub fn to_dimacs_string(formula: &CnfFormula) -> String {
    let mut out = Vec::new();
    write_dimacs(formula, &mut out).expect("writing to memory");
    String::from_utf8(out).expect("ASCII output")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_unsat() {
        let d = parse_dimacs("p cnf 2 2\n1 0\n-1 0\n").unwrap();
        assert!(d.warnings.is_empty());
        assert_eq!(d.formula.num_vars(), 2);
        assert_eq!(
            d.formula,
            CnfFormula::from_dimacs_clauses(2, &[&[1], &[-1]]).unwrap()
        );
    }

    #[test]
    fn comments_multiline_and_duplicates() {
        let d = parse_dimacs("c hello\np cnf 3 2\n1 2\n 2 -3 0 c\n-1 0\n").unwrap_err();
        assert!(matches!(d, Error::Parse { line: 4, .. }));

        let d = parse_dimacs("c hello\np cnf 3 2\n1 2\n 2 -3 0\n-1 -1 0\n").unwrap();
        let expect = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, -3], &[-1]]).unwrap();
        assert_eq!(d.formula, expect);
    }

    #[test]
    fn tautology_rejected() {
        let e = parse_dimacs("p cnf 1 1\n1 -1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("p cnf x 1\n", 1),
            ("p dnf 1 1\n", 1),
            ("1 0\n", 1),
            ("p cnf 2 1\n\n3 0\n", 3),
            ("p cnf 2 1\n1 2\n", 2),
            ("p cnf 2 1\n1 a 0\n", 2),
            ("p cnf 2 1\np cnf 2 1\n", 2),
        ];
        for (text, line) in cases {
            match parse_dimacs(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(parse_dimacs("c only comments\n").is_err());
    }

    #[test]
    fn count_mismatch_warns() {
        let d = parse_dimacs("p cnf 2 5\n1 2 0\n").unwrap();
        assert_eq!(d.formula.len(), 1);
        assert_eq!(d.warnings.len(), 1);
    }

    #[test]
    fn round_trip() {
        let f = CnfFormula::from_dimacs_clauses(
            4,
            &[&[2, 3], &[1, -2], &[-1, -2, 3], &[-3, 4], &[-3, -4]],
        )
        .unwrap();
        let text = to_dimacs_string(&f);
        assert_eq!(
            text,
            "p cnf 4 5\n2 3 0\n1 -2 0\n-1 -2 3 0\n-3 4 0\n-3 -4 0\n"
        );
        assert_eq!(parse_dimacs(&text).unwrap().formula, f);
    }

    #[test]
    fn empty_clause_and_end_marker() {
        let d = parse_dimacs("p cnf 1 1\n0\n%\n0\n").unwrap();
        assert_eq!(d.formula.clauses(), &[Clause::empty()]);
    }
}
