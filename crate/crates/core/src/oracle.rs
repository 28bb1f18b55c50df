//! Truth-table oracle used to cross-check the engines.

use crate::cnf::{CnfFormula, Point};
use crate::error::{Error, Result};
use crate::Verdict;

pub const DEFAULT_ORACLE_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    /// The first satisfying point in lexicographic order (x1 most significant).
    Satisfiable(Point),
    Unsatisfiable,
}

impl OracleAnswer {
    pub fn verdict(&self) -> Verdict {
        match self {
            OracleAnswer::Satisfiable(_) => Verdict::Sat,
            OracleAnswer::Unsatisfiable => Verdict::Unsat,
        }
    }
}

pub fn brute_force_sat(formula: &CnfFormula) -> Result<OracleAnswer> {
    brute_force_sat_capped(formula, DEFAULT_ORACLE_CAP)
}

/// Scans all `2^n` points. Refuses formulas with more than `cap` variables.
pub fn brute_force_sat_capped(formula: &CnfFormula, cap: usize) -> Result<OracleAnswer> {
    let n = formula.num_vars();
    if n > cap || n > 63 {
        return Err(Error::OracleCap { num_vars: n, cap });
    }
    // Bit (n - v) of the point index holds x_v.
    let masks: Vec<(u64, u64)> = formula
        .clauses()
        .iter()
        .map(|c| {
            c.lits().iter().fold((0, 0), |(pos, neg), l| {
                let bit = 1u64 << (n - l.var().index() as usize);
                if l.is_positive() {
                    (pos | bit, neg)
                } else {
                    (pos, neg | bit)
                }
            })
        })
        .collect();
    for index in 0..1u64 << n {
        if masks
            .iter()
            .all(|&(pos, neg)| index & pos != 0 || !index & neg != 0)
        {
            return Ok(OracleAnswer::Satisfiable(Point::from_index(n, index)));
        }
    }
    Ok(OracleAnswer::Unsatisfiable)
}
