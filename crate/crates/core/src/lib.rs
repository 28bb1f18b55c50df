//! SAT solving by stable sets of points and stable sets of clusters.
//!
//! A set of points is *stable* for a CNF formula when every point falsifies
//! some clause (its transport clause) and flipping any variable of that
//! clause lands inside the set again. Such a set exists iff the formula is
//! unsatisfiable, so it doubles as a certificate.
//!
//! [`ssp`] grows such sets point by point. [`ssc`] works with cubes of points
//! and learns clauses when two cubes merge. [`symmetry`] keeps one point per
//! orbit of a permutation group. Every result can be checked by [`proof`].
//!
//! The runnable programs under `examples/` walk through each capability.

pub mod cnf;
pub mod coverage;
pub mod cube;
pub mod dimacs;
pub mod driver;
pub mod error;
pub mod generate;
pub mod oracle;
pub mod proof;
pub mod ssc;
pub mod ssp;
pub mod symmetry;
pub mod trace;

use std::fmt;

pub use cnf::{
    evaluate_clause, point_nbhd, resolvable_on, resolve, Clause, ClauseId, CnfFormula, Evaluation,
    Lit, Point, Var,
};
pub use coverage::{is_covered, union_count, Coverage, CoverageConfig, CoverageScope};
pub use cube::{merge, Component, Cube};
pub use error::{Error, Result};
pub use ssc::{
    gen_ssc, merge_cubes, pick_split_var, verify_ssc, InitStrategy, SscConfig, SscOutcome,
    SscResult,
};
pub use ssp::{
    gen_ssp, verify_ssp, ClausePick, PopPolicy, SspConfig, SspOutcome, SspResult, Violation,
};

/// Satisfiability verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Sat,
    Unsat,
}

impl Verdict {
    /// SAT-competition exit code: 10 for SAT, 20 for UNSAT.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Sat => 10,
            Verdict::Unsat => 20,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "SAT",
            Verdict::Unsat => "UNSAT",
        })
    }
}
