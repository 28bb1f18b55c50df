//! One entry point over all engines, as used by the command-line tool.

use std::fmt;
use std::str::FromStr;

use crate::cnf::{CnfFormula, Point};
use crate::coverage::CoverageConfig;
use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::proof::Proof;
use crate::ssc::{gen_ssc, InitStrategy, SscConfig, SscOutcome};
use crate::ssp::{gen_ssp, PopPolicy, SspConfig, SspOutcome};
use crate::symmetry::{gen_ssp_mod_symmetry, ModSymConfig, SymmetryGroup, DEFAULT_ORBIT_LIMIT};
use crate::trace::TraceRecord;
use crate::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Point-by-point stable set.
    Ssp,
    /// Cube clusters grown from a single cube.
    #[default]
    Ssc,
    /// Cube clusters seeded with `Unsat(C)` for every clause.
    SscNe,
    /// Point search modulo a symmetry group.
    Sym,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ssp" => Ok(Mode::Ssp),
            "ssc" => Ok(Mode::Ssc),
            "ssc-ne" => Ok(Mode::SscNe),
            "sym" => Ok(Mode::Sym),
            _ => Err(format!(
                "unknown mode {s:?} (expected ssp, ssc, ssc-ne or sym)"
            )),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Ssp => "ssp",
            Mode::Ssc => "ssc",
            Mode::SscNe => "ssc-ne",
            Mode::Sym => "sym",
        })
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub mode: Mode,
    /// Starting point (`ssp`, `sym`: a bit string such as `0110`) or starting
    /// cube (`ssc`: DIMACS literals such as `-2 -3`).
    pub init: Option<String>,
    pub pop: PopPolicy,
    pub merge: bool,
    pub coverage: CoverageConfig,
    pub trace: bool,
    /// Required in `sym` mode, rejected elsewhere.
    pub symmetry: Option<SymmetryGroup>,
    pub orbit_limit: usize,
    pub max_iterations: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::Ssc,
            init: None,
            pop: PopPolicy::Fifo,
            merge: true,
            coverage: CoverageConfig::full(),
            trace: false,
            symmetry: None,
            orbit_limit: DEFAULT_ORBIT_LIMIT,
            max_iterations: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub verdict: Verdict,
    pub proof: Proof,
    pub trace: Vec<TraceRecord>,
    pub iterations: u64,
    /// Body size: points for point modes, cubes for cluster modes.
    pub certificate_size: usize,
    pub learned: usize,
}

fn parse_point(n: usize, text: &str) -> Result<Point> {
    let p = Point::parse(text.trim())?;
    if p.len() != n {
        return Err(Error::contract(format!(
            "start point {text:?} needs {n} bits"
        )));
    }
    Ok(p)
}

fn parse_cube(n: usize, text: &str) -> Result<Cube> {
    let values = text
        .split_whitespace()
        .filter(|t| *t != "0")
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| Error::contract(format!("bad literal {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Cube::from_dimacs(n, &values)
}

pub fn run(formula: &CnfFormula, config: &RunConfig) -> Result<RunReport> {
    let n = formula.num_vars();
    if config.symmetry.is_some() != (config.mode == Mode::Sym) {
        return Err(Error::contract(
            "a symmetry file goes with --mode sym, and only with it",
        ));
    }
    if config.mode == Mode::SscNe && config.init.is_some() {
        return Err(Error::contract("--init does not apply to --mode ssc-ne"));
    }
    let ssp_config = SspConfig {
        pop: config.pop,
        trace: config.trace,
        max_iterations: config.max_iterations,
        ..Default::default()
    };
    match config.mode {
        Mode::Ssp | Mode::Sym => {
            let init = match &config.init {
                Some(text) => parse_point(n, text)?,
                None => Point::zeros(n),
            };
            let (result, proof) = if let Some(group) = &config.symmetry {
                let cfg = ModSymConfig {
                    ssp: ssp_config,
                    orbit_limit: config.orbit_limit,
                };
                let r = gen_ssp_mod_symmetry(formula, group, &init, &cfg)?;
                let proof = Proof::from_ssp(&r, Some(group));
                (r, proof)
            } else {
                let r = gen_ssp(formula, &init, &ssp_config)?;
                let proof = Proof::from_ssp(&r, None);
                (r, proof)
            };
            let certificate_size = match &result.outcome {
                SspOutcome::Unsatisfiable { points, .. } => points.len(),
                SspOutcome::Satisfiable(_) => 0,
            };
            Ok(RunReport {
                verdict: result.verdict(),
                proof,
                trace: result.trace,
                iterations: result.iterations,
                certificate_size,
                learned: 0,
            })
        }
        Mode::Ssc | Mode::SscNe => {
            let init = match (&config.init, config.mode) {
                (_, Mode::SscNe) => InitStrategy::NeStyle,
                (Some(text), _) => InitStrategy::SingleCube(Some(parse_cube(n, text)?)),
                (None, _) => InitStrategy::SingleCube(None),
            };
            let cfg = SscConfig {
                init,
                pop: config.pop,
                merge_enabled: config.merge,
                coverage: config.coverage,
                trace: config.trace,
                track_xi: false,
                max_iterations: config.max_iterations,
                ..Default::default()
            };
            let result = gen_ssc(formula, &cfg)?;
            let certificate_size = match &result.outcome {
                SscOutcome::Unsatisfiable { body, .. } => body.len(),
                SscOutcome::Satisfiable(_) => 0,
            };
            Ok(RunReport {
                verdict: result.verdict(),
                proof: Proof::from_ssc(&result),
                trace: result.trace.clone(),
                iterations: result.iterations,
                certificate_size,
                learned: result.learned.len(),
            })
        }
    }
}
