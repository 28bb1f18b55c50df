use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ssc_sat::coverage::CoverageConfig;
use ssc_sat::dimacs::{parse_dimacs, to_dimacs_string};
use ssc_sat::driver::{run, Mode, RunConfig};
use ssc_sat::oracle::{brute_force_sat, OracleAnswer};
use ssc_sat::proof::{check_proof, Proof};
use ssc_sat::symmetry::{ph_formula, ph_symmetry_generators, SymmetryGroup, DEFAULT_ORBIT_LIMIT};
use ssc_sat::trace::{write_trace, TraceStyle};
use ssc_sat::{CnfFormula, PopPolicy, Verdict};

#[derive(Parser)]
#[command(
    name = "ssc-sat",
    version,
    about = "SAT solving with stable sets of points and clusters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pop {
    Fifo,
    Lifo,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverageArg {
    Full,
    Shared,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a DIMACS formula. Exits 10 on SAT, 20 on UNSAT.
    Solve {
        #[arg(long, default_value = "ssc", value_parser = clap::value_parser!(Mode))]
        mode: Mode,
        /// Start point (ssp, sym: bit string like 0110) or start cube (ssc: literals like "-2 -3").
        #[arg(long, allow_hyphen_values = true)]
        init: Option<String>,
        #[arg(long, value_enum, default_value = "fifo")]
        pop: Pop,
        /// Disable cube merging and clause learning.
        #[arg(long)]
        no_merge: bool,
        #[arg(long, value_enum, default_value = "full")]
        coverage: CoverageArg,
        /// Write the step trace here ("-" for stdout).
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the certificate here ("-" for stdout).
        #[arg(long)]
        proof: Option<PathBuf>,
        /// Use ¬x notation in the trace instead of signed integers.
        #[arg(long)]
        pretty: bool,
        /// Symmetry generators in cycle notation, one per line (sym mode).
        #[arg(long)]
        symmetry: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ORBIT_LIMIT)]
        orbit_limit: usize,
        #[arg(long)]
        max_iterations: Option<u64>,
        file: PathBuf,
    },
    /// Write the pigeon-hole formula for N pigeons and M holes.
    GenPh {
        n: usize,
        m: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Also write pigeon and hole swap generators.
        #[arg(long)]
        symmetry_out: Option<PathBuf>,
    },
    /// Check a certificate written by `solve --proof`. Exits 0 when accepted.
    Verify {
        #[arg(long)]
        proof: PathBuf,
        file: PathBuf,
    },
    /// Decide a formula by truth-table enumeration (at most 24 variables).
    Oracle { file: PathBuf },
}

fn read_formula(path: &Path) -> Result<CnfFormula, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let d = parse_dimacs(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    for w in &d.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(d.formula)
}

fn write_output(path: &Path, body: &[u8]) -> Result<(), String> {
    if path.as_os_str() == "-" {
        io::stdout().write_all(body).map_err(|e| e.to_string())
    } else {
        fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn verdict_line(v: Verdict) -> &'static str {
    match v {
        Verdict::Sat => "s SATISFIABLE",
        Verdict::Unsat => "s UNSATISFIABLE",
    }
}

fn execute(command: Command) -> Result<u8, String> {
    match command {
        Command::Solve {
            mode,
            init,
            pop,
            no_merge,
            coverage,
            trace,
            proof,
            pretty,
            symmetry,
            orbit_limit,
            max_iterations,
            file,
        } => {
            let formula = read_formula(&file)?;
            let symmetry = match symmetry {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    Some(
                        SymmetryGroup::parse(formula.num_vars(), &text)
                            .map_err(|e| format!("{}: {e}", path.display()))?,
                    )
                }
                None => None,
            };
            let config = RunConfig {
                mode,
                init,
                pop: match pop {
                    Pop::Fifo => PopPolicy::Fifo,
                    Pop::Lifo => PopPolicy::Lifo,
                },
                merge: !no_merge,
                coverage: match coverage {
                    CoverageArg::Full => CoverageConfig::full(),
                    CoverageArg::Shared => CoverageConfig::shared_literal(),
                },
                trace: trace.is_some(),
                symmetry,
                orbit_limit,
                max_iterations,
            };
            let report = run(&formula, &config).map_err(|e| e.to_string())?;
            if let Some(path) = trace {
                let style = if pretty {
                    TraceStyle::Pretty
                } else {
                    TraceStyle::Dimacs
                };
                let mut buf = Vec::new();
                write_trace(&report.trace, style, &mut buf).map_err(|e| e.to_string())?;
                write_output(&path, &buf)?;
            }
            if let Some(path) = proof {
                write_output(&path, report.proof.to_text().as_bytes())?;
            }
            println!("c mode {mode}, {} iterations", report.iterations);
            if report.verdict == Verdict::Unsat {
                println!(
                    "c certificate size {}, learned clauses {}",
                    report.certificate_size, report.learned
                );
            }
            println!("{}", verdict_line(report.verdict));
            Ok(report.verdict.exit_code() as u8)
        }
        Command::GenPh {
            n,
            m,
            output,
            symmetry_out,
        } => {
            if n == 0 || m == 0 {
                return Err("pigeon and hole counts must be at least 1".into());
            }
            let (formula, inst) = ph_formula(n, m);
            let text = format!(
                "c pigeon-hole {n} pigeons {m} holes\n{}",
                to_dimacs_string(&formula)
            );
            match output {
                Some(path) => write_output(&path, text.as_bytes())?,
                None => print!("{text}"),
            }
            if let Some(path) = symmetry_out {
                write_output(&path, ph_symmetry_generators(&inst).to_text().as_bytes())?;
            }
            Ok(0)
        }
        Command::Verify { proof, file } => {
            let formula = read_formula(&file)?;
            let text =
                fs::read_to_string(&proof).map_err(|e| format!("{}: {e}", proof.display()))?;
            let parsed = Proof::parse(&text).map_err(|e| format!("{}: {e}", proof.display()))?;
            match check_proof(&formula, &parsed) {
                Ok(v) => {
                    println!("s VERIFIED {v}");
                    Ok(0)
                }
                Err(e) => Err(format!("proof rejected: {e}")),
            }
        }
        Command::Oracle { file } => {
            let formula = read_formula(&file)?;
            let answer = brute_force_sat(&formula).map_err(|e| e.to_string())?;
            if let OracleAnswer::Satisfiable(p) = &answer {
                println!("c first witness {p}");
            }
            println!("{}", verdict_line(answer.verdict()));
            Ok(answer.verdict().exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
