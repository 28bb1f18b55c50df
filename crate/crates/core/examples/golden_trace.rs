// Cube clusters on a five-clause formula over four variables, starting from
// the cube ¬x2 ¬x3. Two clauses are learned by merging before the body
// becomes stable.

use ssc_sat::trace::{render_record, TraceStyle};
use ssc_sat::{gen_ssc, verify_ssc, CnfFormula, Cube, InitStrategy, SscConfig, SscOutcome};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let formula = CnfFormula::from_dimacs_clauses(
        4,
        &[&[2, 3], &[1, -2], &[-1, -2, 3], &[-3, 4], &[-3, -4]],
    )?;
    let config = SscConfig {
        init: InitStrategy::SingleCube(Some(Cube::from_dimacs(4, &[-2, -3])?)),
        trace: true,
        ..Default::default()
    };
    let result = gen_ssc(&formula, &config)?;
    for record in &result.trace {
        println!("{}", render_record(record, TraceStyle::Pretty));
    }

    for l in &result.learned {
        println!(
            "C{} = {}  (from C{} and C{} on {})",
            l.id, l.clause, l.antecedents[0], l.antecedents[1], l.pivot
        );
    }
    let SscOutcome::Unsatisfiable { body, transport } = &result.outcome else {
        return Err("expected UNSAT".into());
    };
    verify_ssc(&result.formula, body, transport)?;
    println!("body of {} cubes verified", body.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
