// Seeding the boundary with one cube Unsat(C) per clause instead of a
// single cube, and tracking the progress measure |Union(Body)| + |F|.

use ssc_sat::generate::random_k_cnf;
use ssc_sat::oracle::brute_force_sat;
use ssc_sat::{gen_ssc, CnfFormula, InitStrategy, SscConfig, SscOutcome};

use rand::rngs::StdRng;
use rand::SeedableRng;

fn report(
    name: &str,
    formula: &CnfFormula,
    init: InitStrategy,
) -> Result<(), Box<dyn std::error::Error>> {
    let config = SscConfig {
        init,
        ..Default::default()
    };
    let r = gen_ssc(formula, &config)?;
    let size = match &r.outcome {
        SscOutcome::Unsatisfiable { body, .. } => format!("{} cubes", body.len()),
        SscOutcome::Satisfiable(cube) => format!("satisfying cube {cube}"),
    };
    let xi: Vec<String> = r.xi_log.iter().map(|s| s.xi().to_string()).collect();
    println!(
        "  {name:<6} {} after {} iterations, {} learned, {size}",
        r.verdict(),
        r.iterations,
        r.learned.len()
    );
    println!("         xi: {}", xi.join(" "));
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = StdRng::seed_from_u64(2024);
    for clauses in [26, 40, 48] {
        let formula = random_k_cnf(6, clauses, 3, &mut rng)?;
        println!(
            "random 3-CNF: 6 variables, {clauses} clauses, oracle says {}",
            brute_force_sat(&formula)?.verdict()
        );
        report("single", &formula, InitStrategy::SingleCube(None))?;
        report("ne", &formula, InitStrategy::NeStyle)?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
