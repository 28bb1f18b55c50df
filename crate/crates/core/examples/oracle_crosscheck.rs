// Random 3-CNF formulas around the satisfiability threshold, decided by
// both engines and by truth-table enumeration.

use rand::rngs::StdRng;
use rand::SeedableRng;

use ssc_sat::generate::random_k_cnf;
use ssc_sat::oracle::brute_force_sat;
use ssc_sat::{gen_ssc, gen_ssp, Point, SscConfig, SspConfig, Verdict};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = StdRng::seed_from_u64(7);
    for ratio in [3.0, 4.26, 5.5] {
        let (mut sat, mut unsat) = (0, 0);
        for n in 5..=9 {
            let m = (ratio * n as f64).round() as usize;
            let formula = random_k_cnf(n, m, 3, &mut rng)?;
            let expect = brute_force_sat(&formula)?.verdict();
            let ssp = gen_ssp(&formula, &Point::zeros(n), &SspConfig::default())?.verdict();
            let ssc = gen_ssc(&formula, &SscConfig::default())?.verdict();
            if ssp != expect || ssc != expect {
                return Err(format!("disagreement on n={n}, ratio {ratio}").into());
            }
            match expect {
                Verdict::Sat => sat += 1,
                Verdict::Unsat => unsat += 1,
            }
        }
        println!("ratio {ratio}: {sat} SAT, {unsat} UNSAT, all engines agree");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
