// Writes an UNSAT certificate, reads it back and replays it: learned
// clauses are re-derived by resolution and the clusters are re-checked.
// A tampered copy is rejected.

use ssc_sat::dimacs::{parse_dimacs, to_dimacs_string};
use ssc_sat::proof::{check_proof, Proof};
use ssc_sat::symmetry::ph_formula;
use ssc_sat::{gen_ssc, SscConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (formula, _) = ph_formula(3, 2);
    let text = to_dimacs_string(&formula);
    let formula = parse_dimacs(&text)?.formula;

    let result = gen_ssc(&formula, &SscConfig::default())?;
    let proof_text = Proof::from_ssc(&result).to_text();
    print!("{proof_text}");

    let verdict = check_proof(&formula, &Proof::parse(&proof_text)?)?;
    println!("checker accepts: {verdict}");

    let first_cluster = proof_text.find("cluster").ok_or("no clusters")?;
    let line_end = first_cluster
        + proof_text[first_cluster..]
            .find('\n')
            .ok_or("unterminated line")?
        + 1;
    let tampered = format!(
        "{}{}",
        &proof_text[..first_cluster],
        &proof_text[line_end..]
    );
    match check_proof(&formula, &Proof::parse(&tampered)?) {
        Ok(_) => return Err("a certificate missing a cluster was accepted".into()),
        Err(e) => println!("without its first cluster: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
