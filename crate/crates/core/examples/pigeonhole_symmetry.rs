// Pigeon-hole formulas PH(m+1, m) solved by a point search that keeps one
// representative per orbit of the pigeon and hole swaps, then expanded
// back into a plain stable set.

use ssc_sat::ssp::verify_ssp;
use ssc_sat::symmetry::{
    expand_mod_sym_to_ssp, gen_ssp_mod_symmetry, ph_formula, ph_symmetry_generators,
    verify_stable_mod_symmetry, ModSymConfig, DEFAULT_ORBIT_LIMIT,
};
use ssc_sat::{gen_ssp, Point, SspConfig, SspOutcome};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for m in 1..=3 {
        let (formula, inst) = ph_formula(m + 1, m);
        let group = ph_symmetry_generators(&inst);
        let start = Point::zeros(inst.num_vars());

        let reduced = gen_ssp_mod_symmetry(&formula, &group, &start, &ModSymConfig::default())?;
        let SspOutcome::Unsatisfiable { points, transport } = &reduced.outcome else {
            return Err("pigeon-hole with more pigeons than holes must be UNSAT".into());
        };
        verify_stable_mod_symmetry(&formula, points, transport, &group, DEFAULT_ORBIT_LIMIT)?;

        let (all, all_g) =
            expand_mod_sym_to_ssp(&formula, points, transport, &group, 1 << inst.num_vars())?;
        verify_ssp(&formula, &all, &all_g)?;

        let plain = gen_ssp(&formula, &start, &SspConfig::default())?;
        let plain_size = match &plain.outcome {
            SspOutcome::Unsatisfiable { points, .. } => points.len(),
            SspOutcome::Satisfiable(_) => 0,
        };
        println!(
            "PH({}, {m}): {} clauses, modulo symmetry {} points (2m+1 = {}), expanded {}, plain search {}",
            m + 1,
            formula.len(),
            points.len(),
            2 * m + 1,
            all.len(),
            plain_size
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
