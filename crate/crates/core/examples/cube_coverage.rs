// Cube algebra and coverage queries: Unsat(C), splitting, neighborhood
// cubes, merging, and whether a cube lies inside a union of cubes.

use ssc_sat::{is_covered, merge, union_count, Clause, Coverage, CoverageConfig, Cube, Var};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4;
    let c1 = Clause::from_dimacs(&[2, 3])?;
    let p1 = Cube::unsat_of(&c1, n)?;
    println!("Unsat({c1}) = {p1}, {} points", p1.point_count());

    let nbhd = p1.nbhd(&c1)?;
    for q in &nbhd {
        println!("  neighbor cube {q}");
    }

    let (lo, hi) = nbhd[0].split(Var::new(1))?;
    println!("split {} on x1 -> {lo} | {hi}", nbhd[0]);

    let c2 = Clause::from_dimacs(&[1, -2])?;
    let c3 = Clause::from_dimacs(&[-1, -2, 3])?;
    let (merged, resolvent) = merge(&lo, &hi, Var::new(1), &c2, &c3).ok_or("not mergeable")?;
    println!("merge -> {merged}, which falsifies the resolvent {resolvent}");

    let covers = [p1.clone(), merged.clone()];
    for target in [Cube::from_dimacs(n, &[-3])?, Cube::from_dimacs(n, &[2, 3])?] {
        let full = is_covered(&target, &covers, &CoverageConfig::full())?;
        let shared = is_covered(&target, &covers, &CoverageConfig::shared_literal())?;
        println!(
            "{target} covered by {{{p1}, {merged}}}: full {full:?}, shared-literal {shared:?}"
        );
        assert!(shared != Coverage::Covered || full == Coverage::Covered);
    }
    println!("|{p1} ∪ {merged}| = {}", union_count(&covers, n)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
