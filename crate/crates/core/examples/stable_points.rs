// A hand-written stable set of 14 points for a 6-variable formula, checked
// point by point, and the same kind of set grown automatically.

use std::collections::HashMap;

use ssc_sat::{gen_ssp, verify_ssp, ClauseId, CnfFormula, Point, SspConfig, SspOutcome};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let formula = CnfFormula::from_dimacs_clauses(
        6,
        &[
            &[1, 2],
            &[-2, 3],
            &[-3, 4],
            &[-4, 1],
            &[-1, 5],
            &[-5, 6],
            &[-6, -1],
        ],
    )?;
    let listed = [
        ("000000", 1),
        ("010000", 2),
        ("011000", 3),
        ("011100", 4),
        ("111100", 5),
        ("111110", 6),
        ("111111", 7),
        ("011111", 4),
        ("011011", 3),
        ("010011", 2),
        ("000011", 1),
        ("100011", 7),
        ("100010", 6),
        ("100000", 5),
    ];
    let mut points = Vec::new();
    let mut transport = HashMap::new();
    for (bits, clause) in listed {
        let p = Point::parse(bits)?;
        transport.insert(p.clone(), ClauseId(clause));
        points.push(p);
    }
    verify_ssp(&formula, &points, &transport)?;
    println!("the listed {} points are stable", points.len());

    for i in 0..points.len() {
        let mut fewer = points.clone();
        let removed = fewer.remove(i);
        let why = verify_ssp(&formula, &fewer, &transport).expect_err("every point is needed");
        println!("without {removed}: {why}");
    }

    let grown = gen_ssp(&formula, &Point::zeros(6), &SspConfig::default())?;
    if let SspOutcome::Unsatisfiable { points, transport } = &grown.outcome {
        verify_ssp(&formula, points, transport)?;
        println!(
            "gen_ssp from 000000 found a stable set of {} points",
            points.len()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
