//! Formula generators for testing and benchmarking.

use rand::seq::index::sample;
use rand::Rng;

use crate::cnf::{Clause, CnfFormula, Lit, Var};
use crate::error::{Error, Result};

pub use crate::symmetry::{ph_formula, PhInstance};

/// Uniform random k-CNF: each clause draws `k` distinct variables and
/// independent signs. Duplicate clauses are allowed.
pub fn random_k_cnf(
    num_vars: usize,
    num_clauses: usize,
    k: usize,
    rng: &mut impl Rng,
) -> Result<CnfFormula> {
    if k > num_vars {
        return Err(Error::contract(format!(
            "clause width {k} exceeds the {num_vars} available variables"
        )));
    }
    let mut f = CnfFormula::new(num_vars);
    for _ in 0..num_clauses {
        let lits = sample(rng, num_vars, k)
            .into_iter()
            .map(|slot| Lit::new(Var::from_slot(slot), rng.gen_bool(0.5)))
            .collect::<Vec<_>>();
        f.add_clause(Clause::new(lits)?)?;
    }
    Ok(f)
}

/// Every non-tautological clause over `num_vars` variables with between 1
/// and `max_width` literals, ordered by width, then literal list.
pub fn all_clauses(num_vars: usize, max_width: usize) -> Vec<Clause> {
    let mut out = Vec::new();
    // Each variable is absent, positive or negative.
    let total = 3usize.pow(num_vars as u32);
    for code in 0..total {
        let mut lits = Vec::new();
        let mut c = code;
        for slot in 0..num_vars {
            match c % 3 {
                1 => lits.push(Lit::new(Var::from_slot(slot), true)),
                2 => lits.push(Lit::new(Var::from_slot(slot), false)),
                _ => {}
            }
            c /= 3;
        }
        if !lits.is_empty() && lits.len() <= max_width {
            out.push(Clause::new(lits).expect("one literal per variable"));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn random_shape() {
        let mut rng = StdRng::seed_from_u64(7);
        let f = random_k_cnf(6, 25, 3, &mut rng).unwrap();
        assert_eq!(f.len(), 25);
        assert!(f.clauses().iter().all(|c| c.len() == 3));
        assert!(random_k_cnf(2, 1, 3, &mut rng).is_err());
    }

    #[test]
    fn random_is_seeded() {
        let a = random_k_cnf(8, 30, 3, &mut StdRng::seed_from_u64(1)).unwrap();
        let b = random_k_cnf(8, 30, 3, &mut StdRng::seed_from_u64(1)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn clause_census() {
        // 3^n - 1 non-empty clauses when the width is unbounded.
        assert_eq!(all_clauses(3, 3).len(), 26);
        assert_eq!(all_clauses(3, 1).len(), 6);
        assert_eq!(all_clauses(3, 2).len(), 6 + 12);
        assert_eq!(all_clauses(4, 4).len(), 80);
    }
}
