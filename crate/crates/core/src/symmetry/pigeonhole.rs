use crate::cnf::{Clause, CnfFormula, Lit, Var};

use super::{Permutation, SymmetryGroup};

/// Variable layout of a pigeon-hole formula: pigeon `i` sits in hole `j`
/// iff variable `(i - 1) * holes + j` is true.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhInstance {
    pub pigeons: usize,
    pub holes: usize,
}

impl PhInstance {
    pub fn num_vars(&self) -> usize {
        self.pigeons * self.holes
    }

    /// 1-based pigeon and hole.
    pub fn var(&self, pigeon: usize, hole: usize) -> Var {
        assert!((1..=self.pigeons).contains(&pigeon) && (1..=self.holes).contains(&hole));
        Var::new(((pigeon - 1) * self.holes + hole) as u32)
    }

    pub fn clause_count(&self) -> usize {
        let n = self.pigeons;
        n + self.holes * n * (n - 1) / 2
    }
}

/// Pigeon-hole formula: every pigeon takes a hole, no hole takes two pigeons.
/// Panics unless both counts are at least 1.
pub fn ph_formula(pigeons: usize, holes: usize) -> (CnfFormula, PhInstance) {
    assert!(
        pigeons >= 1 && holes >= 1,
        "pigeon-hole needs at least one pigeon and one hole"
    );
    let inst = PhInstance { pigeons, holes };
    let mut f = CnfFormula::new(inst.num_vars());
    for i in 1..=pigeons {
        let c = Clause::new((1..=holes).map(|j| Lit::new(inst.var(i, j), true)))
            .expect("distinct variables");
        f.add_clause(c).expect("in range");
    }
    for j in 1..=holes {
        for i in 1..=pigeons {
            for k in i + 1..=pigeons {
                let c = Clause::new([
                    Lit::new(inst.var(i, j), false),
                    Lit::new(inst.var(k, j), false),
                ])
                .expect("distinct variables");
                f.add_clause(c).expect("in range");
            }
        }
    }
    (f, inst)
}

/// Adjacent pigeon swaps followed by adjacent hole swaps.
pub fn ph_symmetry_generators(inst: &PhInstance) -> SymmetryGroup {
    let n = inst.num_vars();
    let mut gens = Vec::new();
    for i in 1..inst.pigeons {
        let mut images: Vec<u32> = (1..=n as u32).collect();
        for j in 1..=inst.holes {
            let (a, b) = (inst.var(i, j), inst.var(i + 1, j));
            images.swap(a.slot(), b.slot());
        }
        gens.push(Permutation::from_images(&images).expect("row swap is a bijection"));
    }
    for j in 1..inst.holes {
        let mut images: Vec<u32> = (1..=n as u32).collect();
        for i in 1..=inst.pigeons {
            let (a, b) = (inst.var(i, j), inst.var(i, j + 1));
            images.swap(a.slot(), b.slot());
        }
        gens.push(Permutation::from_images(&images).expect("column swap is a bijection"));
    }
    SymmetryGroup::new(n, gens).expect("generators act on the instance's variables")
}
