//! Test-only oracles: exhaustive truth tables that share no code with the
//! propagation-based solver.

#![allow(dead_code)]

use std::collections::BTreeMap;

use kontext::{Atom, Diagram};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

pub type Assignment = BTreeMap<String, bool>;

fn sorted_ids(diagram: &Diagram) -> Vec<String> {
    let mut ids: Vec<String> = diagram.atoms().iter().map(|a| a.id.clone()).collect();
    ids.sort();
    ids
}

/// All total assignments with exactly one 1 per block, filtered from the
/// full 2^n table. Bit `n - 1 - i` of the counter is the i-th sorted id, so
/// counting up walks the table in lexicographic order with 0 before 1.
pub fn brute_force_measures(diagram: &Diagram) -> Vec<Assignment> {
    let ids = sorted_ids(diagram);
    let n = ids.len();
    assert!(n <= 20, "truth table too large");
    let position: BTreeMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let blocks: Vec<Vec<usize>> = diagram
        .blocks()
        .iter()
        .map(|b| diagram.block_ids(b).iter().map(|id| position[id]).collect())
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let bit = |i: usize| mask >> (n - 1 - i) & 1 == 1;
        if blocks
            .iter()
            .all(|b| b.iter().filter(|&&i| bit(i)).count() == 1)
        {
            out.push(
                ids.iter()
                    .enumerate()
                    .map(|(i, id)| (id.clone(), bit(i)))
                    .collect(),
            );
        }
    }
    out
}

/// Exactly-one-per-block CNF with 1-based DIMACS literals: one at-least-one
/// clause and all pairwise at-most-one clauses per block.
pub fn exactly_one_cnf(diagram: &Diagram) -> (usize, Vec<Vec<i32>>) {
    let mut clauses = Vec::new();
    for block in diagram.blocks() {
        let vars: Vec<i32> = block.members().iter().map(|&i| i as i32 + 1).collect();
        clauses.push(vars.clone());
        for (k, &x) in vars.iter().enumerate() {
            for &y in &vars[k + 1..] {
                clauses.push(vec![-x, -y]);
            }
        }
    }
    (diagram.atoms().len(), clauses)
}

/// Exhaustive truth-table satisfiability of a CNF.
pub fn truth_table_sat(vars: usize, clauses: &[Vec<i32>]) -> bool {
    (0u64..(1u64 << vars)).any(|mask| {
        clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = mask >> (lit.unsigned_abs() - 1) & 1 == 1;
                if lit > 0 {
                    value
                } else {
                    !value
                }
            })
        })
    })
}

/// Every measure extending `premises`, by brute force.
pub fn brute_force_extensions(diagram: &Diagram, premises: &[(&str, bool)]) -> Vec<Assignment> {
    brute_force_measures(diagram)
        .into_iter()
        .filter(|m| premises.iter().all(|(id, v)| m[*id] == *v))
        .collect()
}

/// Random Greechie-legal d = 3 diagram with 3..=max_atoms atoms. Atoms that
/// end up in no block are kept; they are unconstrained.
pub fn random_legal_diagram(seed: u64, max_atoms: usize) -> Diagram {
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut below = |n: u64| (rng.next_u64() % n) as usize;
    let n = 3 + below((max_atoms - 2) as u64);
    let target_blocks = 1 + below(2 * n as u64 / 3 + 2);
    let mut blocks: Vec<[usize; 3]> = Vec::new();
    let mut attempts = 0;
    while blocks.len() < target_blocks && attempts < 200 {
        attempts += 1;
        let mut b = [below(n as u64), below(n as u64), below(n as u64)];
        b.sort_unstable();
        if b[0] == b[1] || b[1] == b[2] {
            continue;
        }
        let legal = blocks
            .iter()
            .all(|o| b.iter().filter(|x| o.contains(x)).count() <= 1);
        if legal {
            blocks.push(b);
        }
    }
    let atoms = (0..n).map(|i| Atom::new(format!("x{i:02}"))).collect();
    let blocks = blocks
        .iter()
        .map(|b| b.iter().map(|i| format!("x{i:02}")).collect())
        .collect();
    Diagram::new(3, atoms, blocks).expect("generator only emits legal blocks")
}

/// The Fano plane: 7 points, 7 lines, any two lines meet in one point.
/// Each point lies on 3 lines, so no set of points meets every line exactly
/// once (3k = 7 has no solution).
pub fn fano() -> Diagram {
    let lines = [
        [1, 2, 3],
        [1, 4, 5],
        [1, 6, 7],
        [2, 4, 6],
        [2, 5, 7],
        [3, 4, 7],
        [3, 5, 6],
    ];
    let atoms = (1..=7).map(|i| Atom::new(format!("p{i}"))).collect();
    let blocks = lines
        .iter()
        .map(|l| l.iter().map(|i| format!("p{i}")).collect())
        .collect();
    Diagram::new(3, atoms, blocks).unwrap()
}

pub fn as_assignment(v: &kontext::Valuation) -> Assignment {
    v.iter().map(|(k, b)| (k.to_owned(), b)).collect()
}
