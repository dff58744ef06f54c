//! Workloads shared by the criterion benchmarks.

use kontext::greechie::{make_bug, make_star};
use kontext::ray::complete_context;
use kontext::{Diagram, QrngConfig, Ray};

/// A chain of `n` bugs glued end to end: the `b` of bug `i` is the `c` of
/// bug `i + 1`. Enumeration cost grows quickly with `n`.
pub fn bug_chain(n: usize) -> Diagram {
    let bug = make_bug().strip_coordinates();
    let mut atoms = Vec::new();
    let mut blocks = Vec::new();
    for i in 0..n {
        let name = |id: &str| match id {
            "c" => format!("x{i}"),
            "b" => format!("x{}", i + 1),
            other => format!("{other}{i}"),
        };
        for atom in bug.atoms() {
            if atom.id != "c" || i == 0 {
                atoms.push(kontext::Atom::new(name(&atom.id)));
            }
        }
        for block in bug.blocks() {
            blocks.push(bug.block_ids(block).into_iter().map(name).collect());
        }
    }
    Diagram::new(3, atoms, blocks).expect("chained bugs are legal")
}

pub fn star(n: usize) -> Diagram {
    make_star(n).expect("n >= 1")
}

/// Sampler for the bug's `c`/`b` pair.
pub fn bug_sampler(n: usize) -> QrngConfig {
    let bug = make_bug();
    let ray = |id: &str| -> Ray {
        bug.atom(id)
            .and_then(|a| a.ray.clone())
            .expect("coordinatized")
    };
    let basis = complete_context(&[ray("b")], 3, 1e-9).expect("single ray completes");
    QrngConfig::new(ray("c"), basis, 0, 1, n)
}
