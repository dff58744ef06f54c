//! Greechie orthogonality diagrams.
//!
//! A [`Diagram`] is a hypergraph whose vertices are atoms (rays, possibly
//! without coordinates) and whose edges are blocks: contexts of exactly `d`
//! mutually orthogonal atoms. Blocks are labelled `C1`, `C2`, ... in the
//! order they were given.

mod configs;
mod dot;
mod io;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ray::{self, Ray};

pub use configs::{
    derive_bug_coordinatization, make_bug, make_star, BugCoordinatization, BUG_ATOMS, BUG_BLOCKS,
};
pub use dot::to_dot;
pub use io::{parse, serialize};

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub id: String,
    pub ray: Option<Ray>,
}

impl Atom {
    pub fn new(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            ray: None,
        }
    }

    pub fn with_ray(id: impl Into<String>, ray: Ray) -> Self {
        Self {
            id: id.into(),
            ray: Some(ray),
        }
    }
}

/// A context: `d` atom indices into the owning diagram, plus a label.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    label: String,
    members: Vec<usize>,
}

impl Block {
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Atom indices, in the order the block was declared.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.members.contains(&atom)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagram {
    dimension: usize,
    atoms: Vec<Atom>,
    blocks: Vec<Block>,
    index: HashMap<String, usize>,
}

impl Diagram {
    /// Build a diagram, labelling blocks `C1..Cn`.
    ///
    /// Two blocks sharing more than one atom are rejected for `d <= 3` and
    /// logged as a warning for larger dimensions.
    pub fn new(dimension: usize, atoms: Vec<Atom>, blocks: Vec<Vec<String>>) -> Result<Self> {
        let labelled = blocks
            .into_iter()
            .enumerate()
            .map(|(i, b)| (format!("C{}", i + 1), b))
            .collect();
        Self::with_labels(dimension, atoms, labelled)
    }

    /// Build a diagram with explicit block labels.
    pub fn with_labels(
        dimension: usize,
        atoms: Vec<Atom>,
        blocks: Vec<(String, Vec<String>)>,
    ) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::InvalidDimension(dimension));
        }
        let mut index = HashMap::with_capacity(atoms.len());
        for (i, atom) in atoms.iter().enumerate() {
            if atom.id.is_empty() {
                return Err(Error::Malformed("atom id must be nonempty".into()));
            }
            if index.insert(atom.id.clone(), i).is_some() {
                return Err(Error::DuplicateAtom(atom.id.clone()));
            }
            if let Some(r) = &atom.ray {
                if r.dimension() != dimension {
                    return Err(Error::VectorLength {
                        id: atom.id.clone(),
                        found: r.dimension(),
                        expected: dimension,
                    });
                }
            }
        }

        let mut built = Vec::with_capacity(blocks.len());
        for (label, ids) in blocks {
            if ids.len() != dimension {
                return Err(Error::BlockSize {
                    label,
                    found: ids.len(),
                    expected: dimension,
                });
            }
            let mut members = Vec::with_capacity(dimension);
            for id in &ids {
                let &i = index
                    .get(id)
                    .ok_or_else(|| Error::UnknownAtom(id.clone()))?;
                if members.contains(&i) {
                    return Err(Error::Malformed(format!("{label} lists atom `{id}` twice")));
                }
                members.push(i);
            }
            built.push(Block { label, members });
        }

        let diagram = Self {
            dimension,
            atoms,
            blocks: built,
            index,
        };
        for (i, j, shared) in diagram.legality_violations() {
            let (first, second) = (
                diagram.blocks[i].label.clone(),
                diagram.blocks[j].label.clone(),
            );
            if shared == dimension {
                return Err(Error::Malformed(format!(
                    "{first} and {second} are the same block"
                )));
            }
            if dimension <= 3 {
                return Err(Error::Legality {
                    first,
                    second,
                    shared,
                });
            }
            log::warn!("blocks {first} and {second} share {shared} atoms");
        }
        Ok(diagram)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn atom_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn atom(&self, id: &str) -> Option<&Atom> {
        self.atom_index(id).map(|i| &self.atoms[i])
    }

    pub fn block(&self, label: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.label == label)
    }

    /// Atom ids of a block, in declaration order.
    pub fn block_ids(&self, block: &Block) -> Vec<&str> {
        block
            .members
            .iter()
            .map(|&i| self.atoms[i].id.as_str())
            .collect()
    }

    /// Number of blocks containing the atom at `index`.
    pub fn degree(&self, index: usize) -> usize {
        self.blocks.iter().filter(|b| b.contains(index)).count()
    }

    /// For every atom, the indices of the blocks containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.atoms.len()];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &a in &b.members {
                inc[a].push(bi);
            }
        }
        inc
    }

    /// True when every atom carries coordinates.
    pub fn is_coordinatized(&self) -> bool {
        self.atoms.iter().all(|a| a.ray.is_some())
    }

    /// Pairs of blocks `(i, j, shared)` sharing more than one atom.
    pub fn legality_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                let shared = self.blocks[i]
                    .members
                    .iter()
                    .filter(|a| self.blocks[j].contains(**a))
                    .count();
                if shared > 1 {
                    out.push((i, j, shared));
                }
            }
        }
        out
    }

    /// The same diagram with all coordinates dropped.
    pub fn strip_coordinates(&self) -> Self {
        let mut out = self.clone();
        out.atoms.iter_mut().for_each(|a| a.ray = None);
        out
    }

    /// Rename atoms through `rename`; ids must stay unique.
    pub fn relabel(&self, mut rename: impl FnMut(&str) -> String) -> Result<Self> {
        let atoms: Vec<Atom> = self
            .atoms
            .iter()
            .map(|a| Atom {
                id: rename(&a.id),
                ray: a.ray.clone(),
            })
            .collect();
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                (
                    b.label.clone(),
                    b.members.iter().map(|&i| atoms[i].id.clone()).collect(),
                )
            })
            .collect();
        Self::with_labels(self.dimension, atoms, blocks)
    }

    fn ray_of(&self, index: usize) -> Result<&Ray> {
        self.atoms[index]
            .ray
            .as_ref()
            .ok_or_else(|| Error::MissingCoordinates(self.atoms[index].id.clone()))
    }
}

/// One in-block pair whose overlap exceeds the tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthogonalityViolation {
    pub block: String,
    pub first: String,
    pub second: String,
    pub overlap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealizationReport {
    pub violations: Vec<OrthogonalityViolation>,
    /// Largest `|⟨a|b⟩|` over all in-block pairs.
    pub max_residual: f64,
}

impl RealizationReport {
    pub fn is_realized(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check that the coordinatization realizes every block.
pub fn realize_check(diagram: &Diagram, tol: f64) -> Result<RealizationReport> {
    ray::check_tolerance(tol)?;
    if let Some(a) = diagram.atoms.iter().find(|a| a.ray.is_none()) {
        return Err(Error::MissingCoordinates(a.id.clone()));
    }
    let mut report = RealizationReport {
        violations: Vec::new(),
        max_residual: 0.0,
    };
    for block in &diagram.blocks {
        for (k, &i) in block.members.iter().enumerate() {
            for &j in &block.members[k + 1..] {
                let overlap = ray::inner_product(diagram.ray_of(i)?, diagram.ray_of(j)?)?.abs();
                report.max_residual = report.max_residual.max(overlap);
                if overlap > tol {
                    report.violations.push(OrthogonalityViolation {
                        block: block.label.clone(),
                        first: diagram.atoms[i].id.clone(),
                        second: diagram.atoms[j].id.clone(),
                        overlap,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// The star of an atom: every block containing it, with those blocks' atoms.
/// Block labels and atom order are inherited from `diagram`.
pub fn star(diagram: &Diagram, atom_id: &str) -> Result<Diagram> {
    let center = diagram
        .atom_index(atom_id)
        .ok_or_else(|| Error::UnknownAtom(atom_id.to_owned()))?;
    let blocks: Vec<&Block> = diagram
        .blocks
        .iter()
        .filter(|b| b.contains(center))
        .collect();
    let mut keep = vec![false; diagram.atoms.len()];
    keep[center] = true;
    for b in &blocks {
        b.members.iter().for_each(|&i| keep[i] = true);
    }
    let atoms = diagram
        .atoms
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(a, _)| a.clone())
        .collect();
    let blocks = blocks
        .iter()
        .map(|b| {
            (
                b.label.clone(),
                b.members
                    .iter()
                    .map(|&i| diagram.atoms[i].id.clone())
                    .collect(),
            )
        })
        .collect();
    Diagram::with_labels(diagram.dimension, atoms, blocks)
}

/// Build the diagram induced by a set of rays: atoms `r0..rn` in input order,
/// and one block per set of `d` pairwise orthogonal rays.
///
/// Blocks are the d-cliques of the orthogonality graph, enumerated exactly
/// and listed in lexicographic order of ray indices.
pub fn from_vectors(rays: &[Ray], dimension: usize, tol: f64) -> Result<Diagram> {
    ray::check_tolerance(tol)?;
    if dimension < 2 {
        return Err(Error::InvalidDimension(dimension));
    }
    if rays.len() < dimension {
        return Err(Error::TooFewRays {
            rays: rays.len(),
            dimension,
        });
    }
    for r in rays {
        if r.dimension() != dimension {
            return Err(Error::DimensionMismatch {
                left: r.dimension(),
                right: dimension,
            });
        }
    }
    let n = rays.len();
    let mut adjacent = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let overlap = ray::inner_product(&rays[i], &rays[j])?.abs();
            if (1.0 - overlap) <= tol {
                return Err(Error::DuplicateRay {
                    first: i,
                    second: j,
                });
            }
            let orth = overlap <= tol;
            adjacent[i][j] = orth;
            adjacent[j][i] = orth;
        }
    }

    let mut cliques = Vec::new();
    let mut current = Vec::with_capacity(dimension);
    extend_cliques(&adjacent, dimension, 0, &mut current, &mut cliques);

    let atoms = rays
        .iter()
        .enumerate()
        .map(|(i, r)| Atom::with_ray(format!("r{i}"), r.clone()))
        .collect();
    let blocks = cliques
        .into_iter()
        .map(|c| c.into_iter().map(|i| format!("r{i}")).collect())
        .collect();
    Diagram::new(dimension, atoms, blocks)
}

fn extend_cliques(
    adjacent: &[Vec<bool>],
    size: usize,
    start: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == size {
        out.push(current.clone());
        return;
    }
    for v in start..adjacent.len() {
        if current.iter().all(|&u| adjacent[u][v]) {
            current.push(v);
            extend_cliques(adjacent, size, v + 1, current, out);
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    fn ray(v: &[f64]) -> Ray {
        Ray::new(v.to_vec()).unwrap()
    }

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn single_block() -> Diagram {
        Diagram::new(
            3,
            vec![
                Atom::with_ray("x", Ray::basis(3, 0).unwrap()),
                Atom::with_ray("y", Ray::basis(3, 1).unwrap()),
                Atom::with_ray("z", Ray::basis(3, 2).unwrap()),
            ],
            vec![ids(&["x", "y", "z"])],
        )
        .unwrap()
    }

    #[test]
    fn construction_errors() {
        let atoms = || vec![Atom::new("c"), Atom::new("a"), Atom::new("d")];
        assert!(matches!(
            Diagram::new(3, atoms(), vec![ids(&["c", "a"])]),
            Err(Error::BlockSize { found: 2, .. })
        ));
        assert_eq!(
            Diagram::new(3, atoms(), vec![ids(&["c", "a", "q"])]),
            Err(Error::UnknownAtom("q".into()))
        );
        let mut dup = atoms();
        dup.push(Atom::new("a"));
        assert_eq!(
            Diagram::new(3, dup, vec![]),
            Err(Error::DuplicateAtom("a".into()))
        );
        assert!(matches!(
            Diagram::new(3, atoms(), vec![ids(&["c", "a", "a"])]),
            Err(Error::Malformed(_))
        ));
        let bad = vec![Atom::with_ray("c", ray(&[1.0, 0.0]))];
        assert!(matches!(
            Diagram::new(3, bad, vec![]),
            Err(Error::VectorLength { found: 2, .. })
        ));
    }

    #[test]
    fn legality_depends_on_dimension() {
        let atoms: Vec<Atom> = ["a", "b", "c", "d", "e"]
            .iter()
            .map(|s| Atom::new(*s))
            .collect();
        let err = Diagram::new(
            3,
            atoms[..4].to_vec(),
            vec![ids(&["a", "b", "c"]), ids(&["a", "b", "d"])],
        );
        assert!(matches!(err, Err(Error::Legality { shared: 2, .. })));
        // d = 4 only warns.
        let ok = Diagram::new(
            4,
            atoms,
            vec![ids(&["a", "b", "c", "d"]), ids(&["a", "b", "c", "e"])],
        )
        .unwrap();
        assert_eq!(ok.legality_violations(), vec![(0, 1, 3)]);
    }

    #[test]
    fn realization_of_single_block() {
        let report = realize_check(&single_block(), TOL).unwrap();
        assert!(report.is_realized());
        assert_eq!(report.max_residual, 0.0);
        let bare = single_block().strip_coordinates();
        assert_eq!(
            realize_check(&bare, TOL),
            Err(Error::MissingCoordinates("x".into()))
        );
    }

    #[test]
    fn vectors_to_blocks() {
        let e: Vec<Ray> = (0..3).map(|i| Ray::basis(3, i).unwrap()).collect();
        let d = from_vectors(&e, 3, TOL).unwrap();
        assert_eq!(d.blocks().len(), 1);

        let s = 0.5f64.sqrt();
        let mut rays = e.clone();
        rays.push(ray(&[0.0, s, s]));
        rays.push(ray(&[0.0, s, -s]));
        let d = from_vectors(&rays, 3, TOL).unwrap();
        assert_eq!(d.blocks().len(), 2);
        assert_eq!(d.block_ids(&d.blocks()[0]), vec!["r0", "r1", "r2"]);
        assert_eq!(d.block_ids(&d.blocks()[1]), vec!["r0", "r3", "r4"]);
        assert!(realize_check(&d, TOL).unwrap().is_realized());
    }

    #[test]
    fn vectors_errors() {
        let e1 = Ray::basis(3, 0).unwrap();
        let e2 = Ray::basis(3, 1).unwrap();
        assert!(matches!(
            from_vectors(&[e1.clone(), e2.clone()], 3, TOL),
            Err(Error::TooFewRays { .. })
        ));
        assert_eq!(
            from_vectors(&[e1.clone(), e2, e1], 3, TOL),
            Err(Error::DuplicateRay {
                first: 0,
                second: 2
            })
        );
    }

    #[test]
    fn four_dimensional_cliques() {
        let e: Vec<Ray> = (0..4).map(|i| Ray::basis(4, i).unwrap()).collect();
        let d = from_vectors(&e, 4, TOL).unwrap();
        assert_eq!(d.blocks().len(), 1);
        assert_eq!(d.blocks()[0].members(), &[0, 1, 2, 3]);
    }

    #[test]
    fn star_of_unknown_atom() {
        assert_eq!(
            star(&single_block(), "nope"),
            Err(Error::UnknownAtom("nope".into()))
        );
        let s = star(&single_block(), "y").unwrap();
        assert_eq!(s.blocks().len(), 1);
        assert_eq!(s.atoms().len(), 3);
    }
}
