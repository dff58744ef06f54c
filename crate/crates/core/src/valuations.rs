//! Two-valued measures on Greechie diagrams.
//!
//! A two-valued measure assigns 0 or 1 to every atom so that each block
//! contains exactly one atom with value 1. Partial assignments are extended
//! by unit propagation over blocks:
//!
//! - a 1 in a block forces 0 on the block's other atoms;
//! - `d - 1` zeros in a block force 1 on the remaining atom.
//!
//! A block holding two 1s, or `d` zeros, is a contradiction.
//!
//! Enumeration walks atoms in sorted-id order, tries 0 before 1, and
//! propagates after every choice. Propagation never branches, so the
//! measures come out in lexicographic order of their value vectors over the
//! sorted ids.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::greechie::Diagram;

/// Assignment of 0/1 to some atoms, keyed by atom id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialValuation {
    values: BTreeMap<String, bool>,
}

impl PartialValuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, id: impl Into<String>, value: bool) -> Self {
        self.set(id, value);
        self
    }

    pub fn set(&mut self, id: impl Into<String>, value: bool) {
        self.values.insert(id.into(), value);
    }

    pub fn get(&self, id: &str) -> Option<bool> {
        self.values.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Assignments in id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl<S: Into<String>> FromIterator<(S, bool)> for PartialValuation {
    fn from_iter<I: IntoIterator<Item = (S, bool)>>(iter: I) -> Self {
        Self {
            values: iter.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }
}

impl Serialize for PartialValuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bits(&self.values, serializer)
    }
}

/// A total two-valued measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    values: BTreeMap<String, bool>,
}

impl Valuation {
    pub fn get(&self, id: &str) -> Option<bool> {
        self.values.get(id).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Ids of the atoms with value 1.
    pub fn ones(&self) -> Vec<&str> {
        self.iter().filter(|(_, v)| *v).map(|(k, _)| k).collect()
    }

    /// True when every block of `diagram` holds exactly one 1.
    pub fn is_two_valued_on(&self, diagram: &Diagram) -> bool {
        diagram.blocks().iter().all(|b| {
            diagram
                .block_ids(b)
                .iter()
                .filter(|id| self.get(id) == Some(true))
                .count()
                == 1
        })
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bits(&self.values, serializer)
    }
}

fn serialize_bits<S: Serializer>(
    values: &BTreeMap<String, bool>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut map = serializer.serialize_map(Some(values.len()))?;
    for (k, v) in values {
        map.serialize_entry(k, &u8::from(*v))?;
    }
    map.end()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ContradictionKind {
    /// Two atoms of the block are 1.
    TwoOnes,
    /// Every atom of the block is 0.
    AllZeros,
}

/// A block that propagation could not satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contradiction {
    pub block: String,
    pub kind: ContradictionKind,
    /// The offending atoms: the two 1s, or all zeros.
    pub atoms: Vec<String>,
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ContradictionKind::TwoOnes => {
                write!(
                    f,
                    "block {} has two atoms valued 1 ({})",
                    self.block,
                    self.atoms.join(", ")
                )
            }
            ContradictionKind::AllZeros => {
                write!(
                    f,
                    "block {} has all atoms valued 0 ({})",
                    self.block,
                    self.atoms.join(", ")
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Propagation {
    Consistent(PartialValuation),
    Contradiction(Contradiction),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    Forced0,
    Forced1,
    Contingent,
    ValueIndefinite,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Forced0 => "Forced0",
            Status::Forced1 => "Forced1",
            Status::Contingent => "Contingent",
            Status::ValueIndefinite => "ValueIndefinite",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub premises: PartialValuation,
    pub statuses: BTreeMap<String, Status>,
}

impl ClassificationReport {
    pub fn status(&self, id: &str) -> Option<Status> {
        self.statuses.get(id).copied()
    }
}

type Cells = Vec<Option<bool>>;

struct Solver<'a> {
    diagram: &'a Diagram,
    incidence: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl<'a> Solver<'a> {
    fn new(diagram: &'a Diagram) -> Self {
        let mut order: Vec<usize> = (0..diagram.atoms().len()).collect();
        order.sort_by(|&a, &b| diagram.atoms()[a].id.cmp(&diagram.atoms()[b].id));
        Self {
            diagram,
            incidence: diagram.incidence(),
            order,
        }
    }

    fn cells(&self, premises: &PartialValuation) -> Result<Cells> {
        let mut cells = vec![None; self.diagram.atoms().len()];
        for (id, v) in premises.iter() {
            let i = self
                .diagram
                .atom_index(id)
                .ok_or_else(|| Error::UnknownAtom(id.to_owned()))?;
            cells[i] = Some(v);
        }
        Ok(cells)
    }

    fn propagate_all(&self, cells: &mut Cells) -> std::result::Result<(), Contradiction> {
        self.propagate(cells, 0..self.diagram.blocks().len())
    }

    /// Run both rules to a fixed point, starting from `dirty` blocks.
    fn propagate(
        &self,
        cells: &mut Cells,
        dirty: impl IntoIterator<Item = usize>,
    ) -> std::result::Result<(), Contradiction> {
        let blocks = self.diagram.blocks();
        let mut queued = vec![false; blocks.len()];
        let mut queue = VecDeque::new();
        for b in dirty {
            if !queued[b] {
                queued[b] = true;
                queue.push_back(b);
            }
        }
        let d = self.diagram.dimension();
        while let Some(bi) = queue.pop_front() {
            queued[bi] = false;
            let members = blocks[bi].members();
            let ones = members.iter().filter(|&&a| cells[a] == Some(true)).count();
            let zeros = members.iter().filter(|&&a| cells[a] == Some(false)).count();
            let fill = match (ones, zeros) {
                (o, _) if o > 1 => {
                    return Err(self.contradiction(bi, ContradictionKind::TwoOnes, cells))
                }
                (_, z) if z == d => {
                    return Err(self.contradiction(bi, ContradictionKind::AllZeros, cells))
                }
                (1, z) if z < d - 1 => false,
                (0, z) if z == d - 1 => true,
                _ => continue,
            };
            for &a in members {
                if cells[a].is_none() {
                    cells[a] = Some(fill);
                    for &nb in &self.incidence[a] {
                        if !queued[nb] {
                            queued[nb] = true;
                            queue.push_back(nb);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn contradiction(&self, bi: usize, kind: ContradictionKind, cells: &Cells) -> Contradiction {
        let block = &self.diagram.blocks()[bi];
        let wanted = kind == ContradictionKind::TwoOnes;
        let atoms = block
            .members()
            .iter()
            .filter(|&&a| cells[a] == Some(wanted))
            .map(|&a| self.diagram.atoms()[a].id.clone())
            .collect();
        Contradiction {
            block: block.label().to_owned(),
            kind,
            atoms,
        }
    }

    /// Depth-first search over total extensions of the (already propagated)
    /// `cells`. `visit` returns `false` to stop; the result reports whether
    /// the search was stopped.
    fn search(&self, cells: Cells, visit: &mut dyn FnMut(&Cells) -> bool) -> bool {
        let Some(&next) = self.order.iter().find(|&&a| cells[a].is_none()) else {
            return !visit(&cells);
        };
        for value in [false, true] {
            let mut branch = cells.clone();
            branch[next] = Some(value);
            if self
                .propagate(&mut branch, self.incidence[next].iter().copied())
                .is_ok()
                && self.search(branch, visit)
            {
                return true;
            }
        }
        false
    }

    /// Whether some total measure extends `cells` with `atom` set to `value`.
    fn extensible(&self, cells: &Cells, atom: usize, value: bool) -> bool {
        let mut branch = cells.clone();
        match branch[atom] {
            Some(v) if v != value => return false,
            Some(_) => {}
            None => {
                branch[atom] = Some(value);
                if self
                    .propagate(&mut branch, self.incidence[atom].iter().copied())
                    .is_err()
                {
                    return false;
                }
            }
        }
        self.search(branch, &mut |_| false)
    }

    fn valuation(&self, cells: &Cells) -> Valuation {
        Valuation {
            values: self
                .diagram
                .atoms()
                .iter()
                .zip(cells)
                .map(|(a, v)| (a.id.clone(), v.expect("total assignment")))
                .collect(),
        }
    }

    fn partial(&self, cells: &Cells) -> PartialValuation {
        self.diagram
            .atoms()
            .iter()
            .zip(cells)
            .filter_map(|(a, v)| v.map(|v| (a.id.clone(), v)))
            .collect()
    }
}

/// Close `premises` under the propagation rules.
pub fn propagate(diagram: &Diagram, premises: &PartialValuation) -> Result<Propagation> {
    let solver = Solver::new(diagram);
    let mut cells = solver.cells(premises)?;
    Ok(match solver.propagate_all(&mut cells) {
        Ok(()) => Propagation::Consistent(solver.partial(&cells)),
        Err(c) => Propagation::Contradiction(c),
    })
}

/// Every two-valued measure, in lexicographic order over sorted atom ids
/// with 0 before 1.
pub fn enumerate_two_valued(diagram: &Diagram) -> Vec<Valuation> {
    let solver = Solver::new(diagram);
    let mut cells = vec![None; diagram.atoms().len()];
    let mut out = Vec::new();
    if solver.propagate_all(&mut cells).is_ok() {
        solver.search(cells, &mut |total| {
            out.push(solver.valuation(total));
            true
        });
    }
    out
}

/// Number of two-valued measures, without materializing them.
pub fn count_two_valued(diagram: &Diagram) -> usize {
    let solver = Solver::new(diagram);
    let mut cells = vec![None; diagram.atoms().len()];
    let mut count = 0;
    if solver.propagate_all(&mut cells).is_ok() {
        solver.search(cells, &mut |_| {
            count += 1;
            true
        });
    }
    count
}

/// Whether at least one two-valued measure exists; stops at the first.
pub fn admits_two_valued(diagram: &Diagram) -> bool {
    let solver = Solver::new(diagram);
    let mut cells = vec![None; diagram.atoms().len()];
    solver.propagate_all(&mut cells).is_ok() && solver.search(cells, &mut |_| false)
}

/// For every pair of distinct atoms, some measure tells them apart.
pub fn is_separating(diagram: &Diagram, measures: &[Valuation]) -> bool {
    let atoms = diagram.atoms();
    (0..atoms.len()).all(|i| {
        (i + 1..atoms.len()).all(|j| {
            measures
                .iter()
                .any(|m| m.get(&atoms[i].id) != m.get(&atoms[j].id))
        })
    })
}

/// Every atom takes the value 1 in some measure.
pub fn is_unital(diagram: &Diagram, measures: &[Valuation]) -> bool {
    diagram
        .atoms()
        .iter()
        .all(|a| measures.iter().any(|m| m.get(&a.id) == Some(true)))
}

/// Classify every atom by which values extend `premises` to a measure.
///
/// Premise atoms echo their premise (`Forced1` or `Forced0`). Any other atom
/// is `Contingent` if both values extend, `Forced0`/`Forced1` if only one
/// does, and `ValueIndefinite` if neither does, which is the case for every
/// non-premise atom when no measure extends the premises at all.
pub fn classify(diagram: &Diagram, premises: &PartialValuation) -> Result<ClassificationReport> {
    let solver = Solver::new(diagram);
    let mut cells = solver.cells(premises)?;
    solver
        .propagate_all(&mut cells)
        .map_err(Error::Contradiction)?;

    let statuses = diagram
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, atom)| {
            let status = match premises.get(&atom.id) {
                Some(true) => Status::Forced1,
                Some(false) => Status::Forced0,
                None => match (
                    solver.extensible(&cells, i, false),
                    solver.extensible(&cells, i, true),
                ) {
                    (true, true) => Status::Contingent,
                    (true, false) => Status::Forced0,
                    (false, true) => Status::Forced1,
                    (false, false) => Status::ValueIndefinite,
                },
            };
            (atom.id.clone(), status)
        })
        .collect();
    Ok(ClassificationReport {
        premises: premises.clone(),
        statuses,
    })
}
