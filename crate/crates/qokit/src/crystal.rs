use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::abacus::Abacus;
use crate::cylinder::{weight_of, CylindricalWeight};
use crate::duality::{flip, flip_position};
use crate::{res, Error};

/// Which of the two commuting operator families acts on a node.
///
/// `Runner` operators slide a bead one step along its own row; their residues
/// are bead positions modulo the runner count `e`. `Row` operators climb a
/// bead one row upward; their residues are (row index - 1) modulo the number
/// of rows, and a bead pushed past the top row reappears on the bottom row
/// `e` positions to the right. Internally the `Row` family is computed by
/// conjugating the `Runner` family with the rectangle [`flip`], which realizes
/// exactly that climb-and-wrap move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algebra {
    Runner,
    Row,
}

/// A node of the bead-diagram crystal: an abacus together with its runner
/// count. Node identity (and hence graph dedup) is the full bead diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CrystalNode {
    pub abacus: Abacus,
    pub e: usize,
}

impl CrystalNode {
    pub fn new(abacus: Abacus, e: usize) -> Result<Self, Error> {
        if e == 0 {
            return Err(Error::Schema("runner count must be positive".into()));
        }
        if abacus.level() == 0 {
            return Err(Error::Schema("abacus must have at least one row".into()));
        }
        Ok(CrystalNode { abacus, e })
    }

    pub fn level(&self) -> usize {
        self.abacus.level()
    }

    /// Number of operator residues in the given family.
    pub fn rank(&self, alg: Algebra) -> usize {
        match alg {
            Algebra::Runner => self.e,
            Algebra::Row => self.level(),
        }
    }

    /// Cylindrical weight seen by the `Runner` family.
    pub fn runner_weight(&self) -> CylindricalWeight {
        weight_of(&self.abacus, self.e)
    }

    /// Cylindrical weight seen by the `Row` family: the weight of the flipped
    /// diagram, whose runner count is this node's row count.
    pub fn row_weight(&self) -> CylindricalWeight {
        let ell = self.level();
        let flipped = flip(&self.abacus, self.e, ell).expect("row count matches by construction");
        weight_of(&flipped, ell)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlotKind {
    Open,
    Close,
}

/// One possible single-bead move for a fixed residue: an `Open` slot is a
/// bead the lowering operator could move (to `target`), a `Close` slot is a
/// bead the raising operator could move back. `bead` and `target` are
/// `(position, row)` pairs with rows 1-based. Slots are listed in reading
/// order, which is the order the cancellation below consumes them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub kind: SlotKind,
    pub bead: (i64, usize),
    pub target: (i64, usize),
}

/// Slots of a single row-family-free abacus for residue `r` modulo `m`:
/// `Open` for a bead at `x = r (mod m)` with `x+1` free, `Close` for a bead
/// at `x = r+1 (mod m)` with `x-1` free. Reading order is by the slot's
/// upper position (where the bead lands for an `Open`, where it sits for a
/// `Close`), ties broken by row from the bottom up. Keying on the upper
/// position rather than the bead is what makes a lowering move and the
/// raising move that undoes it occupy the same place in the reading word,
/// which the bracket cancellation below depends on.
fn horizontal_slots(a: &Abacus, m: usize, r: usize) -> Vec<Slot> {
    let r = r % m;
    let r1 = (r + 1) % m;
    let mut slots = Vec::new();
    for (r0, row) in a.rows.iter().enumerate() {
        let (s, added, removed) = row.exceptions();
        let lo = removed.iter().next().copied().unwrap_or(s).min(s);
        let hi = added.iter().next_back().map_or(s, |&x| x + 1).max(s);
        for x in (lo - 1)..hi {
            if !row.is_occupied(x) {
                continue;
            }
            if res(x, m) == r && !row.is_occupied(x + 1) {
                slots.push(Slot {
                    kind: SlotKind::Open,
                    bead: (x, r0 + 1),
                    target: (x + 1, r0 + 1),
                });
            }
            if res(x, m) == r1 && !row.is_occupied(x - 1) {
                slots.push(Slot {
                    kind: SlotKind::Close,
                    bead: (x, r0 + 1),
                    target: (x - 1, r0 + 1),
                });
            }
        }
    }
    slots.sort_by_key(|s| (s.bead.0.max(s.target.0), s.bead.1, s.kind == SlotKind::Close));
    slots
}

/// Bracket cancellation in reading order: each `Close` cancels the nearest
/// preceding uncancelled `Open`. Returns the indices of surviving opens and
/// surviving closes, each in reading order.
fn cancel(slots: &[Slot]) -> (Vec<usize>, Vec<usize>) {
    let mut opens = Vec::new();
    let mut closes = Vec::new();
    for (idx, s) in slots.iter().enumerate() {
        match s.kind {
            SlotKind::Open => opens.push(idx),
            SlotKind::Close => {
                if opens.pop().is_none() {
                    closes.push(idx);
                }
            }
        }
    }
    (opens, closes)
}

fn apply_slot(a: &Abacus, slot: &Slot) -> Abacus {
    let (x, row) = slot.bead;
    let (y, _) = slot.target;
    let mut rows = a.rows.clone();
    rows[row - 1] = rows[row - 1]
        .move_bead(x, y)
        .expect("slot construction guarantees the move is legal");
    Abacus::new(rows)
}

fn runner_f(a: &Abacus, m: usize, r: usize) -> Option<Abacus> {
    let slots = horizontal_slots(a, m, r);
    let (opens, _) = cancel(&slots);
    let idx = *opens.first()?;
    Some(apply_slot(a, &slots[idx]))
}

fn runner_e(a: &Abacus, m: usize, r: usize) -> Option<Abacus> {
    let slots = horizontal_slots(a, m, r);
    let (_, closes) = cancel(&slots);
    let idx = *closes.last()?;
    Some(apply_slot(a, &slots[idx]))
}

fn conjugated<F>(b: &CrystalNode, r: usize, act: F) -> Option<CrystalNode>
where
    F: FnOnce(&Abacus, usize, usize) -> Option<Abacus>,
{
    let ell = b.level();
    let flipped = flip(&b.abacus, b.e, ell).expect("row count matches by construction");
    let moved = act(&flipped, ell, r)?;
    let back = flip(&moved, ell, b.e).expect("flipped row count is the runner count");
    Some(CrystalNode {
        abacus: back,
        e: b.e,
    })
}

/// The slots the residue-`r` operators of the chosen family read, in reading
/// order, with bead and target coordinates reported on the original diagram.
/// For the `Row` family the reading order is the flipped diagram's position
/// order, so ties between rows resolve runner by runner.
pub fn slots(b: &CrystalNode, alg: Algebra, r: usize) -> Vec<Slot> {
    match alg {
        Algebra::Runner => horizontal_slots(&b.abacus, b.e, r),
        Algebra::Row => {
            let ell = b.level();
            let flipped = flip(&b.abacus, b.e, ell).expect("row count matches by construction");
            horizontal_slots(&flipped, ell, r)
                .into_iter()
                .map(|s| {
                    let bead = flip_position(s.bead.0, s.bead.1, ell, b.e);
                    let target = flip_position(s.target.0, s.target.1, ell, b.e);
                    Slot {
                        kind: s.kind,
                        bead,
                        target,
                    }
                })
                .collect()
        }
    }
}

/// Lowering operator: move the bead of the leftmost surviving `Open` slot,
/// or `None` if every open slot is cancelled.
pub fn tilde_f(b: &CrystalNode, alg: Algebra, r: usize) -> Option<CrystalNode> {
    match alg {
        Algebra::Runner => runner_f(&b.abacus, b.e, r).map(|abacus| CrystalNode {
            abacus,
            e: b.e,
        }),
        Algebra::Row => conjugated(b, r, runner_f),
    }
}

/// Raising operator: move the bead of the rightmost surviving `Close` slot
/// back, or `None` if every close slot is cancelled.
pub fn tilde_e(b: &CrystalNode, alg: Algebra, r: usize) -> Option<CrystalNode> {
    match alg {
        Algebra::Runner => runner_e(&b.abacus, b.e, r).map(|abacus| CrystalNode {
            abacus,
            e: b.e,
        }),
        Algebra::Row => conjugated(b, r, runner_e),
    }
}

/// String lengths `(epsilon, phi)` for residue `r`: how many times the
/// raising (resp. lowering) operator applies before hitting `None`. Both are
/// computed by literal repeated application; the surviving-bracket counts
/// agree and are cross-checked in tests.
pub fn epsilon_phi(b: &CrystalNode, alg: Algebra, r: usize) -> (u64, u64) {
    let mut eps = 0;
    let mut cur = b.clone();
    while let Some(next) = tilde_e(&cur, alg, r) {
        eps += 1;
        cur = next;
    }
    let mut phi = 0;
    cur = b.clone();
    while let Some(next) = tilde_f(&cur, alg, r) {
        phi += 1;
        cur = next;
    }
    (eps, phi)
}

/// The default residue schedule `1, 2, ..., m-1, 0` for a rank-`m` family.
pub fn cyclic_schedule(m: usize) -> Vec<usize> {
    (1..m).chain([0]).collect()
}

/// Raise `b` to its highest-weight companion along a repeated residue
/// schedule. One pass strips each residue of `schedule` in turn as far as it
/// goes, recording the string length; passes repeat until one strips nothing.
/// Returns the concatenated string lengths (without the final all-zero pass)
/// and the terminal node.
pub fn string_parameterization(
    b: &CrystalNode,
    alg: Algebra,
    schedule: &[usize],
) -> (Vec<u64>, CrystalNode) {
    let mut string = Vec::new();
    let mut cur = b.clone();
    loop {
        let mut pass = Vec::with_capacity(schedule.len());
        for &r in schedule {
            let mut a = 0u64;
            while let Some(next) = tilde_e(&cur, alg, r) {
                a += 1;
                cur = next;
            }
            pass.push(a);
        }
        if pass.iter().all(|&a| a == 0) {
            return (string, cur);
        }
        string.extend(pass);
    }
}

/// An `f`-labelled edge of an explored crystal graph, by node index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalEdge {
    pub from: usize,
    pub alg: Algebra,
    pub residue: usize,
    pub to: usize,
}

/// A finite ball of the crystal below a seed node: nodes in breadth-first
/// discovery order (seed first) and every lowering edge among them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalGraph {
    pub e: usize,
    pub level: usize,
    pub nodes: Vec<CrystalNode>,
    pub depths: Vec<usize>,
    pub edges: Vec<CrystalEdge>,
}

/// Explore the lowering-operator graph below `seed` to depth `max_depth`,
/// using every residue of each family in `algebras`. Fails with
/// [`Error::CapExceeded`] as soon as more than `node_cap` nodes would be
/// created. Discovery order (and hence node numbering) is deterministic:
/// breadth-first, expanding each node family by family and residue by
/// residue.
pub fn crystal_graph(
    seed: &CrystalNode,
    max_depth: usize,
    algebras: &[Algebra],
    node_cap: usize,
) -> Result<CrystalGraph, Error> {
    if node_cap == 0 {
        return Err(Error::CapExceeded { cap: 0, reached: 1 });
    }
    let mut ids: BTreeMap<CrystalNode, usize> = BTreeMap::new();
    let mut nodes = vec![seed.clone()];
    let mut depths = vec![0usize];
    let mut edges = Vec::new();
    ids.insert(seed.clone(), 0);

    let mut cursor = 0;
    while cursor < nodes.len() {
        let node = nodes[cursor].clone();
        let depth = depths[cursor];
        if depth == max_depth {
            cursor += 1;
            continue;
        }
        for &alg in algebras {
            for r in 0..node.rank(alg) {
                let Some(child) = tilde_f(&node, alg, r) else {
                    continue;
                };
                let to = match ids.get(&child) {
                    Some(&id) => id,
                    None => {
                        if nodes.len() == node_cap {
                            return Err(Error::CapExceeded {
                                cap: node_cap,
                                reached: node_cap + 1,
                            });
                        }
                        let id = nodes.len();
                        ids.insert(child.clone(), id);
                        nodes.push(child);
                        depths.push(depth + 1);
                        id
                    }
                };
                edges.push(CrystalEdge {
                    from: cursor,
                    alg,
                    residue: r,
                    to,
                });
            }
        }
        cursor += 1;
    }
    Ok(CrystalGraph {
        e: seed.e,
        level: seed.level(),
        nodes,
        depths,
        edges,
    })
}
