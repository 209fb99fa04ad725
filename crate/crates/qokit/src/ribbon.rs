use crate::abacus::AbacusRow;
use crate::partition::ChargedPartition;
use crate::{res, Error};
use serde::{Deserialize, Serialize};

/// A ribbon (rim hook) described by its head: removing it from a charged
/// partition deletes `length` boxes whose contents are the consecutive run
/// ending at a box of content `residue` mod `e`.
///
/// On the beta-set this is exactly "slide one bead `length` steps left into
/// an empty slot": the bead at position `x` removes the content run
/// `[x - length + 1, x]`, so the head residue is `x` mod `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RibbonSpec {
    pub residue: usize,
    pub length: u64,
}

impl RibbonSpec {
    pub fn new(residue: usize, length: u64, e: usize) -> Result<Self, Error> {
        if length == 0 {
            return Err(Error::Schema("ribbon length must be positive".into()));
        }
        if residue >= e {
            return Err(Error::Schema(format!("residue {residue} out of range for e = {e}")));
        }
        Ok(RibbonSpec { residue, length })
    }

    /// Ribbon attached to the positive root `alpha_{k'} + ... + alpha_k + m*delta`
    /// (cyclic run of simple roots from `k'` up to `k`, plus `m` full cycles):
    /// head residue `k`, length `(k - k' mod e) + 1 + m*e`.
    pub fn from_root(k_prime: usize, k: usize, m: u64, e: usize) -> Result<Self, Error> {
        if k_prime >= e || k >= e {
            return Err(Error::Schema(format!(
                "root residues ({k_prime}, {k}) out of range for e = {e}"
            )));
        }
        let run = res(k as i64 - k_prime as i64, e) as u64 + 1;
        RibbonSpec::new(k, run + m * e as u64, e)
    }
}

/// Beads of `p` that can slide `spec.length` steps left (through an empty
/// target slot), filtered to the head residue, largest bead first.
pub fn removable_ribbons(p: &ChargedPartition, spec: RibbonSpec, e: usize) -> Vec<i64> {
    let row = AbacusRow::from_charged_partition(p);
    let l = spec.length as i64;
    let mut beads = Vec::new();
    // Any bead strictly below every removed slot minus length can't move into
    // a hole, so scanning the exception window suffices.
    let (charge, added, removed) = row.exceptions();
    let hi = added.iter().next_back().copied().unwrap_or(charge - 1).max(charge - 1);
    let lo = removed.iter().next().copied().unwrap_or(charge) - 1;
    let mut x = hi;
    while x >= lo.min(charge - l) {
        if row.is_occupied(x) && !row.is_occupied(x - l) && res(x, e) == spec.residue {
            beads.push(x);
        }
        x -= 1;
    }
    beads
}

/// Remove one ribbon matching `spec`, taking the largest movable bead when
/// several qualify. `None` when the partition has no such ribbon.
pub fn remove_ribbon(p: &ChargedPartition, spec: RibbonSpec, e: usize) -> Option<ChargedPartition> {
    let bead = removable_ribbons(p, spec, e).into_iter().next()?;
    Some(remove_ribbon_at(p, bead, spec.length).expect("listed bead is movable"))
}

/// Slide the bead at `bead` exactly `length` steps left.
pub fn remove_ribbon_at(
    p: &ChargedPartition,
    bead: i64,
    length: u64,
) -> Result<ChargedPartition, Error> {
    let row = AbacusRow::from_charged_partition(p);
    Ok(row.move_bead(bead, bead - length as i64)?.to_charged_partition())
}

/// Slide the bead at `bead` exactly `length` steps right (inverse of removal).
pub fn add_ribbon_at(
    p: &ChargedPartition,
    bead: i64,
    length: u64,
) -> Result<ChargedPartition, Error> {
    let row = AbacusRow::from_charged_partition(p);
    Ok(row.move_bead(bead, bead + length as i64)?.to_charged_partition())
}

/// Beads that can slide `length` steps right (targets of `add_ribbon_at`),
/// optionally filtered so the resulting head residue is `head_residue`.
pub fn addable_ribbons(
    p: &ChargedPartition,
    length: u64,
    head_residue: Option<usize>,
    e: usize,
) -> Vec<i64> {
    let row = AbacusRow::from_charged_partition(p);
    let l = length as i64;
    let (charge, added, removed) = row.exceptions();
    let hi = added.iter().next_back().copied().unwrap_or(charge - 1).max(charge - 1);
    let lo = removed.iter().next().copied().unwrap_or(charge) - 1 - l;
    let mut beads = Vec::new();
    let mut x = hi;
    while x >= lo.min(charge - 1 - l) {
        if row.is_occupied(x)
            && !row.is_occupied(x + l)
            && head_residue.map_or(true, |r| res(x + l, e) == r)
        {
            beads.push(x);
        }
        x -= 1;
    }
    beads
}

/// Remove length-`e` ribbons until none is left. On the e-runner abacus this
/// drops every bead to the bottom of its runner, so the result does not
/// depend on the removal order; this implementation always takes the largest
/// movable bead.
pub fn e_core(p: &ChargedPartition, e: usize) -> ChargedPartition {
    let mut cur = p.clone();
    loop {
        let mut moved = false;
        for r in 0..e {
            let spec = RibbonSpec { residue: r, length: e as u64 };
            if let Some(next) = remove_ribbon(&cur, spec, e) {
                cur = next;
                moved = true;
                break;
            }
        }
        if !moved {
            return cur;
        }
    }
}

/// Number of length-`e` ribbons removed on the way to the core.
pub fn e_weight(p: &ChargedPartition, e: usize) -> u64 {
    (p.size() - e_core(p, e).size()) / e as u64
}

/// The charged `e`-core whose runner `k` (positions congruent to `k - 1`
/// mod `e`, for `k = 1..=e`) is fully occupied below level `u[k-1]` and empty
/// above. Equivalently: the unique charged partition admitting exactly one
/// addable `e`-ribbon per runner, with contents
/// `e*(u_k - 1) + k, ..., e*u_k + k - 1`, and no others.
pub fn core_from_column(u: &[i64], e: usize) -> Result<ChargedPartition, Error> {
    if u.len() != e {
        return Err(Error::Schema(format!("runner levels have {} entries, expected {e}", u.len())));
    }
    let lo = *u.iter().min().unwrap();
    let mut added = Vec::new();
    for (k0, &level) in u.iter().enumerate() {
        for m in lo..level {
            added.push(e as i64 * m + k0 as i64);
        }
    }
    let row = AbacusRow::from_exceptions(e as i64 * lo, added, []);
    Ok(row.to_charged_partition())
}
