use crate::partition::ChargedPartition;
use crate::{res, Error};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// One row of an abacus: a set of bead positions in `ZZ` that is cofinite
/// below (every position far enough left is occupied) and finite above.
///
/// The set is stored as a half-line `{x < offset}` plus finite exception
/// sets. After normalization the offset equals the row's charge and
/// `added`/`removed` have the same cardinality, so structural equality is
/// set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbacusRow {
    offset: i64,
    added: BTreeSet<i64>,
    removed: BTreeSet<i64>,
}

impl AbacusRow {
    /// The half-line `{x < charge}` with no exceptions.
    pub fn vacuum(charge: i64) -> Self {
        AbacusRow { offset: charge, added: BTreeSet::new(), removed: BTreeSet::new() }
    }

    /// Build from a half-line plus arbitrary exception sets. `added` marks
    /// occupied positions, `removed` unoccupied ones; `removed` wins on
    /// overlap. The result is renormalized so the stored offset is the charge.
    pub fn from_exceptions(
        offset: i64,
        added: impl IntoIterator<Item = i64>,
        removed: impl IntoIterator<Item = i64>,
    ) -> Self {
        let added: BTreeSet<i64> = added.into_iter().collect();
        let removed: BTreeSet<i64> = removed.into_iter().collect();
        let occ = |x: i64| (x < offset || added.contains(&x)) && !removed.contains(&x);

        let lo = added
            .iter()
            .chain(removed.iter())
            .copied()
            .chain(std::iter::once(offset))
            .min()
            .unwrap();
        let hi = added
            .iter()
            .copied()
            .chain(std::iter::once(offset))
            .max()
            .unwrap()
            + 1;
        // Everything below lo is occupied and everything at or above hi is
        // not, so the charge is determined by a finite scan.
        let charge = lo + (lo..hi).filter(|&x| occ(x)).count() as i64;
        let norm_added: BTreeSet<i64> = (charge..hi).filter(|&x| occ(x)).collect();
        let norm_removed: BTreeSet<i64> = (lo..charge).filter(|&x| !occ(x)).collect();
        AbacusRow { offset: charge, added: norm_added, removed: norm_removed }
    }

    /// Unique integer `c` with exactly as many beads at `x >= c` as holes at
    /// `x < c`; equals the stored offset after normalization.
    pub fn charge(&self) -> i64 {
        self.offset
    }

    pub fn is_occupied(&self, x: i64) -> bool {
        (x < self.offset || self.added.contains(&x)) && !self.removed.contains(&x)
    }

    /// Number of beads whose position differs from the vacuum of the same
    /// charge (beads in `added` plus holes in `removed`).
    pub fn displaced(&self) -> usize {
        self.added.len() + self.removed.len()
    }

    /// Exception positions above/below the charge line, for serialization.
    pub fn exceptions(&self) -> (i64, &BTreeSet<i64>, &BTreeSet<i64>) {
        (self.offset, &self.added, &self.removed)
    }

    /// Occupied positions in decreasing order, `count` of them, starting from
    /// the largest bead.
    pub fn beads_desc(&self, count: usize) -> Vec<i64> {
        let mut out = Vec::with_capacity(count);
        let mut x = self
            .added
            .iter()
            .next_back()
            .copied()
            .unwrap_or(self.offset - 1)
            .max(self.offset - 1);
        while out.len() < count {
            if self.is_occupied(x) {
                out.push(x);
            }
            x -= 1;
        }
        out
    }

    /// Move the bead at `from` to the empty position `to`.
    pub fn move_bead(&self, from: i64, to: i64) -> Result<Self, Error> {
        if !self.is_occupied(from) || self.is_occupied(to) {
            return Err(Error::BeadMove { from, to });
        }
        let mut added: Vec<i64> = self.added.iter().copied().collect();
        let mut removed: Vec<i64> = self.removed.iter().copied().collect();
        // Drop `from`, occupy `to`, phrased as raw exceptions and renormalized.
        if from >= self.offset {
            added.retain(|&x| x != from);
        } else {
            removed.push(from);
        }
        if to < self.offset {
            removed.retain(|&x| x != to);
        } else {
            added.push(to);
        }
        Ok(AbacusRow::from_exceptions(self.offset, added, removed))
    }

    /// Beta-set bijection: the partition `p` with charge `s` has beads at
    /// `p_i + s - i` for `i = 1, 2, ...` (parts padded with zeros). Rows past
    /// the last part sit at the vacuum, so the set is `{x < s - rows}` plus
    /// the finitely many explicit beads.
    pub fn from_charged_partition(p: &ChargedPartition) -> Self {
        let s = p.charge;
        let n = p.parts().len() as i64;
        let beads = p
            .parts()
            .iter()
            .enumerate()
            .map(|(i0, &part)| part as i64 + s - (i0 as i64 + 1));
        AbacusRow::from_exceptions(s - n, beads, [])
    }

    pub fn to_charged_partition(&self) -> ChargedPartition {
        let s = self.charge();
        let mut parts: Vec<u64> = Vec::new();
        let mut i: i64 = 1;
        let mut x = self
            .added
            .iter()
            .next_back()
            .copied()
            .unwrap_or(s - 1)
            .max(s - 1);
        loop {
            if self.is_occupied(x) {
                // i-th largest bead; once a part hits zero all later ones do.
                let part = x - (s - i);
                if part == 0 {
                    break;
                }
                parts.push(part as u64);
                i += 1;
            }
            x -= 1;
        }
        ChargedPartition::new(parts, s).expect("beta-set yields weakly decreasing parts")
    }
}

impl fmt::Display for AbacusRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{x<{}}}+{:?}-{:?}", self.offset, self.added, self.removed)
    }
}

/// A stack of abacus rows, row 1 at the bottom. Used both for multipartition
/// fixed-point data (one row per component) and as crystal nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Abacus {
    pub rows: Vec<AbacusRow>,
}

impl Abacus {
    pub fn new(rows: Vec<AbacusRow>) -> Self {
        Abacus { rows }
    }

    pub fn vacuum(charges: &[i64]) -> Self {
        Abacus { rows: charges.iter().map(|&c| AbacusRow::vacuum(c)).collect() }
    }

    pub fn level(&self) -> usize {
        self.rows.len()
    }

    pub fn charges(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.charge()).collect()
    }

    pub fn total_charge(&self) -> i64 {
        self.rows.iter().map(|r| r.charge()).sum()
    }

    /// Beads per content class modulo `e`, relative to the vacuum with the
    /// same charges: moving a bead one step right shifts one unit of count
    /// from its old class to the next.
    pub fn class_surplus(&self, e: usize) -> Vec<i64> {
        let mut surplus = vec![0i64; e];
        for row in &self.rows {
            let (_, added, removed) = row.exceptions();
            for &x in added {
                surplus[res(x, e)] += 1;
            }
            for &x in removed {
                surplus[res(x, e)] -= 1;
            }
        }
        surplus
    }
}

impl fmt::Display for Abacus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}
