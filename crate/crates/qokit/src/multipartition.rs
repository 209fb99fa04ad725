use crate::abacus::{Abacus, AbacusRow};
use crate::partition::{partitions_of, ChargedPartition};
use crate::Error;
use serde::{Deserialize, Serialize};

/// A tuple of charged partitions with a common content modulus `e`.
/// Component `k` contributes boxes of content `charge_k + j - i`, read
/// modulo `e` when residues are needed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Multipartition {
    pub e: usize,
    pub components: Vec<ChargedPartition>,
}

impl Multipartition {
    pub fn new(e: usize, components: Vec<ChargedPartition>) -> Result<Self, Error> {
        if e == 0 {
            return Err(Error::Schema("modulus e must be positive".into()));
        }
        if components.is_empty() {
            return Err(Error::Schema("multipartition needs at least one component".into()));
        }
        Ok(Multipartition { e, components })
    }

    pub fn level(&self) -> usize {
        self.components.len()
    }

    pub fn charges(&self) -> Vec<i64> {
        self.components.iter().map(|c| c.charge).collect()
    }

    pub fn size(&self) -> u64 {
        self.components.iter().map(|c| c.size()).sum()
    }

    /// Boxes of each residue class, with an optional uniform shift `w` added
    /// to every entry (the affinization constant of the ambient charge data).
    pub fn dimension_vector(&self, w: i64) -> Vec<i64> {
        let mut v = vec![w; self.e];
        for comp in &self.components {
            for (count, slot) in comp.residue_counts(self.e).iter().zip(v.iter_mut()) {
                *slot += *count as i64;
            }
        }
        v
    }

    /// One abacus row per component, row `k` the beta-set of component `k`.
    pub fn to_abacus(&self) -> Abacus {
        Abacus::new(self.components.iter().map(AbacusRow::from_charged_partition).collect())
    }

    pub fn from_abacus(a: &Abacus, e: usize) -> Result<Self, Error> {
        Multipartition::new(e, a.rows.iter().map(|r| r.to_charged_partition()).collect())
    }
}

/// All multipartitions with the given charges whose residue-count vector
/// equals `v` (no shift). These are the torus-fixed points of the quiver
/// variety attached to `(charges, v)`.
pub fn fixed_points(charges: &[i64], e: usize, v: &[i64]) -> Result<Vec<Multipartition>, Error> {
    if v.len() != e {
        return Err(Error::Schema(format!(
            "dimension vector has {} entries, expected {e}",
            v.len()
        )));
    }
    if v.iter().any(|&x| x < 0) {
        return Err(Error::Schema("dimension vector entries must be nonnegative".into()));
    }
    let total: i64 = v.iter().sum();
    let level = charges.len();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<ChargedPartition>> = vec![Vec::new()];
    // Depth-first over compositions of the box total into level parts,
    // expanding each part into all partitions of that size.
    while let Some(prefix) = stack.pop() {
        let used: u64 = prefix.iter().map(|p| p.size()).sum();
        if prefix.len() == level {
            if used as i64 == total {
                let m = Multipartition::new(e, prefix)?;
                if m.dimension_vector(0) == v {
                    out.push(m);
                }
            }
            continue;
        }
        let remaining = total as u64 - used;
        for n in 0..=remaining {
            for parts in partitions_of(n) {
                let mut next = prefix.clone();
                next.push(ChargedPartition::new(parts, charges[prefix.len()])?);
                stack.push(next);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Residue-count vector a single charged partition contributes, as `i64`s.
pub fn residue_vector(p: &ChargedPartition, e: usize) -> Vec<i64> {
    p.residue_counts(e).iter().map(|&c| c as i64).collect()
}

/// Check `0 <= v` and `sum(v) == n` for enumeration guards.
pub fn box_total(v: &[i64]) -> i64 {
    v.iter().sum()
}
