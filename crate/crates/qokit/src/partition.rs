use crate::{res, Error};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An integer partition with a charge. Boxes live at `(row i, column j)`,
/// both 1-based; the box `(i, j)` has content `charge + j - i`. Parts are
/// stored weakly decreasing with trailing zeros stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChargedPartition {
    parts: Vec<u64>,
    pub charge: i64,
}

impl ChargedPartition {
    pub fn new(parts: Vec<u64>, charge: i64) -> Result<Self, Error> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Schema(format!(
                "partition parts must be weakly decreasing, got {parts:?}"
            )));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(ChargedPartition { parts, charge })
    }

    pub fn empty(charge: i64) -> Self {
        ChargedPartition { parts: Vec::new(), charge }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Part `i` (1-based); zero past the last row.
    pub fn part(&self, i: usize) -> u64 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn content(&self, i: usize, j: usize) -> i64 {
        self.charge + j as i64 - i as i64
    }

    /// All boxes `(i, j)`, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i0, &len)| (1..=len as usize).map(move |j| (i0 + 1, j)))
    }

    /// Number of boxes in each content class modulo `e`.
    pub fn residue_counts(&self, e: usize) -> Vec<u64> {
        let mut counts = vec![0u64; e];
        for (i, j) in self.boxes() {
            counts[res(self.content(i, j), e)] += 1;
        }
        counts
    }

    /// Boxes that can be appended while keeping a partition shape, as
    /// `(i, j, content)`. There is one per row boundary, including row
    /// `rows() + 1`.
    pub fn addable_boxes(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 1..=self.rows() + 1 {
            let j = self.part(i) as usize + 1;
            // The row above must be long enough for the new box to sit under it.
            if i == 1 || self.part(i - 1) >= j as u64 {
                out.push((i, j, self.content(i, j)));
            }
        }
        out
    }

    /// Boxes that can be removed while keeping a partition shape.
    pub fn removable_boxes(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 1..=self.rows() {
            let j = self.part(i) as usize;
            if j >= 1 && self.part(i + 1) < j as u64 {
                out.push((i, j, self.content(i, j)));
            }
        }
        out
    }

    /// Addable boxes whose content is `r` modulo `e`.
    pub fn addable_of_residue(&self, r: usize, e: usize) -> Vec<(usize, usize, i64)> {
        self.addable_boxes()
            .into_iter()
            .filter(|&(_, _, c)| res(c, e) == r)
            .collect()
    }

    /// Removable boxes whose content is `r` modulo `e`.
    pub fn removable_of_residue(&self, r: usize, e: usize) -> Vec<(usize, usize, i64)> {
        self.removable_boxes()
            .into_iter()
            .filter(|&(_, _, c)| res(c, e) == r)
            .collect()
    }

    /// New partition with the box `(i, j)` appended. `(i, j)` must be addable.
    pub fn with_box_added(&self, i: usize, j: usize) -> Result<Self, Error> {
        if self.part(i) + 1 != j as u64 || (i > 1 && self.part(i - 1) < j as u64) {
            return Err(Error::Schema(format!("box ({i}, {j}) is not addable")));
        }
        let mut parts = self.parts.clone();
        if i > parts.len() {
            parts.push(1);
        } else {
            parts[i - 1] += 1;
        }
        ChargedPartition::new(parts, self.charge)
    }

    /// New partition with the box `(i, j)` removed. `(i, j)` must be removable.
    pub fn with_box_removed(&self, i: usize, j: usize) -> Result<Self, Error> {
        if self.part(i) != j as u64 || self.part(i + 1) >= j as u64 {
            return Err(Error::Schema(format!("box ({i}, {j}) is not removable")));
        }
        let mut parts = self.parts.clone();
        parts[i - 1] -= 1;
        ChargedPartition::new(parts, self.charge)
    }

    pub fn conjugate_shape(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut j = 1;
        while self.parts.iter().filter(|&&p| p >= j).count() > 0 {
            out.push(self.parts.iter().filter(|&&p| p >= j).count() as u64);
            j += 1;
        }
        out
    }
}

impl fmt::Display for ChargedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")@{}", self.charge)
    }
}

/// All partitions of `n`, in lexicographically decreasing part order.
pub fn partitions_of(n: u64) -> Vec<Vec<u64>> {
    fn rec(n: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        let top = max.min(n);
        for p in (1..=top).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}
