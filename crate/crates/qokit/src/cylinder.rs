use crate::abacus::Abacus;
use crate::Error;
use serde::{Deserialize, Serialize};

/// Integral weight for the rank-`e` affine algebra at a fixed positive level,
/// written in cylindrical coordinates: entries `t_1, ..., t_e` plus a degree
/// coordinate `eta`. The entry list extends to all integer indices by
/// `t_{j+e} = t_j - level`, so a weight is a bi-infinite staircase determined
/// by one period.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CylindricalWeight {
    t: Vec<i64>,
    pub eta: i64,
    pub level: i64,
}

fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    (a + b - 1).div_euclid(b)
}

impl CylindricalWeight {
    pub fn new(t: Vec<i64>, eta: i64, level: i64) -> Result<Self, Error> {
        if t.is_empty() {
            return Err(Error::Schema("weight needs at least one entry".into()));
        }
        if level < 1 {
            return Err(Error::Schema(format!("level must be positive, got {level}")));
        }
        Ok(CylindricalWeight { t, eta, level })
    }

    pub fn rank(&self) -> usize {
        self.t.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.t
    }

    /// Entry at any integer index via the period rule `t_{j+e} = t_j - level`.
    pub fn t_at(&self, j: i64) -> i64 {
        let e = self.t.len() as i64;
        let q = (j - 1).div_euclid(e);
        let jj = (j - 1).rem_euclid(e) as usize;
        self.t[jj] - q * self.level
    }

    pub fn sum_t(&self) -> i64 {
        self.t.iter().sum()
    }

    /// One period weakly decreasing, including the wrap-around step.
    pub fn is_dominant(&self) -> bool {
        let e = self.t.len();
        self.t.windows(2).all(|w| w[0] >= w[1]) && self.t[e - 1] >= self.t[0] - self.level
    }

    /// Simple reflection `i` for `i = 1..e-1` swaps `t_i` and `t_{i+1}`;
    /// reflection `0` swaps `t_e` with `t_1 - level` across the period seam
    /// and adjusts `eta` by the amount the seam entries were out of order.
    pub fn simple_reflection(&self, i: usize) -> Self {
        let e = self.t.len();
        let mut out = self.clone();
        if i == 0 {
            if e == 1 {
                return out; // the single seam entry equals itself shifted
            }
            let gap = self.t[e - 1] + self.level - self.t[0];
            out.t[0] = self.t[e - 1] + self.level;
            out.t[e - 1] = self.t[0] - self.level;
            out.eta -= gap;
        } else {
            assert!(i < e, "reflection index {i} out of range for rank {e}");
            out.t.swap(i - 1, i);
        }
        out
    }

    /// The unique dominant weight in the orbit of `self` under the simple
    /// reflections. Interior swaps sort a period; the seam reflection strictly
    /// decreases `sum(t^2)` whenever the wrap-around step is violated, so the
    /// loop terminates.
    pub fn dominant_representative(&self) -> Self {
        let e = self.t.len();
        let mut cur = self.clone();
        loop {
            cur.t.sort_unstable_by(|a, b| b.cmp(a));
            if cur.t[e - 1] >= cur.t[0] - cur.level {
                return cur;
            }
            cur = cur.simple_reflection(0);
        }
    }

    /// Subtract `count` copies of the simple root `alpha_i` (`i` taken mod
    /// `e`): entry for class `i` drops, entry for class `i+1` rises, and the
    /// degree drops when the move crosses the period seam (`i = 0`).
    pub fn sub_alpha(&self, i: usize, count: i64) -> Self {
        let e = self.t.len();
        let mut out = self.clone();
        let from = (i % e + e - 1) % e;
        let to = i % e;
        out.t[from] -= count;
        out.t[to] += count;
        if i % e == 0 {
            out.eta -= count;
        }
        out
    }
}

/// Weight of a charged abacus: entry `t_j` counts beads in content class
/// `j mod e` (regularised against the same-charge vacuum, whose class counts
/// are `ceil((s - j)/e)` per row), and `eta` is minus the regularised sum of
/// bead block indices `floor((x-1)/e)`.
pub fn weight_of(a: &Abacus, e: usize) -> CylindricalWeight {
    let level = a.level() as i64;
    let surplus = a.class_surplus(e);
    let mut t = vec![0i64; e];
    let mut eta = 0i64;
    for row in &a.rows {
        let (s, added, removed) = row.exceptions();
        for (j0, tj) in t.iter_mut().enumerate() {
            let j = j0 as i64 + 1;
            *tj += div_ceil(s - j, e as i64);
        }
        let block = |x: i64| (x - 1).div_euclid(e as i64);
        eta += removed.iter().map(|&x| block(x)).sum::<i64>();
        eta -= added.iter().map(|&x| block(x)).sum::<i64>();
    }
    for (j0, tj) in t.iter_mut().enumerate() {
        *tj += surplus[(j0 + 1) % e];
    }
    CylindricalWeight { t, eta, level }
}

/// Certificate `v` with `a - b = sum_i v_i * alpha_{i mod e}` (index `e`
/// standing for the seam root `alpha_0`), or `None` when the difference is
/// not in the root lattice. Entries may be negative; `a` dominates `b` in
/// root order exactly when all entries are non-negative.
pub fn root_cone_certificate(
    a: &CylindricalWeight,
    b: &CylindricalWeight,
) -> Option<Vec<i64>> {
    let e = a.rank();
    if e != b.rank() || a.level != b.level || a.sum_t() != b.sum_t() {
        return None;
    }
    let mut v = vec![0i64; e];
    v[e - 1] = a.eta - b.eta;
    let mut prev = v[e - 1];
    for i in 1..e {
        prev += a.entries()[i - 1] - b.entries()[i - 1];
        v[i - 1] = prev;
    }
    // Consistency at the seam: the recurrence at index e must return to v_e,
    // which is the sum-of-entries check already performed.
    Some(v)
}

/// `a >= b` in root order: the difference is a non-negative sum of simple
/// roots.
pub fn root_order_ge(a: &CylindricalWeight, b: &CylindricalWeight) -> bool {
    matches!(root_cone_certificate(a, b), Some(v) if v.iter().all(|&x| x >= 0))
}
