use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::abacus::{Abacus, AbacusRow};
use crate::cylinder::{root_cone_certificate, weight_of, CylindricalWeight};
use crate::multipartition::Multipartition;
use crate::partition::ChargedPartition;
use crate::ribbon::core_from_column;
use crate::{res, Error};

/// Where a single bead lands under the rectangle flip. Input position `x` on
/// row `row` (1-based, out of `ell` rows with `e` runners) sits in block
/// `k = floor(x/e)` at runner offset `c = x mod e`; the flipped bead sits at
/// position `k*ell + row - 1` on row `c + 1` of the transposed diagram.
pub fn flip_position(x: i64, row: usize, e: usize, ell: usize) -> (i64, usize) {
    let k = x.div_euclid(e as i64);
    let c = res(x, e);
    (k * ell as i64 + row as i64 - 1, c + 1)
}

/// Rectangle flip of an `ell`-row abacus with `e` runners: cut the bead
/// diagram into `ell x e` blocks and transpose each block in place, producing
/// an `e`-row abacus with `ell` runners. Far enough left every position is
/// occupied on every row and far enough right none is, so the flip is computed
/// on a finite window and the complement maps to itself.
pub fn flip(a: &Abacus, e: usize, ell: usize) -> Result<Abacus, Error> {
    if a.level() != ell {
        return Err(Error::Schema(format!(
            "flip expects {ell} rows, abacus has {}",
            a.level()
        )));
    }
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for row in &a.rows {
        let (s, added, removed) = row.exceptions();
        lo = lo.min(removed.iter().next().copied().unwrap_or(s).min(s));
        hi = hi.max(added.iter().next_back().map_or(s, |&x| x + 1).max(s));
    }
    let k_lo = lo.div_euclid(e as i64);
    let k_hi = hi.div_euclid(e as i64) + 1;

    let mut beads: Vec<BTreeSet<i64>> = vec![BTreeSet::new(); e];
    for (r0, row) in a.rows.iter().enumerate() {
        for x in k_lo * e as i64..k_hi * e as i64 {
            if row.is_occupied(x) {
                let (y, out_row) = flip_position(x, r0 + 1, e, ell);
                beads[out_row - 1].insert(y);
            }
        }
    }
    let base = k_lo * ell as i64;
    let rows = beads
        .into_iter()
        .map(|b| AbacusRow::from_exceptions(base, b.into_iter().filter(|&y| y >= base), []))
        .collect();
    Ok(Abacus::new(rows))
}

/// Rectangular integer matrix of bead multiplicities together with the global
/// framing shift `w`. Row sums and column sums are the level-`ell` and
/// level-`e` charge vectors; they are recomputed on demand, never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeMatrix {
    entries: Vec<Vec<i64>>,
    pub w: i64,
}

impl ChargeMatrix {
    pub fn new(entries: Vec<Vec<i64>>, w: i64) -> Result<Self, Error> {
        if entries.is_empty() || entries[0].is_empty() {
            return Err(Error::Schema("charge matrix must be nonempty".into()));
        }
        let e = entries[0].len();
        if entries.iter().any(|r| r.len() != e) {
            return Err(Error::Schema("charge matrix rows must have equal length".into()));
        }
        Ok(ChargeMatrix { entries, w })
    }

    /// Matrix of the charged vacua: entry `(g, k)` is `ceil((s_g - k + 1)/e)`,
    /// the number of beads the charge-`s_g` vacuum has on runner `k` at
    /// non-negative block index.
    pub fn vacuum(charges: &[i64], e: usize, w: i64) -> Result<Self, Error> {
        let rows = charges
            .iter()
            .map(|&s| (1..=e as i64).map(|k| (s - k + e as i64).div_euclid(e as i64)).collect())
            .collect();
        Self::new(rows, w)
    }

    pub fn ell(&self) -> usize {
        self.entries.len()
    }

    pub fn e(&self) -> usize {
        self.entries[0].len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<i64> {
        (0..self.e()).map(|j| self.entries.iter().map(|r| r[j]).sum()).collect()
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.e())
            .map(|j| self.entries.iter().map(|r| r[j]).collect())
            .collect();
        ChargeMatrix { entries, w: self.w }
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().flatten().all(|&x| x == 0 || x == 1)
    }

    /// Read a 0/1 matrix as an abacus directly: row `i` occupies position
    /// `j - 1` exactly when `u_{ij} = 1`, on top of the fully occupied
    /// negative half-line.
    pub fn to_abacus(&self) -> Result<Abacus, Error> {
        if !self.is_zero_one() {
            return Err(Error::Schema("abacus reading requires a 0/1 matrix".into()));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| {
                let beads = r
                    .iter()
                    .enumerate()
                    .filter(|(_, &u)| u == 1)
                    .map(|(j, _)| j as i64);
                AbacusRow::from_exceptions(0, beads, [])
            })
            .collect();
        Ok(Abacus::new(rows))
    }

    /// The charged-partition tuple encoded by a 0/1 matrix; component `i` fits
    /// inside an `s_i x (e - s_i)` box, where `s_i` is the row sum.
    pub fn multipartition(&self) -> Result<Multipartition, Error> {
        Multipartition::from_abacus(&self.to_abacus()?, self.e())
    }

    /// Per-row cores: row `i`, read as a runner-level column, determines a
    /// charged partition with no removable `e`-ribbon and charge `s_i`.
    pub fn core_components(&self) -> Result<Vec<ChargedPartition>, Error> {
        self.entries.iter().map(|r| core_from_column(r, self.e())).collect()
    }

    /// Total box count of the per-row cores in each content class mod `e`.
    pub fn content_counts(&self) -> Result<Vec<i64>, Error> {
        let e = self.e();
        let mut counts = vec![0i64; e];
        for core in self.core_components()? {
            for (i, c) in core.residue_counts(e).iter().enumerate() {
                counts[i] += *c as i64;
            }
        }
        Ok(counts)
    }

    /// Content-indexed dimension vector `v_i = w + (boxes of content i mod e)`
    /// over the per-row cores.
    pub fn dimension_vector(&self) -> Result<Vec<i64>, Error> {
        Ok(self.content_counts()?.iter().map(|&n| self.w + n).collect())
    }

    /// Highest weight attached to the matrix: the weight of the charged vacuum
    /// at the row sums. Permuting rows does not change it.
    pub fn lambda_weight(&self) -> CylindricalWeight {
        weight_of(&Abacus::vacuum(&self.row_sums()), self.e())
    }

    /// Central weight attached to the matrix: `lambda` minus `v_i` copies of
    /// `alpha_i` for each content class `i`, with `v` the dimension vector.
    /// By construction `root_cone_certificate(lambda, mu)` recovers `v`.
    pub fn mu_weight(&self) -> Result<CylindricalWeight, Error> {
        let v = self.dimension_vector()?;
        let mut wt = self.lambda_weight();
        for (i, &vi) in v.iter().enumerate() {
            wt = wt.sub_alpha(i, vi);
        }
        Ok(wt)
    }

    /// Linear parameter on the standard ray for this matrix: entry `i` is
    /// `s_i * ell + i * e` (1-based `i`), which is always off every wall.
    pub fn standard_theta(&self) -> Vec<i64> {
        let (ell, e) = (self.ell() as i64, self.e() as i64);
        self.row_sums()
            .iter()
            .enumerate()
            .map(|(i0, &s)| s * ell + (i0 as i64 + 1) * e)
            .collect()
    }
}

/// Reindex a root-coefficient certificate (slot `k` holding the coefficient
/// of `alpha_{k+1}`, last slot the seam root `alpha_0`) into the vector
/// indexed directly by content class `0..e-1`.
pub fn certificate_by_residue(cert: &[i64]) -> Vec<i64> {
    let e = cert.len();
    let mut out = vec![0i64; e];
    for (k, &c) in cert.iter().enumerate() {
        out[(k + 1) % e] = c;
    }
    out
}

/// Content-class counts of the weight gap from `lam` down to `mu`, or `None`
/// when the difference is not in the root lattice.
pub fn content_counts_between(
    lam: &CylindricalWeight,
    mu: &CylindricalWeight,
) -> Option<Vec<i64>> {
    root_cone_certificate(lam, mu).map(|c| certificate_by_residue(&c))
}

/// Seam potential of a single staircase column of height `x` at the given
/// level: the cumulative count of period-seams crossed when the column is
/// grown from height 0, with increments `g(x+1) - g(x) = -floor(x / level)`
/// and `g(0) = 0`. Reflecting the staircase across the diagonal changes the
/// degree by the sum of these potentials over the columns; without the
/// correction, transposition would fail to reverse the root order on weights
/// whose entries stray outside one period.
fn seam_potential(x: i64, level: i64) -> i64 {
    if x >= 0 {
        -(0..x).map(|y| y.div_euclid(level)).sum::<i64>()
    } else {
        (x..0).map(|y| y.div_euclid(level)).sum::<i64>()
    }
}

/// Total seam potential of a weight: sum of `seam_potential` over its entries.
/// Invariant under transposition (the potential of the transposed weight at
/// the swapped level is the same number), which is what makes the corrected
/// transpose an involution.
fn total_seam_potential(wt: &CylindricalWeight) -> i64 {
    wt.entries().iter().map(|&t| seam_potential(t, wt.level)).sum()
}

/// Transpose of a dominant weight: reading the cylindrical staircase by
/// columns instead of rows. Output entry `s_k` is the largest index `j` with
/// `t_j >= k`; the degree flips sign and picks up the seam potential of the
/// staircase. The output is a dominant weight of rank `level` at level
/// `rank`, and transposing twice gives back the input. On dominant weights
/// the map reverses root order.
pub fn transpose_weight(wt: &CylindricalWeight) -> Result<CylindricalWeight, Error> {
    if !wt.is_dominant() {
        return Err(Error::NotDominant(format!(
            "transpose is only defined on dominant weights, got entries {:?}",
            wt.entries()
        )));
    }
    let ell = wt.level;
    let mut s = Vec::with_capacity(ell as usize);
    let mut j = 0i64;
    for k in 1..=ell {
        while wt.t_at(j) < k {
            j -= 1;
        }
        while wt.t_at(j + 1) >= k {
            j += 1;
        }
        s.push(j);
    }
    CylindricalWeight::new(s, -wt.eta + total_seam_potential(wt), wt.rank() as i64)
}

/// Rank-level dual of a weight at framing shift `w`: transpose plus the
/// degree reflection `eta -> w - eta`. Applying it twice with the same `w`
/// gives back the input, and it reverses root order between dominant weights.
pub fn weight_dual(wt: &CylindricalWeight, w: i64) -> Result<CylindricalWeight, Error> {
    let mut out = transpose_weight(wt)?;
    out.eta += w;
    Ok(out)
}

/// Dual of a stratum label `(nu, n)`: the weight dual shifted `n` steps up in
/// degree, with the same defect `n`. Applying it twice returns the input.
pub fn strata_dual(
    nu: &CylindricalWeight,
    n: i64,
    w: i64,
) -> Result<(CylindricalWeight, i64), Error> {
    if n < 0 {
        return Err(Error::Schema(format!("stratum defect must be >= 0, got {n}")));
    }
    let mut out = weight_dual(nu, w)?;
    out.eta += n;
    Ok((out, n))
}

/// Endpoints of the interval dual to `[lam, mu]`: the dual of the dominant
/// representative of `mu` is the new top, the dual of `lam` the new bottom.
pub fn dual_endpoints(
    lam: &CylindricalWeight,
    mu: &CylindricalWeight,
    w: i64,
) -> Result<(CylindricalWeight, CylindricalWeight), Error> {
    Ok((weight_dual(&mu.dominant_representative(), w)?, weight_dual(lam, w)?))
}

/// The weights and linear parameter attached to one side of a dual pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDescriptor {
    pub lam: CylindricalWeight,
    pub mu: CylindricalWeight,
    pub theta: Vec<i64>,
}

/// Descriptors for a charge matrix and its transpose. The dual side carries
/// the transposed matrix's weights and the negated standard parameter;
/// building the pair from the transposed matrix swaps the two sides and
/// negates both parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualPair {
    pub primal: WeightDescriptor,
    pub dual: WeightDescriptor,
}

impl DualPair {
    pub fn from_matrix(u: &ChargeMatrix) -> Result<Self, Error> {
        let ut = u.transpose();
        Ok(DualPair {
            primal: WeightDescriptor {
                lam: u.lambda_weight(),
                mu: u.mu_weight()?,
                theta: u.standard_theta(),
            },
            dual: WeightDescriptor {
                lam: ut.lambda_weight(),
                mu: ut.mu_weight()?,
                theta: ut.standard_theta().iter().map(|&x| -x).collect(),
            },
        })
    }
}
