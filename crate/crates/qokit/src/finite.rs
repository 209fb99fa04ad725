//! The 0/1-matrix specialization: bead matrices whose rows decode to
//! partitions inside fixed rectangles, the 180-degree reversal map, and
//! descriptors for the three standard presentations of the dual variety.
//!
//! A 0/1 matrix with `ell` rows and `e` columns records one window of an
//! abacus: row `i` has its negative half-line full, beads at the marked
//! columns, and nothing beyond. Its partition then fits inside an
//! `s_i x (e - s_i)` rectangle, where `s_i` is the row sum, and every box
//! it contains sits in a nonzero content class — the degenerate-vertex
//! count is always zero, which is what makes the finite story a strict
//! specialization of the cylindrical one.

use crate::duality::ChargeMatrix;
use crate::error::Error;
use crate::multipartition::Multipartition;
use crate::partition::ChargedPartition;
use serde::{Deserialize, Serialize};

/// A rectangular matrix with entries in `{0, 1}`, read as a bead window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroOneMatrix {
    entries: Vec<Vec<i64>>,
}

impl ZeroOneMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, Error> {
        if entries.is_empty() || entries[0].is_empty() {
            return Err(Error::Schema("matrix must be nonempty".into()));
        }
        let e = entries[0].len();
        if entries.iter().any(|r| r.len() != e) {
            return Err(Error::Schema("matrix rows must have equal length".into()));
        }
        if entries.iter().flatten().any(|&x| x != 0 && x != 1) {
            return Err(Error::Schema("matrix entries must be 0 or 1".into()));
        }
        Ok(ZeroOneMatrix { entries })
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

    /// Component charges: row sums.
    pub fn s(&self) -> Vec<i64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    /// Runner charges: column sums.
    pub fn t(&self) -> Vec<i64> {
        (0..self.e()).map(|j| self.entries.iter().map(|r| r[j]).sum()).collect()
    }

    pub fn transpose(&self) -> Self {
        ZeroOneMatrix {
            entries: (0..self.e())
                .map(|j| self.entries.iter().map(|r| r[j]).collect())
                .collect(),
        }
    }

    /// View as a charge matrix with the given framing shift, for the
    /// weight and dimension-vector pipeline.
    pub fn charge_matrix(&self, w: i64) -> ChargeMatrix {
        ChargeMatrix::new(self.entries.clone(), w).expect("validated shape")
    }
}

/// Decode each row's bead window into a charged partition; component `i`
/// fits inside an `s_i x (e - s_i)` rectangle.
pub fn multipartition_from_matrix(u: &ZeroOneMatrix) -> Result<Multipartition, Error> {
    u.charge_matrix(0).multipartition()
}

/// Encode a multipartition back into a bead window. Fails when some
/// component sticks out of its rectangle, i.e. when its abacus row
/// displaces a bead outside columns `1..e`.
pub fn matrix_from_multipartition(m: &Multipartition) -> Result<ZeroOneMatrix, Error> {
    let e = m.e;
    let mut entries = Vec::with_capacity(m.components.len());
    for comp in &m.components {
        let row = crate::abacus::AbacusRow::from_charged_partition(comp);
        let mut window = vec![0i64; e];
        for x in -(4 * e as i64 + 8)..0 {
            if !row.is_occupied(x) {
                return Err(Error::Schema(format!(
                    "component with charge {} escapes its rectangle below",
                    comp.charge
                )));
            }
        }
        for x in 0..(4 * e as i64 + 8) {
            if row.is_occupied(x) {
                if x >= e as i64 {
                    return Err(Error::Schema(format!(
                        "component with charge {} escapes its rectangle above",
                        comp.charge
                    )));
                }
                window[x as usize] = 1;
            }
        }
        entries.push(window);
    }
    ZeroOneMatrix::new(entries)
}

/// Whether every component fits inside its `s_i x (e - s_i)` rectangle.
pub fn fits_rectangles(m: &Multipartition) -> bool {
    m.components.iter().all(|comp| {
        let s = comp.charge;
        let e = m.e as i64;
        if s < 0 || s > e {
            return false;
        }
        comp.rows() as i64 <= s && comp.part(1) as i64 <= e - s
    })
}

/// The finite dimension vector: box counts in content classes `1..e-1`.
/// The class-0 count is structurally zero for bead windows, which is the
/// whole point of the specialization; it is checked, not assumed.
pub fn dimension_vector(u: &ZeroOneMatrix) -> Result<Vec<i64>, Error> {
    let counts = u.charge_matrix(0).content_counts()?;
    if counts[0] != 0 {
        return Err(Error::Schema(
            "bead window produced boxes in the degenerate content class".into(),
        ));
    }
    Ok(counts[1..].to_vec())
}

/// Rotate the matrix by 180 degrees: reverses both charge sequences, and
/// replaces each decoded component by its rotated rectangle complement.
pub fn reversal(u: &ZeroOneMatrix) -> ZeroOneMatrix {
    ZeroOneMatrix {
        entries: u
            .rows()
            .iter()
            .rev()
            .map(|row| row.iter().rev().copied().collect())
            .collect(),
    }
}

/// Which circle action a presentation is stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ActionChamber {
    Preferred,
    Opposite,
}

/// The three standard presentations of a finite-type dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PresentationKind {
    QuiverVariety,
    SVariety,
    AffineGrassmannianSlice,
}

/// One named presentation with its labelling tuples. `upper` and `lower`
/// are the two decoration sequences (weight-type over charge-type data);
/// `reversed` marks labels drawn from the rotated matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub kind: PresentationKind,
    pub upper: Vec<i64>,
    pub lower: Vec<i64>,
    pub action: ActionChamber,
    pub reversed: bool,
}

/// Everything the dual side of a bead window carries: the swapped charge
/// sequences, the partner matrix, and the presentations in both the
/// opposite-action form and the rotation-decorated preferred-action form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteDualDescriptor {
    pub w: i64,
    pub s: Vec<i64>,
    pub t: Vec<i64>,
    pub partner: ZeroOneMatrix,
    pub presentations: Vec<Presentation>,
}

fn presentation_triple(
    m: &ZeroOneMatrix,
    action: ActionChamber,
    reversed: bool,
) -> Result<Vec<Presentation>, Error> {
    let dims = dimension_vector(m)?;
    Ok(vec![
        Presentation {
            kind: PresentationKind::QuiverVariety,
            upper: dims,
            lower: m.s(),
            action,
            reversed,
        },
        Presentation {
            kind: PresentationKind::SVariety,
            upper: m.s(),
            lower: m.t(),
            action,
            reversed,
        },
        Presentation {
            kind: PresentationKind::AffineGrassmannianSlice,
            upper: m.s(),
            lower: m.t(),
            action,
            reversed,
        },
    ])
}

/// Describe the dual of the variety attached to a bead window: the partner
/// is the transposed window, its presentations are stated once with the
/// opposite circle action and once, rotation-decorated, with the preferred
/// one.
pub fn finite_dual(u: &ZeroOneMatrix, w: i64) -> Result<FiniteDualDescriptor, Error> {
    let partner = u.transpose();
    let mut presentations = presentation_triple(&partner, ActionChamber::Opposite, false)?;
    presentations.extend(presentation_triple(
        &reversal(&partner),
        ActionChamber::Preferred,
        true,
    )?);
    Ok(FiniteDualDescriptor {
        w,
        s: partner.s(),
        t: partner.t(),
        partner,
        presentations,
    })
}

/// The rotated complement of a charged partition inside its rectangle.
/// Defined only when the partition fits.
pub fn rectangle_complement(p: &ChargedPartition, e: usize) -> Result<ChargedPartition, Error> {
    let s = p.charge;
    let e = e as i64;
    if s < 0 || s > e || p.rows() as i64 > s || p.part(1) as i64 > e - s {
        return Err(Error::Schema("partition escapes its rectangle".into()));
    }
    let width = (e - s) as u64;
    let mut parts: Vec<u64> = (0..s as usize)
        .rev()
        .map(|i| width - p.part(i + 1))
        .collect();
    parts.retain(|&x| x > 0);
    ChargedPartition::new(parts, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipartition::Multipartition;
    use crate::partition::partitions_of;

    fn worked_matrix() -> ZeroOneMatrix {
        ZeroOneMatrix::new(vec![
            vec![1, 0, 1, 1],
            vec![0, 0, 1, 0],
            vec![0, 1, 0, 1],
        ])
        .unwrap()
    }

    #[test]
    fn the_worked_window_decodes_to_its_rectangle_partitions() {
        let u = worked_matrix();
        assert_eq!(u.s(), vec![3, 1, 2]);
        let m = multipartition_from_matrix(&u).unwrap();
        assert_eq!(m.components[0].parts(), &[1, 1]);
        assert_eq!(m.components[1].parts(), &[2]);
        assert_eq!(m.components[2].parts(), &[2, 1]);
        assert!(fits_rectangles(&m));
        assert_eq!(dimension_vector(&u).unwrap(), vec![2, 3, 2]);
    }

    #[test]
    fn degenerate_rows_decode_to_empty_partitions() {
        let u = ZeroOneMatrix::new(vec![
            vec![0, 0, 0],
            vec![1, 1, 1],
            vec![1, 1, 0],
        ])
        .unwrap();
        let m = multipartition_from_matrix(&u).unwrap();
        for comp in &m.components {
            assert_eq!(comp.size(), 0);
        }
        assert_eq!(m.charges(), vec![0, 3, 2]);
    }

    /// All 0/1 matrices of a given shape, as bit masks.
    fn all_matrices(ell: usize, e: usize) -> impl Iterator<Item = ZeroOneMatrix> {
        (0..1u32 << (ell * e)).map(move |mask| {
            ZeroOneMatrix::new(
                (0..ell)
                    .map(|i| (0..e).map(|j| i64::from(mask >> (i * e + j) & 1)).collect())
                    .collect(),
            )
            .unwrap()
        })
    }

    #[test]
    fn decoding_is_injective_and_hits_every_rectangle_bounded_tuple() {
        for e in 1..=4usize {
            for ell in 1..=4usize {
                let mut seen = std::collections::BTreeSet::new();
                let mut count = 0usize;
                for u in all_matrices(ell, e) {
                    let m = multipartition_from_matrix(&u).unwrap();
                    assert!(fits_rectangles(&m));
                    let key = format!("{m:?}");
                    assert!(seen.insert(key), "two windows share a decoding");
                    // Round trip back through the encoder.
                    assert_eq!(matrix_from_multipartition(&m).unwrap(), u);
                    count += 1;
                }
                // Every rectangle-bounded tuple is hit: the rows decode
                // independently, so it suffices that the window count
                // equals the product over rows of the number of
                // rectangle-bounded partitions across all charges.
                let total_per_row: usize = (0..=e as i64)
                    .map(|s| {
                        (0..=(s * (e as i64 - s)) as u64)
                            .map(|n| {
                                partitions_of(n)
                                    .into_iter()
                                    .filter(|p| {
                                        p.len() as i64 <= s
                                            && p.first().map_or(0, |&x| x as i64)
                                                <= e as i64 - s
                                    })
                                    .count()
                            })
                            .sum::<usize>()
                    })
                    .sum();
                assert_eq!(count, total_per_row.pow(ell as u32));
                assert_eq!(count, 1usize << (ell * e));
            }
        }
    }

    #[test]
    fn oversized_components_are_rejected_by_the_encoder() {
        let m = Multipartition::new(
            2,
            vec![ChargedPartition::new(vec![3], 1).unwrap()],
        )
        .unwrap();
        assert!(!fits_rectangles(&m));
        assert!(matrix_from_multipartition(&m).is_err());
    }

    #[test]
    fn reversal_is_an_involution_and_commutes_with_transpose() {
        for u in all_matrices(2, 3) {
            assert_eq!(reversal(&reversal(&u)), u);
            assert_eq!(reversal(&u.transpose()), reversal(&u).transpose());
            let mut s = u.s();
            s.reverse();
            assert_eq!(reversal(&u).s(), s);
            let mut t = u.t();
            t.reverse();
            assert_eq!(reversal(&u).t(), t);
        }
    }

    #[test]
    fn a_palindromic_window_is_fixed_by_reversal() {
        let u = ZeroOneMatrix::new(vec![vec![1, 0, 1], vec![0, 1, 0], vec![1, 0, 1]]).unwrap();
        assert_eq!(reversal(&u), u);
    }

    #[test]
    fn reversal_complements_each_component_in_its_rectangle() {
        for u in all_matrices(2, 4) {
            let m = multipartition_from_matrix(&u).unwrap();
            let rm = multipartition_from_matrix(&reversal(&u)).unwrap();
            let n = m.components.len();
            for (i, comp) in rm.components.iter().enumerate() {
                let expected = rectangle_complement(&m.components[n - 1 - i], 4).unwrap();
                assert_eq!(comp, &expected);
            }
        }
    }

    #[test]
    fn the_worked_window_dualizes_with_swapped_charges() {
        let u = worked_matrix();
        let d = finite_dual(&u, 0).unwrap();
        assert_eq!(d.s, u.t());
        assert_eq!(d.t, u.s());
        assert_eq!(d.partner, u.transpose());
        assert_eq!(d.presentations.len(), 6);
        assert!(d.presentations[..3]
            .iter()
            .all(|p| p.action == ActionChamber::Opposite && !p.reversed));
        assert!(d.presentations[3..]
            .iter()
            .all(|p| p.action == ActionChamber::Preferred && p.reversed));
        // The slice presentation carries the swapped sequences directly.
        let slice = &d.presentations[2];
        assert_eq!(slice.kind, PresentationKind::AffineGrassmannianSlice);
        assert_eq!(slice.upper, u.t());
        assert_eq!(slice.lower, u.s());
    }

    #[test]
    fn dual_of_dual_returns_the_original_descriptor_data() {
        for u in all_matrices(2, 3) {
            let d = finite_dual(&u, 1).unwrap();
            let dd = finite_dual(&d.partner, 1).unwrap();
            assert_eq!(dd.partner, u);
            assert_eq!(dd.s, u.s());
            assert_eq!(dd.t, u.t());
            assert_eq!(finite_dual(&dd.partner, 1).unwrap(), d);
        }
    }

    #[test]
    fn dual_dimension_data_matches_the_transpose_pipeline() {
        let u = worked_matrix();
        let d = finite_dual(&u, 0).unwrap();
        let quiver = &d.presentations[0];
        assert_eq!(quiver.kind, PresentationKind::QuiverVariety);
        assert_eq!(
            quiver.upper,
            dimension_vector(&u.transpose()).unwrap()
        );
        let via_duality = u.charge_matrix(0).transpose().content_counts().unwrap();
        assert_eq!(quiver.upper, via_duality[1..].to_vec());
    }

    #[test]
    fn malformed_windows_are_rejected() {
        assert!(ZeroOneMatrix::new(vec![]).is_err());
        assert!(ZeroOneMatrix::new(vec![vec![0, 2]]).is_err());
        assert!(ZeroOneMatrix::new(vec![vec![0, 1], vec![1]]).is_err());
    }
}
