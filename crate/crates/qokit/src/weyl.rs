use crate::duality::ChargeMatrix;
use crate::Error;

/// Affine symmetric group action on integer vectors of length `m` at level
/// `n`: generator `0` is the seam reflection sending the first entry to the
/// last plus `n` and the last to the first minus `n`, and generator `i` for
/// `0 < i < m` swaps entries `i` and `i+1` (1-based). For `m == 1` the seam
/// reflection is the identity.
pub fn reflect(v: &[i64], i: usize, n: i64) -> Result<Vec<i64>, Error> {
    let m = v.len();
    if m == 0 || i >= m {
        return Err(Error::Schema(format!(
            "reflection index {i} out of range for length {m}"
        )));
    }
    let mut out = v.to_vec();
    if i == 0 {
        if m > 1 {
            out[0] = v[m - 1] + n;
            out[m - 1] = v[0] - n;
        }
    } else {
        out.swap(i - 1, i);
    }
    Ok(out)
}

/// Translation part of the affine action: shift by `n` times an integer
/// direction with coordinate sum zero. Directions with nonzero sum do not lie
/// in the translation lattice and are rejected.
pub fn translate(v: &[i64], dir: &[i64], n: i64) -> Result<Vec<i64>, Error> {
    if dir.len() != v.len() {
        return Err(Error::Schema(format!(
            "direction length {} does not match vector length {}",
            dir.len(),
            v.len()
        )));
    }
    if dir.iter().sum::<i64>() != 0 {
        return Err(Error::Schema(
            "translation direction must have coordinate sum zero".into(),
        ));
    }
    Ok(v.iter().zip(dir).map(|(x, d)| x + n * d).collect())
}

/// Apply a word of reflection generators left to right.
pub fn apply_word(v: &[i64], word: &[usize], n: i64) -> Result<Vec<i64>, Error> {
    let mut cur = v.to_vec();
    for &i in word {
        cur = reflect(&cur, i, n)?;
    }
    Ok(cur)
}

/// Row action of the level-one affine symmetric group on an `ell x e` charge
/// matrix: generator `0` sends the first row to the last row plus one
/// (entrywise) and the last row to the first minus one; generator `i` swaps
/// rows `i` and `i+1`. Row sums transform by [`reflect`] at level `e`.
pub fn row_reflect(u: &ChargeMatrix, i: usize) -> Result<ChargeMatrix, Error> {
    let ell = u.ell();
    if i >= ell {
        return Err(Error::Schema(format!(
            "row reflection index {i} out of range for {ell} rows"
        )));
    }
    let mut rows: Vec<Vec<i64>> = u.rows().to_vec();
    if i == 0 {
        if ell > 1 {
            let first = rows[0].clone();
            let last = rows[ell - 1].clone();
            rows[0] = last.iter().map(|x| x + 1).collect();
            rows[ell - 1] = first.iter().map(|x| x - 1).collect();
        }
    } else {
        rows.swap(i - 1, i);
    }
    ChargeMatrix::new(rows, u.w)
}

/// Column action of the level-one affine symmetric group on the `e` columns,
/// mirroring [`row_reflect`]: generator `0` sends the first column to the last
/// plus one and the last to the first minus one; generator `j` swaps columns
/// `j` and `j+1`. Column sums transform by [`reflect`] at level `ell`, and row
/// sums are preserved entirely.
pub fn col_reflect(u: &ChargeMatrix, j: usize) -> Result<ChargeMatrix, Error> {
    let t = row_reflect(&u.transpose(), j)?;
    Ok(t.transpose())
}

/// Apply a row word and a column word to a charge matrix, rows first. The two
/// actions commute, so the order is a convention rather than a constraint.
pub fn act_on_matrix(
    u: &ChargeMatrix,
    row_word: &[usize],
    col_word: &[usize],
) -> Result<ChargeMatrix, Error> {
    let mut cur = u.clone();
    for &i in row_word {
        cur = row_reflect(&cur, i)?;
    }
    for &j in col_word {
        cur = col_reflect(&cur, j)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;

    fn random_matrix(rng: &mut StdRng, ell: usize, e: usize) -> ChargeMatrix {
        let rows = (0..ell)
            .map(|_| (0..e).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        ChargeMatrix::new(rows, rng.gen_range(0..3)).unwrap()
    }

    #[test]
    fn reflections_are_involutions() {
        let v = vec![4, -1, 0, 2];
        for i in 0..4 {
            let once = reflect(&v, i, 5).unwrap();
            assert_eq!(reflect(&once, i, 5).unwrap(), v, "generator {i}");
        }
        // Length one: the seam generator collapses to the identity.
        assert_eq!(reflect(&[7], 0, 3).unwrap(), vec![7]);
    }

    #[test]
    fn seam_reflection_shifts_by_the_level() {
        assert_eq!(reflect(&[2, 0, 1], 0, 3).unwrap(), vec![4, 0, -1]);
        // At level zero the seam generator is the plain transposition of the
        // outer entries.
        assert_eq!(reflect(&[2, 0, 1], 0, 0).unwrap(), vec![1, 0, 2]);
    }

    #[test]
    fn translations_require_sum_zero_and_compose_additively() {
        let v = vec![1, 2, 3];
        assert!(translate(&v, &[1, 1, 0], 2).is_err());
        let once = translate(&v, &[1, 0, -1], 2).unwrap();
        assert_eq!(once, vec![3, 2, 1]);
        let twice = translate(&once, &[1, 0, -1], 2).unwrap();
        assert_eq!(twice, translate(&v, &[2, 0, -2], 2).unwrap());
    }

    #[test]
    fn braid_and_commutation_relations_hold() {
        let v = vec![3, 1, 4, 1];
        let n = 2;
        // Adjacent generators satisfy the braid relation sts = tst.
        for i in 0..4usize {
            let j = (i + 1) % 4;
            let lhs = apply_word(&v, &[i, j, i], n).unwrap();
            let rhs = apply_word(&v, &[j, i, j], n).unwrap();
            assert_eq!(lhs, rhs, "braid at ({i},{j})");
        }
        // Non-adjacent generators commute.
        assert_eq!(
            apply_word(&v, &[1, 3], n).unwrap(),
            apply_word(&v, &[3, 1], n).unwrap()
        );
    }

    #[test]
    fn row_action_tracks_row_sums_and_preserves_column_multiset_data() {
        let mut rng = StdRng::seed_from_u64(50);
        for _ in 0..40 {
            let ell = rng.gen_range(1..=4);
            let e = rng.gen_range(1..=4);
            let u = random_matrix(&mut rng, ell, e);
            for i in 0..ell {
                let acted = row_reflect(&u, i).unwrap();
                assert_eq!(
                    acted.row_sums(),
                    reflect(&u.row_sums(), i, e as i64).unwrap(),
                    "row sums must transform by the charge-vector reflection"
                );
                let back = row_reflect(&acted, i).unwrap();
                assert_eq!(back, u, "row reflection is an involution");
            }
        }
    }

    #[test]
    fn column_action_preserves_row_sums() {
        let mut rng = StdRng::seed_from_u64(51);
        for _ in 0..40 {
            let ell = rng.gen_range(1..=4);
            let e = rng.gen_range(1..=4);
            let u = random_matrix(&mut rng, ell, e);
            for j in 0..e {
                let acted = col_reflect(&u, j).unwrap();
                assert_eq!(acted.row_sums(), u.row_sums());
                assert_eq!(
                    acted.col_sums(),
                    reflect(&u.col_sums(), j, ell as i64).unwrap()
                );
            }
        }
    }

    #[test]
    fn row_and_column_actions_commute() {
        let mut rng = StdRng::seed_from_u64(52);
        for _ in 0..60 {
            let ell = rng.gen_range(1..=4);
            let e = rng.gen_range(1..=4);
            let u = random_matrix(&mut rng, ell, e);
            let i = rng.gen_range(0..ell);
            let j = rng.gen_range(0..e);
            let rc = col_reflect(&row_reflect(&u, i).unwrap(), j).unwrap();
            let cr = row_reflect(&col_reflect(&u, j).unwrap(), i).unwrap();
            assert_eq!(rc, cr, "row generator {i} vs column generator {j}");
        }
    }
}
