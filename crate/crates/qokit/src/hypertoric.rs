//! Polarized hyperplane arrangements over exact rationals: sign-vector
//! feasibility and boundedness, Gale duality, chamber enumeration, and
//! unimodularity.
//!
//! An arrangement is a subspace of the ambient coordinate space together
//! with a rational shift and a functional on the subspace. A sign vector
//! carves a region out of the shifted subspace (zero counts as plus, so
//! the plus side is closed and the minus side open); feasibility asks
//! whether the region is nonempty and boundedness whether the functional
//! is bounded above on its recession cone. All decisions go through
//! Fourier-Motzkin elimination with weak/strict constraint tags, so the
//! answers are exact.

use crate::{rat_int, Error, Rat};
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// A choice of side for each ambient coordinate; `true` is the plus
/// (closed) side.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignVector(pub Vec<bool>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All sign vectors of length `n` in lexicographic order, plus first.
    pub fn all(n: usize) -> Vec<SignVector> {
        (0..1usize << n)
            .map(|mask| SignVector((0..n).map(|i| mask & (1 << i) == 0).collect()))
            .collect()
    }
}

impl std::fmt::Display for SignVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &s in &self.0 {
            write!(f, "{}", if s { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// A subspace of rational `n`-space spanned by the integer columns of
/// `g_basis`, a rational shift `xi_lift` (representing its class modulo
/// the subspace), and a functional `eta` on the subspace written in
/// coordinates against `g_basis`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizedArrangement {
    pub n: usize,
    pub g_basis: Vec<Vec<i64>>,
    pub xi_lift: Vec<Rat>,
    pub eta: Vec<Rat>,
}

impl PolarizedArrangement {
    pub fn new(g_basis: Vec<Vec<i64>>, xi_lift: Vec<Rat>, eta: Vec<Rat>) -> Result<Self, Error> {
        let n = g_basis.len();
        if n == 0 {
            return Err(Error::Schema("ambient dimension must be positive".into()));
        }
        let d = g_basis[0].len();
        if g_basis.iter().any(|row| row.len() != d) {
            return Err(Error::Schema("ragged subspace basis".into()));
        }
        if xi_lift.len() != n {
            return Err(Error::Schema(format!(
                "shift has {} coordinates in ambient dimension {n}",
                xi_lift.len()
            )));
        }
        if eta.len() != d {
            return Err(Error::Schema(format!(
                "functional has {} coordinates against a {d}-column basis",
                eta.len()
            )));
        }
        let rational: Vec<Vec<Rat>> =
            g_basis.iter().map(|row| row.iter().map(|&x| rat_int(x)).collect()).collect();
        if rank(&rational) != d {
            return Err(Error::Schema("subspace basis does not have full column rank".into()));
        }
        Ok(PolarizedArrangement { n, g_basis, xi_lift, eta })
    }

    /// Subspace dimension.
    pub fn dim(&self) -> usize {
        self.g_basis.first().map_or(0, Vec::len)
    }
}

/// One linear constraint `coeffs . c + constant (>= | >) 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Constraint {
    coeffs: Vec<Rat>,
    constant: Rat,
    strict: bool,
}

impl Constraint {
    /// Scale so the first nonzero coefficient (or the constant) has
    /// absolute value one; positive scaling preserves meaning and makes
    /// duplicates syntactically equal.
    fn normalized(mut self) -> Self {
        let lead = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.constant))
            .find(|x| !x.is_zero())
            .cloned();
        if let Some(lead) = lead {
            let scale = lead.abs();
            for c in &mut self.coeffs {
                *c = &*c / &scale;
            }
            self.constant = &self.constant / &scale;
        }
        self
    }
}

/// Exact Fourier-Motzkin feasibility for a system of tagged constraints.
fn fm_feasible(mut system: Vec<Constraint>, vars: usize) -> bool {
    for var in (0..vars).rev() {
        let mut keep = Vec::new();
        let mut lower = Vec::new(); // coefficient > 0: c_var bounded below
        let mut upper = Vec::new(); // coefficient < 0: bounded above
        for con in system {
            let a = con.coeffs[var].clone();
            if a.is_zero() {
                keep.push(con);
            } else if a.is_positive() {
                lower.push(con);
            } else {
                upper.push(con);
            }
        }
        for lo in &lower {
            for hi in &upper {
                let alo = &lo.coeffs[var];
                let ahi = &hi.coeffs[var];
                // alo > 0 > ahi; the combination (-ahi)*lo + alo*hi kills
                // the variable with positive multipliers.
                let mlo = -ahi;
                let mhi = alo;
                let coeffs: Vec<Rat> = (0..var)
                    .map(|j| &mlo * &lo.coeffs[j] + mhi * &hi.coeffs[j])
                    .collect();
                let constant = &mlo * &lo.constant + mhi * &hi.constant;
                let combined = Constraint {
                    coeffs,
                    constant,
                    strict: lo.strict || hi.strict,
                }
                .normalized();
                if !keep.contains(&combined) {
                    keep.push(combined);
                }
            }
        }
        // Truncate dead coefficients so widths stay consistent.
        for con in &mut keep {
            con.coeffs.truncate(var);
        }
        system = keep;
        // Early exit on a constant contradiction.
        for con in &system {
            if con.coeffs.iter().all(Rat::is_zero) {
                let ok = if con.strict {
                    con.constant.is_positive()
                } else {
                    !con.constant.is_negative()
                };
                if !ok {
                    return false;
                }
            }
        }
    }
    system.iter().all(|con| {
        if con.strict {
            con.constant.is_positive()
        } else {
            !con.constant.is_negative()
        }
    })
}

/// The sign-region system in subspace coordinates: for each ambient slot,
/// `(G c + xi)_i >= 0` on the plus side and `< 0` on the minus side.
fn region_system(a: &PolarizedArrangement, sigma: &SignVector) -> Vec<Constraint> {
    let d = a.dim();
    (0..a.n)
        .map(|i| {
            let row: Vec<Rat> = (0..d).map(|j| rat_int(a.g_basis[i][j])).collect();
            if sigma.0[i] {
                Constraint { coeffs: row, constant: a.xi_lift[i].clone(), strict: false }
            } else {
                Constraint {
                    coeffs: row.iter().map(|x| -x).collect(),
                    constant: -&a.xi_lift[i],
                    strict: true,
                }
            }
        })
        .map(Constraint::normalized)
        .collect()
}

/// Whether the sign region meets the shifted subspace.
pub fn is_feasible(a: &PolarizedArrangement, sigma: &SignVector) -> Result<bool, Error> {
    if sigma.len() != a.n {
        return Err(Error::Schema(format!(
            "sign vector of length {} in ambient dimension {}",
            sigma.len(),
            a.n
        )));
    }
    Ok(fm_feasible(region_system(a, sigma), a.dim()))
}

/// Whether the functional is bounded above on the recession cone of the
/// sign region: no subspace direction with weakly sign-compatible
/// coordinates pays the functional a strictly positive amount.
pub fn is_bounded(a: &PolarizedArrangement, sigma: &SignVector) -> Result<bool, Error> {
    if sigma.len() != a.n {
        return Err(Error::Schema(format!(
            "sign vector of length {} in ambient dimension {}",
            sigma.len(),
            a.n
        )));
    }
    let d = a.dim();
    let mut system: Vec<Constraint> = (0..a.n)
        .map(|i| {
            let row: Vec<Rat> = if sigma.0[i] {
                (0..d).map(|j| rat_int(a.g_basis[i][j])).collect()
            } else {
                (0..d).map(|j| rat_int(-a.g_basis[i][j])).collect()
            };
            Constraint { coeffs: row, constant: Rat::zero(), strict: false }.normalized()
        })
        .collect();
    system.push(
        Constraint { coeffs: a.eta.clone(), constant: Rat::zero(), strict: true }.normalized(),
    );
    Ok(!fm_feasible(system, d))
}

/// Which chamber predicate to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chamber {
    Feasible,
    Bounded,
    BoundedFeasible,
}

/// All sign vectors satisfying the predicate, in lexicographic order.
/// The ambient dimension is capped because the scan is a full `2^n` sweep.
pub fn enumerate(
    a: &PolarizedArrangement,
    predicate: Chamber,
    cap: usize,
) -> Result<Vec<SignVector>, Error> {
    if a.n > cap {
        return Err(Error::CapExceeded { cap, reached: a.n });
    }
    let mut out = Vec::new();
    for sigma in SignVector::all(a.n) {
        let keep = match predicate {
            Chamber::Feasible => is_feasible(a, &sigma)?,
            Chamber::Bounded => is_bounded(a, &sigma)?,
            Chamber::BoundedFeasible => is_feasible(a, &sigma)? && is_bounded(a, &sigma)?,
        };
        if keep {
            out.push(sigma);
        }
    }
    Ok(out)
}

/// Row-reduce a rational matrix in place; returns the pivot columns.
fn rref(mat: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let lead = mat[r][c].clone();
        for x in &mut mat[r] {
            *x = &*x / &lead;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &mat[r][j];
                    mat[i][j] = &mat[i][j] - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

fn rank(mat: &[Vec<Rat>]) -> usize {
    let mut work = mat.to_vec();
    rref(&mut work).len()
}

/// Solve `M y = b` for any one rational solution in `cols` unknowns.
/// The width is explicit so a system with no equations still answers in
/// the right space.
fn solve(m: &[Vec<Rat>], b: &[Rat], cols: usize) -> Option<Vec<Rat>> {
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut y = vec![Rat::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        y[c] = aug[r][cols].clone();
    }
    Some(y)
}

/// An integer basis for the null space of `M` (columns are basis vectors),
/// each column primitive.
fn integer_kernel(m: &[Vec<Rat>], cols: usize) -> Vec<Vec<i64>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rat::zero(); cols];
        v[f] = rat_int(1);
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -&work[r][f];
        }
        // Clear denominators and divide by the gcd to get a primitive
        // integer vector.
        let mut denom = 1i64;
        for x in &v {
            let d = num::ToPrimitive::to_i64(x.denom()).expect("small denominators");
            denom = denom / gcd(denom, d) * d;
        }
        let mut ints: Vec<i64> = v
            .iter()
            .map(|x| {
                num::ToPrimitive::to_i64(&(x * rat_int(denom)).to_integer())
                    .expect("small kernel entries")
            })
            .collect();
        let g = ints.iter().fold(0i64, |acc, &x| gcd(acc, x.abs()));
        if g > 1 {
            for x in &mut ints {
                *x /= g;
            }
        }
        basis.push(ints);
    }
    basis
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All `k`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut s: Vec<usize> = (0..k).collect();
    loop {
        out.push(s.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if s[i] + (k - i) < n {
                s[i] += 1;
                for j in i + 1..k {
                    s[j] = s[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The Gale dual arrangement: same ambient space, subspace replaced by its
/// annihilator, and the two parameters swapped with a global sign. The
/// new shift is `-y` for any `y` with `y^T G = eta`; the new functional's
/// coordinate on the `j`-th annihilator basis vector is minus its pairing
/// with the old shift. Feasibility and boundedness trade places under
/// this construction.
pub fn gale_dual(a: &PolarizedArrangement) -> Result<PolarizedArrangement, Error> {
    let d = a.dim();
    // Rows of G^T, as a d x n rational matrix.
    let gt: Vec<Vec<Rat>> = (0..d)
        .map(|j| (0..a.n).map(|i| rat_int(a.g_basis[i][j])).collect())
        .collect();
    let y = solve(&gt, &a.eta, a.n)
        .ok_or_else(|| Error::Schema("functional escapes the basis row space".into()))?;
    let kernel_cols = integer_kernel(&gt, a.n);
    let dual_basis: Vec<Vec<i64>> = (0..a.n)
        .map(|i| kernel_cols.iter().map(|col| col[i]).collect())
        .collect();
    let dual_eta: Vec<Rat> = kernel_cols
        .iter()
        .map(|col| {
            -col.iter()
                .zip(&a.xi_lift)
                .map(|(&g, x)| rat_int(g) * x)
                .sum::<Rat>()
        })
        .collect();
    PolarizedArrangement::new(dual_basis, y.iter().map(|v| -v).collect(), dual_eta)
}

/// Whether the induced hyperplane arrangement on the shifted subspace is
/// simple: every subsystem of hyperplane equations with a common point is
/// linearly independent, so no point lies on more hyperplanes than the
/// dimension allows.
pub fn is_simple(a: &PolarizedArrangement) -> bool {
    let d = a.dim();
    let rows: Vec<Vec<Rat>> = (0..a.n)
        .map(|i| (0..d).map(|j| rat_int(a.g_basis[i][j])).collect())
        .collect();
    for k in 1..=(d + 1).min(a.n) {
        for s in subsets(a.n, k) {
            let m: Vec<Vec<Rat>> = s.iter().map(|&i| rows[i].clone()).collect();
            let b: Vec<Rat> = s.iter().map(|&i| -&a.xi_lift[i]).collect();
            if solve(&m, &b, d).is_some() && rank(&m) < k {
                return false;
            }
        }
    }
    true
}

/// Whether the data is generic: the arrangement and its Gale dual are
/// both simple. Feasibility and boundedness are decided exactly for any
/// input, but the feasible/bounded exchange across `gale_dual` is a
/// theorem only on this locus — the shift degeneracies on one side are
/// exactly the functional degeneracies on the other.
pub fn is_generic(a: &PolarizedArrangement) -> Result<bool, Error> {
    Ok(is_simple(a) && is_simple(&gale_dual(a)?))
}

/// Fraction-free integer determinant (Bareiss) on a small square matrix.
fn det_i128(mat: &mut Vec<Vec<i128>>) -> i128 {
    let n = mat.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if mat[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| mat[i][k] != 0) else {
                return 0;
            };
            mat.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                mat[i][j] = (mat[k][k] * mat[i][j] - mat[i][k] * mat[k][j]) / prev;
            }
            mat[i][k] = 0;
        }
        prev = mat[k][k];
    }
    sign * mat[n - 1][n - 1]
}

/// Whether every spanning subset of coordinate rows generates the same
/// lattice: all nonzero maximal minors of the basis matrix share one
/// absolute value.
pub fn is_unimodular(a: &PolarizedArrangement) -> bool {
    let d = a.dim();
    if d == 0 {
        return true;
    }
    let mut witness: Option<i128> = None;
    for rows in subsets(a.n, d) {
        let mut minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|&i| a.g_basis[i].iter().map(|&x| x as i128).collect())
            .collect();
        let det = det_i128(&mut minor).abs();
        if det != 0 {
            match witness {
                None => witness = Some(det),
                Some(w) if w != det => return false,
                _ => {}
            }
        }
    }
    true
}
