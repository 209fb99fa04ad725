//! Loadings, multisegments, cocharacter lifts, and the destabilizing-limit
//! bookkeeping for attracting strata.
//!
//! The chain of data runs: a multipartition plus a multisegment determines
//! an explicit box-basis representation ([`build_representation`]) and a
//! canonical eigenvalue assignment ([`lift_from`]); negating eigenvalues
//! gives a [`Loading`]; the norm [`norm_u`] and the degree bounds checked
//! by [`limit_check`] certify the assignment as a destabilizing candidate.
//! Basis order is shared between the lift and the representation, so the
//! two line up index by index.

use crate::multipartition::Multipartition;
use crate::weightings::Weighting;
use crate::{rat_int, res, Error, Rat};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A finite set of rational positions, each carrying a vertex (residue mod
/// `e`). Positions are strictly increasing; a repeated position is a
/// collision and rejected, whatever the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Loading {
    pub support: Vec<(Rat, usize)>,
}

impl Loading {
    pub fn new(mut support: Vec<(Rat, usize)>) -> Result<Self, Error> {
        support.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in support.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::EigenvalueCollision(format!(
                    "two support points at position {}",
                    pair[0].0
                )));
            }
        }
        Ok(Loading { support })
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// How many support points carry each vertex `0..e`.
    pub fn vertex_counts(&self, e: usize) -> Vec<usize> {
        let mut out = vec![0usize; e];
        for &(_, v) in &self.support {
            out[v] += 1;
        }
        out
    }
}

/// One segment: a run of `length >= 1` boxes with contents
/// `residue, residue+1, ...` read modulo the ambient `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment {
    pub residue: usize,
    pub length: usize,
}

impl Segment {
    pub fn new(residue: usize, length: usize, e: usize) -> Result<Self, Error> {
        if e == 0 {
            return Err(Error::Schema("modulus e must be positive".into()));
        }
        if length == 0 {
            return Err(Error::Schema("segment length must be positive".into()));
        }
        Ok(Segment { residue: res(residue as i64, e), length })
    }

    /// Vertices of the segment's cells, offset by offset.
    pub fn vertices(&self, e: usize) -> Vec<usize> {
        (0..self.length).map(|c| res((self.residue + c) as i64, e)).collect()
    }
}

/// A multiset of segments, stored sorted for canonical equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Multisegment {
    pub segments: Vec<Segment>,
}

impl Multisegment {
    pub fn new(mut segments: Vec<Segment>) -> Self {
        segments.sort();
        Multisegment { segments }
    }

    pub fn empty() -> Self {
        Multisegment { segments: Vec::new() }
    }

    pub fn cell_count(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }
}

/// Where a basis cell comes from: a diagram box (1-based row and column of
/// one multipartition component) or a segment cell (0-based offset).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CellOrigin {
    Box { component: usize, row: usize, col: usize },
    Segment { index: usize, offset: usize },
}

/// One graded basis cell of a lift: eigenvalue, vertex, and origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftCell {
    pub value: Rat,
    pub vertex: usize,
    pub origin: CellOrigin,
}

/// A cocharacter lift: the scalar `nu` (normalized to one for attracting
/// candidates) and one eigenvalue per basis cell, in canonical basis order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lift {
    pub nu: Rat,
    pub cells: Vec<LiftCell>,
}

impl Lift {
    /// Eigenvalue multisets per vertex `0..e`, each sorted.
    pub fn eigenvalues_by_vertex(&self, e: usize) -> Vec<Vec<Rat>> {
        let mut out = vec![Vec::new(); e];
        for c in &self.cells {
            out[c.vertex].push(c.value.clone());
        }
        for bucket in &mut out {
            bucket.sort();
        }
        out
    }

    /// How many cells sit over each vertex.
    pub fn vertex_counts(&self, e: usize) -> Vec<usize> {
        let mut out = vec![0usize; e];
        for c in &self.cells {
            out[c.vertex] += 1;
        }
        out
    }
}

fn check_compatible(xi: &Multipartition, w: &Weighting) -> Result<(), Error> {
    if w.e != xi.e {
        return Err(Error::Schema(format!(
            "weighting modulus {} but multipartition modulus {}",
            w.e, xi.e
        )));
    }
    if w.level() != xi.level() {
        return Err(Error::Schema(format!(
            "{} weight rows but {} components",
            w.level(),
            xi.level()
        )));
    }
    for (k, (&s, &r)) in xi.charges().iter().zip(&w.residues).enumerate() {
        if res(s, w.e) as i64 != r {
            return Err(Error::Schema(format!(
                "component {k} has charge {s}, not congruent to residue {r}"
            )));
        }
    }
    Ok(())
}

/// Iterate the canonical basis order shared by [`lift_from`] and
/// [`build_representation`]: diagram boxes component by component, rows
/// top down, columns left to right; then segment cells in stored order.
fn canonical_cells(xi: &Multipartition, m: &Multisegment) -> Vec<(usize, CellOrigin)> {
    let e = xi.e;
    let mut out = Vec::new();
    for (k, comp) in xi.components.iter().enumerate() {
        for (i0, &len) in comp.parts().iter().enumerate() {
            let i = i0 as i64 + 1;
            for j in 1..=len as i64 {
                let vertex = res(comp.charge + j - i, e);
                out.push((
                    vertex,
                    CellOrigin::Box { component: k, row: i as usize, col: j as usize },
                ));
            }
        }
    }
    for (idx, seg) in m.segments.iter().enumerate() {
        for (offset, &vertex) in seg.vertices(e).iter().enumerate() {
            out.push((vertex, CellOrigin::Segment { index: idx, offset }));
        }
    }
    out
}

/// Canonical eigenvalue assignment: box `(i, j)` of component `k` gets
/// `theta_k + kappa*(i - j) + i + j - 1`; cell `c` of a segment of length
/// `n` gets `u + (1 + kappa)*(2c - (n - 1))/2`. The scalar is one.
pub fn lift_from(
    xi: &Multipartition,
    m: &Multisegment,
    w: &Weighting,
    u: &Rat,
) -> Result<Lift, Error> {
    check_compatible(xi, w)?;
    let mut cells = Vec::new();
    for (vertex, origin) in canonical_cells(xi, m) {
        let value = match origin {
            CellOrigin::Box { component, row, col } => {
                let (i, j) = (row as i64, col as i64);
                &w.theta[component] + &w.kappa * rat_int(i - j) + rat_int(i + j - 1)
            }
            CellOrigin::Segment { index, offset } => {
                let n = m.segments[index].length as i64;
                let c = offset as i64;
                u + (rat_int(1) + &w.kappa) * rat_int(2 * c - (n - 1)) / rat_int(2)
            }
        };
        cells.push(LiftCell { value, vertex, origin });
    }
    Ok(Lift { nu: Rat::one(), cells })
}

/// Squared norm of a lift at centering `u`:
/// `nu^2 + sum over cells of (value - u*nu)^2`.
pub fn norm_u(lift: &Lift, u: &Rat) -> Rat {
    let center = u * &lift.nu;
    let mut acc = &lift.nu * &lift.nu;
    for c in &lift.cells {
        let d = &c.value - &center;
        acc += &d * &d;
    }
    acc
}

/// The centering `u >> 0` sufficient for every degree comparison: one plus
/// twice the ceiling of the largest absolute box eigenvalue (segments sit
/// near `u` itself and do not enter the bound).
pub fn default_u(xi: &Multipartition, w: &Weighting) -> Result<Rat, Error> {
    check_compatible(xi, w)?;
    let mut biggest = Rat::zero();
    for (_, origin) in canonical_cells(xi, &Multisegment::empty()) {
        let CellOrigin::Box { component, row, col } = origin else {
            continue;
        };
        let (i, j) = (row as i64, col as i64);
        let v = (&w.theta[component] + &w.kappa * rat_int(i - j) + rat_int(i + j - 1)).abs();
        if v > biggest {
            biggest = v;
        }
    }
    Ok(rat_int(1) + rat_int(2) * Rat::from_integer(biggest.ceil().to_integer()))
}

/// Record the conjugacy class of a lift as a loading: one support point at
/// *minus* each eigenvalue, keeping the vertex. Colliding eigenvalues mean
/// the lift is not generic and are rejected.
pub fn loading_from_lift(lift: &Lift) -> Result<Loading, Error> {
    Loading::new(lift.cells.iter().map(|c| (-&c.value, c.vertex)).collect())
}

/// Tensor-regime test: with `kappa = 0`, a loading is violating when some
/// support point sits strictly left of every weight entry.
pub fn is_violating(loading: &Loading, w: &Weighting) -> Result<bool, Error> {
    if !w.kappa.is_zero() {
        return Err(Error::KappaRegime("violating is a kappa = 0 notion".into()));
    }
    let Some((leftmost, _)) = loading.support.first() else {
        return Ok(false);
    };
    Ok(w.theta.iter().all(|th| leftmost < th))
}

/// Unsteadiness defect of a loading at `kappa != 0`: the largest count `j`
/// such that some threshold `a` below every weight entry has a clear gap
/// `[a - |kappa|, a]` with exactly the leftmost `j` support points
/// strictly below it. Zero means steady.
pub fn unsteadiness(loading: &Loading, w: &Weighting) -> Result<usize, Error> {
    if w.kappa.is_zero() {
        return Err(Error::KappaRegime("unsteadiness is a kappa != 0 notion".into()));
    }
    let gap = w.kappa.abs();
    let theta_min = w.theta.iter().min().expect("weighting is nonempty");
    let n = loading.len();
    for j in (1..=n).rev() {
        let ceiling = if j < n {
            theta_min.min(&loading.support[j].0)
        } else {
            theta_min
        };
        if &loading.support[j - 1].0 + &gap < *ceiling {
            return Ok(j);
        }
    }
    Ok(0)
}

/// Induction of loadings: translate `j` far to the left of both `i`'s
/// support and every weight entry, then take the disjoint union. `shift`
/// fixes the translation amount; when absent the smallest adequate integer
/// shift is used. A too-small explicit shift is rejected, keeping the
/// guarantee that the inner block stays unsteady on its own.
pub fn induce(
    i: &Loading,
    j: &Loading,
    w: &Weighting,
    shift: Option<Rat>,
) -> Result<Loading, Error> {
    if j.is_empty() {
        return Ok(i.clone());
    }
    let mut floor = w.theta.iter().min().expect("weighting is nonempty").clone();
    if let Some((leftmost, _)) = i.support.first() {
        if *leftmost < floor {
            floor = leftmost.clone();
        }
    }
    let margin = w.kappa.abs() * rat_int(j.len() as i64 + 1) + rat_int(1);
    let j_max = &j.support.last().expect("nonempty").0;
    let shift = match shift {
        Some(s) => {
            if j_max - &s >= &floor - &margin {
                return Err(Error::Schema(format!(
                    "shift {s} leaves the inner block within {margin} of position {floor}"
                )));
            }
            s
        }
        None => {
            // smallest integer shift putting j_max strictly below floor - margin
            let needed = j_max - (&floor - &margin);
            Rat::from_integer(needed.floor().to_integer()) + rat_int(1)
        }
    };
    let mut support = i.support.clone();
    support.extend(j.support.iter().map(|(p, v)| (p - &shift, *v)));
    Loading::new(support)
}

/// An explicit box-basis representation: cells with their vertices and
/// origins, one framing coordinate per component, and the arrow maps as
/// index pairs. `x` steps a box to its row predecessor (and a segment cell
/// down one offset), `xbar` steps a box to its column predecessor and kills
/// segment cells, `q` sends each component's corner box `(1,1)` to that
/// component's framing coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representation {
    pub e: usize,
    pub cells: Vec<(usize, CellOrigin)>,
    pub framing: Vec<usize>,
    pub x_edges: Vec<(usize, usize)>,
    pub xbar_edges: Vec<(usize, usize)>,
    pub q_edges: Vec<(usize, usize)>,
}

impl Representation {
    /// Cells over each vertex `0..e`.
    pub fn vertex_counts(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.e];
        for &(v, _) in &self.cells {
            out[v] += 1;
        }
        out
    }
}

/// Assemble the representation on the canonical cell basis.
pub fn build_representation(xi: &Multipartition, m: &Multisegment) -> Representation {
    let e = xi.e;
    let cells = canonical_cells(xi, m);
    let index: BTreeMap<CellOrigin, usize> =
        cells.iter().enumerate().map(|(n, &(_, o))| (o, n)).collect();
    let mut x_edges = Vec::new();
    let mut xbar_edges = Vec::new();
    let mut q_edges = Vec::new();
    for (n, &(_, origin)) in cells.iter().enumerate() {
        match origin {
            CellOrigin::Box { component, row, col } => {
                if col > 1 {
                    let tgt = index[&CellOrigin::Box { component, row, col: col - 1 }];
                    x_edges.push((n, tgt));
                }
                if row > 1 {
                    let tgt = index[&CellOrigin::Box { component, row: row - 1, col }];
                    xbar_edges.push((n, tgt));
                }
                if row == 1 && col == 1 {
                    q_edges.push((n, component));
                }
            }
            CellOrigin::Segment { index: seg, offset } => {
                if offset > 0 {
                    let tgt = index[&CellOrigin::Segment { index: seg, offset: offset - 1 }];
                    x_edges.push((n, tgt));
                }
            }
        }
    }
    let framing = (0..xi.level())
        .map(|k| res(xi.components[k].charge, e))
        .collect();
    Representation { e, cells, framing, x_edges, xbar_edges, q_edges }
}

/// Which arrow family a degree report line refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapKind {
    X,
    XBar,
    Q,
}

/// One matrix coefficient that breaks its degree bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitViolation {
    pub map: MapKind,
    pub src: usize,
    pub tgt: usize,
    pub drop: Rat,
    pub bound: Rat,
}

/// Outcome of [`limit_check`]: overall pass, the smallest eigenvalue drop
/// seen per arrow family (when that family has any coefficients), and the
/// precise violations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitReport {
    pub pass: bool,
    pub min_drop_x: Option<Rat>,
    pub min_drop_xbar: Option<Rat>,
    pub min_drop_q: Option<Rat>,
    pub violations: Vec<LimitViolation>,
}

fn check_alignment(rep: &Representation, lift: &Lift, w: &Weighting) -> Result<(), Error> {
    if rep.cells.len() != lift.cells.len() {
        return Err(Error::Schema(format!(
            "representation has {} cells but lift has {}",
            rep.cells.len(),
            lift.cells.len()
        )));
    }
    for (n, (&(v, o), c)) in rep.cells.iter().zip(&lift.cells).enumerate() {
        if v != c.vertex || o != c.origin {
            return Err(Error::Schema(format!("cell {n} differs between representation and lift")));
        }
    }
    if rep.framing.len() != w.theta.len() {
        return Err(Error::Schema(format!(
            "{} framing coordinates but {} weight entries",
            rep.framing.len(),
            w.theta.len()
        )));
    }
    Ok(())
}

/// Verify the destabilizing-limit degree bounds for a graded
/// representation: every coefficient of `q` must drop the eigenvalue by at
/// least one, and every coefficient of `x` and `xbar` by at least
/// `1 - |kappa|`. Framing coordinate `k` carries eigenvalue `theta_k`.
/// Reports the minimum drops and each offending coefficient.
pub fn limit_check(rep: &Representation, lift: &Lift, w: &Weighting) -> Result<LimitReport, Error> {
    check_alignment(rep, lift, w)?;
    let bound_q = rat_int(1);
    let bound_x = rat_int(1) - w.kappa.abs();
    let mut report = LimitReport {
        pass: true,
        min_drop_x: None,
        min_drop_xbar: None,
        min_drop_q: None,
        violations: Vec::new(),
    };
    let visit = |map: MapKind,
                     src: usize,
                     tgt: usize,
                     drop: Rat,
                     bound: &Rat,
                     slot: &mut Option<Rat>,
                     violations: &mut Vec<LimitViolation>| {
        if slot.as_ref().map_or(true, |cur| drop < *cur) {
            *slot = Some(drop.clone());
        }
        if drop < *bound {
            violations.push(LimitViolation { map, src, tgt, drop, bound: bound.clone() });
        }
    };
    for &(src, tgt) in &rep.x_edges {
        let drop = &lift.cells[src].value - &lift.cells[tgt].value;
        visit(MapKind::X, src, tgt, drop, &bound_x, &mut report.min_drop_x, &mut report.violations);
    }
    for &(src, tgt) in &rep.xbar_edges {
        let drop = &lift.cells[src].value - &lift.cells[tgt].value;
        visit(
            MapKind::XBar,
            src,
            tgt,
            drop,
            &bound_x,
            &mut report.min_drop_xbar,
            &mut report.violations,
        );
    }
    for &(src, k) in &rep.q_edges {
        let drop = &lift.cells[src].value - &w.theta[k];
        visit(MapKind::Q, src, k, drop, &bound_q, &mut report.min_drop_q, &mut report.violations);
    }
    report.pass = report.violations.is_empty();
    Ok(report)
}

/// Whether two gradings of the same representation put the same eigenvalue
/// drop on every arrow coefficient (and agree on the scalar). Gradings
/// related this way keep the representation a fixed point of the induced
/// cocharacter, so they are the ones competing in norm.
pub fn drops_agree_on_edges(
    rep: &Representation,
    a: &Lift,
    b: &Lift,
    w: &Weighting,
) -> Result<bool, Error> {
    check_alignment(rep, a, w)?;
    check_alignment(rep, b, w)?;
    if a.nu != b.nu {
        return Ok(false);
    }
    for &(src, tgt) in rep.x_edges.iter().chain(&rep.xbar_edges) {
        let da = &a.cells[src].value - &a.cells[tgt].value;
        let db = &b.cells[src].value - &b.cells[tgt].value;
        if da != db {
            return Ok(false);
        }
    }
    for &(src, k) in &rep.q_edges {
        let da = &a.cells[src].value - &w.theta[k];
        let db = &b.cells[src].value - &w.theta[k];
        if da != db {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Chamber-proxy key of a loading: the vertex sequence plus, for each
/// consecutive gap, the count of critical values (pairwise weight
/// differences and multiples of `|kappa|` up to the support span) lying
/// strictly below the gap. Two loadings with equal keys are treated as
/// equivalent; this operationalizes a relation the source material leaves
/// to external definitions, so it is a documented proxy, not a theorem.
pub fn equivalence_key(
    loading: &Loading,
    w: &Weighting,
) -> (Vec<usize>, Vec<usize>) {
    let vertices: Vec<usize> = loading.support.iter().map(|&(_, v)| v).collect();
    let mut critical: Vec<Rat> = Vec::new();
    for i in 0..w.theta.len() {
        for j in 0..w.theta.len() {
            if i != j {
                let d = (&w.theta[i] - &w.theta[j]).abs();
                if d.is_positive() {
                    critical.push(d);
                }
            }
        }
    }
    if !w.kappa.is_zero() && loading.len() >= 2 {
        let span = &loading.support.last().unwrap().0 - &loading.support[0].0;
        let mut mult = w.kappa.abs();
        while mult <= span {
            critical.push(mult.clone());
            mult += w.kappa.abs();
        }
    }
    critical.sort();
    critical.dedup();
    let gaps = loading
        .support
        .windows(2)
        .map(|pair| {
            let g = &pair[1].0 - &pair[0].0;
            critical.iter().filter(|c| **c < g).count()
        })
        .collect();
    (vertices, gaps)
}

/// Equivalence proxy on loadings: equality of [`equivalence_key`].
pub fn loading_equivalent(a: &Loading, b: &Loading, w: &Weighting) -> bool {
    equivalence_key(a, w) == equivalence_key(b, w)
}
