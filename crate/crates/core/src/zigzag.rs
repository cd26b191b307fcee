//! Finite zigzag modules over GF(2) and their interval decomposition.
//!
//! The multiplicity of the interval p..=q is recovered from generalized
//! ranks: the rank of the canonical map from the limit to the colimit of the
//! restricted diagram, inclusion-excluded over the four corner extensions.
//! An independent isomorphism check counts homomorphism spaces against all
//! interval modules.

use crate::gf2::{BitMat, Echelon};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowDir {
    /// matrix maps node t into node t+1
    Forward,
    /// matrix maps node t+1 into node t
    Backward,
}

/// A zigzag of finite-dimensional GF(2) spaces with alternating (or indeed
/// arbitrary) arrow directions between consecutive nodes.
#[derive(Debug, Clone)]
pub struct ZigzagModule {
    pub dims: Vec<usize>,
    /// `arrows[t]` joins nodes t and t+1; Forward matrices are `dims[t+1]` by
    /// `dims[t]`, Backward matrices `dims[t]` by `dims[t+1]`
    pub arrows: Vec<(ArrowDir, BitMat)>,
}

impl ZigzagModule {
    pub fn new(dims: Vec<usize>, arrows: Vec<(ArrowDir, BitMat)>) -> Result<ZigzagModule> {
        if !dims.is_empty() && arrows.len() + 1 != dims.len() {
            return Err(Error::Malformed("arrow count must be node count minus one".into()));
        }
        for (t, (dir, m)) in arrows.iter().enumerate() {
            let (want_rows, want_cols) = match dir {
                ArrowDir::Forward => (dims[t + 1], dims[t]),
                ArrowDir::Backward => (dims[t], dims[t + 1]),
            };
            if m.rows != want_rows || m.cols != want_cols {
                return Err(Error::Malformed(format!(
                    "arrow {t} has shape {}x{}, expected {}x{}",
                    m.rows, m.cols, want_rows, want_cols
                )));
            }
        }
        Ok(ZigzagModule { dims, arrows })
    }

    pub fn nodes(&self) -> usize {
        self.dims.len()
    }

    /// The direct sum of interval modules, in the same shape as `self`.
    pub fn interval_sum(&self, intervals: &[(usize, usize)]) -> ZigzagModule {
        let n = self.nodes();
        let dims: Vec<usize> = (0..n)
            .map(|t| intervals.iter().filter(|(p, q)| *p <= t && t <= *q).count())
            .collect();
        let arrows = (0..n.saturating_sub(1))
            .map(|t| {
                let dir = self.arrows[t].0;
                let (rows_at, cols_at) = match dir {
                    ArrowDir::Forward => (t + 1, t),
                    ArrowDir::Backward => (t, t + 1),
                };
                let alive = |node: usize| -> Vec<usize> {
                    intervals
                        .iter()
                        .enumerate()
                        .filter(|(_, (p, q))| *p <= node && node <= *q)
                        .map(|(i, _)| i)
                        .collect()
                };
                let rows = alive(rows_at);
                let cols = alive(cols_at);
                let mut m = BitMat::zeros(rows.len(), cols.len());
                for (r, ri) in rows.iter().enumerate() {
                    for (c, ci) in cols.iter().enumerate() {
                        if ri == ci {
                            m.set(r, c, true);
                        }
                    }
                }
                (dir, m)
            })
            .collect();
        ZigzagModule { dims, arrows }
    }
}

/// Rank of the canonical map from the limit to the colimit of the diagram
/// restricted to nodes p..=q.
fn generalized_rank(z: &ZigzagModule, p: usize, q: usize) -> usize {
    let offs: Vec<usize> = {
        let mut acc = 0;
        let mut v = Vec::new();
        for t in p..=q {
            v.push(acc);
            acc += z.dims[t];
        }
        v
    };
    let total: usize = z.dims[p..=q].iter().sum();
    if total == 0 {
        return 0;
    }
    let off = |t: usize| offs[t - p];

    // limit: compatible tuples = kernel of the constraint matrix
    let n_constraints: usize = (p..q)
        .map(|t| match z.arrows[t].0 {
            ArrowDir::Forward => z.dims[t + 1],
            ArrowDir::Backward => z.dims[t],
        })
        .sum();
    let mut constraints = BitMat::zeros(n_constraints.max(1), total);
    let mut row = 0;
    for t in p..q {
        let (dir, m) = &z.arrows[t];
        match dir {
            ArrowDir::Forward => {
                // v_{t+1} = m v_t
                for r in 0..z.dims[t + 1] {
                    constraints.set(row, off(t + 1) + r, true);
                    for c in 0..z.dims[t] {
                        if m.get(r, c) {
                            let cur = constraints.get(row, off(t) + c);
                            constraints.set(row, off(t) + c, !cur);
                        }
                    }
                    row += 1;
                }
            }
            ArrowDir::Backward => {
                // v_t = m v_{t+1}
                for r in 0..z.dims[t] {
                    constraints.set(row, off(t) + r, true);
                    for c in 0..z.dims[t + 1] {
                        if m.get(r, c) {
                            let cur = constraints.get(row, off(t + 1) + c);
                            constraints.set(row, off(t + 1) + c, !cur);
                        }
                    }
                    row += 1;
                }
            }
        }
    }
    let lim_basis = constraints.kernel_basis();

    // colimit relations: identify a vector with its image across each arrow
    let mut relations = Echelon::new();
    for t in p..q {
        let (dir, m) = &z.arrows[t];
        match dir {
            ArrowDir::Forward => {
                for c in 0..z.dims[t] {
                    let mut rel = vec![false; total];
                    rel[off(t) + c] = true;
                    for r in 0..z.dims[t + 1] {
                        if m.get(r, c) {
                            rel[off(t + 1) + r] ^= true;
                        }
                    }
                    relations.insert(&rel);
                }
            }
            ArrowDir::Backward => {
                for c in 0..z.dims[t + 1] {
                    let mut rel = vec![false; total];
                    rel[off(t + 1) + c] = true;
                    for r in 0..z.dims[t] {
                        if m.get(r, c) {
                            rel[off(t) + r] ^= true;
                        }
                    }
                    relations.insert(&rel);
                }
            }
        }
    }

    // push limit vectors through the first component and count their span in
    // the quotient
    let mut span = relations.clone();
    let mut rank = 0;
    for v in &lim_basis {
        let mut img = vec![false; total];
        img[off(p)..off(p) + z.dims[p]].copy_from_slice(&v[off(p)..off(p) + z.dims[p]]);
        if span.insert(&img) {
            rank += 1;
        }
    }
    rank
}

/// Interval decomposition of a finite zigzag: the multiset of node ranges
/// whose interval modules sum to the input, by generalized-rank counting.
pub fn zigzag_decompose(z: &ZigzagModule) -> Vec<(usize, usize)> {
    let n = z.nodes();
    if n == 0 {
        return Vec::new();
    }
    // gr[p][q] for p <= q
    let gr = |p: i64, q: i64| -> i64 {
        if p < 0 || q >= n as i64 || p > q {
            return 0;
        }
        generalized_rank(z, p as usize, q as usize) as i64
    };
    let mut out = Vec::new();
    for p in 0..n as i64 {
        for q in p..n as i64 {
            let mult = gr(p, q) - gr(p - 1, q) - gr(p, q + 1) + gr(p - 1, q + 1);
            assert!(mult >= 0, "generalized ranks must be monotone");
            for _ in 0..mult {
                out.push((p as usize, q as usize));
            }
        }
    }
    out.sort_unstable();
    out
}

/// dim Hom(z, k_J) over GF(2), for the interval module on nodes jp..=jq.
fn hom_into_interval(z: &ZigzagModule, jp: usize, jq: usize) -> usize {
    // unknowns: a functional per node in J
    let offs: Vec<usize> = {
        let mut acc = 0;
        let mut v = Vec::new();
        for t in jp..=jq {
            v.push(acc);
            acc += z.dims[t];
        }
        v
    };
    let total: usize = z.dims[jp..=jq].iter().sum();
    if total == 0 {
        // all functionals are zero; one solution
        return 0;
    }
    let off = |t: usize| offs[t - jp];
    let inside = |t: usize| (jp..=jq).contains(&t);
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (t, (dir, m)) in z.arrows.iter().enumerate() {
        match dir {
            ArrowDir::Forward => {
                // phi_{t+1} o m = phi_t (both inside) or = 0 (t outside)
                if inside(t + 1) {
                    for c in 0..z.dims[t] {
                        let mut row = vec![false; total];
                        for r in 0..z.dims[t + 1] {
                            if m.get(r, c) {
                                row[off(t + 1) + r] ^= true;
                            }
                        }
                        if inside(t) {
                            row[off(t) + c] ^= true;
                        }
                        rows.push(row);
                    }
                }
            }
            ArrowDir::Backward => {
                if inside(t) {
                    for c in 0..z.dims[t + 1] {
                        let mut row = vec![false; total];
                        for r in 0..z.dims[t] {
                            if m.get(r, c) {
                                row[off(t) + r] ^= true;
                            }
                        }
                        if inside(t + 1) {
                            row[off(t + 1) + c] ^= true;
                        }
                        rows.push(row);
                    }
                }
            }
        }
    }
    let mut mat = BitMat::zeros(rows.len().max(1), total);
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            if v {
                mat.set(r, c, true);
            }
        }
    }
    total - mat.rank()
}

/// dim Hom(k_J, z) over GF(2).
fn hom_from_interval(z: &ZigzagModule, jp: usize, jq: usize) -> usize {
    let offs: Vec<usize> = {
        let mut acc = 0;
        let mut v = Vec::new();
        for t in jp..=jq {
            v.push(acc);
            acc += z.dims[t];
        }
        v
    };
    let total: usize = z.dims[jp..=jq].iter().sum();
    if total == 0 {
        return 0;
    }
    let off = |t: usize| offs[t - jp];
    let inside = |t: usize| (jp..=jq).contains(&t);
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (t, (dir, m)) in z.arrows.iter().enumerate() {
        match dir {
            ArrowDir::Forward => {
                // m v_t = v_{t+1} (both inside) or m v_t = 0 (t+1 outside)
                if inside(t) {
                    for r in 0..z.dims[t + 1] {
                        let mut row = vec![false; total];
                        for c in 0..z.dims[t] {
                            if m.get(r, c) {
                                row[off(t) + c] ^= true;
                            }
                        }
                        if inside(t + 1) {
                            row[off(t + 1) + r] ^= true;
                        }
                        rows.push(row);
                    }
                }
            }
            ArrowDir::Backward => {
                if inside(t + 1) {
                    for r in 0..z.dims[t] {
                        let mut row = vec![false; total];
                        for c in 0..z.dims[t + 1] {
                            if m.get(r, c) {
                                row[off(t + 1) + c] ^= true;
                            }
                        }
                        if inside(t) {
                            row[off(t) + r] ^= true;
                        }
                        rows.push(row);
                    }
                }
            }
        }
    }
    let mut mat = BitMat::zeros(rows.len().max(1), total);
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            if v {
                mat.set(r, c, true);
            }
        }
    }
    total - mat.rank()
}

/// Verify that the direct sum of the given interval modules is isomorphic to
/// the zigzag, by comparing dimensions and all hom-space dimensions against
/// interval modules in both directions. Small inputs only.
pub fn zigzag_iso_oracle(z: &ZigzagModule, intervals: &[(usize, usize)]) -> Result<bool> {
    let n = z.nodes();
    if n > 12 || z.dims.iter().any(|&d| d > 4) {
        return Err(Error::BudgetExceeded(format!(
            "zigzag oracle limited to 12 nodes of dimension at most 4, got {:?}",
            z.dims
        )));
    }
    if intervals.iter().any(|(p, q)| p > q || *q >= n.max(1)) {
        return Ok(false);
    }
    let sum = z.interval_sum(intervals);
    if sum.dims != z.dims {
        return Ok(false);
    }
    for jp in 0..n {
        for jq in jp..n {
            if hom_into_interval(z, jp, jq) != hom_into_interval(&sum, jp, jq) {
                return Ok(false);
            }
            if hom_from_interval(z, jp, jq) != hom_from_interval(&sum, jp, jq) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fwd(rows: usize, cols: usize, entries: &[(usize, usize)]) -> (ArrowDir, BitMat) {
        let mut m = BitMat::zeros(rows, cols);
        for &(r, c) in entries {
            m.set(r, c, true);
        }
        (ArrowDir::Forward, m)
    }

    fn bwd(rows: usize, cols: usize, entries: &[(usize, usize)]) -> (ArrowDir, BitMat) {
        let mut m = BitMat::zeros(rows, cols);
        for &(r, c) in entries {
            m.set(r, c, true);
        }
        (ArrowDir::Backward, m)
    }

    #[test]
    fn identity_chain_is_one_long_interval() {
        let z = ZigzagModule::new(
            vec![1, 1, 1],
            vec![fwd(1, 1, &[(0, 0)]), bwd(1, 1, &[(0, 0)])],
        )
        .unwrap();
        assert_eq!(zigzag_decompose(&z), vec![(0, 2)]);
        assert!(zigzag_iso_oracle(&z, &[(0, 2)]).unwrap());
        assert!(!zigzag_iso_oracle(&z, &[(0, 1)]).unwrap());
    }

    #[test]
    fn middle_spike() {
        // 0 <- k -> 0
        let z = ZigzagModule::new(vec![0, 1, 0], vec![bwd(0, 1, &[]), fwd(0, 1, &[])]).unwrap();
        assert_eq!(zigzag_decompose(&z), vec![(1, 1)]);
        assert!(zigzag_iso_oracle(&z, &[(1, 1)]).unwrap());
    }

    #[test]
    fn two_overlapping_intervals() {
        // k -> k^2 <- k with independent injections
        let z = ZigzagModule::new(
            vec![1, 2, 1],
            vec![fwd(2, 1, &[(0, 0)]), bwd(2, 1, &[(1, 0)])],
        )
        .unwrap();
        let d = zigzag_decompose(&z);
        assert_eq!(d, vec![(0, 1), (1, 2)]);
        assert!(zigzag_iso_oracle(&z, &d).unwrap());
        assert!(!zigzag_iso_oracle(&z, &[(0, 2), (1, 1)]).unwrap());
    }

    #[test]
    fn dimension_conservation() {
        let z = ZigzagModule::new(
            vec![2, 2, 1],
            vec![fwd(2, 2, &[(0, 0), (1, 0), (1, 1)]), bwd(2, 1, &[(0, 0)])],
        )
        .unwrap();
        let d = zigzag_decompose(&z);
        for t in 0..3 {
            let count = d.iter().filter(|(p, q)| *p <= t && t <= *q).count();
            assert_eq!(count, z.dims[t], "node {t}");
        }
        assert!(zigzag_iso_oracle(&z, &d).unwrap());
    }

    #[test]
    fn empty_and_zero_cases() {
        let z = ZigzagModule::new(vec![], vec![]).unwrap();
        assert!(zigzag_decompose(&z).is_empty());
        assert!(zigzag_iso_oracle(&z, &[]).unwrap());
        let z = ZigzagModule::new(vec![0, 0], vec![fwd(0, 0, &[])]).unwrap();
        assert!(zigzag_decompose(&z).is_empty());
    }
}
