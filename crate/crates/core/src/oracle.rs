//! Brute-force decision of eps-interleaving between two decomposed systems.
//!
//! Morphisms between canonical block systems are matrices with one scalar per
//! (source summand, target summand) pair, because every Hom space between
//! block modules is at most one-dimensional. Existence of an interleaving is
//! therefore a finite search over GF(2) scalars subject to
//!   * nonzero-Hom feasibility per pair (exact region reasoning),
//!   * commutation with the connecting maps (exact region reasoning),
//!   * the two triangle identities, checked on a cell grid fine enough to
//!     witness every membership pattern and every boundary distinction.
//!
//! The forward morphism is enumerated over the solution space of its linear
//! constraints; for each candidate the reverse morphism is solved for
//! linearly. Everything is exact rational arithmetic.

use crate::block::BlockKind;
use crate::extreal::{ExtReal, Q};
use crate::gf2::SmallSystem;
use crate::mv::MVSystem;
use crate::region::Region;
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use std::collections::{BTreeSet, HashSet};

/// Caps on the enumeration. The defaults are comfortable for systems of up to
/// six blocks per side.
#[derive(Debug, Clone)]
pub struct OracleBudget {
    pub max_unknowns: usize,
    pub max_candidates: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_unknowns: 40, max_candidates: 1 << 20 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Role {
    Plain,
    /// Base part of a positive death block; the payload links to its dual.
    Base(usize),
    /// Implicit dual birth part; the payload links to its base.
    Dual(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct Summand {
    pub(crate) degree: i64,
    pub(crate) region: Region,
    pub(crate) role: Role,
}

pub(crate) fn summands_of(system: &MVSystem) -> Vec<Summand> {
    let mut out = Vec::new();
    for gb in system.blocks() {
        match gb.block.kind() {
            BlockKind::Db => {
                let base_idx = out.len();
                out.push(Summand {
                    degree: gb.degree,
                    region: gb.block.region(),
                    role: Role::Base(base_idx + 1),
                });
                let dual = gb.block.dual().expect("death blocks have duals");
                out.push(Summand {
                    degree: gb.degree + 1,
                    region: dual.region(),
                    role: Role::Dual(base_idx),
                });
            }
            _ => out.push(Summand { degree: gb.degree, region: gb.block.region(), role: Role::Plain }),
        }
    }
    out
}

/// Is there a nonzero natural map from the block module on `a` to the block
/// module on `b`, as modules over the open half-plane?
fn hom_allowed(a: &Region, b: &Region) -> bool {
    let overlap = a.intersect(b);
    if !overlap.meets_delta_plus() {
        return false;
    }
    let down_overlap = overlap.down_closure_in_delta_plus();
    // a source point below an overlap point but outside the target kills it
    for piece in a.difference(b) {
        if piece.intersect(&down_overlap).meets_delta_plus() {
            return false;
        }
    }
    // a target point above an overlap point but outside the source kills it
    for piece in b.difference(a) {
        if !piece.meets_delta_plus() {
            continue;
        }
        if overlap.intersect(&piece.down_closure_in_delta_plus()).meets_delta_plus() {
            return false;
        }
    }
    true
}

struct Direction<'a> {
    src: &'a [Summand],
    dst: &'a [Summand],
    /// target regions shifted down by eps
    dst_shift: Vec<Region>,
    /// allowed unknown per (src index, dst index)
    unknowns: Vec<(usize, usize)>,
    index: std::collections::HashMap<(usize, usize), usize>,
}

impl<'a> Direction<'a> {
    fn build(src: &'a [Summand], dst: &'a [Summand], eps: &Q) -> Direction<'a> {
        let dst_shift: Vec<Region> = dst.iter().map(|s| s.region.shift_down(eps)).collect();
        let mut unknowns = Vec::new();
        let mut index = std::collections::HashMap::new();
        for (i, s) in src.iter().enumerate() {
            for (j, t) in dst.iter().enumerate() {
                if s.degree == t.degree && hom_allowed(&s.region, &dst_shift[j]) {
                    index.insert((i, j), unknowns.len());
                    unknowns.push((i, j));
                }
            }
        }
        Direction { src, dst, dst_shift, unknowns, index }
    }

    fn unknown(&self, i: usize, j: usize) -> Option<usize> {
        self.index.get(&(i, j)).copied()
    }

    /// Linear constraints expressing commutation with the connecting maps.
    fn delta_rows(&self, sys: &mut SmallSystem) {
        // source pairs: base d (degree j) with dual d-dagger (degree j+1)
        for (di, d) in self.src.iter().enumerate() {
            let Role::Base(ddag_i) = d.role else { continue };
            let ddag = &self.src[ddag_i];
            for (ti, t) in self.dst.iter().enumerate() {
                if t.degree != d.degree {
                    continue;
                }
                let lam_base = self.unknown(di, ti);
                match t.role {
                    Role::Base(edag_i) => {
                        let edag_shift = &self.dst_shift[edag_i];
                        let lam_dual = self.unknown(ddag_i, edag_i);
                        let overlap = d.region.intersect(&self.dst_shift[ti]);
                        // escape region of the source dual outside the target dual
                        for piece in ddag.region.difference(edag_shift) {
                            let ups = piece.strict_up_extension();
                            if overlap.intersect(&ups).meets_delta_plus() {
                                if let Some(u) = lam_base {
                                    sys.add_row(1u64 << u, false);
                                }
                            }
                        }
                        if overlap.meets_delta_plus() {
                            // duals of birth type always intersect upward
                            let mut mask = 0u64;
                            if let Some(u) = lam_base {
                                mask |= 1u64 << u;
                            }
                            if let Some(u) = lam_dual {
                                mask |= 1u64 << u;
                            }
                            sys.add_row(mask, false);
                        }
                        for piece in self.dst_shift[ti].difference(&d.region) {
                            if piece.meets_delta_plus() {
                                if let Some(u) = lam_dual {
                                    sys.add_row(1u64 << u, false);
                                }
                            }
                        }
                    }
                    _ => {
                        // no connecting map lands in t: the component dies
                        // wherever it could be probed from above
                        if d.region.intersect(&self.dst_shift[ti]).meets_delta_plus() {
                            if let Some(u) = lam_base {
                                sys.add_row(1u64 << u, false);
                            }
                        }
                    }
                }
            }
        }
        // plain or base sources mapping into a dual target
        for (ui, u) in self.src.iter().enumerate() {
            if matches!(u.role, Role::Dual(_)) {
                continue;
            }
            for (ti, t) in self.dst.iter().enumerate() {
                let Role::Dual(e_i) = t.role else { continue };
                if t.degree != u.degree {
                    continue;
                }
                let Some(unk) = self.unknown(ui, ti) else { continue };
                let e_shift = &self.dst_shift[e_i];
                let probe = u.region.intersect(&self.dst_shift[ti]).strict_up_extension();
                if e_shift.intersect(&probe).meets_delta_plus() {
                    sys.add_row(1u64 << unk, false);
                }
            }
        }
    }
}

/// Per-axis coordinate list used for the cell grid: block breakpoints under
/// shifts by 0, eps, 2*eps, closed under reflection across the anti-diagonal,
/// with two interior witnesses per gap and two sentinels per side.
fn grid_coordinates(regions: &[&Region], eps: &Q) -> Vec<Q> {
    let mut crit: BTreeSet<Q> = BTreeSet::new();
    crit.insert(Q::zero());
    let shifts = [Q::zero(), eps.clone(), eps + eps];
    for r in regions {
        for s in &shifts {
            for v in [&r.x.lo, &r.x.hi] {
                if let Some(q) = v.as_finite() {
                    crit.insert(q - s);
                }
            }
            for v in [&r.y.lo, &r.y.hi] {
                if let Some(q) = v.as_finite() {
                    // reflected y breakpoints, so that the x and y grids agree
                    // across the anti-diagonal
                    crit.insert(-(q - s));
                }
            }
        }
    }
    let vals: Vec<Q> = crit.into_iter().collect();
    let mut out: Vec<Q> = Vec::new();
    let three = Q::from_integer(3.into());
    let one = Q::from_integer(1.into());
    let two = Q::from_integer(2.into());
    let first = vals.first().unwrap().clone();
    out.push(&first - &two);
    out.push(&first - &one);
    for (i, v) in vals.iter().enumerate() {
        out.push(v.clone());
        if let Some(next) = vals.get(i + 1) {
            let gap = next - v;
            out.push(v + &gap / &three);
            out.push(v + &(&two * &gap) / &three);
        }
    }
    let last = vals.last().unwrap().clone();
    out.push(&last + &one);
    out.push(&last + &two);
    out
}

/// Membership bits of each summand (under the three shifts) at every grid
/// cell representative, deduplicated into distinct signatures.
struct CellPatterns {
    /// per signature: [m0, m1, m2, n0, n1, n2]
    sigs: Vec<[u64; 6]>,
}

fn cell_patterns(ms: &[Summand], ns: &[Summand], eps: &Q) -> CellPatterns {
    let regions: Vec<&Region> =
        ms.iter().map(|s| &s.region).chain(ns.iter().map(|s| &s.region)).collect();
    let xs = grid_coordinates(&regions, eps);
    let ys: Vec<Q> = xs.iter().rev().map(|v| -v.clone()).collect();

    let shifts = [Q::zero(), eps.clone(), eps + eps];
    // per (side, shift): per axis value, a bitmask over summands
    let axis_masks = |summands: &[Summand], vals: &[Q], horizontal: bool| -> Vec<Vec<u64>> {
        shifts
            .iter()
            .map(|s| {
                vals.iter()
                    .map(|v| {
                        let mut mask = 0u64;
                        for (i, sm) in summands.iter().enumerate() {
                            let iv = if horizontal { &sm.region.x } else { &sm.region.y };
                            if iv.shift(&-s.clone()).contains(&ExtReal::Fin(v.clone())) {
                                mask |= 1u64 << i;
                            }
                        }
                        mask
                    })
                    .collect()
            })
            .collect()
    };
    let mx = axis_masks(ms, &xs, true);
    let my = axis_masks(ms, &ys, false);
    let nx = axis_masks(ns, &xs, true);
    let ny = axis_masks(ns, &ys, false);

    let mut seen: HashSet<[u64; 6]> = HashSet::new();
    for (xi, x) in xs.iter().enumerate() {
        for (yi, y) in ys.iter().enumerate() {
            if x + y <= Q::zero() {
                continue;
            }
            let sig = [
                mx[0][xi] & my[0][yi],
                mx[1][xi] & my[1][yi],
                mx[2][xi] & my[2][yi],
                nx[0][xi] & ny[0][yi],
                nx[1][xi] & ny[1][yi],
                nx[2][xi] & ny[2][yi],
            ];
            seen.insert(sig);
        }
    }
    CellPatterns { sigs: seen.into_iter().collect() }
}

/// Decide whether the two systems are eps-interleaved, by finite search.
pub fn mv_eps_interleaved_oracle(
    a: &MVSystem,
    b: &MVSystem,
    eps: &Q,
    budget: &OracleBudget,
) -> Result<bool> {
    if eps.is_negative() {
        return Err(Error::Precondition("interleaving radius must be nonnegative".into()));
    }
    let ms = summands_of(a);
    let ns = summands_of(b);
    if ms.len() > 60 || ns.len() > 60 {
        return Err(Error::BudgetExceeded(format!(
            "{} x {} summands",
            ms.len(),
            ns.len()
        )));
    }
    let fwd = Direction::build(&ms, &ns, eps);
    let bwd = Direction::build(&ns, &ms, eps);
    if fwd.unknowns.len() > budget.max_unknowns || bwd.unknowns.len() > budget.max_unknowns {
        return Err(Error::BudgetExceeded(format!(
            "{} forward and {} backward morphism scalars",
            fwd.unknowns.len(),
            bwd.unknowns.len()
        )));
    }

    let mut f_sys = SmallSystem::new(fwd.unknowns.len());
    fwd.delta_rows(&mut f_sys);
    let mut g_delta = SmallSystem::new(bwd.unknowns.len());
    bwd.delta_rows(&mut g_delta);

    let patterns = cell_patterns(&ms, &ns, eps);
    let degrees: BTreeSet<i64> =
        ms.iter().map(|s| s.degree).chain(ns.iter().map(|s| s.degree)).collect();

    let found = f_sys
        .for_each_solution(budget.max_candidates, |f_bits| {
            let mut g_sys = g_delta.clone();
            let mut row_seen: HashSet<(u64, bool)> = HashSet::new();
            for sig in &patterns.sigs {
                let [m0, m1, m2, n0, n1, n2] = *sig;
                for &d in &degrees {
                    // tau_M = (g after shift) o f, componentwise
                    for (ai, asum) in ms.iter().enumerate() {
                        if asum.degree != d || m0 & (1 << ai) == 0 {
                            continue;
                        }
                        for (a2, a2sum) in ms.iter().enumerate() {
                            if a2sum.degree != d || m2 & (1 << a2) == 0 {
                                continue;
                            }
                            let mut mask = 0u64;
                            for (bi, bsum) in ns.iter().enumerate() {
                                if bsum.degree != d || n1 & (1 << bi) == 0 {
                                    continue;
                                }
                                let f_on = fwd
                                    .unknown(ai, bi)
                                    .map(|u| f_bits & (1 << u) != 0)
                                    .unwrap_or(false);
                                if f_on {
                                    if let Some(gu) = bwd.unknown(bi, a2) {
                                        mask ^= 1u64 << gu;
                                    }
                                }
                            }
                            let rhs = ai == a2;
                            if row_seen.insert((mask, rhs)) {
                                g_sys.add_row(mask, rhs);
                            }
                        }
                    }
                    // tau_N = (f after shift) o g, componentwise
                    for (bi, bsum) in ns.iter().enumerate() {
                        if bsum.degree != d || n0 & (1 << bi) == 0 {
                            continue;
                        }
                        for (b2, b2sum) in ns.iter().enumerate() {
                            if b2sum.degree != d || n2 & (1 << b2) == 0 {
                                continue;
                            }
                            let mut mask = 0u64;
                            for (ai, asum) in ms.iter().enumerate() {
                                if asum.degree != d || m1 & (1 << ai) == 0 {
                                    continue;
                                }
                                let f_on = fwd
                                    .unknown(ai, b2)
                                    .map(|u| f_bits & (1 << u) != 0)
                                    .unwrap_or(false);
                                if f_on {
                                    if let Some(gu) = bwd.unknown(bi, ai) {
                                        mask ^= 1u64 << gu;
                                    }
                                }
                            }
                            let rhs = bi == b2;
                            // mark the mask with a high tag bit? rows from the
                            // two triangles can coincide; dedupe jointly.
                            if row_seen.insert((mask | 1 << 63, rhs)) {
                                g_sys.add_row(mask, rhs);
                            }
                        }
                    }
                }
            }
            g_sys.is_consistent()
        })
        .map_err(|_| {
            Error::BudgetExceeded("too many forward morphism candidates".into())
        })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::GradedBlock;
    use crate::block::block_from_trace;
    use crate::extreal::q_int;
    use crate::functors::psi_bar;
    use crate::interval::Interval;
    use crate::Bar;

    fn q(n: i64) -> Q {
        q_int(n)
    }

    fn oracle(a: &MVSystem, b: &MVSystem, eps: i64) -> bool {
        mv_eps_interleaved_oracle(a, b, &q(eps), &OracleBudget::default()).unwrap()
    }

    fn single(kind: BlockKind, trace: Interval, degree: i64) -> MVSystem {
        MVSystem::new(vec![GradedBlock::new(block_from_trace(kind, &trace).unwrap(), degree)])
            .unwrap()
    }

    #[test]
    fn identity_at_zero() {
        let m = single(BlockKind::Db, Interval::closed(q(-1), q(1)).unwrap(), 0);
        assert!(oracle(&m, &m, 0));
        assert!(oracle(&MVSystem::empty(), &MVSystem::empty(), 0));
    }

    #[test]
    fn point_birth_block_never_matches_empty() {
        let m = single(BlockKind::Bb, Interval::closed(q(0), q(0)).unwrap(), 0);
        assert!(!oracle(&m, &MVSystem::empty(), 0));
        assert!(!oracle(&m, &MVSystem::empty(), 50));
    }

    #[test]
    fn short_band_dies_into_empty() {
        let m = single(BlockKind::Vb, Interval::left_open(q(0), q(2)).unwrap(), 0);
        assert!(!oracle(&m, &MVSystem::empty(), 0));
        assert!(oracle(&m, &MVSystem::empty(), 1));
    }

    #[test]
    fn circle_example_interleaving_at_one() {
        let f = psi_bar(&Bar::new(Interval::open(q(-1), q(1)).unwrap(), 0));
        let p = psi_bar(&Bar::new(Interval::point(q(0)), 1));
        assert!(oracle(&f, &p, 1));
        assert!(!oracle(&f, &p, 0));
    }

    #[test]
    fn differing_flags_interleave_at_any_positive_radius() {
        // long enough that neither side dies at radius one
        let a = single(BlockKind::Hb, Interval::right_open(q(0), q(4)).unwrap(), 0);
        let b = single(BlockKind::Hb, Interval::left_open(q(0), q(4)).unwrap(), 0);
        assert!(!oracle(&a, &b, 0)); // different modules on the nose
        assert!(oracle(&a, &b, 1));
    }
}
