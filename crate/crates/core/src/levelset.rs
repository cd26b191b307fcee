//! From a piecewise-linear function on a simplicial complex to the graded
//! barcode of its derived pushforward and the matching block system.
//!
//! The topology of PL level sets changes only at vertex values. One global
//! cut complex, subdivided at a representative level inside every stratum,
//! makes all the slabs literal subcomplexes: open-stratum stalks are the
//! cohomology of one level set, point stalks the cohomology of the slab
//! between the two neighbouring representatives, and the generization arrows
//! are transposes of inclusion-induced homology maps. Interval-decomposing
//! the resulting stalk zigzag per degree yields the barcode.

use crate::barcode::GradedBarcode;
use crate::extreal::{format_q, Q};
use crate::functors::psi_barcode;
use crate::interval::Interval;
use crate::mv::{mv_dim_at, MVSystem};
use crate::simplicial::{homology, induced_map, SimplicialComplex};
use crate::zigzag::{zigzag_decompose, ArrowDir, ZigzagModule};
use crate::{Bar, Error, ExtReal, Result};
use num_traits::Zero;
use std::collections::BTreeMap;

/// A simplicial complex of dimension at most two with a rational value per
/// vertex, interpreted by linear interpolation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLFunction {
    complex: SimplicialComplex,
    values: BTreeMap<u32, Q>,
}

impl PLFunction {
    pub fn new(complex: SimplicialComplex, values: BTreeMap<u32, Q>) -> Result<PLFunction> {
        for v in complex.vertex_ids() {
            if !values.contains_key(&v) {
                return Err(Error::Malformed(format!("vertex {v} has no value")));
            }
        }
        Ok(PLFunction { complex, values })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn value(&self, v: u32) -> &Q {
        &self.values[&v]
    }

    pub fn values(&self) -> &BTreeMap<u32, Q> {
        &self.values
    }
}

/// Sorted, deduplicated vertex values: the only levels where the level-set
/// topology can change.
pub fn critical_values(f: &PLFunction) -> Result<Vec<Q>> {
    if f.complex.is_empty() {
        return Err(Error::Precondition("empty complex has no critical values".into()));
    }
    let mut vals: Vec<Q> = f.complex.vertex_ids().iter().map(|v| f.values[v].clone()).collect();
    vals.sort();
    vals.dedup();
    Ok(vals)
}

/// Representative levels: one point inside every open stratum, midpoints
/// between consecutive critical values and one unit outside the extremes.
fn representatives(criticals: &[Q]) -> Vec<Q> {
    let one = Q::from_integer(1.into());
    let two = Q::from_integer(2.into());
    let mut reps = Vec::with_capacity(criticals.len() + 1);
    reps.push(criticals.first().unwrap() - &one);
    for w in criticals.windows(2) {
        reps.push((&w[0] + &w[1]) / &two);
    }
    reps.push(criticals.last().unwrap() + &one);
    reps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Below,
    At,
    Above,
}

/// Subdivide every simplex crossing the level `r`, introducing cut vertices
/// on crossing edges and retriangulating crossing triangles.
fn cut_at_level(f: &PLFunction, r: &Q, next_id: &mut u32) -> PLFunction {
    let side = |v: u32, values: &BTreeMap<u32, Q>| -> Side {
        match values[&v].cmp(r) {
            std::cmp::Ordering::Less => Side::Below,
            std::cmp::Ordering::Equal => Side::At,
            std::cmp::Ordering::Greater => Side::Above,
        }
    };
    let mut values = f.values.clone();
    let mut cut_vertex: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    let mut cut = |u: u32, v: u32, values: &mut BTreeMap<u32, Q>, next_id: &mut u32| -> u32 {
        let key = if u < v { (u, v) } else { (v, u) };
        *cut_vertex.entry(key).or_insert_with(|| {
            let id = *next_id;
            *next_id += 1;
            values.insert(id, r.clone());
            id
        })
    };

    let mut simplices: Vec<Vec<u32>> = Vec::new();
    for v in f.complex.simplices(0) {
        simplices.push(v.clone());
    }
    for e in f.complex.simplices(1) {
        let (u, v) = (e[0], e[1]);
        let (su, sv) = (side(u, &values), side(v, &values));
        if matches!((su, sv), (Side::Below, Side::Above) | (Side::Above, Side::Below)) {
            let w = cut(u, v, &mut values, next_id);
            simplices.push(vec![u, w]);
            simplices.push(vec![w, v]);
        } else {
            simplices.push(e.clone());
        }
    }
    for t in f.complex.simplices(2) {
        let sides: Vec<Side> = t.iter().map(|&v| side(v, &values)).collect();
        let below: Vec<u32> =
            t.iter().zip(&sides).filter(|(_, s)| **s == Side::Below).map(|(&v, _)| v).collect();
        let at: Vec<u32> =
            t.iter().zip(&sides).filter(|(_, s)| **s == Side::At).map(|(&v, _)| v).collect();
        let above: Vec<u32> =
            t.iter().zip(&sides).filter(|(_, s)| **s == Side::Above).map(|(&v, _)| v).collect();
        if below.is_empty() || above.is_empty() {
            simplices.push(t.clone());
            continue;
        }
        match (below.len(), at.len(), above.len()) {
            (1, 1, 1) => {
                let (b, m, a) = (below[0], at[0], above[0]);
                let w = cut(b, a, &mut values, next_id);
                simplices.push(vec![b, m, w]);
                simplices.push(vec![m, a, w]);
            }
            (2, 0, 1) => {
                let (b1, b2, a) = (below[0], below[1], above[0]);
                let w1 = cut(b1, a, &mut values, next_id);
                let w2 = cut(b2, a, &mut values, next_id);
                simplices.push(vec![b1, b2, w2]);
                simplices.push(vec![b1, w2, w1]);
                simplices.push(vec![w1, w2, a]);
            }
            (1, 0, 2) => {
                let (b, a1, a2) = (below[0], above[0], above[1]);
                let w1 = cut(b, a1, &mut values, next_id);
                let w2 = cut(b, a2, &mut values, next_id);
                simplices.push(vec![a1, a2, w2]);
                simplices.push(vec![a1, w2, w1]);
                simplices.push(vec![w1, w2, b]);
            }
            _ => unreachable!("triangle sides {sides:?}"),
        }
    }
    let complex = SimplicialComplex::new(simplices).expect("cutting keeps dimension at most 2");
    PLFunction { complex, values }
}

/// The global cut complex: the input subdivided at every representative
/// level, so that all slabs between representatives nest simplicially.
fn cut_complex(f: &PLFunction, reps: &[Q]) -> PLFunction {
    let mut next_id = f.complex.vertex_ids().iter().copied().max().map_or(0, |m| m + 1);
    let mut cur = f.clone();
    for r in reps {
        cur = cut_at_level(&cur, r, &mut next_id);
    }
    cur
}

/// Full subcomplex on the vertices with value in [lo, hi].
fn slab_of(cut: &PLFunction, lo: &Q, hi: &Q) -> SimplicialComplex {
    let keep = |v: &u32| {
        let val = &cut.values[v];
        val >= lo && val <= hi
    };
    let mut simplices = Vec::new();
    for d in 0..3 {
        for s in cut.complex.simplices(d) {
            if s.iter().all(|v| keep(v)) {
                simplices.push(s.clone());
            }
        }
    }
    SimplicialComplex::new(simplices).expect("subcomplex of a valid complex")
}

/// A complex homotopy equivalent to the open preimage of ]u, v[: the closed
/// slab between the representatives of the strata of u and v, inside the
/// global cut complex.
///
/// The endpoints are snapped to the representatives of their strata: the cut
/// complex is subdivided exactly at representative levels, so only slabs
/// bounded by those levels are literal subcomplexes (a simplex may span a
/// critical value without a vertex there).
pub fn preimage_complex(f: &PLFunction, u: &Q, v: &Q) -> Result<SimplicialComplex> {
    let criticals = critical_values(f)?;
    if u >= v {
        return Err(Error::Precondition("slab needs u < v".into()));
    }
    for c in &criticals {
        if c == u || c == v {
            return Err(Error::Precondition(format!(
                "slab endpoint {} is a critical value",
                format_q(c)
            )));
        }
    }
    let reps = representatives(&criticals);
    let cut = cut_complex(f, &reps);
    let rep_of = |t: &Q| reps[criticals.iter().filter(|c| *c < t).count()].clone();
    Ok(slab_of(&cut, &rep_of(u), &rep_of(v)))
}

/// Stalk data per degree: the zigzag over the stratification
/// U_0, c_1, U_1, ..., c_k, U_k with arrows from point stalks outward.
fn stalk_zigzag(f: &PLFunction, degree: usize) -> Result<(ZigzagModule, Vec<Q>)> {
    let criticals = critical_values(f)?;
    let reps = representatives(&criticals);
    let cut = cut_complex(f, &reps);
    let k = criticals.len();
    // node complexes: even nodes are level sets at representatives, odd nodes
    // are slabs between neighbouring representatives
    // node order: U_0, c_1, U_1, c_2, ..., c_k, U_k
    let mut node_complexes: Vec<SimplicialComplex> = Vec::with_capacity(2 * k + 1);
    for j in 0..=k {
        if j > 0 {
            node_complexes.push(slab_of(&cut, &reps[j - 1], &reps[j]));
        }
        node_complexes.push(slab_of(&cut, &reps[j], &reps[j]));
    }
    let dims: Vec<usize> = node_complexes
        .iter()
        .map(|c| homology(c, degree).map(|h| h.dim))
        .collect::<Result<_>>()?;
    let mut arrows = Vec::new();
    for t in 0..node_complexes.len() - 1 {
        // odd t is a point node (slab), even t an open node (level)
        if t % 2 == 0 {
            // arrow points from the slab at t+1 down into the level at t
            let incl = induced_map(&node_complexes[t], &node_complexes[t + 1], degree)?;
            arrows.push((ArrowDir::Backward, incl.transpose()));
        } else {
            let incl = induced_map(&node_complexes[t + 1], &node_complexes[t], degree)?;
            arrows.push((ArrowDir::Forward, incl.transpose()));
        }
    }
    Ok((ZigzagModule::new(dims, arrows)?, criticals))
}

/// Convert a node-index interval of the stalk zigzag into a real interval.
fn node_interval_to_real(p: usize, q: usize, criticals: &[Q]) -> Interval {
    let k = criticals.len();
    let (lo, lo_open) = if p % 2 == 1 {
        // point node c_j, j = (p+1)/2 one-based
        (ExtReal::Fin(criticals[(p - 1) / 2].clone()), false)
    } else if p == 0 {
        (ExtReal::NegInf, true)
    } else {
        (ExtReal::Fin(criticals[p / 2 - 1].clone()), true)
    };
    let (hi, hi_open) = if q % 2 == 1 {
        (ExtReal::Fin(criticals[(q - 1) / 2].clone()), false)
    } else if q == 2 * k {
        (ExtReal::PosInf, true)
    } else {
        (ExtReal::Fin(criticals[q / 2].clone()), true)
    };
    Interval::new(lo, hi, lo_open, hi_open).expect("stalk summands are nonempty intervals")
}

/// The graded barcode of the derived pushforward of the constant sheaf along
/// the function.
pub fn pushforward_barcode(f: &PLFunction) -> Result<GradedBarcode> {
    if f.complex.is_empty() {
        return Ok(GradedBarcode::empty());
    }
    let mut bars = Vec::new();
    for degree in 0..=2usize {
        let (zz, criticals) = stalk_zigzag(f, degree)?;
        for (p, q) in zigzag_decompose(&zz) {
            bars.push(Bar::new(node_interval_to_real(p, q, &criticals), degree as i64));
        }
    }
    Ok(GradedBarcode::new(bars))
}

/// The level-sets block system of the function: the section applied to its
/// pushforward barcode.
pub fn levelset_mv(f: &PLFunction) -> Result<MVSystem> {
    Ok(psi_barcode(&pushforward_barcode(f)?))
}

/// Compare, at every grid point and degree 0..=3, the homology of the open
/// preimage against the pointwise dimension of the system. Returns the list
/// of mismatches (empty means success).
pub fn verify_pointwise_dims(
    f: &PLFunction,
    system: &MVSystem,
    grid: &[(Q, Q)],
) -> Result<Vec<String>> {
    let criticals = critical_values(f)?;
    let reps = representatives(&criticals);
    let cut = cut_complex(f, &reps);
    // block boundary coordinates to avoid: every finite axis endpoint of
    // every block region and its dual, on either axis
    let mut boundary: Vec<Q> = Vec::new();
    for gb in system.blocks() {
        let mut regions = vec![gb.block.region()];
        if let Ok(d) = gb.block.dual() {
            regions.push(d.region());
        }
        for r in regions {
            for e in [&r.x.lo, &r.x.hi, &r.y.lo, &r.y.hi] {
                if let Some(q) = e.as_finite() {
                    boundary.push(q.clone());
                    boundary.push(-q.clone());
                }
            }
        }
    }
    let stratum_rep = |t: &Q| -> Result<Q> {
        if criticals.contains(t) {
            return Err(Error::Precondition(format!(
                "grid coordinate {} lies on a critical value",
                format_q(t)
            )));
        }
        let j = criticals.iter().filter(|c| *c < t).count();
        Ok(reps[j].clone())
    };
    let mut mismatches = Vec::new();
    for (x, y) in grid {
        if x + y <= Q::zero() {
            return Err(Error::OutsideDomain(format!("({}, {})", format_q(x), format_q(y))));
        }
        if boundary.contains(x) || boundary.contains(y) {
            return Err(Error::Precondition(format!(
                "grid point ({}, {}) lies on a block boundary",
                format_q(x),
                format_q(y)
            )));
        }
        let u = stratum_rep(&-x.clone())?;
        let v = stratum_rep(y)?;
        let slab = slab_of(&cut, &u, &v);
        for degree in 0..=3usize {
            let h = if degree <= 2 { homology(&slab, degree)?.dim as u64 } else { 0 };
            let m = mv_dim_at(system, degree as i64, x, y)?;
            if h != m {
                mismatches.push(format!(
                    "at ({}, {}) degree {}: homology {} vs system {}",
                    format_q(x),
                    format_q(y),
                    degree,
                    h,
                    m
                ));
            }
        }
    }
    Ok(mismatches)
}

/// Deterministic grid coordinates spread over the range of the forbidden
/// values, nudged off every forbidden value and its negative. Used by the
/// pointwise verification surfaces.
pub fn verification_coordinates(n: usize, forbidden: &[Q]) -> Vec<Q> {
    let one = Q::from_integer(1.into());
    let (lo, hi) = forbidden.iter().fold((-one.clone(), one.clone()), |(lo, hi), v| {
        (if *v < lo { v.clone() } else { lo }, if *v > hi { v.clone() } else { hi })
    });
    let lo = lo - &one;
    let hi = hi + &one;
    let step = (&hi - &lo) / Q::from_integer(((n + 1) as i64).into());
    let nudge = Q::new(1.into(), 97.into());
    (1..=n)
        .map(|i| {
            let mut v = &lo + &step * Q::from_integer((i as i64).into());
            while forbidden.contains(&v) || forbidden.contains(&-v.clone()) {
                v += &nudge;
            }
            v
        })
        .collect()
}

/// The coordinates a verification grid must avoid for this function and
/// system: critical values and block boundary lines, with their negatives.
pub fn forbidden_coordinates(f: &PLFunction, system: &MVSystem) -> Vec<Q> {
    let mut out: Vec<Q> = f.values().values().cloned().collect();
    for gb in system.blocks() {
        let mut regions = vec![gb.block.region()];
        if let Ok(d) = gb.block.dual() {
            regions.push(d.region());
        }
        for r in regions {
            for e in [&r.x.lo, &r.x.hi, &r.y.lo, &r.y.hi] {
                if let Some(q) = e.as_finite() {
                    out.push(q.clone());
                    out.push(-q.clone());
                }
            }
        }
    }
    let negs: Vec<Q> = out.iter().map(|v| -v.clone()).collect();
    out.extend(negs);
    out.sort();
    out.dedup();
    out
}

/// A full verification grid inside the open half-plane.
pub fn verification_grid(f: &PLFunction, system: &MVSystem, n: usize) -> Vec<(Q, Q)> {
    let coords = verification_coordinates(n, &forbidden_coordinates(f, system));
    coords
        .iter()
        .flat_map(|x| coords.iter().map(move |y| (x.clone(), y.clone())))
        .filter(|(x, y)| x + y > Q::zero())
        .collect()
}

/// The standard four-vertex circle mesh with the first-coordinate projection.
pub fn circle_projection() -> PLFunction {
    let complex =
        SimplicialComplex::new(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
    let mut values = BTreeMap::new();
    values.insert(0, Q::from_integer((-1).into()));
    values.insert(1, Q::zero());
    values.insert(2, Q::from_integer(1.into()));
    values.insert(3, Q::zero());
    PLFunction::new(complex, values).unwrap()
}

/// The same circle mesh with the constant zero map.
pub fn circle_constant() -> PLFunction {
    let complex =
        SimplicialComplex::new(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
    let values = (0..4).map(|v| (v, Q::zero())).collect();
    PLFunction::new(complex, values).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::{q_int, q_ratio};

    fn q(n: i64) -> Q {
        q_int(n)
    }

    #[test]
    fn critical_values_of_the_circle() {
        let f = circle_projection();
        assert_eq!(critical_values(&f).unwrap(), vec![q(-1), q(0), q(1)]);
        let p = circle_constant();
        assert_eq!(critical_values(&p).unwrap(), vec![q(0)]);
    }

    #[test]
    fn circle_slabs() {
        let f = circle_projection();
        // middle slab: two disjoint arcs
        let s = preimage_complex(&f, &q_ratio(-1, 2), &q_ratio(1, 2)).unwrap();
        assert_eq!(homology(&s, 0).unwrap().dim, 2);
        assert_eq!(homology(&s, 1).unwrap().dim, 0);
        // full slab: the whole circle
        let s = preimage_complex(&f, &q_ratio(-3, 2), &q_ratio(3, 2)).unwrap();
        assert_eq!(homology(&s, 0).unwrap().dim, 1);
        assert_eq!(homology(&s, 1).unwrap().dim, 1);
        // errors
        assert!(preimage_complex(&f, &q(0), &q_ratio(1, 2)).is_err());
        assert!(preimage_complex(&f, &q_ratio(1, 2), &q_ratio(1, 2)).is_err());
        // slab missing the constant map's only level is empty
        let p = circle_constant();
        let s = preimage_complex(&p, &q(1), &q(2)).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn circle_pushforward_barcodes() {
        let f = circle_projection();
        let want = GradedBarcode::new(vec![
            Bar::new(Interval::closed(q(-1), q(1)).unwrap(), 0),
            Bar::new(Interval::open(q(-1), q(1)).unwrap(), 0),
        ]);
        assert_eq!(pushforward_barcode(&f).unwrap(), want);

        let p = circle_constant();
        let want = GradedBarcode::new(vec![
            Bar::new(Interval::point(q(0)), 0),
            Bar::new(Interval::point(q(0)), 1),
        ]);
        assert_eq!(pushforward_barcode(&p).unwrap(), want);
    }

    #[test]
    fn identity_on_a_segment() {
        let complex = SimplicialComplex::new(vec![vec![0, 1], vec![1, 2]]).unwrap();
        let values = [(0, q(0)), (1, q_ratio(1, 2)), (2, q(1))].into_iter().collect();
        let f = PLFunction::new(complex, values).unwrap();
        let want = GradedBarcode::new(vec![Bar::new(Interval::closed(q(0), q(1)).unwrap(), 0)]);
        assert_eq!(pushforward_barcode(&f).unwrap(), want);
    }

    #[test]
    fn circle_pointwise_verification() {
        let f = circle_projection();
        let m = levelset_mv(&f).unwrap();
        let h = q_ratio(1, 2);
        let grid = vec![(h.clone(), h.clone()), (q(2), q(2)), (q(3), h.clone())];
        assert_eq!(verify_pointwise_dims(&f, &m, &grid).unwrap(), Vec::<String>::new());
        // a critical coordinate is rejected
        assert!(verify_pointwise_dims(&f, &m, &[(q(5), q(0))]).is_err());
    }

    #[test]
    fn constant_map_pointwise_dims() {
        let p = circle_constant();
        let m = levelset_mv(&p).unwrap();
        assert_eq!(mv_dim_at(&m, 0, &q(1), &q(1)).unwrap(), 1);
        assert_eq!(mv_dim_at(&m, 1, &q(1), &q(1)).unwrap(), 1);
    }

    #[test]
    fn slab_endpoints_snap_to_representatives() {
        // the long edge spans a critical value carried by a separate vertex;
        // a slab cut must not lose the crossing piece
        let complex = SimplicialComplex::new(vec![vec![0, 1], vec![2]]).unwrap();
        let values = [(0, q(0)), (1, q(2)), (2, q(1))].into_iter().collect();
        let f = PLFunction::new(complex, values).unwrap();
        // around the middle critical: one point of the edge plus the vertex
        let s = preimage_complex(&f, &q_ratio(9, 10), &q_ratio(11, 10)).unwrap();
        assert_eq!(homology(&s, 0).unwrap().dim, 2);
        // the span from below the middle to above it keeps both components
        let s = preimage_complex(&f, &q_ratio(1, 4), &q_ratio(7, 4)).unwrap();
        assert_eq!(homology(&s, 0).unwrap().dim, 2);
    }

    #[test]
    fn sphere_height_function() {
        // boundary of a tetrahedron with a height: level sets are circles,
        // the top cohomology rides on an open bar one degree up
        let complex = SimplicialComplex::new(vec![
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
        ])
        .unwrap();
        let values = [(0, q(0)), (1, q(1)), (2, q(2)), (3, q(3))].into_iter().collect();
        let f = PLFunction::new(complex, values).unwrap();
        let want = GradedBarcode::new(vec![
            Bar::new(Interval::closed(q(0), q(3)).unwrap(), 0),
            Bar::new(Interval::open(q(0), q(3)).unwrap(), 1),
        ]);
        assert_eq!(pushforward_barcode(&f).unwrap(), want);
        // pointwise check against the block system on a few generic points
        let m = levelset_mv(&f).unwrap();
        let grid = vec![
            (q_ratio(1, 3), q_ratio(3, 2)),
            (q(5), q(5)),
            (q_ratio(-1, 3), q_ratio(5, 3)),
        ];
        assert_eq!(verify_pointwise_dims(&f, &m, &grid).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn double_cone_pinch() {
        // two hollow triangles sharing one vertex, heights symmetric around
        // the shared vertex: the level through the pinch point is a wedge
        let complex = SimplicialComplex::new(vec![
            vec![0, 1],
            vec![1, 2],
            vec![0, 2],
            vec![2, 3],
            vec![3, 4],
            vec![2, 4],
        ])
        .unwrap();
        let values =
            [(0, q(-2)), (1, q(-1)), (2, q(0)), (3, q(1)), (4, q(2))].into_iter().collect();
        let f = PLFunction::new(complex, values).unwrap();
        let barcode = pushforward_barcode(&f).unwrap();
        // one connected component throughout, two independent loops that die
        // into the pinch from either side
        let want = GradedBarcode::new(vec![
            Bar::new(Interval::closed(q(-2), q(2)).unwrap(), 0),
            Bar::new(Interval::open(q(-2), q(0)).unwrap(), 0),
            Bar::new(Interval::open(q(0), q(2)).unwrap(), 0),
        ]);
        assert_eq!(barcode, want);
    }

    #[test]
    fn empty_complex_gives_empty_barcode() {
        let f = PLFunction::new(SimplicialComplex::empty(), BTreeMap::new()).unwrap();
        assert!(pushforward_barcode(&f).unwrap().is_empty());
        assert!(levelset_mv(&f).unwrap().is_empty());
    }
}
