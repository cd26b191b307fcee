//! Graded barcodes: multisets of bars, the CLR split, barcode convolution,
//! eps-matching feasibility and the derived bottleneck distance.

use crate::bar::{bar_dies, bars_eps_interleaved, convolve_bar, Bar};
use crate::extreal::Q;
use crate::interval::BarClass;
use crate::matching::covering_matching_exists;
use crate::Distance;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// A finite multiset of bars, kept canonically sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedBarcode {
    bars: Vec<Bar>,
}

impl GradedBarcode {
    pub fn new(mut bars: Vec<Bar>) -> GradedBarcode {
        bars.sort();
        GradedBarcode { bars }
    }

    pub fn empty() -> GradedBarcode {
        GradedBarcode::default()
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn merge(&self, other: &GradedBarcode) -> GradedBarcode {
        let mut bars = self.bars.clone();
        bars.extend(other.bars.iter().cloned());
        GradedBarcode::new(bars)
    }
}

/// Partition a barcode into its central (closed and open), left, right and
/// full-line parts. The four outputs reassemble to the input.
pub fn clr_split(
    barcode: &GradedBarcode,
) -> (GradedBarcode, GradedBarcode, GradedBarcode, GradedBarcode) {
    let mut c = Vec::new();
    let mut l = Vec::new();
    let mut r = Vec::new();
    let mut full = Vec::new();
    for bar in barcode.bars() {
        match bar.class() {
            BarClass::CClosed | BarClass::COpen => c.push(bar.clone()),
            BarClass::L => l.push(bar.clone()),
            BarClass::R => r.push(bar.clone()),
            BarClass::FullLine => full.push(bar.clone()),
        }
    }
    (
        GradedBarcode::new(c),
        GradedBarcode::new(l),
        GradedBarcode::new(r),
        GradedBarcode::new(full),
    )
}

/// Convolve every bar with the radius-`eps` kernel.
pub fn barcode_convolve(barcode: &GradedBarcode, eps: &Q) -> GradedBarcode {
    GradedBarcode::new(barcode.bars().iter().map(|b| convolve_bar(b, eps)).collect())
}

/// All radii at which matching feasibility can change between the two
/// barcodes: zero, endpoint gaps, their halves, and bar half-lengths.
pub fn candidate_epsilons(a: &GradedBarcode, b: &GradedBarcode) -> Vec<Q> {
    let mut endpoints: Vec<Q> = Vec::new();
    let mut halves: BTreeSet<Q> = BTreeSet::new();
    halves.insert(Q::zero());
    for bar in a.bars().iter().chain(b.bars().iter()) {
        for e in [bar.interval.lo(), bar.interval.hi()] {
            if let Some(q) = e.as_finite() {
                endpoints.push(q.clone());
            }
        }
        if let Some(len) = bar.interval.length() {
            halves.insert(len / Q::from_integer(2.into()));
        }
    }
    for i in 0..endpoints.len() {
        for j in (i + 1)..endpoints.len() {
            let d = (&endpoints[i] - &endpoints[j]).abs();
            halves.insert(d.clone() / Q::from_integer(2.into()));
            halves.insert(d);
        }
    }
    halves.into_iter().collect()
}

/// Does an eps-matching between the two barcodes exist?
///
/// One-sided bars are matched partially (unmatched ones must die), central
/// bars need a perfect matching across all degrees, full lines pair off by
/// degree; every pair is gated by the atomic interleaving predicate.
pub fn eps_matching_exists(a: &GradedBarcode, b: &GradedBarcode, eps: &Q) -> bool {
    let (ac, al, ar, af) = clr_split(a);
    let (bc, bl, br, bf) = clr_split(b);

    let partial_ok = |xs: &GradedBarcode, ys: &GradedBarcode| {
        let opt_a: Vec<bool> = xs.bars().iter().map(|bar| bar_dies(bar, eps)).collect();
        let opt_b: Vec<bool> = ys.bars().iter().map(|bar| bar_dies(bar, eps)).collect();
        covering_matching_exists(
            xs.len(),
            ys.len(),
            |i, j| bars_eps_interleaved(&xs.bars()[i], &ys.bars()[j], eps),
            &opt_a,
            &opt_b,
        )
    };
    if !partial_ok(&al, &bl) || !partial_ok(&ar, &br) {
        return false;
    }

    // central bars: perfect matching across all degrees jointly
    if ac.len() != bc.len() {
        return false;
    }
    let all_mandatory_a = vec![false; ac.len()];
    let all_mandatory_b = vec![false; bc.len()];
    if !covering_matching_exists(
        ac.len(),
        bc.len(),
        |i, j| bars_eps_interleaved(&ac.bars()[i], &bc.bars()[j], eps),
        &all_mandatory_a,
        &all_mandatory_b,
    ) {
        return false;
    }

    // full lines pair by degree
    if af.len() != bf.len() {
        return false;
    }
    let mut da: Vec<i64> = af.bars().iter().map(|b| b.degree).collect();
    let mut db: Vec<i64> = bf.bars().iter().map(|b| b.degree).collect();
    da.sort();
    db.sort();
    da == db
}

/// The derived bottleneck distance: least feasible radius, or infinity.
pub fn bottleneck_distance(a: &GradedBarcode, b: &GradedBarcode) -> Distance {
    for eps in candidate_epsilons(a, b) {
        if eps_matching_exists(a, b, &eps) {
            return Distance::Finite(eps);
        }
    }
    Distance::Infinite
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::q_int;
    use crate::interval::Interval;

    fn q(n: i64) -> Q {
        q_int(n)
    }

    fn bc(bars: Vec<Bar>) -> GradedBarcode {
        GradedBarcode::new(bars)
    }

    #[test]
    fn clr_partition() {
        let barcode = bc(vec![
            Bar::new(Interval::closed(q(0), q(2)).unwrap(), 0),
            Bar::new(Interval::right_open(q(0), q(2)).unwrap(), 0),
            Bar::new(Interval::left_open(q(1), q(3)).unwrap(), 0),
            Bar::new(Interval::full_line(), 1),
        ]);
        let (c, l, r, f) = clr_split(&barcode);
        assert_eq!((c.len(), l.len(), r.len(), f.len()), (1, 1, 1, 1));
        let merged = c.merge(&l).merge(&r).merge(&f);
        assert_eq!(merged, barcode);
    }

    #[test]
    fn candidates_contain_key_thresholds() {
        let a = bc(vec![Bar::new(Interval::closed(q(0), q(2)).unwrap(), 0)]);
        let b = bc(vec![Bar::new(Interval::closed(q(1), q(3)).unwrap(), 0)]);
        let cands = candidate_epsilons(&a, &b);
        assert!(cands.contains(&q(0)));
        assert!(cands.contains(&q(1)));
        let a = bc(vec![Bar::new(Interval::open(q(0), q(4)).unwrap(), 0)]);
        let cands = candidate_epsilons(&a, &GradedBarcode::empty());
        assert!(cands.contains(&q(2)));
        assert_eq!(candidate_epsilons(&GradedBarcode::empty(), &GradedBarcode::empty()), vec![q(0)]);
    }

    #[test]
    fn circle_distance_is_one() {
        let f = bc(vec![
            Bar::new(Interval::closed(q(-1), q(1)).unwrap(), 0),
            Bar::new(Interval::open(q(-1), q(1)).unwrap(), 0),
        ]);
        let p = bc(vec![
            Bar::new(Interval::point(q(0)), 0),
            Bar::new(Interval::point(q(0)), 1),
        ]);
        assert!(eps_matching_exists(&f, &p, &q(1)));
        assert_eq!(bottleneck_distance(&f, &p), Distance::Finite(q(1)));
    }

    #[test]
    fn central_cardinality_mismatch_is_infinite()
    {
        let a = bc(vec![Bar::new(Interval::closed(q(0), q(10)).unwrap(), 0)]);
        assert!(!eps_matching_exists(&a, &GradedBarcode::empty(), &q(1000)));
        assert_eq!(bottleneck_distance(&a, &GradedBarcode::empty()), Distance::Infinite);
    }

    #[test]
    fn one_sided_bar_dies_at_half_length() {
        let a = bc(vec![Bar::new(Interval::right_open(q(0), q(2)).unwrap(), 0)]);
        assert_eq!(
            bottleneck_distance(&a, &GradedBarcode::empty()),
            Distance::Finite(q(1))
        );
    }

    #[test]
    fn identical_barcodes_at_distance_zero() {
        let a = bc(vec![
            Bar::new(Interval::closed(q(0), q(2)).unwrap(), 0),
            Bar::new(Interval::full_line(), -1),
        ]);
        assert_eq!(bottleneck_distance(&a, &a), Distance::Finite(q(0)));
    }
}
