//! Exact interval and axis-aligned-region algebra.
//!
//! `ExtInterval` is the possibly-empty cousin of [`crate::interval::Interval`];
//! `Region` is a product of two of them. Blocks, their shifts and the morphism
//! feasibility conditions of the interleaving oracle all reduce to these
//! operations, carried out exactly on rational endpoints with openness flags.

use crate::extreal::{ExtReal, Q};
use crate::interval::Interval;
use std::cmp::Ordering;

/// A possibly-empty interval of the extended real line restricted to finite
/// points. Infinite endpoints are always open.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtInterval {
    pub lo: ExtReal,
    pub hi: ExtReal,
    pub lo_open: bool,
    pub hi_open: bool,
}

/// Lower-boundary cut of an interval; smaller reaches further left.
/// Closed beats open at the same value.
fn lo_cut(iv: &ExtInterval) -> (ExtReal, u8) {
    (iv.lo.clone(), if iv.lo_open { 1 } else { 0 })
}

/// Upper-boundary cut; larger reaches further right.
fn hi_cut(iv: &ExtInterval) -> (ExtReal, u8) {
    (iv.hi.clone(), if iv.hi_open { 0 } else { 1 })
}

impl ExtInterval {
    pub fn new(lo: ExtReal, hi: ExtReal, lo_open: bool, hi_open: bool) -> ExtInterval {
        let lo_open = lo_open || !lo.is_finite();
        let hi_open = hi_open || !hi.is_finite();
        ExtInterval { lo, hi, lo_open, hi_open }
    }

    pub fn empty() -> ExtInterval {
        ExtInterval::new(ExtReal::int(1), ExtReal::int(0), true, true)
    }

    pub fn all() -> ExtInterval {
        ExtInterval::new(ExtReal::NegInf, ExtReal::PosInf, true, true)
    }

    pub fn from_interval(iv: &Interval) -> ExtInterval {
        ExtInterval::new(iv.lo().clone(), iv.hi().clone(), iv.lo_open(), iv.hi_open())
    }

    /// Back to a validated nonempty interval, if nonempty.
    pub fn to_interval(&self) -> Option<Interval> {
        if self.is_empty() {
            None
        } else {
            Interval::new(self.lo.clone(), self.hi.clone(), self.lo_open, self.hi_open).ok()
        }
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_open || self.hi_open || !self.lo.is_finite(),
            Ordering::Less => false,
        }
    }

    pub fn contains(&self, t: &ExtReal) -> bool {
        if !t.is_finite() {
            return false;
        }
        let above = match t.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => !self.lo_open,
            Ordering::Less => false,
        };
        let below = match t.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => !self.hi_open,
            Ordering::Greater => false,
        };
        above && below
    }

    pub fn shift(&self, d: &Q) -> ExtInterval {
        ExtInterval::new(self.lo.add_q(d), self.hi.add_q(d), self.lo_open, self.hi_open)
    }

    pub fn intersect(&self, other: &ExtInterval) -> ExtInterval {
        let (lo, lo_open) = match lo_cut(self).cmp(&lo_cut(other)) {
            Ordering::Less => (other.lo.clone(), other.lo_open),
            _ => (self.lo.clone(), self.lo_open),
        };
        let (hi, hi_open) = match hi_cut(self).cmp(&hi_cut(other)) {
            Ordering::Greater => (other.hi.clone(), other.hi_open),
            _ => (self.hi.clone(), self.hi_open),
        };
        ExtInterval::new(lo, hi, lo_open, hi_open)
    }

    /// Does `self` have points strictly left of `other`'s lower boundary?
    pub fn extends_left_of(&self, other: &ExtInterval) -> bool {
        !self.is_empty() && (other.is_empty() || lo_cut(self) < lo_cut(other))
    }

    /// Does `self` have points strictly right of `other`'s upper boundary?
    pub fn extends_right_of(&self, other: &ExtInterval) -> bool {
        !self.is_empty() && (other.is_empty() || hi_cut(self) > hi_cut(other))
    }

    /// Set containment `other` inside `self`.
    pub fn contains_interval(&self, other: &ExtInterval) -> bool {
        other.is_empty()
            || (!self.is_empty()
                && lo_cut(self) <= lo_cut(other)
                && hi_cut(self) >= hi_cut(other))
    }

    /// Set difference, as at most two intervals (left piece, right piece).
    pub fn difference(&self, other: &ExtInterval) -> Vec<ExtInterval> {
        if self.is_empty() {
            return vec![];
        }
        if other.is_empty() {
            return vec![self.clone()];
        }
        let mut out = Vec::new();
        // points of self strictly below other's lower boundary
        let left = self.intersect(&ExtInterval::new(
            ExtReal::NegInf,
            other.lo.clone(),
            true,
            !other.lo_open,
        ));
        if !left.is_empty() {
            out.push(left);
        }
        let right = self.intersect(&ExtInterval::new(
            other.hi.clone(),
            ExtReal::PosInf,
            !other.hi_open,
            true,
        ));
        if !right.is_empty() {
            out.push(right);
        }
        out
    }

    /// Supremum together with whether it is attained inside the interval.
    pub fn sup(&self) -> (ExtReal, bool) {
        (self.hi.clone(), self.hi.is_finite() && !self.hi_open)
    }

    pub fn inf(&self) -> (ExtReal, bool) {
        (self.lo.clone(), self.lo.is_finite() && !self.lo_open)
    }
}

/// A product `x_interval × y_interval` in the plane, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub x: ExtInterval,
    pub y: ExtInterval,
}

impl Region {
    pub fn new(x: ExtInterval, y: ExtInterval) -> Region {
        Region { x, y }
    }

    pub fn empty() -> Region {
        Region { x: ExtInterval::empty(), y: ExtInterval::empty() }
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty() || self.y.is_empty()
    }

    pub fn contains(&self, px: &ExtReal, py: &ExtReal) -> bool {
        self.x.contains(px) && self.y.contains(py)
    }

    pub fn intersect(&self, other: &Region) -> Region {
        Region { x: self.x.intersect(&other.x), y: self.y.intersect(&other.y) }
    }

    /// Translate by the diagonal vector (-e, -e).
    pub fn shift_down(&self, e: &Q) -> Region {
        let m = -e.clone();
        Region { x: self.x.shift(&m), y: self.y.shift(&m) }
    }

    /// Set difference as at most four product pieces.
    pub fn difference(&self, other: &Region) -> Vec<Region> {
        if self.is_empty() {
            return vec![];
        }
        if other.is_empty() {
            return vec![self.clone()];
        }
        let mut out = Vec::new();
        for xd in self.x.difference(&other.x) {
            out.push(Region::new(xd, self.y.clone()));
        }
        let xi = self.x.intersect(&other.x);
        if !xi.is_empty() {
            for yd in self.y.difference(&other.y) {
                out.push(Region::new(xi.clone(), yd));
            }
        }
        out.retain(|r| !r.is_empty());
        out
    }

    /// Does the region meet the open half-plane x + y > 0?
    ///
    /// Holds exactly when sup_x + sup_y > 0: with a strictly positive supremum
    /// sum, points arbitrarily close to the corner already satisfy x + y > 0,
    /// attained or not; with sum <= 0 every point has x + y <= 0.
    pub fn meets_delta_plus(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let (sx, _) = self.x.sup();
        let (sy, _) = self.y.sup();
        match sx.add(&sy) {
            None => {
                // one factor tops out at -inf: empty of finite points anyway
                false
            }
            Some(ExtReal::PosInf) => true,
            Some(ExtReal::NegInf) => false,
            Some(ExtReal::Fin(s)) => s > Q::from_integer(0.into()),
        }
    }

    /// The set of points lying <= some point of `self ∩ {x+y>0}`.
    ///
    /// Valid only when `meets_delta_plus()`; a product reaching each supremum
    /// (included exactly when attained).
    pub fn down_closure_in_delta_plus(&self) -> Region {
        debug_assert!(self.meets_delta_plus());
        let (sx, ax) = self.x.sup();
        let (sy, ay) = self.y.sup();
        Region {
            x: ExtInterval::new(ExtReal::NegInf, sx, true, !ax),
            y: ExtInterval::new(ExtReal::NegInf, sy, true, !ay),
        }
    }

    /// The set of points p with p + s in `self` for some strictly positive
    /// vector s. Empty input gives empty output.
    pub fn strict_up_extension(&self) -> Region {
        if self.is_empty() {
            return Region::empty();
        }
        let (sx, _) = self.x.sup();
        let (sy, _) = self.y.sup();
        Region {
            x: ExtInterval::new(ExtReal::NegInf, sx, true, true),
            y: ExtInterval::new(ExtReal::NegInf, sy, true, true),
        }
    }
}
