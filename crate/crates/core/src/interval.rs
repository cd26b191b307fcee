//! Nonempty real intervals with per-endpoint openness, and their split into
//! the five convolution classes.

use crate::extreal::{ExtReal, Q};
use crate::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// An endpoint-exact nonempty interval of the real line.
///
/// Invariants: `lo < hi`, or `lo == hi` finite with both endpoints closed (a
/// point interval). Infinite endpoints are always open.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: ExtReal,
    hi: ExtReal,
    lo_open: bool,
    hi_open: bool,
}

impl Interval {
    pub fn new(lo: ExtReal, hi: ExtReal, lo_open: bool, hi_open: bool) -> Result<Interval> {
        let lo_open = lo_open || !lo.is_finite();
        let hi_open = hi_open || !hi.is_finite();
        match lo.cmp(&hi) {
            Ordering::Greater => {
                return Err(Error::InvalidInterval(format!("lo {lo} > hi {hi}")));
            }
            Ordering::Equal => {
                if lo_open || hi_open || !lo.is_finite() {
                    return Err(Error::InvalidInterval(format!(
                        "degenerate interval at {lo} must be the closed point [{lo},{lo}]"
                    )));
                }
            }
            Ordering::Less => {}
        }
        Ok(Interval { lo, hi, lo_open, hi_open })
    }

    pub fn closed(lo: Q, hi: Q) -> Result<Interval> {
        Interval::new(ExtReal::Fin(lo), ExtReal::Fin(hi), false, false)
    }

    pub fn open(lo: Q, hi: Q) -> Result<Interval> {
        Interval::new(ExtReal::Fin(lo), ExtReal::Fin(hi), true, true)
    }

    /// `]lo, hi]`
    pub fn left_open(lo: Q, hi: Q) -> Result<Interval> {
        Interval::new(ExtReal::Fin(lo), ExtReal::Fin(hi), true, false)
    }

    /// `[lo, hi[`
    pub fn right_open(lo: Q, hi: Q) -> Result<Interval> {
        Interval::new(ExtReal::Fin(lo), ExtReal::Fin(hi), false, true)
    }

    pub fn point(at: Q) -> Interval {
        Interval {
            lo: ExtReal::Fin(at.clone()),
            hi: ExtReal::Fin(at),
            lo_open: false,
            hi_open: false,
        }
    }

    pub fn full_line() -> Interval {
        Interval { lo: ExtReal::NegInf, hi: ExtReal::PosInf, lo_open: true, hi_open: true }
    }

    pub fn lo(&self) -> &ExtReal {
        &self.lo
    }

    pub fn hi(&self) -> &ExtReal {
        &self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    /// hi - lo when both endpoints are finite.
    pub fn length(&self) -> Option<Q> {
        match (&self.lo, &self.hi) {
            (ExtReal::Fin(a), ExtReal::Fin(b)) => Some(b - a),
            _ => None,
        }
    }

    pub fn contains(&self, t: &Q) -> bool {
        let t = ExtReal::Fin(t.clone());
        let above_lo = match t.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => !self.lo_open,
            Ordering::Less => false,
        };
        let below_hi = match t.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => !self.hi_open,
            Ordering::Greater => false,
        };
        above_lo && below_hi
    }

    /// Ordering key: (lo, lo_open, hi, hi_open), closed before open.
    pub fn sort_key(&self) -> (ExtReal, bool, ExtReal, bool) {
        (self.lo.clone(), self.lo_open, self.hi.clone(), self.hi_open)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { ']' } else { '[' };
        let r = if self.hi_open { '[' } else { ']' };
        write!(f, "{}{},{}{}", l, self.lo, self.hi, r)
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// The convolution behaviour classes of an interval.
///
/// `R` intervals slide left under convolution (their finite endpoints all move
/// left), `L` intervals slide right, bounded `C` intervals grow or shrink
/// symmetrically, and the full line is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BarClass {
    CClosed,
    COpen,
    L,
    R,
    FullLine,
}

impl fmt::Display for BarClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BarClass::CClosed => "C-closed",
            BarClass::COpen => "C-open",
            BarClass::L => "L",
            BarClass::R => "R",
            BarClass::FullLine => "FullLine",
        };
        write!(f, "{s}")
    }
}

/// Classify an interval by how its finite endpoints move under convolution.
pub fn classify(iv: &Interval) -> BarClass {
    match (iv.lo().is_finite(), iv.hi().is_finite()) {
        (false, false) => BarClass::FullLine,
        (true, true) => match (iv.lo_open(), iv.hi_open()) {
            (false, false) => BarClass::CClosed,
            (true, true) => BarClass::COpen,
            (false, true) => BarClass::R,
            (true, false) => BarClass::L,
        },
        // Exactly one finite endpoint: it alone decides the drift direction.
        (true, false) => {
            if iv.lo_open() {
                BarClass::L // ]a, +inf[
            } else {
                BarClass::R // [a, +inf[
            }
        }
        (false, true) => {
            if iv.hi_open() {
                BarClass::R // ]-inf, b[
            } else {
                BarClass::L // ]-inf, b]
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::q_int;

    fn q(n: i64) -> Q {
        q_int(n)
    }

    #[test]
    fn invariants_reject_bad_intervals() {
        assert!(Interval::closed(q(3), q(1)).is_err());
        assert!(Interval::open(q(2), q(2)).is_err());
        assert!(Interval::left_open(q(2), q(2)).is_err());
        // an infinite endpoint is forced open
        let iv = Interval::new(ExtReal::Fin(q(0)), ExtReal::PosInf, false, false).unwrap();
        assert!(iv.hi_open());
        assert!(!iv.lo_open());
    }

    #[test]
    fn classify_all_nine_endpoint_shapes() {
        use BarClass::*;
        let cases: Vec<(Interval, BarClass)> = vec![
            (Interval::closed(q(0), q(2)).unwrap(), CClosed),
            (Interval::open(q(0), q(2)).unwrap(), COpen),
            (Interval::right_open(q(0), q(2)).unwrap(), R),
            (Interval::left_open(q(0), q(2)).unwrap(), L),
            (Interval::new(ExtReal::Fin(q(3)), ExtReal::PosInf, false, true).unwrap(), R),
            (Interval::new(ExtReal::Fin(q(3)), ExtReal::PosInf, true, true).unwrap(), L),
            (Interval::new(ExtReal::NegInf, ExtReal::Fin(q(3)), true, true).unwrap(), R),
            (Interval::new(ExtReal::NegInf, ExtReal::Fin(q(3)), true, false).unwrap(), L),
            (Interval::full_line(), FullLine),
        ];
        for (iv, want) in cases {
            assert_eq!(classify(&iv), want, "interval {iv}");
        }
    }

    #[test]
    fn point_membership() {
        let iv = Interval::right_open(q(0), q(2)).unwrap();
        assert!(iv.contains(&q(0)));
        assert!(iv.contains(&q(1)));
        assert!(!iv.contains(&q(2)));
    }
}
