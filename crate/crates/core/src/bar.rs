//! Bars (interval summands of a graded barcode), convolution by the interval
//! kernel, death under convolution, and the atomic interleaving predicate.

use crate::extreal::Q;
use crate::interval::{classify, BarClass, Interval};
use crate::region::ExtInterval;
use num_traits::{Signed, Zero};
use std::fmt;

/// One bar of a graded barcode: an interval placed in a cohomological degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bar {
    pub degree: i64,
    pub interval: Interval,
}

impl Bar {
    pub fn new(interval: Interval, degree: i64) -> Bar {
        Bar { degree, interval }
    }

    pub fn class(&self) -> BarClass {
        classify(&self.interval)
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, deg {})", self.interval, self.degree)
    }
}

fn two() -> Q {
    Q::from_integer(2.into())
}

/// Convolve a single bar with the radius-`eps` interval kernel.
///
/// Finite closed endpoints move outward, finite open endpoints move inward,
/// infinite endpoints stay. A bounded open bar whose endpoints would cross
/// collapses to the closed interval [hi-eps, lo+eps] one degree up.
pub fn convolve_bar(bar: &Bar, eps: &Q) -> Bar {
    assert!(!eps.is_negative(), "convolution radius must be nonnegative");
    if eps.is_zero() {
        return bar.clone();
    }
    let iv = &bar.interval;
    if classify(iv) == BarClass::COpen {
        let len = iv.length().expect("bounded open interval");
        if &(two() * eps) >= &len {
            let lo = iv.lo().as_finite().unwrap().clone();
            let hi = iv.hi().as_finite().unwrap().clone();
            let collapsed = Interval::closed(hi - eps, lo + eps).expect("collapse is ordered");
            return Bar::new(collapsed, bar.degree + 1);
        }
    }
    let lo = match (iv.lo().is_finite(), iv.lo_open()) {
        (false, _) => iv.lo().clone(),
        (true, false) => iv.lo().sub_q(eps),
        (true, true) => iv.lo().add_q(eps),
    };
    let hi = match (iv.hi().is_finite(), iv.hi_open()) {
        (false, _) => iv.hi().clone(),
        (true, false) => iv.hi().add_q(eps),
        (true, true) => iv.hi().sub_q(eps),
    };
    let out = Interval::new(lo, hi, iv.lo_open(), iv.hi_open())
        .expect("convolution preserves interval validity");
    Bar::new(out, bar.degree)
}

/// Is the bar eps-interleaved with the zero object?
///
/// Exactly the one-sided bars of finite length at most 2*eps die; bounded
/// closed or open bars, the full line and anything with an infinite endpoint
/// survive every radius.
pub fn bar_dies(bar: &Bar, eps: &Q) -> bool {
    assert!(!eps.is_negative());
    match bar.class() {
        BarClass::L | BarClass::R => match bar.interval.length() {
            Some(len) => len <= two() * eps,
            None => false,
        },
        _ => false,
    }
}

/// The one-dimensional module supporting a one-sided bar: L bars become
/// vertical bands (an x-interval), R bars horizontal bands (a y-interval).
/// Boundary openness flips when passing to the band, and the x-axis reverses
/// orientation.
fn band_interval(bar: &Bar) -> ExtInterval {
    let iv = &bar.interval;
    match bar.class() {
        BarClass::L => {
            // x in <-hi, -lo>, a line is present exactly when the opposite
            // bar endpoint is closed
            ExtInterval::new(iv.hi().neg(), iv.lo().neg(), !iv.hi_open(), !iv.lo_open())
        }
        BarClass::R => {
            // y interval keeps the bar endpoints with flipped openness
            ExtInterval::new(iv.lo().clone(), iv.hi().clone(), !iv.lo_open(), !iv.hi_open())
        }
        _ => unreachable!("band_interval is for one-sided bars"),
    }
}

/// Does a nonzero band-module morphism source -> target exist? The target may
/// reach further left but not further right.
fn band_hom_nonzero(source: &ExtInterval, target: &ExtInterval) -> bool {
    !source.intersect(target).is_empty()
        && !source.extends_left_of(target)
        && !target.extends_right_of(source)
}

/// Interleaving feasibility for two one-sided bars of the same drift class,
/// phrased on their band intervals.
fn bands_interleaved(b1: &ExtInterval, b2: &ExtInterval, eps: &Q) -> bool {
    let m = -eps.clone();
    let m2 = -(two() * eps);
    let b2_shift = b2.shift(&m);
    let b1_shift = b1.shift(&m);
    let need1 = b1.intersect(&b1.shift(&m2)); // support of the 2eps translation of bar 1
    let need2 = b2.intersect(&b2.shift(&m2));
    band_hom_nonzero(b1, &b2_shift)
        && band_hom_nonzero(b2, &b1_shift)
        && b2_shift.contains_interval(&need1)
        && b1_shift.contains_interval(&need2)
}

/// Decide whether two bars are eps-interleaved in the derived sense.
///
/// Two bars that both die at `eps` are interleaved through zero. Otherwise the
/// drift classes must agree, with one exception: a bounded open bar in degree
/// j can pair with a bounded closed bar in degree j+1 once the open bar's
/// collapse has happened (length at most 2*eps) and the collapsed endpoints
/// match the closed bar within eps.
pub fn bars_eps_interleaved(bar1: &Bar, bar2: &Bar, eps: &Q) -> bool {
    assert!(!eps.is_negative());
    if bar_dies(bar1, eps) && bar_dies(bar2, eps) {
        return true;
    }
    let (c1, c2) = (bar1.class(), bar2.class());
    match (c1, c2) {
        (BarClass::FullLine, BarClass::FullLine) => bar1.degree == bar2.degree,
        (BarClass::L, BarClass::L) | (BarClass::R, BarClass::R) => {
            bar1.degree == bar2.degree
                && bands_interleaved(&band_interval(bar1), &band_interval(bar2), eps)
        }
        (BarClass::CClosed, BarClass::CClosed) | (BarClass::COpen, BarClass::COpen) => {
            bar1.degree == bar2.degree
                && endpoints_within(&bar1.interval, &bar2.interval, eps)
        }
        (BarClass::COpen, BarClass::CClosed) => open_closed_pair(bar1, bar2, eps),
        (BarClass::CClosed, BarClass::COpen) => open_closed_pair(bar2, bar1, eps),
        _ => false,
    }
}

fn endpoints_within(a: &Interval, b: &Interval, eps: &Q) -> bool {
    let dlo = a.lo().abs_diff(b.lo()).expect("bounded bars");
    let dhi = a.hi().abs_diff(b.hi()).expect("bounded bars");
    dlo <= *eps && dhi <= *eps
}

/// Open bar (a,b) in degree j against closed bar [c,d] in degree j+1: the
/// open bar must have collapsed (b-a <= 2*eps) and the collapse target
/// [b-eps, a+eps] must sit within eps of [c,d], which works out to
/// |a-d| <= eps and |b-c| <= eps.
fn open_closed_pair(open: &Bar, closed: &Bar, eps: &Q) -> bool {
    if closed.degree != open.degree + 1 {
        return false;
    }
    let len = open.interval.length().expect("bounded open bar");
    if len > two() * eps {
        return false;
    }
    let a = open.interval.lo();
    let b = open.interval.hi();
    let c = closed.interval.lo();
    let d = closed.interval.hi();
    a.abs_diff(d).expect("bounded") <= *eps && b.abs_diff(c).expect("bounded") <= *eps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::{q_int, q_ratio};
    use crate::extreal::ExtReal;

    fn q(n: i64) -> Q {
        q_int(n)
    }

    fn bar(iv: Interval, d: i64) -> Bar {
        Bar::new(iv, d)
    }

    #[test]
    fn convolve_four_shapes() {
        // closed expands
        let b = bar(Interval::closed(q(0), q(2)).unwrap(), 0);
        assert_eq!(
            convolve_bar(&b, &q(1)),
            bar(Interval::closed(q(-1), q(3)).unwrap(), 0)
        );
        // open collapses at half length, one degree up
        let b = bar(Interval::open(q(0), q(4)).unwrap(), 0);
        assert_eq!(convolve_bar(&b, &q(2)), bar(Interval::point(q(2)), 1));
        // left-open slides right, degree preserved
        let b = bar(Interval::left_open(q(0), q(4)).unwrap(), 5);
        assert_eq!(
            convolve_bar(&b, &q(1)),
            bar(Interval::left_open(q(1), q(5)).unwrap(), 5)
        );
        // infinite endpoint fixed
        let iv = Interval::new(ExtReal::Fin(q(3)), ExtReal::PosInf, false, true).unwrap();
        let b = bar(iv, 0);
        let out = convolve_bar(&b, &q(1));
        assert_eq!(out.interval.lo(), &ExtReal::Fin(q(2)));
        assert_eq!(out.interval.hi(), &ExtReal::PosInf);
        assert_eq!(out.degree, 0);
    }

    #[test]
    fn convolve_open_strictly_before_collapse() {
        let b = bar(Interval::open(q(0), q(4)).unwrap(), 0);
        assert_eq!(
            convolve_bar(&b, &q(1)),
            bar(Interval::open(q(1), q(3)).unwrap(), 0)
        );
    }

    #[test]
    fn death_rule() {
        assert!(bar_dies(&bar(Interval::right_open(q(0), q(2)).unwrap(), 0), &q(1)));
        assert!(!bar_dies(&bar(Interval::closed(q(0), q(2)).unwrap(), 0), &q(100)));
        assert!(!bar_dies(&bar(Interval::open(q(0), q(2)).unwrap(), 0), &q(1)));
        let ray = Interval::new(ExtReal::Fin(q(0)), ExtReal::PosInf, false, true).unwrap();
        assert!(!bar_dies(&bar(ray, 0), &q(100)));
    }

    #[test]
    fn interleaving_examples() {
        // closed-closed within eps
        assert!(bars_eps_interleaved(
            &bar(Interval::closed(q(0), q(2)).unwrap(), 0),
            &bar(Interval::closed(q(1), q(3)).unwrap(), 0),
            &q(1)
        ));
        // collapse pairing from the circle computation
        assert!(bars_eps_interleaved(
            &bar(Interval::open(q(-1), q(1)).unwrap(), 0),
            &bar(Interval::point(q(0)), 1),
            &q(1)
        ));
        // opposite one-sided shapes never pair while alive
        assert!(!bars_eps_interleaved(
            &bar(Interval::right_open(q(0), q(2)).unwrap(), 0),
            &bar(Interval::left_open(q(0), q(2)).unwrap(), 0),
            &q_ratio(1, 2)
        ));
        // identity interleaving at eps = 0
        let b = bar(Interval::left_open(q(0), q(7)).unwrap(), 2);
        assert!(bars_eps_interleaved(&b, &b, &q(0)));
    }

    #[test]
    fn full_lines_and_rays_segregate() {
        let full0 = bar(Interval::full_line(), 0);
        let full1 = bar(Interval::full_line(), 1);
        assert!(bars_eps_interleaved(&full0, &full0, &q(0)));
        assert!(!bars_eps_interleaved(&full0, &full1, &q(100)));
        // live rays of opposite drift never pair
        let right = bar(Interval::new(ExtReal::Fin(q(0)), ExtReal::PosInf, false, true).unwrap(), 0);
        let left = bar(Interval::new(ExtReal::NegInf, ExtReal::Fin(q(0)), true, false).unwrap(), 0);
        assert!(!bars_eps_interleaved(&right, &left, &q(100)));
        assert!(!bars_eps_interleaved(&right, &full0, &q(100)));
        // two rays of the same drift pair once their endpoints are close
        let right2 =
            bar(Interval::new(ExtReal::Fin(q(5)), ExtReal::PosInf, false, true).unwrap(), 0);
        assert!(!bars_eps_interleaved(&right, &right2, &q(2)));
        assert!(bars_eps_interleaved(&right, &right2, &q(5)));
    }

    #[test]
    fn dead_pairs_interleave_across_classes() {
        let r = bar(Interval::right_open(q(0), q(2)).unwrap(), 0);
        let l = bar(Interval::left_open(q(5), q(6)).unwrap(), 3);
        assert!(bar_dies(&r, &q(1)) && bar_dies(&l, &q(1)));
        assert!(bars_eps_interleaved(&r, &l, &q(1)));
    }

    #[test]
    fn live_one_sided_bar_can_pair_with_a_dead_one() {
        // lives at eps=1 but its translation support fits inside the dead bar's shifted band
        let live = bar(Interval::left_open(q(0), q(4)).unwrap(), 0);
        let dead = bar(Interval::left_open(q(1), q(3)).unwrap(), 0);
        assert!(!bar_dies(&live, &q(1)));
        assert!(bar_dies(&dead, &q(1)));
        assert!(bars_eps_interleaved(&live, &dead, &q(1)));
        // but not when the shapes are too different
        let far = bar(Interval::left_open(q(10), q(12)).unwrap(), 0);
        assert!(!bars_eps_interleaved(&live, &far, &q(1)));
    }
}
