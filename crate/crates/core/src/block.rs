//! Blocks of the plane (birth/death quadrants, horizontal/vertical bands)
//! with boundary-inclusion flags, their duality, shifts, anti-diagonal traces
//! and pointwise dimension.

use crate::extreal::{ExtReal, Q};
use crate::interval::Interval;
use crate::region::{ExtInterval, Region};
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    Bb,
    Db,
    Hb,
    Vb,
}

impl BlockKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BlockKind::Bb => "bb",
            BlockKind::Db => "db",
            BlockKind::Hb => "hb",
            BlockKind::Vb => "vb",
        }
    }

    pub fn parse(s: &str) -> Result<BlockKind> {
        match s {
            "bb" => Ok(BlockKind::Bb),
            "db" => Ok(BlockKind::Db),
            "hb" => Ok(BlockKind::Hb),
            "vb" => Ok(BlockKind::Vb),
            other => Err(Error::Malformed(format!("unknown block kind {other:?}"))),
        }
    }
}

/// A block of the plane. Quadrants carry their extremal corner and whether
/// each boundary line belongs to the block; bands carry their axis interval
/// (openness flags inside the interval). An infinite corner coordinate
/// forces the matching line flag to false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    /// Upward-closed quadrant with the given infimum.
    Birth { x: ExtReal, y: ExtReal, x_line: bool, y_line: bool },
    /// Downward-closed quadrant with the given (finite) supremum.
    Death { x: Q, y: Q, x_line: bool, y_line: bool },
    /// Full-width band, the given y-interval.
    Horizontal { y: ExtInterval },
    /// Full-height band, the given x-interval.
    Vertical { x: ExtInterval },
}

impl Block {
    pub fn kind(&self) -> BlockKind {
        match self {
            Block::Birth { .. } => BlockKind::Bb,
            Block::Death { .. } => BlockKind::Db,
            Block::Horizontal { .. } => BlockKind::Hb,
            Block::Vertical { .. } => BlockKind::Vb,
        }
    }

    pub fn birth(x: ExtReal, y: ExtReal, x_line: bool, y_line: bool) -> Block {
        let x_line = x_line && x.is_finite();
        let y_line = y_line && y.is_finite();
        Block::Birth { x, y, x_line, y_line }
    }

    /// Is the quadrant corner strictly above the anti-diagonal? Positive death
    /// blocks are the nonzero ones; positive birth blocks are the ones whose
    /// standalone module is not part of the canonical barcode.
    pub fn is_positive(&self) -> Option<bool> {
        match self {
            Block::Birth { x, y, .. } => match (x, y) {
                (ExtReal::Fin(a), ExtReal::Fin(b)) => Some(a + b > Q::zero()),
                _ => Some(false),
            },
            Block::Death { x, y, .. } => Some(x + y > Q::zero()),
            _ => None,
        }
    }

    /// A death block at or below the anti-diagonal supports the zero module.
    pub fn is_zero_module(&self) -> bool {
        matches!(self, Block::Death { .. }) && self.is_positive() == Some(false)
    }

    /// Allowed in a canonical barcode: bb minus, db plus, or any band.
    pub fn is_canonical(&self) -> bool {
        match self.kind() {
            BlockKind::Bb => self.is_positive() == Some(false),
            BlockKind::Db => self.is_positive() == Some(true),
            _ => true,
        }
    }

    /// The underlying subset of the plane.
    pub fn region(&self) -> Region {
        match self {
            Block::Birth { x, y, x_line, y_line } => Region::new(
                ExtInterval::new(x.clone(), ExtReal::PosInf, !x_line, true),
                ExtInterval::new(y.clone(), ExtReal::PosInf, !y_line, true),
            ),
            Block::Death { x, y, x_line, y_line } => Region::new(
                ExtInterval::new(ExtReal::NegInf, ExtReal::Fin(x.clone()), true, !x_line),
                ExtInterval::new(ExtReal::NegInf, ExtReal::Fin(y.clone()), true, !y_line),
            ),
            Block::Horizontal { y } => Region::new(ExtInterval::all(), y.clone()),
            Block::Vertical { x } => Region::new(x.clone(), ExtInterval::all()),
        }
    }

    /// Membership value of the block module at a point of the open half-plane
    /// x + y > 0.
    pub fn dim_at(&self, px: &Q, py: &Q) -> Result<u8> {
        if px + py <= Q::zero() {
            return Err(Error::OutsideDomain(format!(
                "({}, {})",
                crate::extreal::format_q(px),
                crate::extreal::format_q(py)
            )));
        }
        let r = self.region();
        Ok(u8::from(r.contains(&ExtReal::Fin(px.clone()), &ExtReal::Fin(py.clone()))))
    }

    /// Geometric trace: the projection of the intersection with the
    /// anti-diagonal, or None when empty.
    pub fn trace(&self) -> Option<Interval> {
        let r = self.region();
        // t such that (-t, t) lies in the region
        let reflected_x = ExtInterval::new(r.x.hi.neg(), r.x.lo.neg(), r.x.hi_open, r.x.lo_open);
        reflected_x.intersect(&r.y).to_interval()
    }

    /// Symbolic trace endpoints (lo, hi, lo_open, hi_open). For canonical
    /// kinds this determines the block together with its kind; for a
    /// degenerate birth quadrant touching the diagonal the pair may describe
    /// an empty set (for example both endpoints equal and open).
    pub fn trace_endpoints(&self) -> (ExtReal, ExtReal, bool, bool) {
        match self {
            Block::Birth { x, y, x_line, y_line } => {
                (y.clone(), x.neg(), !y_line, !x_line)
            }
            Block::Death { x, y, x_line, y_line } => (
                ExtReal::Fin(-x.clone()),
                ExtReal::Fin(y.clone()),
                !x_line,
                !y_line,
            ),
            Block::Horizontal { y } => (y.lo.clone(), y.hi.clone(), y.lo_open, y.hi_open),
            Block::Vertical { x } => (x.hi.neg(), x.lo.neg(), x.hi_open, x.lo_open),
        }
    }

    /// Rebuild a block from its kind and symbolic trace endpoints.
    pub fn from_trace_endpoints(
        kind: BlockKind,
        lo: ExtReal,
        hi: ExtReal,
        lo_open: bool,
        hi_open: bool,
    ) -> Result<Block> {
        let lo_open = lo_open || !lo.is_finite();
        let hi_open = hi_open || !hi.is_finite();
        if lo > hi {
            return Err(Error::EmptyTrace);
        }
        if lo == hi && !lo.is_finite() {
            return Err(Error::InvalidBlock("trace endpoints both infinite and equal".into()));
        }
        match kind {
            BlockKind::Bb => {
                match (&lo, &hi) {
                    (ExtReal::NegInf, ExtReal::PosInf) => Ok(Block::birth(
                        ExtReal::NegInf,
                        ExtReal::NegInf,
                        false,
                        false,
                    )),
                    (ExtReal::Fin(_), ExtReal::Fin(_)) => {
                        Ok(Block::birth(hi.neg(), lo.clone(), !hi_open, !lo_open))
                    }
                    _ => Err(Error::InvalidBlock(
                        "a birth quadrant trace is bounded or the whole line".into(),
                    )),
                }
            }
            BlockKind::Db => match (&lo, &hi) {
                (ExtReal::Fin(a), ExtReal::Fin(b)) => {
                    if a >= b {
                        return Err(Error::InvalidBlock(
                            "death quadrant with corner at or below the diagonal is zero".into(),
                        ));
                    }
                    Ok(Block::Death {
                        x: -a.clone(),
                        y: b.clone(),
                        x_line: !lo_open,
                        y_line: !hi_open,
                    })
                }
                _ => Err(Error::InvalidBlock("death quadrant trace must be bounded".into())),
            },
            BlockKind::Hb => {
                if lo == hi {
                    return Err(Error::InvalidBlock("band trace must have positive length".into()));
                }
                if !lo.is_finite() && !hi.is_finite() {
                    return Err(Error::InvalidBlock("band spanning the whole line".into()));
                }
                Ok(Block::Horizontal { y: ExtInterval::new(lo, hi, lo_open, hi_open) })
            }
            BlockKind::Vb => {
                if lo == hi {
                    return Err(Error::InvalidBlock("band trace must have positive length".into()));
                }
                if !lo.is_finite() && !hi.is_finite() {
                    return Err(Error::InvalidBlock("band spanning the whole line".into()));
                }
                Ok(Block::Vertical { x: ExtInterval::new(hi.neg(), lo.neg(), hi_open, lo_open) })
            }
        }
    }

    /// Dual quadrant: swaps birth and death, keeps the corner, negates both
    /// line flags. Undefined for bands and for quadrants without a finite
    /// corner.
    pub fn dual(&self) -> Result<Block> {
        match self {
            Block::Death { x, y, x_line, y_line } => Ok(Block::Birth {
                x: ExtReal::Fin(x.clone()),
                y: ExtReal::Fin(y.clone()),
                x_line: !x_line,
                y_line: !y_line,
            }),
            Block::Birth { x, y, x_line, y_line } => match (x, y) {
                (ExtReal::Fin(a), ExtReal::Fin(b)) => Ok(Block::Death {
                    x: a.clone(),
                    y: b.clone(),
                    x_line: !x_line,
                    y_line: !y_line,
                }),
                _ => Err(Error::InvalidBlock(
                    "duality needs a finite quadrant corner".into(),
                )),
            },
            _ => Err(Error::InvalidBlock("duality is defined for quadrants only".into())),
        }
    }

    /// Translate the block by the nonpositive vector -(s1, s2); kind and line
    /// flags are preserved, the sign subtype is recomputed by the caller.
    pub fn shift(&self, s1: &Q, s2: &Q) -> Result<Block> {
        if s1.is_negative() || s2.is_negative() {
            return Err(Error::Precondition("shift vector must be nonnegative".into()));
        }
        Ok(match self {
            Block::Birth { x, y, x_line, y_line } => Block::Birth {
                x: x.sub_q(s1),
                y: y.sub_q(s2),
                x_line: *x_line,
                y_line: *y_line,
            },
            Block::Death { x, y, x_line, y_line } => Block::Death {
                x: x - s1,
                y: y - s2,
                x_line: *x_line,
                y_line: *y_line,
            },
            Block::Horizontal { y } => Block::Horizontal { y: y.shift(&-s2.clone()) },
            Block::Vertical { x } => Block::Vertical { x: x.shift(&-s1.clone()) },
        })
    }

    /// Key for deterministic ordering: kind, then symbolic trace.
    pub fn sort_key(&self) -> (u8, ExtReal, bool, ExtReal, bool) {
        let kind_rank = match self.kind() {
            BlockKind::Bb => 0,
            BlockKind::Db => 1,
            BlockKind::Hb => 2,
            BlockKind::Vb => 3,
        };
        let (lo, hi, lo_open, hi_open) = self.trace_endpoints();
        (kind_rank, lo, lo_open, hi, hi_open)
    }

    /// Same kind and trace endpoints, ignoring openness flags.
    pub fn eq_up_to_boundary(&self, other: &Block) -> bool {
        if self.kind() != other.kind() {
            return false;
        }
        let (alo, ahi, _, _) = self.trace_endpoints();
        let (blo, bhi, _, _) = other.trace_endpoints();
        alo == blo && ahi == bhi
    }
}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Block {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi, lo_open, hi_open) = self.trace_endpoints();
        let l = if lo_open { ']' } else { '[' };
        let r = if hi_open { '[' } else { ']' };
        write!(f, "{}{}{},{}{}", self.kind().as_str(), l, lo, hi, r)
    }
}

/// A block placed in a degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBlock {
    pub degree: i64,
    pub block: Block,
}

impl GradedBlock {
    pub fn new(block: Block, degree: i64) -> GradedBlock {
        GradedBlock { degree, block }
    }
}

impl PartialOrd for GradedBlock {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GradedBlock {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree, self.block.sort_key()).cmp(&(other.degree, other.block.sort_key()))
    }
}

/// Build the unique block of the given kind whose anti-diagonal trace is the
/// given interval.
pub fn block_from_trace(kind: BlockKind, trace: &Interval) -> Result<Block> {
    Block::from_trace_endpoints(
        kind,
        trace.lo().clone(),
        trace.hi().clone(),
        trace.lo_open(),
        trace.hi_open(),
    )
}

/// Geometric anti-diagonal trace of a block, or None when empty.
pub fn block_trace(block: &Block) -> Option<Interval> {
    block.trace()
}

pub fn dual_block(block: &Block) -> Result<Block> {
    block.dual()
}

pub fn shift_block(block: &Block, s1: &Q, s2: &Q) -> Result<Block> {
    block.shift(s1, s2)
}

pub fn block_dim_at(block: &Block, px: &Q, py: &Q) -> Result<u8> {
    block.dim_at(px, py)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::q_int;

    fn q(n: i64) -> Q {
        q_int(n)
    }

    #[test]
    fn db_from_closed_trace_has_included_lines() {
        let b = block_from_trace(BlockKind::Db, &Interval::closed(q(-1), q(1)).unwrap()).unwrap();
        match &b {
            Block::Death { x, y, x_line, y_line } => {
                assert_eq!((x, y), (&q(1), &q(1)));
                assert!(*x_line && *y_line);
            }
            _ => panic!("expected death quadrant"),
        }
        assert_eq!(b.trace(), Some(Interval::closed(q(-1), q(1)).unwrap()));
        assert_eq!(b.is_positive(), Some(true));
    }

    #[test]
    fn vb_from_half_open_trace() {
        let b =
            block_from_trace(BlockKind::Vb, &Interval::left_open(q(0), q(3)).unwrap()).unwrap();
        // band between x = -3 and x = 0; included exactly per trace openness
        match &b {
            Block::Vertical { x } => {
                assert_eq!(x, &ExtInterval::new(ExtReal::Fin(q(-3)), ExtReal::Fin(q(0)), false, true));
            }
            _ => panic!("expected vertical band"),
        }
        assert_eq!(b.trace(), Some(Interval::left_open(q(0), q(3)).unwrap()));
    }

    #[test]
    fn bb_from_closed_trace_round_trips() {
        let t = Interval::closed(q(-1), q(1)).unwrap();
        let b = block_from_trace(BlockKind::Bb, &t).unwrap();
        match &b {
            Block::Birth { x, y, x_line, y_line } => {
                assert_eq!((x, y), (&ExtReal::Fin(q(-1)), &ExtReal::Fin(q(-1))));
                assert!(*x_line && *y_line);
            }
            _ => panic!("expected birth quadrant"),
        }
        assert_eq!(b.trace(), Some(t));
    }

    #[test]
    fn positive_birth_quadrant_has_empty_trace() {
        let b = Block::birth(ExtReal::Fin(q(1)), ExtReal::Fin(q(1)), true, true);
        assert_eq!(b.is_positive(), Some(true));
        assert_eq!(b.trace(), None);
    }

    #[test]
    fn horizontal_band_trace() {
        let b = Block::Horizontal {
            y: ExtInterval::new(ExtReal::Fin(q(0)), ExtReal::Fin(q(2)), false, true),
        };
        assert_eq!(b.trace(), Some(Interval::right_open(q(0), q(2)).unwrap()));
    }

    #[test]
    fn duality_involutive_and_flag_negating() {
        let d = block_from_trace(BlockKind::Db, &Interval::closed(q(-1), q(1)).unwrap()).unwrap();
        let dd = d.dual().unwrap();
        match &dd {
            Block::Birth { x, y, x_line, y_line } => {
                assert_eq!((x, y), (&ExtReal::Fin(q(1)), &ExtReal::Fin(q(1))));
                assert!(!*x_line && !*y_line);
            }
            _ => panic!(),
        }
        assert_eq!(dd.dual().unwrap(), d);
        assert_eq!(dd.is_positive(), Some(true));
        assert!(Block::Horizontal { y: ExtInterval::all() }.dual().is_err());
    }

    #[test]
    fn shifting_a_death_block_past_the_diagonal_flags_zero() {
        let d = Block::Death { x: q(1), y: q(1), x_line: true, y_line: true };
        let s = d.shift(&q(1), &q(1)).unwrap();
        assert!(s.is_zero_module());
        let b = Block::birth(ExtReal::Fin(q(1)), ExtReal::Fin(q(1)), true, true);
        let sb = b.shift(&q(1), &q(1)).unwrap();
        assert_eq!(sb.is_positive(), Some(false));
    }

    #[test]
    fn dim_at_respects_flags_and_domain() {
        let d = Block::Death { x: q(1), y: q(1), x_line: true, y_line: true };
        assert_eq!(d.dim_at(&crate::extreal::q_ratio(1, 2), &crate::extreal::q_ratio(1, 2)).unwrap(), 1);
        assert_eq!(d.dim_at(&q(2), &q(2)).unwrap(), 0);
        assert!(d.dim_at(&q(-1), &q(1)).is_err()); // on the diagonal
        let b = Block::birth(ExtReal::Fin(q(-1)), ExtReal::Fin(q(-1)), true, true);
        assert_eq!(b.dim_at(&q(2), &q(2)).unwrap(), 1);
    }

    #[test]
    fn trace_round_trip_on_canonical_kinds() {
        let traces = [
            Interval::closed(q(-2), q(3)).unwrap(),
            Interval::open(q(0), q(1)).unwrap(),
            Interval::left_open(q(-1), q(4)).unwrap(),
            Interval::right_open(q(-1), q(4)).unwrap(),
        ];
        for kind in [BlockKind::Bb, BlockKind::Db, BlockKind::Hb, BlockKind::Vb] {
            for t in &traces {
                let b = block_from_trace(kind, t).unwrap();
                assert_eq!(b.trace().as_ref(), Some(t), "kind {kind:?} trace {t}");
            }
        }
    }
}
