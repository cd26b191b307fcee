//! The block-to-interval translation (sheafification of a decomposed system)
//! and its pointwise section going the other way.
//!
//! Both directions are purely combinatorial: a negative birth quadrant reads
//! off a closed interval, bands give half-open intervals, a positive death
//! quadrant gives a bounded open interval; the section flips every boundary
//! openness and picks the canonical block of the matching kind.

use crate::bar::Bar;
use crate::barcode::GradedBarcode;
use crate::block::{Block, BlockKind, GradedBlock};
use crate::extreal::ExtReal;
use crate::interval::{classify, BarClass, Interval};
use crate::mv::MVSystem;

/// The graded barcode of a single canonical graded block.
///
/// Boundary-inclusion flags do not matter: the interval depends only on the
/// corner or band coordinates.
pub fn xi_block(gb: &GradedBlock) -> GradedBarcode {
    let iv = match &gb.block {
        Block::Birth { x, y, .. } => {
            // closed interval [y, -x]; empty for a positive quadrant
            match Interval::new(y.clone(), x.neg(), false, false) {
                Ok(iv) => iv,
                Err(_) => return GradedBarcode::empty(),
            }
        }
        Block::Death { x, y, .. } => {
            let lo = ExtReal::Fin(-x.clone());
            let hi = ExtReal::Fin(y.clone());
            match Interval::new(lo, hi, true, true) {
                Ok(iv) => iv,
                Err(_) => return GradedBarcode::empty(), // zero death block
            }
        }
        Block::Horizontal { y } => {
            Interval::new(y.lo.clone(), y.hi.clone(), false, true)
                .expect("band with positive trace length")
        }
        Block::Vertical { x } => {
            Interval::new(x.hi.neg(), x.lo.neg(), true, false)
                .expect("band with positive trace length")
        }
    };
    GradedBarcode::new(vec![Bar::new(iv, gb.degree)])
}

/// The graded barcode of a decomposed system: the union over its blocks.
pub fn xi_system(system: &MVSystem) -> GradedBarcode {
    let mut bars = Vec::new();
    for gb in system.blocks() {
        bars.extend(xi_block(gb).bars().iter().cloned());
    }
    GradedBarcode::new(bars)
}

/// The block system of a single bar. The trace of the block has the bar's
/// endpoints with every finite openness flipped; the kind follows the bar's
/// class (closed bars to birth quadrants, open bars to death quadrants,
/// one-sided bars to bands, the full line to the full-plane quadrant).
pub fn psi_bar(bar: &Bar) -> MVSystem {
    let iv = &bar.interval;
    let lo = iv.lo().clone();
    let hi = iv.hi().clone();
    let lo_open = lo.is_finite() && !iv.lo_open();
    let hi_open = hi.is_finite() && !iv.hi_open();
    let kind = match classify(iv) {
        BarClass::CClosed | BarClass::FullLine => BlockKind::Bb,
        BarClass::COpen => BlockKind::Db,
        BarClass::L => BlockKind::Vb,
        BarClass::R => BlockKind::Hb,
    };
    let block = Block::from_trace_endpoints(kind, lo, hi, lo_open, hi_open)
        .expect("flipped bar endpoints always give a canonical block");
    MVSystem::new(vec![GradedBlock::new(block, bar.degree)]).expect("section output is canonical")
}

/// The block system of a whole barcode.
pub fn psi_barcode(barcode: &GradedBarcode) -> MVSystem {
    let mut blocks = Vec::new();
    for bar in barcode.bars() {
        blocks.extend(psi_bar(bar).blocks().iter().cloned());
    }
    MVSystem::new(blocks).expect("section output is canonical")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::block_from_trace;
    use crate::extreal::{q_int, Q};

    fn q(n: i64) -> Q {
        q_int(n)
    }

    #[test]
    fn xi_on_the_four_kinds() {
        let db = block_from_trace(BlockKind::Db, &Interval::closed(q(-1), q(1)).unwrap()).unwrap();
        assert_eq!(
            xi_block(&GradedBlock::new(db, 0)).bars(),
            &[Bar::new(Interval::open(q(-1), q(1)).unwrap(), 0)]
        );
        let bb = block_from_trace(BlockKind::Bb, &Interval::closed(q(-1), q(1)).unwrap()).unwrap();
        assert_eq!(
            xi_block(&GradedBlock::new(bb, 0)).bars(),
            &[Bar::new(Interval::closed(q(-1), q(1)).unwrap(), 0)]
        );
        let vb = block_from_trace(BlockKind::Vb, &Interval::left_open(q(0), q(3)).unwrap()).unwrap();
        assert_eq!(
            xi_block(&GradedBlock::new(vb, 2)).bars(),
            &[Bar::new(Interval::left_open(q(0), q(3)).unwrap(), 2)]
        );
        let hb = block_from_trace(BlockKind::Hb, &Interval::right_open(q(0), q(2)).unwrap()).unwrap();
        assert_eq!(
            xi_block(&GradedBlock::new(hb, 1)).bars(),
            &[Bar::new(Interval::right_open(q(0), q(2)).unwrap(), 1)]
        );
    }

    #[test]
    fn xi_ignores_boundary_flags() {
        for t in [
            Interval::closed(q(-1), q(1)).unwrap(),
            Interval::open(q(-1), q(1)).unwrap(),
        ] {
            let bb = block_from_trace(BlockKind::Bb, &t).unwrap();
            assert_eq!(
                xi_block(&GradedBlock::new(bb, 0)).bars(),
                &[Bar::new(Interval::closed(q(-1), q(1)).unwrap(), 0)]
            );
        }
    }

    #[test]
    fn xi_of_degenerate_birth_quadrant_is_a_point_bar() {
        // the constant-map building block: corner on the diagonal, no lines
        let b = Block::birth(ExtReal::Fin(q(0)), ExtReal::Fin(q(0)), false, false);
        assert_eq!(
            xi_block(&GradedBlock::new(b, 1)).bars(),
            &[Bar::new(Interval::point(q(0)), 1)]
        );
    }

    #[test]
    fn psi_on_the_four_shapes() {
        let m = psi_bar(&Bar::new(Interval::open(q(-1), q(1)).unwrap(), 0));
        let want = block_from_trace(BlockKind::Db, &Interval::closed(q(-1), q(1)).unwrap()).unwrap();
        assert_eq!(m.blocks(), &[GradedBlock::new(want, 0)]);

        let m = psi_bar(&Bar::new(Interval::left_open(q(0), q(3)).unwrap(), 2));
        let want = block_from_trace(BlockKind::Vb, &Interval::right_open(q(0), q(3)).unwrap()).unwrap();
        assert_eq!(m.blocks(), &[GradedBlock::new(want, 2)]);

        let m = psi_bar(&Bar::new(Interval::right_open(q(0), q(3)).unwrap(), 1));
        let want = block_from_trace(BlockKind::Hb, &Interval::left_open(q(0), q(3)).unwrap()).unwrap();
        assert_eq!(m.blocks(), &[GradedBlock::new(want, 1)]);

        let m = psi_bar(&Bar::new(Interval::closed(q(-1), q(1)).unwrap(), 0));
        let want = block_from_trace(BlockKind::Bb, &Interval::open(q(-1), q(1)).unwrap()).unwrap();
        assert_eq!(m.blocks(), &[GradedBlock::new(want, 0)]);
    }

    #[test]
    fn psi_of_point_bar_is_degenerate_birth_quadrant() {
        let m = psi_bar(&Bar::new(Interval::point(q(0)), 0));
        match &m.blocks()[0].block {
            Block::Birth { x, y, x_line, y_line } => {
                assert_eq!((x, y), (&ExtReal::Fin(q(0)), &ExtReal::Fin(q(0))));
                assert!(!*x_line && !*y_line);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn section_law_on_shapes_with_infinite_ends() {
        let bars = vec![
            Bar::new(Interval::full_line(), -1),
            Bar::new(Interval::new(ExtReal::Fin(q(3)), ExtReal::PosInf, false, true).unwrap(), 0),
            Bar::new(Interval::new(ExtReal::Fin(q(3)), ExtReal::PosInf, true, true).unwrap(), 1),
            Bar::new(Interval::new(ExtReal::NegInf, ExtReal::Fin(q(2)), true, true).unwrap(), 0),
            Bar::new(Interval::new(ExtReal::NegInf, ExtReal::Fin(q(2)), true, false).unwrap(), 2),
            Bar::new(Interval::point(q(5)), 3),
        ];
        let barcode = GradedBarcode::new(bars);
        assert_eq!(xi_system(&psi_barcode(&barcode)), barcode);
    }
}
