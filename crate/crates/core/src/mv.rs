//! Decomposed Mayer-Vietoris systems: canonical graded block multisets with
//! pointwise evaluation, diagonal shift, degree shift, direct sum and the
//! interleaving distance.

use crate::block::{BlockKind, GradedBlock};
use crate::extreal::Q;
use crate::functors::xi_system;
use crate::{barcode, Distance, Error, Result};
use num_traits::{Signed, Zero};

/// A Mayer-Vietoris system in decomposed form: a finite multiset of canonical
/// graded blocks (birth quadrants below the diagonal, bands, and positive
/// death quadrants, whose dual birth part is implicit).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MVSystem {
    blocks: Vec<GradedBlock>,
}

impl MVSystem {
    pub fn new(mut blocks: Vec<GradedBlock>) -> Result<MVSystem> {
        for gb in &blocks {
            if !gb.block.is_canonical() {
                return Err(Error::InvalidBlock(format!(
                    "non-canonical block {} in degree {}",
                    gb.block, gb.degree
                )));
            }
        }
        blocks.sort();
        Ok(MVSystem { blocks })
    }

    pub fn empty() -> MVSystem {
        MVSystem::default()
    }

    pub fn blocks(&self) -> &[GradedBlock] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Equality of the underlying multisets up to boundary-inclusion flags.
    pub fn eq_up_to_boundary(&self, other: &MVSystem) -> bool {
        // align by a flag-insensitive key; the canonical order breaks ties on
        // flags, which the comparison must ignore
        let key = |gb: &GradedBlock| {
            let (lo, hi, _, _) = gb.block.trace_endpoints();
            (gb.degree, gb.block.kind(), lo, hi)
        };
        let mut a: Vec<&GradedBlock> = self.blocks.iter().collect();
        let mut b: Vec<&GradedBlock> = other.blocks.iter().collect();
        a.sort_by_key(|gb| key(gb));
        b.sort_by_key(|gb| key(gb));
        a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| key(x) == key(y))
    }
}

/// Pointwise dimension of the system in one degree at a point of the open
/// half-plane: stored blocks of that degree plus the implicit dual birth
/// parts of positive death blocks one degree below.
pub fn mv_dim_at(system: &MVSystem, degree: i64, px: &Q, py: &Q) -> Result<u64> {
    if px + py <= Q::zero() {
        return Err(Error::OutsideDomain(format!(
            "({}, {})",
            crate::extreal::format_q(px),
            crate::extreal::format_q(py)
        )));
    }
    let mut total = 0u64;
    for gb in system.blocks() {
        if gb.degree == degree {
            total += gb.block.dim_at(px, py)? as u64;
        }
        if gb.degree == degree - 1 && gb.block.kind() == BlockKind::Db {
            total += gb.block.dual()?.dim_at(px, py)? as u64;
        }
    }
    Ok(total)
}

/// Shift every block by the diagonal vector (eps, eps) and renormalize: a
/// positive death block whose shift crosses the anti-diagonal contributes
/// only its shifted dual, a birth quadrant one degree up.
pub fn mv_shift(system: &MVSystem, eps: &Q) -> Result<MVSystem> {
    if eps.is_negative() {
        return Err(Error::Precondition("shift radius must be nonnegative".into()));
    }
    let mut out = Vec::new();
    for gb in system.blocks() {
        let shifted = gb.block.shift(eps, eps)?;
        if shifted.is_zero_module() {
            // the death part is now zero; its dual crossed into a negative
            // birth quadrant and survives one degree up
            let dual_shifted = gb.block.dual()?.shift(eps, eps)?;
            debug_assert_eq!(dual_shifted.is_positive(), Some(false));
            out.push(GradedBlock::new(dual_shifted, gb.degree + 1));
        } else {
            out.push(GradedBlock::new(shifted, gb.degree));
        }
    }
    MVSystem::new(out)
}

/// Add `n` to every block's degree.
pub fn mv_degree_shift(system: &MVSystem, n: i64) -> MVSystem {
    MVSystem::new(
        system
            .blocks()
            .iter()
            .map(|gb| GradedBlock::new(gb.block.clone(), gb.degree + n))
            .collect(),
    )
    .expect("degree shift preserves canonicity")
}

/// Multiset union.
pub fn mv_direct_sum(a: &MVSystem, b: &MVSystem) -> MVSystem {
    let mut blocks = a.blocks().to_vec();
    blocks.extend(b.blocks().iter().cloned());
    MVSystem::new(blocks).expect("union of canonical systems is canonical")
}

/// Interleaving distance, computed through the sheaf side: the bottleneck
/// distance of the associated graded barcodes.
pub fn mv_interleaving_distance(a: &MVSystem, b: &MVSystem) -> Distance {
    barcode::bottleneck_distance(&xi_system(a), &xi_system(b))
}
