//! Exact-arithmetic toolkit for level-sets persistence over the real line.
//!
//! The crate represents decomposed Mayer-Vietoris systems (block barcodes over
//! the half-plane above the anti-diagonal) and graded barcodes of constructible
//! sheaves, translates between the two, and computes convolution, interleaving
//! and bottleneck distances exactly over arbitrary-precision rationals. A small
//! simplicial pipeline turns a piecewise-linear function on a complex of
//! dimension at most two into the graded barcode of its derived pushforward and
//! the matching block system.

pub mod bar;
pub mod barcode;
pub mod block;
pub mod extreal;
pub mod functors;
pub mod gf2;
pub mod interval;
pub mod json;
pub mod levelset;
pub mod matching;
pub mod mv;
pub mod oracle;
pub mod region;
pub mod selftest;
pub mod simplicial;
pub mod svg;
pub mod zigzag;

pub use bar::{bar_dies, bars_eps_interleaved, convolve_bar, Bar};
pub use barcode::{
    barcode_convolve, bottleneck_distance, candidate_epsilons, clr_split, eps_matching_exists,
    GradedBarcode,
};
pub use block::{Block, BlockKind, GradedBlock};
pub use extreal::{ExtReal, Q};
pub use functors::{psi_bar, psi_barcode, xi_block, xi_system};
pub use interval::{classify, BarClass, Interval};
pub use levelset::{
    critical_values, levelset_mv, preimage_complex, pushforward_barcode, verify_pointwise_dims,
    PLFunction,
};
pub use mv::{
    mv_degree_shift, mv_dim_at, mv_direct_sum, mv_interleaving_distance, mv_shift, MVSystem,
};
pub use oracle::{mv_eps_interleaved_oracle, OracleBudget};

/// Extended nonnegative rational: distances may be infinite.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distance {
    Finite(Q),
    Infinite,
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(q) => {
                if num_traits::One::is_one(q.denom()) {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("invalid block: {0}")]
    InvalidBlock(String),
    #[error("empty trace")]
    EmptyTrace,
    #[error("point outside the open half-plane x+y>0: {0}")]
    OutsideDomain(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
