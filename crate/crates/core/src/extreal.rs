//! Exact extended-real scalars: arbitrary-precision rationals plus the two
//! infinities, with total order and the partial arithmetic the crate needs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Arbitrary-precision rational scalar used everywhere in the crate.
pub type Q = BigRational;

/// Build a rational from an integer.
pub fn q_int(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Build a rational p/q.
pub fn q_ratio(p: i64, q: i64) -> Q {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical `p/q` rendering, lowest terms, q > 0. Always carries the slash so
/// output stays unambiguous ("3/1", "-5/2", "0/1").
pub fn format_q(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parse `p/q` or a bare integer `p`.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator in rational {s:?}"))?;
    let q: BigInt = q
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator in rational {s:?}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in rational {s:?}"));
    }
    Ok(BigRational::new(p, q))
}

/// A point of the extended real line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtReal {
    NegInf,
    Fin(Q),
    PosInf,
}

impl ExtReal {
    pub fn fin(q: Q) -> Self {
        ExtReal::Fin(q)
    }

    pub fn int(n: i64) -> Self {
        ExtReal::Fin(q_int(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Fin(_))
    }

    pub fn as_finite(&self) -> Option<&Q> {
        match self {
            ExtReal::Fin(q) => Some(q),
            _ => None,
        }
    }

    /// Exact sum with a finite rational; infinities absorb.
    pub fn add_q(&self, d: &Q) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::NegInf,
            ExtReal::PosInf => ExtReal::PosInf,
            ExtReal::Fin(q) => ExtReal::Fin(q + d),
        }
    }

    pub fn sub_q(&self, d: &Q) -> ExtReal {
        self.add_q(&(-d.clone()))
    }

    pub fn neg(&self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::Fin(q) => ExtReal::Fin(-q.clone()),
        }
    }

    /// Sum of two extended reals; `None` for the indeterminate form -inf + inf.
    pub fn add(&self, other: &ExtReal) -> Option<ExtReal> {
        match (self, other) {
            (ExtReal::NegInf, ExtReal::PosInf) | (ExtReal::PosInf, ExtReal::NegInf) => None,
            (ExtReal::NegInf, _) | (_, ExtReal::NegInf) => Some(ExtReal::NegInf),
            (ExtReal::PosInf, _) | (_, ExtReal::PosInf) => Some(ExtReal::PosInf),
            (ExtReal::Fin(a), ExtReal::Fin(b)) => Some(ExtReal::Fin(a + b)),
        }
    }

    /// |a - b| when both are finite.
    pub fn abs_diff(&self, other: &ExtReal) -> Option<Q> {
        match (self, other) {
            (ExtReal::Fin(a), ExtReal::Fin(b)) => Some((a - b).abs()),
            _ => None,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtReal::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) => Ordering::Less,
            (_, NegInf) => Ordering::Greater,
            (PosInf, _) => Ordering::Greater,
            (_, PosInf) => Ordering::Less,
            (Fin(a), Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => write!(f, "-inf"),
            ExtReal::PosInf => write!(f, "inf"),
            ExtReal::Fin(q) => write!(f, "{}", format_q(q)),
        }
    }
}

impl ExtReal {
    /// Parse "inf", "-inf" (ASCII or U+2212 minus) or a rational.
    pub fn parse(s: &str) -> Result<ExtReal, String> {
        let t = s.trim().replace('\u{2212}', "-");
        match t.as_str() {
            "inf" | "+inf" => Ok(ExtReal::PosInf),
            "-inf" => Ok(ExtReal::NegInf),
            other => parse_q(other).map(ExtReal::Fin),
        }
    }
}
