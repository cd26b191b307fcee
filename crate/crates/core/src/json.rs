//! The four JSON wire formats: bars/barcodes, blocks/systems, meshes, and
//! the helpers shared by the command line. Output is canonical: collections
//! are kept sorted and rationals render as p/q in lowest terms.

use crate::barcode::GradedBarcode;
use crate::block::{Block, BlockKind, GradedBlock};
use crate::extreal::{format_q, parse_q, ExtReal};
use crate::interval::Interval;
use crate::levelset::PLFunction;
use crate::mv::MVSystem;
use crate::simplicial::SimplicialComplex;
use crate::{Bar, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize)]
struct BarDto {
    degree: i64,
    lo: String,
    hi: String,
    lo_open: bool,
    hi_open: bool,
}

#[derive(Serialize, Deserialize)]
struct BarcodeDto {
    bars: Vec<BarDto>,
}

#[derive(Serialize, Deserialize)]
struct IntervalDto {
    lo: String,
    hi: String,
    lo_open: bool,
    hi_open: bool,
}

#[derive(Serialize, Deserialize)]
struct BlockDto {
    kind: String,
    trace: IntervalDto,
    degree: i64,
}

#[derive(Serialize, Deserialize)]
struct SystemDto {
    blocks: Vec<BlockDto>,
}

#[derive(Serialize, Deserialize)]
struct MeshDto {
    vertices: Vec<u32>,
    simplices: Vec<Vec<u32>>,
    values: BTreeMap<String, String>,
}

fn ext(s: &str) -> Result<ExtReal> {
    ExtReal::parse(s).map_err(Error::Malformed)
}

pub fn barcode_to_json(barcode: &GradedBarcode) -> String {
    let dto = BarcodeDto {
        bars: barcode
            .bars()
            .iter()
            .map(|b| BarDto {
                degree: b.degree,
                lo: b.interval.lo().to_string(),
                hi: b.interval.hi().to_string(),
                lo_open: b.interval.lo_open(),
                hi_open: b.interval.hi_open(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&dto).expect("barcode serialization") + "\n"
}

pub fn barcode_from_json(s: &str) -> Result<GradedBarcode> {
    let dto: BarcodeDto =
        serde_json::from_str(s).map_err(|e| Error::Malformed(format!("barcode JSON: {e}")))?;
    let mut bars = Vec::new();
    for b in dto.bars {
        let iv = Interval::new(ext(&b.lo)?, ext(&b.hi)?, b.lo_open, b.hi_open)?;
        bars.push(Bar::new(iv, b.degree));
    }
    Ok(GradedBarcode::new(bars))
}

pub fn system_to_json(system: &MVSystem) -> String {
    let dto = SystemDto {
        blocks: system
            .blocks()
            .iter()
            .map(|gb| {
                let (lo, hi, lo_open, hi_open) = gb.block.trace_endpoints();
                BlockDto {
                    kind: gb.block.kind().as_str().to_string(),
                    trace: IntervalDto {
                        lo: lo.to_string(),
                        hi: hi.to_string(),
                        lo_open,
                        hi_open,
                    },
                    degree: gb.degree,
                }
            })
            .collect(),
    };
    serde_json::to_string_pretty(&dto).expect("system serialization") + "\n"
}

pub fn system_from_json(s: &str) -> Result<MVSystem> {
    let dto: SystemDto =
        serde_json::from_str(s).map_err(|e| Error::Malformed(format!("system JSON: {e}")))?;
    let mut blocks = Vec::new();
    for b in dto.blocks {
        let kind = BlockKind::parse(&b.kind)?;
        let block = Block::from_trace_endpoints(
            kind,
            ext(&b.trace.lo)?,
            ext(&b.trace.hi)?,
            b.trace.lo_open,
            b.trace.hi_open,
        )?;
        blocks.push(GradedBlock::new(block, b.degree));
    }
    MVSystem::new(blocks)
}

pub fn mesh_to_json(f: &PLFunction) -> String {
    let complex = f.complex();
    let mut simplices: Vec<Vec<u32>> = Vec::new();
    for d in (1..3).rev() {
        simplices.extend(complex.simplices(d).iter().cloned());
    }
    let dto = MeshDto {
        vertices: complex.vertex_ids(),
        simplices,
        values: f
            .values()
            .iter()
            .map(|(v, q)| (v.to_string(), format_q(q)))
            .collect(),
    };
    serde_json::to_string_pretty(&dto).expect("mesh serialization") + "\n"
}

pub fn mesh_from_json(s: &str) -> Result<PLFunction> {
    let dto: MeshDto =
        serde_json::from_str(s).map_err(|e| Error::Malformed(format!("mesh JSON: {e}")))?;
    let mut simplices: Vec<Vec<u32>> = dto.vertices.iter().map(|&v| vec![v]).collect();
    simplices.extend(dto.simplices);
    let complex = SimplicialComplex::new(simplices)?;
    let mut values = BTreeMap::new();
    for (k, v) in dto.values {
        let id: u32 = k
            .parse()
            .map_err(|_| Error::Malformed(format!("vertex id {k:?} is not a u32")))?;
        let q = parse_q(&v).map_err(Error::Malformed)?;
        values.insert(id, q);
    }
    PLFunction::new(complex, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::{q_int, Q};
    use crate::functors::psi_barcode;

    fn q(n: i64) -> Q {
        q_int(n)
    }

    #[test]
    fn barcode_round_trip() {
        let barcode = GradedBarcode::new(vec![
            Bar::new(Interval::closed(q(-1), q(1)).unwrap(), 0),
            Bar::new(Interval::open(q(-1), q(1)).unwrap(), 0),
            Bar::new(Interval::full_line(), 2),
            Bar::new(
                Interval::new(ExtReal::Fin(q(3)), ExtReal::PosInf, false, true).unwrap(),
                -1,
            ),
        ]);
        let s = barcode_to_json(&barcode);
        assert_eq!(barcode_from_json(&s).unwrap(), barcode);
        assert_eq!(barcode_to_json(&barcode_from_json(&s).unwrap()), s);
    }

    #[test]
    fn system_round_trip_including_degenerate_trace() {
        let barcode = GradedBarcode::new(vec![
            Bar::new(Interval::point(q(0)), 0),
            Bar::new(Interval::point(q(0)), 1),
            Bar::new(Interval::open(q(-1), q(1)).unwrap(), 0),
            Bar::new(Interval::left_open(q(2), q(5)).unwrap(), 1),
        ]);
        let system = psi_barcode(&barcode);
        let s = system_to_json(&system);
        assert_eq!(system_from_json(&s).unwrap(), system);
    }

    #[test]
    fn mesh_round_trip() {
        let f = crate::levelset::circle_projection();
        let s = mesh_to_json(&f);
        let f2 = mesh_from_json(&s).unwrap();
        assert_eq!(f, f2);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(barcode_from_json("{").is_err());
        assert!(barcode_from_json(r#"{"bars": [{"degree": 0, "lo": "2", "hi": "1", "lo_open": false, "hi_open": false}]}"#).is_err());
        assert!(system_from_json(r#"{"blocks": [{"kind": "zz", "trace": {"lo": "0", "hi": "1", "lo_open": false, "hi_open": false}, "degree": 0}]}"#).is_err());
        assert!(mesh_from_json(r#"{"vertices": [0], "simplices": [], "values": {}}"#).is_err());
    }
}
