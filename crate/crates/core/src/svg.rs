//! Barcode rendering: one horizontal segment per bar, rows grouped by
//! degree, hollow circles at open endpoints. Plain string assembly, byte
//! deterministic.

use crate::barcode::GradedBarcode;
use crate::extreal::{ExtReal, Q};
use num_traits::ToPrimitive;
use std::fmt::Write;

const ROW_H: f64 = 22.0;
const MARGIN: f64 = 40.0;
const WIDTH: f64 = 640.0;
const R: f64 = 4.0;

fn approx(q: &Q) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

/// Render the barcode as a standalone SVG document.
pub fn plot_barcode(barcode: &GradedBarcode) -> String {
    // finite coordinate range, padded; infinite ends run to the frame
    let mut finite: Vec<f64> = Vec::new();
    for b in barcode.bars() {
        for e in [b.interval.lo(), b.interval.hi()] {
            if let ExtReal::Fin(q) = e {
                finite.push(approx(q));
            }
        }
    }
    let (lo, hi) = if finite.is_empty() {
        (-1.0, 1.0)
    } else {
        let lo = finite.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = finite.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if lo == hi {
            (lo - 1.0, hi + 1.0)
        } else {
            let pad = (hi - lo) * 0.1;
            (lo - pad, hi + pad)
        }
    };
    let scale = (WIDTH - 2.0 * MARGIN) / (hi - lo);
    let xcoord = |e: &ExtReal| -> f64 {
        match e {
            ExtReal::NegInf => MARGIN * 0.25,
            ExtReal::PosInf => WIDTH - MARGIN * 0.25,
            ExtReal::Fin(q) => MARGIN + (approx(q) - lo) * scale,
        }
    };

    // rows grouped by degree, degrees ascending, bars in canonical order
    let mut degrees: Vec<i64> = barcode.bars().iter().map(|b| b.degree).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let height = MARGIN
        + barcode.bars().len() as f64 * ROW_H
        + degrees.len() as f64 * ROW_H
        + MARGIN;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height:.1}" viewBox="0 0 {WIDTH} {height:.1}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let mut y = MARGIN;
    for d in degrees {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="13">degree {}</text>"#,
            MARGIN * 0.25,
            y,
            d
        );
        y += ROW_H * 0.75;
        for b in barcode.bars().iter().filter(|b| b.degree == d) {
            let x1 = xcoord(b.interval.lo());
            let x2 = xcoord(b.interval.hi());
            let _ = writeln!(
                out,
                r#"<line x1="{x1:.2}" y1="{y:.1}" x2="{x2:.2}" y2="{y:.1}" stroke="black" stroke-width="2"/>"#
            );
            if b.interval.lo().is_finite() {
                let fill = if b.interval.lo_open() { "white" } else { "black" };
                let _ = writeln!(
                    out,
                    r#"<circle cx="{x1:.2}" cy="{y:.1}" r="{R}" fill="{fill}" stroke="black"/>"#
                );
            }
            if b.interval.hi().is_finite() {
                let fill = if b.interval.hi_open() { "white" } else { "black" };
                let _ = writeln!(
                    out,
                    r#"<circle cx="{x2:.2}" cy="{y:.1}" r="{R}" fill="{fill}" stroke="black"/>"#
                );
            }
            y += ROW_H;
        }
        y += ROW_H * 0.25;
    }
    out.push_str("</svg>\n");
    out
}
