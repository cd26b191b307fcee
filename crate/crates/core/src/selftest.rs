//! Seeded randomized invariant suites, shared by `cargo test`, the
//! acceptance harness and the `selftest` CLI subcommand.

use crate::bar::{bar_dies, bars_eps_interleaved, convolve_bar, Bar};
use crate::barcode::{
    barcode_convolve, bottleneck_distance, candidate_epsilons, clr_split, eps_matching_exists,
    GradedBarcode,
};
use crate::block::{Block, BlockKind, GradedBlock};
use crate::extreal::{q_int, q_ratio, ExtReal, Q};
use crate::functors::{psi_bar, psi_barcode, xi_system};
use crate::gf2::BitMat;
use crate::interval::Interval;
use crate::levelset::{pushforward_barcode, PLFunction};
use crate::mv::{mv_interleaving_distance, mv_shift, MVSystem};
use crate::oracle::{mv_eps_interleaved_oracle, summands_of, OracleBudget, Role};
use crate::simplicial::SimplicialComplex;
use crate::zigzag::{zigzag_decompose, zigzag_iso_oracle, ArrowDir, ZigzagModule};
use crate::Distance;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e3779b97f4a7c15))
}

// ---------------------------------------------------------------------------
// generators

pub fn rand_q(rng: &mut ChaCha8Rng, lo: i64, hi: i64, halves: bool) -> Q {
    let n = rng.gen_range(lo..=hi);
    if halves && rng.gen_bool(0.3) {
        q_ratio(2 * n + 1, 2)
    } else {
        q_int(n)
    }
}

pub fn rand_interval(rng: &mut ChaCha8Rng, lo: i64, hi: i64, allow_inf: bool) -> Interval {
    loop {
        let shape = rng.gen_range(0..if allow_inf { 10 } else { 6 });
        let a = rand_q(rng, lo, hi, true);
        let b = rand_q(rng, lo, hi, true);
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let made = match shape {
            0 => Interval::closed(a, b),
            1 => Interval::open(a, b),
            2 => Interval::left_open(a, b),
            3 => Interval::right_open(a, b),
            4 | 5 => Ok(Interval::point(a)),
            6 => Interval::new(ExtReal::Fin(a), ExtReal::PosInf, rng.gen(), true),
            7 => Interval::new(ExtReal::NegInf, ExtReal::Fin(b), true, rng.gen()),
            _ => Ok(Interval::full_line()),
        };
        if let Ok(iv) = made {
            return iv;
        }
    }
}

pub fn rand_bar(rng: &mut ChaCha8Rng, lo: i64, hi: i64, allow_inf: bool) -> Bar {
    Bar::new(rand_interval(rng, lo, hi, allow_inf), rng.gen_range(-1..=2))
}

pub fn rand_barcode(rng: &mut ChaCha8Rng, max_bars: usize, lo: i64, hi: i64) -> GradedBarcode {
    let n = rng.gen_range(0..=max_bars);
    GradedBarcode::new((0..n).map(|_| rand_bar(rng, lo, hi, true)).collect())
}

/// Random canonical block. With `normalized` the boundary flags are the ones
/// the section functor produces (death quadrants closed, birth quadrants
/// open, bands half-open); otherwise flags are arbitrary. Interleaving at a
/// tight radius is attained exactly for normalized representatives, so the
/// oracle-versus-matching comparison uses those.
pub fn rand_canonical_block(
    rng: &mut ChaCha8Rng,
    lo: i64,
    hi: i64,
    normalized: bool,
) -> Block {
    loop {
        let made = match rng.gen_range(0..4) {
            0 => {
                // negative birth quadrant, corner at or below the diagonal
                let u = rand_q(rng, lo, hi, false);
                let v_max = -u.clone();
                let mut v = rand_q(rng, lo, hi, false);
                if v > v_max {
                    v = v_max;
                }
                let (fx, fy) = if normalized { (false, false) } else { (rng.gen(), rng.gen()) };
                Ok(Block::birth(ExtReal::Fin(u), ExtReal::Fin(v), fx, fy))
            }
            1 => {
                // positive death quadrant
                let u = rand_q(rng, lo, hi, false);
                let mut v = rand_q(rng, lo, hi, false);
                if &u + &v <= Q::zero() {
                    v = -u.clone() + q_int(rng.gen_range(1..=3));
                }
                let (fx, fy) = if normalized { (true, true) } else { (rng.gen(), rng.gen()) };
                Ok(Block::Death { x: u, y: v, x_line: fx, y_line: fy })
            }
            k => {
                let a = rand_q(rng, lo, hi, false);
                let b = &a + &q_int(rng.gen_range(1..=4));
                let kind = if k == 2 { BlockKind::Hb } else { BlockKind::Vb };
                let (lo_open, hi_open) = if normalized {
                    // hb traces are ]a,b], vb traces [a,b[
                    match kind {
                        BlockKind::Hb => (true, false),
                        _ => (false, true),
                    }
                } else {
                    (rng.gen(), rng.gen())
                };
                Block::from_trace_endpoints(
                    kind,
                    ExtReal::Fin(a),
                    ExtReal::Fin(b),
                    lo_open,
                    hi_open,
                )
            }
        };
        if let Ok(b) = made {
            debug_assert!(b.is_canonical());
            return b;
        }
    }
}

pub fn rand_system(rng: &mut ChaCha8Rng, max_blocks: usize, lo: i64, hi: i64) -> MVSystem {
    let n = rng.gen_range(0..=max_blocks);
    MVSystem::new(
        (0..n)
            .map(|_| {
                GradedBlock::new(rand_canonical_block(rng, lo, hi, false), rng.gen_range(0..=1))
            })
            .collect(),
    )
    .expect("generator emits canonical blocks")
}

/// Random system with section-normalized boundary flags.
pub fn rand_normalized_system(
    rng: &mut ChaCha8Rng,
    max_blocks: usize,
    lo: i64,
    hi: i64,
) -> MVSystem {
    let n = rng.gen_range(0..=max_blocks);
    MVSystem::new(
        (0..n)
            .map(|_| {
                GradedBlock::new(rand_canonical_block(rng, lo, hi, true), rng.gen_range(0..=1))
            })
            .collect(),
    )
    .expect("generator emits canonical blocks")
}

fn small_epsilons() -> Vec<Q> {
    vec![q_int(0), q_ratio(1, 2), q_int(1), q_ratio(3, 2), q_int(2)]
}

// ---------------------------------------------------------------------------
// suites

pub fn suite_convolution_semigroup(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 1);
    let mut failures = Vec::new();
    for i in 0..cases {
        let bar = rand_bar(&mut rng, -8, 8, true);
        let e1 = rand_q(&mut rng, 0, 3, true).abs();
        let e2 = rand_q(&mut rng, 0, 3, true).abs();
        let two_step = convolve_bar(&convolve_bar(&bar, &e1), &e2);
        let one_step = convolve_bar(&bar, &(&e1 + &e2));
        if two_step != one_step {
            failures.push(format!("case {i}: {bar} * {e1} * {e2}: {two_step} vs {one_step}"));
        }
        if convolve_bar(&bar, &Q::zero()) != bar {
            failures.push(format!("case {i}: {bar} * 0 is not the identity"));
        }
    }
    SuiteResult { name: "convolution-semigroup", cases, failures }
}

pub fn suite_interleaving_symmetry_monotone(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 2);
    let mut failures = Vec::new();
    let eps_list = small_epsilons();
    for i in 0..cases {
        let a = rand_bar(&mut rng, -8, 8, true);
        let b = rand_bar(&mut rng, -8, 8, true);
        let mut prev = false;
        for eps in &eps_list {
            let ab = bars_eps_interleaved(&a, &b, eps);
            let ba = bars_eps_interleaved(&b, &a, eps);
            if ab != ba {
                failures.push(format!("case {i}: asymmetric at eps {eps} for {a} vs {b}"));
            }
            if prev && !ab {
                failures.push(format!("case {i}: non-monotone at eps {eps} for {a} vs {b}"));
            }
            prev = ab;
            if bar_dies(&a, eps) && bar_dies(&b, eps) && !ab {
                failures.push(format!("case {i}: two dead bars not interleaved at {eps}"));
            }
        }
        if !bars_eps_interleaved(&a, &a, &Q::zero()) {
            failures.push(format!("case {i}: {a} not 0-interleaved with itself"));
        }
    }
    SuiteResult { name: "interleaving-symmetry-monotonicity", cases, failures }
}

/// Bit-for-bit agreement of the closed-form bar predicate with the module
/// oracle applied to the section images.
pub fn suite_bar_oracle_agreement(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 3);
    let mut failures = Vec::new();
    let eps_list = small_epsilons();
    let budget = OracleBudget::default();
    for i in 0..cases {
        let a = rand_bar(&mut rng, -8, 8, true);
        let b = rand_bar(&mut rng, -8, 8, true);
        let (ma, mb) = (psi_bar(&a), psi_bar(&b));
        for eps in &eps_list {
            let table = bars_eps_interleaved(&a, &b, eps);
            match mv_eps_interleaved_oracle(&ma, &mb, eps, &budget) {
                Ok(oracle) => {
                    if oracle != table {
                        failures.push(format!(
                            "case {i}: {a} vs {b} at eps {eps}: table {table}, oracle {oracle}"
                        ));
                    }
                }
                Err(e) => failures.push(format!("case {i}: oracle error {e}")),
            }
        }
    }
    SuiteResult { name: "bar-oracle-agreement", cases, failures }
}

pub fn suite_block_round_trips(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 4);
    let mut failures = Vec::new();
    for i in 0..cases {
        let block = rand_canonical_block(&mut rng, -6, 6, false);
        // trace round trip on proper traces
        if let Some(trace) = block.trace() {
            match crate::block::block_from_trace(block.kind(), &trace) {
                Ok(b2) => {
                    if b2 != block {
                        failures.push(format!("case {i}: trace round trip {block} -> {b2}"));
                    }
                }
                Err(e) => failures.push(format!("case {i}: {block}: {e}")),
            }
        }
        // shift additivity
        let s1 = (rand_q(&mut rng, 0, 2, true).abs(), rand_q(&mut rng, 0, 2, true).abs());
        let s2 = (rand_q(&mut rng, 0, 2, true).abs(), rand_q(&mut rng, 0, 2, true).abs());
        let a = block.shift(&s1.0, &s1.1).unwrap().shift(&s2.0, &s2.1).unwrap();
        let b = block.shift(&(&s1.0 + &s2.0), &(&s1.1 + &s2.1)).unwrap();
        if a != b {
            failures.push(format!("case {i}: shift additivity fails for {block}"));
        }
        // dual involution on quadrants
        if matches!(block.kind(), BlockKind::Bb | BlockKind::Db) {
            if let Ok(d) = block.dual() {
                if d.dual().unwrap() != block {
                    failures.push(format!("case {i}: dual not involutive on {block}"));
                }
            }
        }
        // pointwise shift equivariance: B(p + s) == (B - s)(p)
        for _ in 0..4 {
            let px = rand_q(&mut rng, -6, 6, true);
            let py = rand_q(&mut rng, -6, 6, true);
            if &px + &py <= Q::zero() {
                continue;
            }
            let s = (rand_q(&mut rng, 0, 2, false).abs(), rand_q(&mut rng, 0, 2, false).abs());
            let lhs = block.dim_at(&(&px + &s.0), &(&py + &s.1)).unwrap();
            let rhs = block.shift(&s.0, &s.1).unwrap().dim_at(&px, &py).unwrap();
            if lhs != rhs {
                failures.push(format!("case {i}: shift equivariance fails for {block}"));
            }
        }
    }
    SuiteResult { name: "block-round-trips", cases, failures }
}

/// Exactness of the five-term sequences at sampled points, for random
/// canonical systems (single blocks included).
pub fn suite_five_term_exactness(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 5);
    let mut failures = Vec::new();
    for i in 0..cases {
        let system = rand_system(&mut rng, 3, -4, 4);
        for _ in 0..6 {
            let px = rand_q(&mut rng, -5, 5, true);
            let py = rand_q(&mut rng, -5, 5, true);
            if &px + &py <= Q::zero() {
                continue;
            }
            let s = (
                &rand_q(&mut rng, 0, 2, true).abs() + &q_ratio(1, 2),
                &rand_q(&mut rng, 0, 2, true).abs() + &q_ratio(1, 2),
            );
            if let Some(msg) = exactness_violation(&system, (&px, &py), (&s.0, &s.1)) {
                failures.push(format!("case {i}: {msg}"));
            }
        }
    }
    SuiteResult { name: "five-term-exactness", cases, failures }
}

/// Check exactness of S_{i+1}[s] -> S_i -> S_i[s_x] (+) S_i[s_y] -> S_i[s]
/// -> S_{i-1} at the three middle spots, at one point.
fn exactness_violation(system: &MVSystem, p: (&Q, &Q), s: (&Q, &Q)) -> Option<String> {
    let summands = summands_of(system);
    let alive = |i: i64, x: &Q, y: &Q| -> Vec<usize> {
        summands
            .iter()
            .enumerate()
            .filter(|(_, sm)| {
                sm.degree == i && sm.region.contains(&ExtReal::Fin(x.clone()), &ExtReal::Fin(y.clone()))
            })
            .map(|(k, _)| k)
            .collect()
    };
    let tau = |from: &[usize], to: &[usize]| -> BitMat {
        let mut m = BitMat::zeros(to.len(), from.len());
        for (c, fi) in from.iter().enumerate() {
            if let Some(r) = to.iter().position(|ti| ti == fi) {
                m.set(r, c, true);
            }
        }
        m
    };
    // delta from degree i at translate s evaluated at point x: pairs dual->base
    let delta = |from: &[usize], to: &[usize]| -> BitMat {
        let mut m = BitMat::zeros(to.len(), from.len());
        for (c, fi) in from.iter().enumerate() {
            if let Role::Dual(base) = summands[*fi].role {
                if let Some(r) = to.iter().position(|ti| *ti == base) {
                    m.set(r, c, true);
                }
            }
        }
        m
    };
    let (px, py) = (p.0.clone(), p.1.clone());
    let (sx, sy) = (s.0.clone(), s.1.clone());
    let degrees: Vec<i64> = {
        let mut d: Vec<i64> = summands.iter().map(|s| s.degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    };
    for &i in &degrees {
        let at_p = alive(i, &px, &py);
        let at_x = alive(i, &(&px + &sx), &py);
        let at_y = alive(i, &px, &(&py + &sy));
        let at_s = alive(i, &(&px + &sx), &(&py + &sy));
        let up = alive(i + 1, &(&px + &sx), &(&py + &sy));
        let down = alive(i - 1, &px, &py);

        let d_in = delta(&up, &at_p);
        let first = {
            // stacked pair of translations into the two partial shifts
            let a = tau(&at_p, &at_x);
            let b = tau(&at_p, &at_y);
            let mut m = BitMat::zeros(at_x.len() + at_y.len(), at_p.len());
            for r in 0..a.rows {
                for c in 0..a.cols {
                    if a.get(r, c) {
                        m.set(r, c, true);
                    }
                }
            }
            for r in 0..b.rows {
                for c in 0..b.cols {
                    if b.get(r, c) {
                        m.set(a.rows + r, c, true);
                    }
                }
            }
            m
        };
        let second = {
            let a = tau(&at_x, &at_s);
            let b = tau(&at_y, &at_s);
            a.hcat(&b)
        };
        let d_out = delta(&at_s, &down);

        let spots = [
            ("first", &d_in, &first),
            ("middle", &first, &second),
            ("last", &second, &d_out),
        ];
        for (label, incoming, outgoing) in spots {
            let dim = incoming.cols.max(outgoing.cols);
            // shapes: outgoing.cols == incoming.rows is the shared space
            debug_assert_eq!(outgoing.cols, incoming.rows);
            let _ = dim;
            let composite = outgoing.mul(incoming);
            if (0..composite.rows).any(|r| (0..composite.cols).any(|c| composite.get(r, c))) {
                return Some(format!("degree {i}: {label} composite nonzero"));
            }
            let ker = outgoing.cols - outgoing.rank();
            if incoming.rank() != ker {
                return Some(format!(
                    "degree {i}: {label} spot: image rank {} vs kernel dim {}",
                    incoming.rank(),
                    ker
                ));
            }
        }
    }
    None
}

pub fn suite_shift_semigroup_systems(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 6);
    let mut failures = Vec::new();
    for i in 0..cases {
        let m = rand_system(&mut rng, 4, -4, 4);
        let e1 = rand_q(&mut rng, 0, 2, true).abs();
        let e2 = rand_q(&mut rng, 0, 2, true).abs();
        let two = mv_shift(&mv_shift(&m, &e1).unwrap(), &e2).unwrap();
        let one = mv_shift(&m, &(&e1 + &e2)).unwrap();
        if two != one {
            failures.push(format!("case {i}: shifting by {e1} then {e2} differs from the sum"));
        }
    }
    SuiteResult { name: "system-shift-semigroup", cases, failures }
}

/// The executable form of the isometry: the module oracle against matching
/// feasibility of the sheaf images, at every candidate radius.
pub fn suite_oracle_production_agreement(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 7);
    let mut failures = Vec::new();
    let budget = OracleBudget::default();
    for i in 0..cases {
        let a = rand_normalized_system(&mut rng, 4, -4, 4);
        let b = rand_normalized_system(&mut rng, 4, -4, 4);
        let (xa, xb) = (xi_system(&a), xi_system(&b));
        for eps in candidate_epsilons(&xa, &xb) {
            let matching = eps_matching_exists(&xa, &xb, &eps);
            match mv_eps_interleaved_oracle(&a, &b, &eps, &budget) {
                Ok(oracle) => {
                    if oracle != matching {
                        failures.push(format!(
                            "case {i}: eps {eps}: oracle {oracle} vs matching {matching}"
                        ));
                    }
                }
                Err(e) => failures.push(format!("case {i}: oracle error {e}")),
            }
        }
        let d = mv_interleaving_distance(&a, &b);
        let d_b = bottleneck_distance(&xa, &xb);
        if d != d_b {
            failures.push(format!("case {i}: production distance disagrees with bottleneck"));
        }
    }
    SuiteResult { name: "oracle-production-agreement", cases, failures }
}

pub fn suite_metric_axioms(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 8);
    let mut failures = Vec::new();
    for i in 0..cases {
        let a = rand_barcode(&mut rng, 6, -8, 8);
        let b = rand_barcode(&mut rng, 6, -8, 8);
        let c = rand_barcode(&mut rng, 6, -8, 8);
        if bottleneck_distance(&a, &a) != Distance::Finite(Q::zero()) {
            failures.push(format!("case {i}: d(a,a) != 0"));
        }
        let dab = bottleneck_distance(&a, &b);
        if dab != bottleneck_distance(&b, &a) {
            failures.push(format!("case {i}: asymmetric distance"));
        }
        let dbc = bottleneck_distance(&b, &c);
        let dac = bottleneck_distance(&a, &c);
        if let (Distance::Finite(x), Distance::Finite(y)) = (&dab, &dbc) {
            match &dac {
                Distance::Finite(z) => {
                    if z > &(x + y) {
                        failures.push(format!("case {i}: triangle inequality fails"));
                    }
                }
                Distance::Infinite => {
                    failures.push(format!("case {i}: finite legs but infinite hypotenuse"));
                }
            }
        }
        // the same axioms for the interleaving distance of random systems
        let (sa, sb, sc) = (
            rand_system(&mut rng, 4, -4, 4),
            rand_system(&mut rng, 4, -4, 4),
            rand_system(&mut rng, 4, -4, 4),
        );
        if mv_interleaving_distance(&sa, &sa) != Distance::Finite(Q::zero()) {
            failures.push(format!("case {i}: system self-distance nonzero"));
        }
        let dab = mv_interleaving_distance(&sa, &sb);
        if dab != mv_interleaving_distance(&sb, &sa) {
            failures.push(format!("case {i}: system distance asymmetric"));
        }
        if let (Distance::Finite(x), Distance::Finite(y)) =
            (&dab, &mv_interleaving_distance(&sb, &sc))
        {
            if let Distance::Finite(z) = mv_interleaving_distance(&sa, &sc) {
                if &z > &(x + y) {
                    failures.push(format!("case {i}: system triangle inequality fails"));
                }
            } else {
                failures.push(format!("case {i}: system finite legs, infinite hypotenuse"));
            }
        }
    }
    SuiteResult { name: "bottleneck-metric-axioms", cases, failures }
}

pub fn suite_type_segregation(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 9);
    let mut failures = Vec::new();
    for i in 0..cases {
        let a = rand_barcode(&mut rng, 5, -6, 6);
        let b = rand_barcode(&mut rng, 5, -6, 6);
        let eps = rand_q(&mut rng, 0, 2, true).abs();
        let (ac, al, ar, af) = clr_split(&a);
        let (bc, bl, br, bf) = clr_split(&b);
        let whole = eps_matching_exists(&a, &b, &eps);
        let parts = eps_matching_exists(&al, &bl, &eps)
            && eps_matching_exists(&ar, &br, &eps)
            && eps_matching_exists(&ac.merge(&af), &bc.merge(&bf), &eps);
        if whole != parts {
            failures.push(format!("case {i}: feasibility not separable at eps {eps}"));
        }
    }
    SuiteResult { name: "clr-type-segregation", cases, failures }
}

pub fn suite_convolution_contracts(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 10);
    let mut failures = Vec::new();
    for i in 0..cases {
        let a = rand_barcode(&mut rng, 5, -6, 6);
        let b = rand_barcode(&mut rng, 5, -6, 6);
        let eps = rand_q(&mut rng, 0, 2, true).abs();
        let ca = barcode_convolve(&a, &eps);
        match bottleneck_distance(&ca, &a) {
            Distance::Finite(d) => {
                if d > eps {
                    failures.push(format!("case {i}: d(a*K, a) = {d} > {eps}"));
                }
            }
            Distance::Infinite => failures.push(format!("case {i}: d(a*K, a) infinite")),
        }
        let cb = barcode_convolve(&b, &eps);
        let d0 = bottleneck_distance(&a, &b);
        let d1 = bottleneck_distance(&ca, &cb);
        if let (Distance::Finite(x), Distance::Finite(y)) = (&d1, &d0) {
            if x > y {
                failures.push(format!("case {i}: convolution expanded distance {y} -> {x}"));
            }
        }
        if matches!((&d1, &d0), (Distance::Infinite, Distance::Finite(_))) {
            failures.push(format!("case {i}: convolution made a finite distance infinite"));
        }
    }
    SuiteResult { name: "convolution-contracts-distance", cases, failures }
}

/// Exhaustive minimization over all matchings, for small barcodes.
pub fn brute_force_bottleneck(a: &GradedBarcode, b: &GradedBarcode) -> Distance {
    fn partial_ok(xs: &[Bar], ys: &[Bar], eps: &Q) -> bool {
        // try all injective partial matchings from xs into ys
        fn rec(i: usize, used: &mut Vec<bool>, xs: &[Bar], ys: &[Bar], eps: &Q) -> bool {
            if i == xs.len() {
                // leftover ys must die
                return ys
                    .iter()
                    .enumerate()
                    .all(|(j, y)| used[j] || bar_dies(y, eps));
            }
            // leave xs[i] unmatched
            if bar_dies(&xs[i], eps) && rec(i + 1, used, xs, ys, eps) {
                return true;
            }
            for j in 0..ys.len() {
                if !used[j] && bars_eps_interleaved(&xs[i], &ys[j], eps) {
                    used[j] = true;
                    if rec(i + 1, used, xs, ys, eps) {
                        return true;
                    }
                    used[j] = false;
                }
            }
            false
        }
        rec(0, &mut vec![false; ys.len()], xs, ys, eps)
    }
    fn perfect_ok(xs: &[Bar], ys: &[Bar], eps: &Q) -> bool {
        if xs.len() != ys.len() {
            return false;
        }
        fn rec(i: usize, used: &mut Vec<bool>, xs: &[Bar], ys: &[Bar], eps: &Q) -> bool {
            if i == xs.len() {
                return true;
            }
            for j in 0..ys.len() {
                if !used[j] && bars_eps_interleaved(&xs[i], &ys[j], eps) {
                    used[j] = true;
                    if rec(i + 1, used, xs, ys, eps) {
                        return true;
                    }
                    used[j] = false;
                }
            }
            false
        }
        rec(0, &mut vec![false; ys.len()], xs, ys, eps)
    }
    let (ac, al, ar, af) = clr_split(a);
    let (bc, bl, br, bf) = clr_split(b);
    for eps in candidate_epsilons(a, b) {
        if partial_ok(al.bars(), bl.bars(), &eps)
            && partial_ok(ar.bars(), br.bars(), &eps)
            && perfect_ok(ac.bars(), bc.bars(), &eps)
            && perfect_ok(af.bars(), bf.bars(), &eps)
        {
            return Distance::Finite(eps);
        }
    }
    Distance::Infinite
}

pub fn suite_bottleneck_brute_force(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 11);
    let mut failures = Vec::new();
    for i in 0..cases {
        let a = rand_barcode(&mut rng, 4, -6, 6);
        let b = rand_barcode(&mut rng, 4, -6, 6);
        let fast = bottleneck_distance(&a, &b);
        let brute = brute_force_bottleneck(&a, &b);
        if fast != brute {
            failures.push(format!("case {i}: matching distance {fast} vs brute force {brute}"));
        }
    }
    SuiteResult { name: "bottleneck-brute-force", cases, failures }
}

pub fn suite_section_law(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 12);
    let mut failures = Vec::new();
    for i in 0..cases {
        let b = rand_barcode(&mut rng, 8, -8, 8);
        let back = xi_system(&psi_barcode(&b));
        if back != b {
            failures.push(format!("case {i}: section law fails"));
        }
    }
    SuiteResult { name: "section-law", cases, failures }
}

pub fn suite_round_trip_boundary_flags(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 13);
    let mut failures = Vec::new();
    for i in 0..cases {
        let m = rand_system(&mut rng, 4, -4, 4);
        let rt = psi_barcode(&xi_system(&m));
        if !m.eq_up_to_boundary(&rt) {
            failures.push(format!("case {i}: round trip changed more than boundary flags"));
            continue;
        }
        if mv_interleaving_distance(&m, &rt) != Distance::Finite(Q::zero()) {
            failures.push(format!("case {i}: round trip at positive distance"));
        }
    }
    SuiteResult { name: "round-trip-boundary-flags", cases, failures }
}

pub fn suite_shift_intertwining(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 14);
    let mut failures = Vec::new();
    for i in 0..cases {
        let m = rand_system(&mut rng, 4, -4, 4);
        let eps = rand_q(&mut rng, 0, 3, true).abs();
        let lhs = xi_system(&mv_shift(&m, &eps).unwrap());
        let rhs = barcode_convolve(&xi_system(&m), &eps);
        if lhs != rhs {
            failures.push(format!("case {i}: shift and convolution disagree at eps {eps}"));
        }
        // section side: psi of the convolved barcode equals the shifted
        // section image up to boundary flags
        let b = rand_barcode(&mut rng, 4, -4, 4);
        let left = psi_barcode(&barcode_convolve(&b, &eps));
        let right = mv_shift(&psi_barcode(&b), &eps).unwrap();
        if !left.eq_up_to_boundary(&right) {
            failures.push(format!("case {i}: section-side intertwining fails at eps {eps}"));
        }
    }
    SuiteResult { name: "shift-intertwining", cases, failures }
}

fn rand_zigzag(rng: &mut ChaCha8Rng) -> ZigzagModule {
    let n = rng.gen_range(1..=6);
    let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
    let arrows = (0..n - 1)
        .map(|t| {
            let dir = if t % 2 == 0 { ArrowDir::Backward } else { ArrowDir::Forward };
            let (rows, cols) = match dir {
                ArrowDir::Forward => (dims[t + 1], dims[t]),
                ArrowDir::Backward => (dims[t], dims[t + 1]),
            };
            let mut m = BitMat::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    if rng.gen_bool(0.5) {
                        m.set(r, c, true);
                    }
                }
            }
            (dir, m)
        })
        .collect();
    ZigzagModule::new(dims, arrows).expect("generator shapes are consistent")
}

pub fn suite_zigzag_oracle(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 15);
    let mut failures = Vec::new();
    for i in 0..cases {
        let z = rand_zigzag(&mut rng);
        let d = zigzag_decompose(&z);
        for t in 0..z.nodes() {
            let count = d.iter().filter(|(p, q)| *p <= t && t <= *q).count();
            if count != z.dims[t] {
                failures.push(format!("case {i}: dimension mismatch at node {t}"));
            }
        }
        match zigzag_iso_oracle(&z, &d) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("case {i}: decomposition rejected by oracle")),
            Err(e) => failures.push(format!("case {i}: oracle error {e}")),
        }
    }
    SuiteResult { name: "zigzag-decomposition-oracle", cases, failures }
}

/// A fixed two-dimensional test mesh: a disc fan around vertex 0 with a free
/// edge and an isolated vertex.
pub fn stability_mesh() -> SimplicialComplex {
    SimplicialComplex::new(vec![
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![1, 4],
        vec![5],
    ])
    .unwrap()
}

pub fn rand_pl_function(rng: &mut ChaCha8Rng, mesh: &SimplicialComplex) -> PLFunction {
    let values: BTreeMap<u32, Q> = mesh
        .vertex_ids()
        .iter()
        .map(|&v| (v, rand_q(rng, -4, 4, true)))
        .collect();
    PLFunction::new(mesh.clone(), values).unwrap()
}

pub fn suite_stability(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 16);
    let mut failures = Vec::new();
    let mesh = stability_mesh();
    for i in 0..cases {
        let f = rand_pl_function(&mut rng, &mesh);
        let g = rand_pl_function(&mut rng, &mesh);
        let sup: Q = mesh
            .vertex_ids()
            .iter()
            .map(|v| (f.value(*v) - g.value(*v)).abs())
            .max()
            .unwrap();
        let bf = pushforward_barcode(&f).unwrap();
        let bg = pushforward_barcode(&g).unwrap();
        match bottleneck_distance(&bf, &bg) {
            Distance::Finite(d) => {
                if d > sup {
                    failures.push(format!("case {i}: sheaf distance {d} above bound {sup}"));
                }
            }
            Distance::Infinite => failures.push(format!("case {i}: infinite sheaf distance")),
        }
        match mv_interleaving_distance(&psi_barcode(&bf), &psi_barcode(&bg)) {
            Distance::Finite(d) => {
                if d > sup {
                    failures.push(format!("case {i}: system distance {d} above bound {sup}"));
                }
            }
            Distance::Infinite => failures.push(format!("case {i}: infinite system distance")),
        }
    }
    SuiteResult { name: "pushforward-stability", cases, failures }
}

pub fn suite_pipeline_commutes(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 17);
    let mut failures = Vec::new();
    let mesh = stability_mesh();
    for i in 0..cases {
        let f = rand_pl_function(&mut rng, &mesh);
        let barcode = match pushforward_barcode(&f) {
            Ok(b) => b,
            Err(e) => {
                failures.push(format!("case {i}: pipeline error {e}"));
                continue;
            }
        };
        let system = psi_barcode(&barcode);
        if xi_system(&system) != barcode {
            failures.push(format!("case {i}: sheaf image of the system differs"));
        }
    }
    SuiteResult { name: "pipeline-diagram-commutes", cases, failures }
}

/// Pointwise dimensions of random PL functions against their block systems,
/// on a verification grid: the pipeline versus direct slab homology.
pub fn suite_pointwise_random(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng_for(seed, 18);
    let mesh = stability_mesh();
    let mut failures = Vec::new();
    for i in 0..cases {
        let f = rand_pl_function(&mut rng, &mesh);
        let system = match crate::levelset::levelset_mv(&f) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("case {i}: pipeline error {e}"));
                continue;
            }
        };
        let grid = crate::levelset::verification_grid(&f, &system, 5);
        match crate::levelset::verify_pointwise_dims(&f, &system, &grid) {
            Ok(mismatches) => {
                if !mismatches.is_empty() {
                    failures.push(format!("case {i}: {}", mismatches[0]));
                }
            }
            Err(e) => failures.push(format!("case {i}: grid error {e}")),
        }
    }
    SuiteResult { name: "pointwise-dims-random", cases, failures }
}

/// Run every suite with modest case counts; used by the CLI.
pub fn run_all(seed: u64, cases: usize) -> Vec<SuiteResult> {
    vec![
        suite_convolution_semigroup(seed, cases),
        suite_interleaving_symmetry_monotone(seed, cases),
        suite_bar_oracle_agreement(seed, cases.min(120)),
        suite_block_round_trips(seed, cases),
        suite_five_term_exactness(seed, cases.min(60)),
        suite_shift_semigroup_systems(seed, cases),
        suite_oracle_production_agreement(seed, cases.min(40)),
        suite_metric_axioms(seed, cases.min(80)),
        suite_type_segregation(seed, cases),
        suite_convolution_contracts(seed, cases.min(80)),
        suite_bottleneck_brute_force(seed, cases.min(120)),
        suite_section_law(seed, cases),
        suite_round_trip_boundary_flags(seed, cases),
        suite_shift_intertwining(seed, cases),
        suite_zigzag_oracle(seed, cases.min(120)),
        suite_stability(seed, cases.min(30)),
        suite_pipeline_commutes(seed, cases.min(30)),
        suite_pointwise_random(seed, cases.min(20)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_selftest_run() {
        for r in run_all(7, 12) {
            assert!(
                r.passed(),
                "suite {} failed: {:?}",
                r.name,
                &r.failures[..r.failures.len().min(3)]
            );
        }
    }
}
