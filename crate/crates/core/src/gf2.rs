//! Dense GF(2) linear algebra on 64-bit packed rows.

/// A dense matrix over GF(2), row-major, bit-packed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMat {
    pub rows: usize,
    pub cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMat {
    pub fn zeros(rows: usize, cols: usize) -> BitMat {
        let words = cols.div_ceil(64).max(1);
        BitMat { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn identity(n: usize) -> BitMat {
        let mut m = BitMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.words + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1u64 << (c % 64);
        } else {
            *w &= !(1u64 << (c % 64));
        }
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.words, src * self.words);
        for k in 0..self.words {
            let v = self.data[s + k];
            self.data[d + k] ^= v;
        }
    }


    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words {
            self.data.swap(a * self.words + k, b * self.words + k);
        }
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMat) -> BitMat {
        assert_eq!(self.cols, other.rows);
        let mut out = BitMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let (d, s) = (i * out.words, k * other.words);
                    for w in 0..out.words {
                        out.data[d + w] ^= other.data[s + w];
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMat {
        let mut out = BitMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &BitMat) -> BitMat {
        assert_eq!(self.rows, other.rows);
        let mut out = BitMat::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(r, c, true);
                }
            }
            for c in 0..other.cols {
                if other.get(r, c) {
                    out.set(r, self.cols + c, true);
                }
            }
        }
        out
    }

    /// Row echelon form in place; returns pivot column indices.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let mut pivot = None;
            for i in r..self.rows {
                if self.get(i, c) {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_rows(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }

    /// Basis of the kernel {x : self * x = 0}, one column vector per row of
    /// the returned matrix.
    pub fn kernel_basis(&self) -> Vec<Vec<bool>> {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![false; self.cols];
            v[free] = true;
            for (row, &pc) in pivots.iter().enumerate() {
                if m.get(row, free) {
                    v[pc] = true;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solve self * x = b; returns one solution if consistent.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = BitMat::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    aug.set(r, c, true);
                }
            }
            if b[r] {
                aug.set(r, self.cols, true);
            }
        }
        let pivots = aug.row_reduce();
        if pivots.contains(&self.cols) {
            return None; // a row 0 = 1
        }
        let mut x = vec![false; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(row, self.cols);
        }
        Some(x)
    }

    /// Apply to a column vector.
    pub fn apply(&self, x: &[bool]) -> Vec<bool> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![false; self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = false;
            for (c, &xv) in x.iter().enumerate() {
                acc ^= xv && self.get(r, c);
            }
            *o = acc;
        }
        out
    }
}

/// An incrementally extended row-echelon basis of GF(2) vectors; answers
/// independence queries.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// reduced vectors with distinct pivots
    rows: Vec<Vec<bool>>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    fn reduce(&self, v: &[bool]) -> Vec<bool> {
        let mut v = v.to_vec();
        for row in &self.rows {
            let pivot = row.iter().position(|&b| b).expect("rows are nonzero");
            if v[pivot] {
                for (a, b) in v.iter_mut().zip(row.iter()) {
                    *a ^= *b;
                }
            }
        }
        v
    }

    /// Insert if independent of the current span; returns true when inserted.
    pub fn insert(&mut self, v: &[bool]) -> bool {
        let r = self.reduce(v);
        if r.iter().any(|&b| b) {
            self.rows.push(r);
            true
        } else {
            false
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// An incrementally built linear system over at most 64 unknowns, with
/// right-hand sides, for the interleaving oracle.
#[derive(Clone, Debug, Default)]
pub struct SmallSystem {
    pub n: usize,
    rows: Vec<(u64, bool)>,
}

impl SmallSystem {
    pub fn new(n: usize) -> SmallSystem {
        assert!(n <= 64);
        SmallSystem { n, rows: Vec::new() }
    }

    pub fn add_row(&mut self, coeffs: u64, rhs: bool) {
        if coeffs == 0 && !rhs {
            return;
        }
        self.rows.push((coeffs, rhs));
    }

    /// Reduce; returns None if inconsistent, otherwise (pivot mask, reduced
    /// rows) from which solutions can be enumerated.
    fn reduce(&self) -> Option<(Vec<(u64, bool)>, u64)> {
        let mut rows = self.rows.clone();
        let mut reduced: Vec<(u64, bool)> = Vec::new();
        let mut pivot_mask = 0u64;
        for c in 0..self.n {
            let bit = 1u64 << c;
            let mut idx = None;
            for (i, (co, _)) in rows.iter().enumerate() {
                if co & bit != 0 {
                    idx = Some(i);
                    break;
                }
            }
            let Some(i) = idx else { continue };
            let (pc, pr) = rows.swap_remove(i);
            for (co, rh) in rows.iter_mut() {
                if *co & bit != 0 {
                    *co ^= pc;
                    *rh ^= pr;
                }
            }
            for (co, rh) in reduced.iter_mut() {
                if *co & bit != 0 {
                    *co ^= pc;
                    *rh ^= pr;
                }
            }
            reduced.push((pc, pr));
            pivot_mask |= bit;
        }
        // leftover rows are all-zero coefficients
        for (co, rh) in rows {
            debug_assert_eq!(co, 0);
            if rh {
                return None;
            }
        }
        Some((reduced, pivot_mask))
    }

    pub fn is_consistent(&self) -> bool {
        self.reduce().is_some()
    }

    /// All solutions of the homogeneous + rhs system, streamed to `visit`
    /// until it returns true (found) or the count cap is hit. Returns
    /// Ok(found) or Err(()) if the solution count exceeds `cap`.
    pub fn for_each_solution<F: FnMut(u64) -> bool>(
        &self,
        cap: u64,
        mut visit: F,
    ) -> Result<bool, ()> {
        let Some((reduced, pivot_mask)) = self.reduce() else {
            return Ok(false);
        };
        let free_bits: Vec<usize> =
            (0..self.n).filter(|c| pivot_mask & (1u64 << c) == 0).collect();
        if free_bits.len() >= 63 || (1u64 << free_bits.len()) > cap {
            return Err(());
        }
        for combo in 0..(1u64 << free_bits.len()) {
            let mut x = 0u64;
            for (k, &c) in free_bits.iter().enumerate() {
                if combo & (1u64 << k) != 0 {
                    x |= 1u64 << c;
                }
            }
            // back-substitute pivots
            for &(co, rh) in reduced.iter().rev() {
                let pivot_bit = co & pivot_mask & co.wrapping_neg(); // lowest set bit is the pivot
                let val = rh ^ (((co & x) & !pivot_bit).count_ones() % 2 == 1);
                if val {
                    x |= pivot_bit;
                }
            }
            if visit(x) {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let mut m = BitMat::zeros(2, 3);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 1, true);
        m.set(1, 2, true);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        for v in &ker {
            assert!(m.apply(v).iter().all(|&b| !b));
        }
    }

    #[test]
    fn solve_small() {
        let mut m = BitMat::zeros(2, 2);
        m.set(0, 0, true);
        m.set(1, 0, true);
        m.set(1, 1, true);
        let x = m.solve(&[true, false]).unwrap();
        assert_eq!(m.apply(&x), vec![true, false]);
        assert!(BitMat::zeros(1, 1).solve(&[true]).is_none());
    }

    #[test]
    fn small_system_enumeration() {
        // x0 + x1 = 1, x1 + x2 = 0 -> solutions (1,0,0) and (0,1,1)
        let mut s = SmallSystem::new(3);
        s.add_row(0b011, true);
        s.add_row(0b110, false);
        let mut sols = Vec::new();
        s.for_each_solution(16, |x| {
            sols.push(x);
            false
        })
        .unwrap();
        sols.sort();
        assert_eq!(sols, vec![0b001, 0b110]);
        let mut bad = SmallSystem::new(1);
        bad.add_row(0, true);
        assert!(!bad.is_consistent());
    }
}
