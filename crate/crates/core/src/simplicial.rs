//! Simplicial complexes of dimension at most two and their GF(2) homology,
//! with retained cycle bases so that inclusion-induced maps come out in fixed
//! coordinates.

use crate::gf2::{BitMat, Echelon};
use crate::{Error, Result};
use std::collections::BTreeSet;

/// A finite simplicial complex over u32 vertex ids, closed under faces,
/// dimension at most 2. Simplices are stored sorted, in a deterministic order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    /// simplices[d] = sorted list of (d+1)-element sorted vertex tuples
    simplices: [Vec<Vec<u32>>; 3],
}

impl SimplicialComplex {
    pub fn new(simplices: impl IntoIterator<Item = Vec<u32>>) -> Result<SimplicialComplex> {
        let mut sets: [BTreeSet<Vec<u32>>; 3] = Default::default();
        for mut s in simplices {
            s.sort_unstable();
            let before = s.len();
            s.dedup();
            if s.len() != before {
                return Err(Error::Malformed(format!("simplex {s:?} repeats a vertex")));
            }
            match s.len() {
                0 => return Err(Error::Malformed("empty simplex".into())),
                1 => {
                    sets[0].insert(s);
                }
                2 => {
                    sets[0].insert(vec![s[0]]);
                    sets[0].insert(vec![s[1]]);
                    sets[1].insert(s);
                }
                3 => {
                    for &v in &s {
                        sets[0].insert(vec![v]);
                    }
                    sets[1].insert(vec![s[0], s[1]]);
                    sets[1].insert(vec![s[0], s[2]]);
                    sets[1].insert(vec![s[1], s[2]]);
                    sets[2].insert(s);
                }
                _ => {
                    return Err(Error::Malformed(format!(
                        "simplex {s:?} has dimension greater than 2"
                    )))
                }
            }
        }
        Ok(SimplicialComplex { simplices: sets.map(|s| s.into_iter().collect()) })
    }

    pub fn empty() -> SimplicialComplex {
        SimplicialComplex::default()
    }

    pub fn simplices(&self, dim: usize) -> &[Vec<u32>] {
        &self.simplices[dim]
    }

    pub fn vertex_ids(&self) -> Vec<u32> {
        self.simplices[0].iter().map(|v| v[0]).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices[0].is_empty()
    }

    fn index_of(&self, dim: usize, simplex: &[u32]) -> Option<usize> {
        self.simplices[dim].binary_search_by(|s| s.as_slice().cmp(simplex)).ok()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        (0..3).all(|d| self.simplices[d].iter().all(|s| other.index_of(d, s).is_some()))
    }

    /// Boundary matrix from dimension d to d-1 over GF(2).
    fn boundary_matrix(&self, d: usize) -> BitMat {
        assert!((1..=2).contains(&d));
        let rows = self.simplices[d - 1].len();
        let cols = self.simplices[d].len();
        let mut m = BitMat::zeros(rows, cols);
        for (j, s) in self.simplices[d].iter().enumerate() {
            for omit in 0..s.len() {
                let face: Vec<u32> = s
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != omit)
                    .map(|(_, &v)| v)
                    .collect();
                let i = self.index_of(d - 1, &face).expect("face closure");
                m.set(i, j, true);
            }
        }
        m
    }
}

/// GF(2) homology in one degree, with a retained basis of cycle
/// representatives in the canonical simplex coordinates.
#[derive(Debug, Clone)]
pub struct Homology {
    pub dim: usize,
    pub basis: Vec<Vec<bool>>,
    /// boundary columns from one degree up, spanning the divided-out subspace
    boundaries: Vec<Vec<bool>>,
}

/// Homology of the complex in degree `i` (0, 1 or 2) over GF(2).
pub fn homology(complex: &SimplicialComplex, i: usize) -> Result<Homology> {
    if i > 2 {
        return Err(Error::Precondition(format!("homology degree {i} out of range 0..=2")));
    }
    let n = complex.simplices(i).len();
    let cycles: Vec<Vec<bool>> = if n == 0 {
        Vec::new()
    } else if i == 0 {
        (0..n)
            .map(|k| {
                let mut v = vec![false; n];
                v[k] = true;
                v
            })
            .collect()
    } else {
        complex.boundary_matrix(i).kernel_basis()
    };
    let boundaries: Vec<Vec<bool>> = if i < 2 && n > 0 && !complex.simplices(i + 1).is_empty() {
        let b = complex.boundary_matrix(i + 1);
        (0..b.cols).map(|j| (0..b.rows).map(|r| b.get(r, j)).collect()).collect()
    } else {
        Vec::new()
    };
    let mut echelon = Echelon::new();
    for col in &boundaries {
        echelon.insert(col);
    }
    let mut basis = Vec::new();
    for cyc in &cycles {
        if echelon.insert(cyc) {
            basis.push(cyc.clone());
        }
    }
    Ok(Homology { dim: basis.len(), basis, boundaries })
}

/// Matrix of the inclusion-induced map H_i(sub) -> H_i(sup) in the retained
/// bases.
pub fn induced_map(sub: &SimplicialComplex, sup: &SimplicialComplex, i: usize) -> Result<BitMat> {
    if !sub.is_subcomplex_of(sup) {
        return Err(Error::Precondition(
            "induced_map requires an inclusion of complexes".into(),
        ));
    }
    let h_sub = homology(sub, i)?;
    let h_sup = homology(sup, i)?;
    let n_sup = sup.simplices(i).len();
    // solve [basis | boundaries] * coeffs = pushed cycle
    let cols = h_sup.dim + h_sup.boundaries.len();
    let mut m = BitMat::zeros(n_sup.max(1), cols.max(1));
    for (c, cyc) in h_sup.basis.iter().enumerate() {
        for (r, &v) in cyc.iter().enumerate() {
            if v {
                m.set(r, c, true);
            }
        }
    }
    for (c, col) in h_sup.boundaries.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            if v {
                m.set(r, h_sup.dim + c, true);
            }
        }
    }
    let mut out = BitMat::zeros(h_sup.dim, h_sub.dim);
    for (k, cyc) in h_sub.basis.iter().enumerate() {
        let mut pushed = vec![false; n_sup.max(1)];
        for (idx, &v) in cyc.iter().enumerate() {
            if v {
                let simplex = &sub.simplices(i)[idx];
                let j = sup.index_of(i, simplex).expect("inclusion");
                pushed[j] = true;
            }
        }
        let sol = m.solve(&pushed).ok_or_else(|| {
            Error::Precondition("pushed cycle fails to be a cycle in the supercomplex".into())
        })?;
        for r in 0..h_sup.dim {
            out.set(r, k, sol[r]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(simps: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::new(simps.iter().map(|s| s.to_vec())).unwrap()
    }

    #[test]
    fn hollow_triangle() {
        let c = complex(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(homology(&c, 0).unwrap().dim, 1);
        assert_eq!(homology(&c, 1).unwrap().dim, 1);
        assert_eq!(homology(&c, 2).unwrap().dim, 0);
    }

    #[test]
    fn filled_triangle() {
        let c = complex(&[&[0, 1, 2]]);
        assert_eq!(homology(&c, 0).unwrap().dim, 1);
        assert_eq!(homology(&c, 1).unwrap().dim, 0);
    }

    #[test]
    fn two_isolated_vertices() {
        let c = complex(&[&[0], &[7]]);
        assert_eq!(homology(&c, 0).unwrap().dim, 2);
        assert_eq!(homology(&c, 1).unwrap().dim, 0);
        assert!(homology(&c, 3).is_err());
    }

    #[test]
    fn sphere_boundary_of_tetrahedron() {
        let c = complex(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        assert_eq!(homology(&c, 0).unwrap().dim, 1);
        assert_eq!(homology(&c, 1).unwrap().dim, 0);
        assert_eq!(homology(&c, 2).unwrap().dim, 1);
    }

    #[test]
    fn induced_identity_and_merge() {
        let c = complex(&[&[0, 1], &[1, 2], &[0, 2]]);
        let m = induced_map(&c, &c, 1).unwrap();
        assert_eq!(m, BitMat::identity(1));

        // two components merging into one
        let sub = complex(&[&[0], &[1]]);
        let sup = complex(&[&[0, 1]]);
        let m = induced_map(&sub, &sup, 0).unwrap();
        assert_eq!((m.rows, m.cols), (1, 2));
        assert!(m.get(0, 0) && m.get(0, 1));
        assert!(induced_map(&sup, &sub, 0).is_err());
    }

    #[test]
    fn induced_vertex_into_edge_is_iso() {
        let sub = complex(&[&[0]]);
        let sup = complex(&[&[0, 1]]);
        let m = induced_map(&sub, &sup, 0).unwrap();
        assert_eq!(m, BitMat::identity(1));
    }

    #[test]
    fn rank_one_merge_from_disjoint_path_and_point() {
        // path 0-1 plus isolated 2, included into a path joining everything
        let sub = complex(&[&[0, 1], &[2]]);
        let sup = complex(&[&[0, 1], &[1, 2]]);
        let m = induced_map(&sub, &sup, 0).unwrap();
        assert_eq!((m.rows, m.cols), (1, 2));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn functoriality_of_composed_inclusions() {
        let a = complex(&[&[0], &[2]]);
        let b = complex(&[&[0, 1], &[2]]);
        let c = complex(&[&[0, 1], &[1, 2]]);
        let ab = induced_map(&a, &b, 0).unwrap();
        let bc = induced_map(&b, &c, 0).unwrap();
        let ac = induced_map(&a, &c, 0).unwrap();
        assert_eq!(bc.mul(&ab), ac);
    }
}
