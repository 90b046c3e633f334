//! Adjacency, co-adjacency and incidence matrices.
//!
//! Multiplicities are accumulated from the incidence lists: every
//! `(k+1)`-simplex contributes one shared cofacet to each pair of its facets,
//! and every `(k−1)`-simplex one shared facet to each pair of its cofacets.

use super::{SimplicialComplex, SparseMatrix};
use crate::error::{Error, Result};

impl SimplicialComplex {
    fn count_adjacency_into(&self, k: usize, shift: usize, m: &mut SparseMatrix) {
        for t in self.range(k + 1) {
            let faces = self.facet_ids(t);
            for (i, &a) in faces.iter().enumerate() {
                for &b in &faces[i + 1..] {
                    m.increment(a - shift, b - shift);
                    m.increment(b - shift, a - shift);
                }
            }
        }
    }

    fn count_coadjacency_into(&self, k: usize, shift: usize, m: &mut SparseMatrix) {
        for c in self.range(k - 1) {
            let cofaces = self.cofacet_ids(c);
            for (i, &a) in cofaces.iter().enumerate() {
                for &b in &cofaces[i + 1..] {
                    m.increment(a - shift, b - shift);
                    m.increment(b - shift, a - shift);
                }
            }
        }
    }

    /// `A_adj`: `N̂ × N̂` over `X^{<n}` in global order, entry `|CO[c_i, c_j]|`.
    ///
    /// Block-diagonal: only simplices of equal dimension can be adjacent.
    pub fn adjacency_matrix(&self) -> SparseMatrix {
        let mut m = SparseMatrix::new(self.n_hat(), self.n_hat(), true);
        for k in 0..self.dim() {
            self.count_adjacency_into(k, 0, &mut m);
        }
        m
    }

    /// `A^k_adj` over the `k`-simplices, `0 ≤ k < n`.
    pub fn per_dim_adjacency(&self, k: usize) -> Result<SparseMatrix> {
        if k >= self.dim() {
            return Err(Error::NoAdjacencyAtTop { k, n: self.dim() });
        }
        let size = self.count(k);
        let mut m = SparseMatrix::new(size, size, true);
        self.count_adjacency_into(k, self.offset(k), &mut m);
        Ok(m)
    }

    /// `A_co` over `X^{>0}` (global ordinal minus `|X^0|`), entry `|C[c_i, c_j]|`.
    pub fn coadjacency_matrix(&self) -> SparseMatrix {
        let shift = self.count(0);
        let size = self.len() - shift;
        let mut m = SparseMatrix::new(size, size, true);
        for k in 1..=self.dim() {
            self.count_coadjacency_into(k, shift, &mut m);
        }
        m
    }

    /// `A^k_co` over the `k`-simplices, `0 < k ≤ n`.
    pub fn per_dim_coadjacency(&self, k: usize) -> Result<SparseMatrix> {
        if k == 0 || k > self.dim() {
            return Err(Error::NoCoadjacency { k, n: self.dim() });
        }
        let size = self.count(k);
        let mut m = SparseMatrix::new(size, size, true);
        self.count_coadjacency_into(k, self.offset(k), &mut m);
        Ok(m)
    }

    /// Unsigned coboundary incidence `B_m`, `|X^m| × |X^{m+1}|`, entry 1 iff the
    /// `m`-simplex is a facet of the `(m+1)`-simplex.
    pub fn coboundary_incidence(&self, m: usize) -> Result<SparseMatrix> {
        if m >= self.dim() {
            return Err(Error::NoIncidence { m, n: self.dim() });
        }
        let (row0, col0) = (self.offset(m), self.offset(m + 1));
        let mut b = SparseMatrix::new(self.count(m), self.count(m + 1), false);
        for t in self.range(m + 1) {
            for &f in self.facet_ids(t) {
                b.insert(f - row0, t - col0, 1);
            }
        }
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use alloc::vec;
    use alloc::vec::Vec;

    use super::*;
    use crate::complex::Simplex;

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::build(&[vec![0, 1, 2]], None).unwrap()
    }

    fn two_triangles() -> SimplicialComplex {
        SimplicialComplex::build(&[vec![0, 1, 2], vec![1, 2, 3]], None).unwrap()
    }

    fn off_diagonal_ones(m: &SparseMatrix, n: usize) {
        assert_eq!(m.shape(), (n, n));
        for i in 0..n {
            for j in 0..n {
                assert_eq!(m.get(i, j), u32::from(i != j), "({i},{j})");
            }
        }
    }

    #[test]
    fn triangle_vertex_adjacency_is_k3() {
        off_diagonal_ones(&triangle().per_dim_adjacency(0).unwrap(), 3);
    }

    #[test]
    fn triangle_edge_coadjacency_is_k3() {
        off_diagonal_ones(&triangle().per_dim_coadjacency(1).unwrap(), 3);
    }

    #[test]
    fn edges_without_common_triangle_are_not_adjacent() {
        let x = two_triangles();
        let a1 = x.per_dim_adjacency(1).unwrap();
        let e01 = x.local_index(&Simplex::new(vec![0, 1]).unwrap()).unwrap();
        let e13 = x.local_index(&Simplex::new(vec![1, 3]).unwrap()).unwrap();
        assert_eq!(a1.get(e01, e13), 0);
        let e12 = x.local_index(&Simplex::new(vec![1, 2]).unwrap()).unwrap();
        assert_eq!(a1.get(e12, e13), 1);
    }

    #[test]
    fn triangles_sharing_an_edge_are_coadjacent() {
        let a2 = two_triangles().per_dim_coadjacency(2).unwrap();
        assert_eq!(a2.get(0, 1), 1);
        assert_eq!(a2.get(0, 0), 0);
    }

    #[test]
    fn global_matrices_are_block_diagonal() {
        let x = two_triangles();
        let a = x.adjacency_matrix();
        assert_eq!(a.shape(), (x.n_hat(), x.n_hat()));
        assert!(a.is_symmetric());
        for k in 0..x.dim() {
            let r = x.range(k);
            assert_eq!(a.block(r.start, r.end), x.per_dim_adjacency(k).unwrap());
        }
        for (i, j, _) in a.iter() {
            assert_eq!(x.simplex(i).dim(), x.simplex(j).dim());
        }
        let co = x.coadjacency_matrix();
        let shift = x.count(0);
        assert_eq!(co.shape(), (x.len() - shift, x.len() - shift));
        for k in 1..=x.dim() {
            let r = x.range(k);
            assert_eq!(co.block(r.start - shift, r.end - shift), x.per_dim_coadjacency(k).unwrap());
        }
    }

    #[test]
    fn vertex_multiplicity_counts_shared_edges() {
        // Two vertices share exactly one edge in a simplicial complex, but two
        // edges can share two triangles.
        let x = two_triangles();
        let a0 = x.per_dim_adjacency(0).unwrap();
        assert_eq!(a0.get(1, 2), 1);
        let a1 = x.per_dim_adjacency(1).unwrap();
        assert!(a1.iter().all(|(_, _, v)| v == 1));
    }

    #[test]
    fn dimension_range_errors() {
        let x = triangle();
        assert_eq!(x.per_dim_adjacency(2), Err(Error::NoAdjacencyAtTop { k: 2, n: 2 }));
        assert!(x.per_dim_coadjacency(0).is_err());
        assert!(x.per_dim_coadjacency(3).is_err());
        assert!(x.coboundary_incidence(2).is_err());
    }

    #[test]
    fn incidence_examples() {
        let x = triangle();
        let b1 = x.coboundary_incidence(1).unwrap();
        assert_eq!(b1.shape(), (3, 1));
        assert!((0..3).all(|i| b1.get(i, 0) == 1));
        let b0 = x.coboundary_incidence(0).unwrap();
        assert!(b0.column_sums().iter().all(|&s| s == 2));

        let y = two_triangles();
        let b1 = y.coboundary_incidence(1).unwrap();
        let e12 = y.local_index(&Simplex::new(vec![1, 2]).unwrap()).unwrap();
        assert_eq!(b1.row_sums()[e12], 2);
        let cofacet_counts: Vec<u64> = y.range(1).map(|g| y.cofacet_ids(g).len() as u64).collect();
        assert_eq!(b1.row_sums(), cofacet_counts);
        assert!(b1.column_sums().iter().all(|&s| s == 3));
    }

    #[test]
    fn zero_dimensional_complex_has_empty_adjacency() {
        let x = SimplicialComplex::build(&[vec![0], vec![1]], None).unwrap();
        assert_eq!(x.adjacency_matrix().shape(), (0, 0));
        assert_eq!(x.coadjacency_matrix().shape(), (0, 0));
    }
}
