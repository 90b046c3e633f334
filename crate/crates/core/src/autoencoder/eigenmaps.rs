use alloc::vec;
use alloc::vec::Vec;

use crate::complex::SparseMatrix;
use crate::error::{Error, Result};
use crate::numerics::{sqrt, symmetric_eigen, DenseMatrix};

/// Connected components of a symmetric adjacency, each sorted ascending and
/// listed in order of their smallest member.
pub fn connected_components(adjacency: &SparseMatrix) -> Vec<Vec<usize>> {
    let n = adjacency.nrows();
    let mut label = vec![usize::MAX; n];
    let mut components = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![start];
        label[start] = id;
        let mut i = 0;
        while i < members.len() {
            let at = members[i];
            for (j, _) in adjacency.row(at) {
                if label[j] == usize::MAX {
                    label[j] = id;
                    members.push(j);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

/// Solves `L y = λ D y`, `L = D − A`, per connected component and keeps the
/// eigenvectors of the `d` smallest nonzero eigenvalues, normalized so that
/// `ZᵀDZ = I` on each component.
///
/// Components with fewer than `d + 1` members fill what they can and leave the
/// remaining columns zero; isolated simplices get all-zero rows. Eigenvector
/// signs are fixed so that the first nonzero entry is positive.
pub fn laplacian_eigenmaps_solve(adjacency: &SparseMatrix, d: usize) -> Result<DenseMatrix> {
    let n = adjacency.nrows();
    if n == 0 {
        return Err(Error::EmptyComplex);
    }
    if !adjacency.is_symmetric() || adjacency.ncols() != n {
        return Err(Error::InvalidConfig("eigenmaps needs a square symmetric adjacency".into()));
    }
    let components = connected_components(adjacency);
    let largest = components.iter().map(Vec::len).max().unwrap_or(0);
    if d == 0 || d >= largest {
        return Err(Error::EmbeddingTooLarge { requested: d, max: largest.saturating_sub(1) });
    }
    let degree: Vec<f64> = adjacency.row_sums().into_iter().map(|v| v as f64).collect();
    let mut z = DenseMatrix::zeros(n, d);
    for members in components.iter().filter(|m| m.len() > 1) {
        let s = members.len();
        let inv_sqrt: Vec<f64> = members.iter().map(|&i| 1.0 / sqrt(degree[i])).collect();
        // M = D^{-1/2} L D^{-1/2} restricted to the component.
        let mut m = DenseMatrix::identity(s);
        for (p, &i) in members.iter().enumerate() {
            for (j, w) in adjacency.row(i) {
                let q = members.binary_search(&j).expect("neighbor outside its component");
                m.set(p, q, m.get(p, q) - f64::from(w) * inv_sqrt[p] * inv_sqrt[q]);
            }
        }
        let (_, vectors) = symmetric_eigen(&m)?;
        // The smallest eigenvalue of a connected component is 0 (once); skip it.
        for col in 0..d.min(s - 1) {
            let mut y: Vec<f64> = (0..s).map(|p| vectors.get(p, col + 1) * inv_sqrt[p]).collect();
            if y.iter().find(|v| v.abs() > 1e-12).is_some_and(|&v| v < 0.0) {
                y.iter_mut().for_each(|v| *v = -*v);
            }
            for (p, &i) in members.iter().enumerate() {
                z.set(i, col, y[p]);
            }
        }
    }
    Ok(z)
}

/// `trace(ZᵀLZ) = Σ_{a<c} A(a,c)·‖z_a − z_c‖²`, the eigenmaps objective.
pub fn eigenmaps_objective(adjacency: &SparseMatrix, z: &DenseMatrix) -> f64 {
    adjacency
        .iter()
        .filter(|&(a, c, _)| a < c)
        .map(|(a, c, w)| f64::from(w) * crate::numerics::squared_distance(z.row(a), z.row(c)))
        .sum()
}
