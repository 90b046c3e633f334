//! Unoriented simplicial complexes in canonical form and their neighborhood
//! structure: facets, cofacets, the `CO`/`C` intersections, adjacency and
//! co-adjacency matrices, and unsigned coboundary incidence.
//!
//! Simplices are stored dimension-major and lexicographically within a
//! dimension, so the `k`-simplices occupy one contiguous block of global
//! ordinals and `X^{<n}` is exactly the prefix `0..N̂`.

mod matrix;
mod neighborhood;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use matrix::SparseMatrix;

use crate::error::{Error, Result};

/// A simplex identified by its strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<usize>,
}

impl Simplex {
    /// Sorts `vertices` into canonical order. Empty sets and repeated vertices
    /// are rejected.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::MalformedSimplex("empty vertex set".into()));
        }
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedSimplex(format!("vertex {} repeated", w[0])));
        }
        Ok(Self { vertices })
    }

    pub fn vertex(v: usize) -> Self {
        Self { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Codimension-1 faces, in lexicographic order.
    pub fn boundary_faces(&self) -> Vec<Simplex> {
        if self.vertices.len() < 2 {
            return Vec::new();
        }
        let mut faces: Vec<Simplex> = (0..self.vertices.len())
            .map(|skip| Simplex {
                vertices: self
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            })
            .collect();
        faces.sort();
        faces
    }

    fn canonical_cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.dim().cmp(&other.dim()).then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Vertex coordinates in `R^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coordinates {
    ambient_dim: usize,
    points: BTreeMap<usize, Vec<f64>>,
}

impl Coordinates {
    pub const DEFAULT_AMBIENT_DIM: usize = 3;

    pub fn new(ambient_dim: usize, points: BTreeMap<usize, Vec<f64>>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::InvalidCoordinates("ambient dimension must be positive".into()));
        }
        for (id, p) in &points {
            if p.len() != ambient_dim {
                return Err(Error::InvalidCoordinates(format!(
                    "vertex {id} has {} coordinates, expected {ambient_dim}",
                    p.len()
                )));
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidCoordinates(format!("vertex {id} has a non-finite coordinate")));
            }
        }
        Ok(Self { ambient_dim, points })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn point(&self, vertex: usize) -> Option<&[f64]> {
        self.points.get(&vertex).map(Vec::as_slice)
    }

    pub fn points(&self) -> &BTreeMap<usize, Vec<f64>> {
        &self.points
    }
}

/// An immutable, face-closed, canonically indexed simplicial complex.
#[derive(Clone)]
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
    /// `offsets[k]` is the global ordinal of the first `k`-simplex; `offsets[n + 1] = N`.
    offsets: Vec<usize>,
    index: BTreeMap<Simplex, usize>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
    coords: Option<Coordinates>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("dim", &self.dim())
            .field("counts", &self.counts())
            .field("has_coordinates", &self.coords.is_some())
            .finish()
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices && self.coords == other.coords
    }
}

impl SimplicialComplex {
    /// Downward closure of `maximal`, canonically ordered.
    ///
    /// Re-listing faces that are already implied is harmless: the result only
    /// depends on the union of the closures.
    pub fn build(maximal: &[Vec<usize>], coords: Option<Coordinates>) -> Result<Self> {
        if maximal.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let tops: Vec<Simplex> = maximal.iter().map(|vs| Simplex::new(vs.clone())).collect::<Result<_>>()?;
        let top_dim = tops.iter().map(Simplex::dim).max().unwrap_or(0);

        let mut levels: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); top_dim + 1];
        for s in tops {
            levels[s.dim()].insert(s);
        }
        for k in (1..=top_dim).rev() {
            let faces: Vec<Simplex> = levels[k].iter().flat_map(Simplex::boundary_faces).collect();
            levels[k - 1].extend(faces);
        }

        let mut simplices = Vec::new();
        let mut offsets = Vec::with_capacity(top_dim + 2);
        for level in levels {
            offsets.push(simplices.len());
            simplices.extend(level);
        }
        offsets.push(simplices.len());
        debug_assert!(simplices.windows(2).all(|w| w[0].canonical_cmp(&w[1]).is_lt()));

        let index: BTreeMap<Simplex, usize> = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut facets = vec![Vec::new(); simplices.len()];
        let mut cofacets = vec![Vec::new(); simplices.len()];
        for (id, s) in simplices.iter().enumerate() {
            for face in s.boundary_faces() {
                let fid = index[&face];
                facets[id].push(fid);
                cofacets[fid].push(id);
            }
        }
        for list in facets.iter_mut().chain(cofacets.iter_mut()) {
            list.sort_unstable();
        }

        if let Some(c) = &coords {
            for v in &simplices[offsets[0]..offsets[1]] {
                let id = v.vertices[0];
                if c.point(id).is_none() {
                    return Err(Error::InvalidCoordinates(format!("vertex {id} has no coordinate")));
                }
            }
        }

        Ok(Self { simplices, offsets, index, facets, cofacets, coords })
    }

    /// Dimension `n`: the largest simplex dimension.
    pub fn dim(&self) -> usize {
        self.offsets.len() - 2
    }

    /// Total number of simplices `N`.
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// `|X^k|`, zero for `k > n`.
    pub fn count(&self, k: usize) -> usize {
        if k > self.dim() {
            0
        } else {
            self.offsets[k + 1] - self.offsets[k]
        }
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.dim()).map(|k| self.count(k)).collect()
    }

    /// `N̂ = N − |X^n|`, the size of `X^{<n}`.
    pub fn n_hat(&self) -> usize {
        self.offsets[self.dim()]
    }

    /// Global ordinal of the first `k`-simplex.
    pub fn offset(&self, k: usize) -> usize {
        self.offsets[k.min(self.dim() + 1)]
    }

    /// Global ordinals of the `k`-simplices.
    pub fn range(&self, k: usize) -> core::ops::Range<usize> {
        self.offset(k)..self.offset(k) + self.count(k)
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplices_of_dim(&self, k: usize) -> &[Simplex] {
        &self.simplices[self.range(k)]
    }

    pub fn simplex(&self, global: usize) -> &Simplex {
        &self.simplices[global]
    }

    pub fn global_index(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Ordinal of `s` among the simplices of its own dimension.
    pub fn local_index(&self, s: &Simplex) -> Option<usize> {
        self.global_index(s).map(|g| g - self.offset(s.dim()))
    }

    fn require(&self, s: &Simplex) -> Result<usize> {
        self.global_index(s).ok_or_else(|| Error::UnknownSimplex(format!("{s}")))
    }

    /// Global ordinals of the facets of simplex `global`, ascending.
    pub fn facet_ids(&self, global: usize) -> &[usize] {
        &self.facets[global]
    }

    /// Global ordinals of the cofacets of simplex `global`, ascending.
    pub fn cofacet_ids(&self, global: usize) -> &[usize] {
        &self.cofacets[global]
    }

    pub fn facets(&self, c: &Simplex) -> Result<Vec<Simplex>> {
        let id = self.require(c)?;
        Ok(self.facets[id].iter().map(|&f| self.simplices[f].clone()).collect())
    }

    pub fn cofacets(&self, c: &Simplex) -> Result<Vec<Simplex>> {
        let id = self.require(c)?;
        Ok(self.cofacets[id].iter().map(|&f| self.simplices[f].clone()).collect())
    }

    fn same_dim_pair(&self, a: &Simplex, b: &Simplex) -> Result<(usize, usize)> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{a} has dimension {}, {b} has dimension {}",
                a.dim(),
                b.dim()
            )));
        }
        Ok((self.require(a)?, self.require(b)?))
    }

    /// `CO[a, b]`: common cofacets. `a` and `b` are adjacent iff it is non-empty.
    pub fn co_intersection(&self, a: &Simplex, b: &Simplex) -> Result<Vec<Simplex>> {
        let (ia, ib) = self.same_dim_pair(a, b)?;
        Ok(sorted_intersection(&self.cofacets[ia], &self.cofacets[ib])
            .map(|g| self.simplices[g].clone())
            .collect())
    }

    /// `C[a, b]`: common facets. `a` and `b` are co-adjacent iff it is non-empty.
    pub fn facet_intersection(&self, a: &Simplex, b: &Simplex) -> Result<Vec<Simplex>> {
        let (ia, ib) = self.same_dim_pair(a, b)?;
        Ok(sorted_intersection(&self.facets[ia], &self.facets[ib])
            .map(|g| self.simplices[g].clone())
            .collect())
    }

    /// Simplices that are not a face of any other simplex, in canonical order.
    pub fn maximal_simplices(&self) -> Vec<&Simplex> {
        self.simplices.iter().enumerate().filter(|&(i, _)| self.cofacets[i].is_empty()).map(|(_, s)| s).collect()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.simplices_of_dim(0).iter().map(|s| s.vertices[0])
    }

    pub fn coordinates(&self) -> Option<&Coordinates> {
        self.coords.as_ref()
    }

    /// Euler characteristic `Σ (−1)^k |X^k|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

fn sorted_intersection<'a>(a: &'a [usize], b: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
    let (mut i, mut j) = (0, 0);
    core::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    let v = a[i];
                    i += 1;
                    j += 1;
                    return Some(v);
                }
            }
        }
        None
    })
}
