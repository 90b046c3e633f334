use alloc::format;
use alloc::vec::Vec;
use core::ops::Range;

use crate::complex::{SimplicialComplex, SparseMatrix};
use crate::error::{Error, Result};
use crate::message_passing::FeatureSet;
use crate::numerics::{sqrt, DenseMatrix, Parameters, SparseOperator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Adjacency plus cofaces; the top dimension is never updated.
    Amps,
    /// Co-adjacency plus faces; vertices are never updated.
    Cmps,
    /// Faces and cofaces; every dimension is updated.
    Hcmps,
}

impl Scheme {
    /// Dimensions whose rows make up the embedding table `U_X`.
    pub fn embedded_dims(self, n: usize) -> Range<usize> {
        match self {
            Scheme::Amps => 0..n,
            Scheme::Cmps => 1..n + 1,
            Scheme::Hcmps => 0..n + 1,
        }
    }

    /// The dimension that passes through every layer unchanged, if any.
    pub fn frozen_dim(self, n: usize) -> Option<usize> {
        match self {
            Scheme::Amps => Some(n),
            Scheme::Cmps => Some(0),
            Scheme::Hcmps => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Amps => "amps",
            Scheme::Cmps => "cmps",
            Scheme::Hcmps => "hcmps",
        }
    }
}

impl core::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "amps" => Ok(Scheme::Amps),
            "cmps" => Ok(Scheme::Cmps),
            "hcmps" => Ok(Scheme::Hcmps),
            other => Err(Error::InvalidConfig(format!("unknown message-passing scheme `{other}`"))),
        }
    }
}

/// Weights of the two-path update for one dimension: `same` acts on the
/// normalized same-dimension aggregate, `cross` on the mean over the
/// neighboring dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvWeights {
    pub same: DenseMatrix,
    pub cross: DenseMatrix,
}

/// HCMPS weights for one dimension. `from_faces`/`from_cofaces` are the
/// message maps `φ` for the lower and upper neighbor dimension; `combine` is `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct HcmpsWeights {
    pub from_faces: Option<DenseMatrix>,
    pub from_cofaces: Option<DenseMatrix>,
    pub combine: DenseMatrix,
}

/// Trainable state of one message-passing layer, indexed by dimension.
#[derive(Debug, Clone, PartialEq)]
pub enum LayerParams {
    /// `None` at the frozen dimension.
    Conv { scheme: Scheme, per_dim: Vec<Option<ConvWeights>> },
    Hcmps { per_dim: Vec<HcmpsWeights> },
}

impl LayerParams {
    /// Builds parameters for inputs of `in_widths` (one per dimension), filling
    /// each `rows x cols` tensor with `make(rows, cols)`.
    pub fn build(
        scheme: Scheme,
        n: usize,
        in_widths: &[usize],
        out_width: usize,
        mut make: impl FnMut(usize, usize) -> DenseMatrix,
    ) -> Result<Self> {
        if in_widths.len() != n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} input widths for a complex of dimension {n}",
                in_widths.len()
            )));
        }
        Ok(match scheme {
            Scheme::Amps | Scheme::Cmps => {
                let per_dim = (0..=n)
                    .map(|m| {
                        conv_source(scheme, m, n).map(|src| ConvWeights {
                            same: make(in_widths[m], out_width),
                            cross: make(in_widths[src], out_width),
                        })
                    })
                    .collect();
                LayerParams::Conv { scheme, per_dim }
            }
            Scheme::Hcmps => {
                let per_dim = (0..=n)
                    .map(|m| HcmpsWeights {
                        from_faces: (m > 0).then(|| make(in_widths[m] + in_widths[m - 1], out_width)),
                        from_cofaces: (m < n).then(|| make(in_widths[m] + in_widths[m + 1], out_width)),
                        combine: make(in_widths[m] + out_width, out_width),
                    })
                    .collect();
                LayerParams::Hcmps { per_dim }
            }
        })
    }

    pub fn scheme(&self) -> Scheme {
        match self {
            LayerParams::Conv { scheme, .. } => *scheme,
            LayerParams::Hcmps { .. } => Scheme::Hcmps,
        }
    }

    /// Output widths for inputs of `in_widths`.
    pub fn output_widths(&self, in_widths: &[usize]) -> Vec<usize> {
        match self {
            LayerParams::Conv { per_dim, .. } => per_dim
                .iter()
                .zip(in_widths)
                .map(|(w, &inw)| w.as_ref().map_or(inw, |w| w.same.ncols()))
                .collect(),
            LayerParams::Hcmps { per_dim } => per_dim.iter().map(|w| w.combine.ncols()).collect(),
        }
    }

    fn zeros_like(&self) -> Self {
        let mut z = self.clone();
        for t in z.tensors_mut() {
            *t = DenseMatrix::zeros(t.nrows(), t.ncols());
        }
        z
    }
}

impl Parameters for LayerParams {
    fn tensors(&self) -> Vec<&DenseMatrix> {
        let mut out = Vec::new();
        match self {
            LayerParams::Conv { per_dim, .. } => {
                for w in per_dim.iter().flatten() {
                    out.push(&w.same);
                    out.push(&w.cross);
                }
            }
            LayerParams::Hcmps { per_dim } => {
                for w in per_dim {
                    out.extend(w.from_faces.as_ref());
                    out.extend(w.from_cofaces.as_ref());
                    out.push(&w.combine);
                }
            }
        }
        out
    }

    fn tensors_mut(&mut self) -> Vec<&mut DenseMatrix> {
        let mut out = Vec::new();
        match self {
            LayerParams::Conv { per_dim, .. } => {
                for w in per_dim.iter_mut().flatten() {
                    out.push(&mut w.same);
                    out.push(&mut w.cross);
                }
            }
            LayerParams::Hcmps { per_dim } => {
                for w in per_dim {
                    out.extend(w.from_faces.as_mut());
                    out.extend(w.from_cofaces.as_mut());
                    out.push(&mut w.combine);
                }
            }
        }
        out
    }
}

fn conv_source(scheme: Scheme, m: usize, n: usize) -> Option<usize> {
    match scheme {
        Scheme::Amps if m < n => Some(m + 1),
        Scheme::Cmps if m > 0 => Some(m - 1),
        _ => None,
    }
}

/// `D^{-1/2} (A + I) D^{-1/2}` with `D` the row sums of `A + I`.
pub fn normalized_with_self_loops(a: &SparseMatrix) -> SparseOperator {
    let degree: Vec<f64> = a.row_sums().iter().map(|&d| d as f64 + 1.0).collect();
    let n = a.nrows();
    let off = a.iter().map(|(i, j, v)| (i, j, f64::from(v) / sqrt(degree[i] * degree[j])));
    let diag = (0..n).map(|i| (i, i, 1.0 / degree[i]));
    SparseOperator::from_triplets(n, n, off.chain(diag).collect::<Vec<_>>())
}

/// Divides each row by its sum; empty rows stay empty.
fn row_mean_operator(m: &SparseMatrix) -> SparseOperator {
    let sums = m.row_sums();
    SparseOperator::from_triplets(
        m.nrows(),
        m.ncols(),
        m.iter().map(|(i, j, v)| (i, j, f64::from(v) / sums[i] as f64)).collect::<Vec<_>>(),
    )
}

#[derive(Debug, Clone)]
struct ConvStep {
    source: usize,
    same_op: SparseOperator,
    cross_op: SparseOperator,
}

#[derive(Debug, Clone, Default)]
struct IncidencePairs {
    /// `(local index in m, local index in m − 1)`.
    faces: Vec<(usize, usize)>,
    /// `(local index in m, local index in m + 1)`.
    cofaces: Vec<(usize, usize)>,
}

/// The complex-dependent operators of one scheme, built once and reused by
/// every layer and every training step.
#[derive(Debug, Clone)]
pub struct Propagation {
    scheme: Scheme,
    n: usize,
    counts: Vec<usize>,
    steps: Vec<Option<ConvStep>>,
    pairs: Vec<IncidencePairs>,
}

#[derive(Debug, Clone)]
struct ConvCache {
    aggregated_same: DenseMatrix,
    aggregated_cross: DenseMatrix,
    pre_activation: DenseMatrix,
}

#[derive(Debug, Clone)]
struct HcmpsCache {
    face_inputs: DenseMatrix,
    face_pre: DenseMatrix,
    coface_inputs: DenseMatrix,
    coface_pre: DenseMatrix,
    combined_input: DenseMatrix,
    pre_activation: DenseMatrix,
}

/// Intermediate values of a forward pass needed by the backward pass.
#[derive(Debug, Clone)]
pub struct LayerCache {
    input_widths: Vec<usize>,
    conv: Vec<Option<ConvCache>>,
    hcmps: Vec<HcmpsCache>,
}

impl Propagation {
    pub fn new(x: &SimplicialComplex, scheme: Scheme) -> Result<Self> {
        let n = x.dim();
        let mut steps = Vec::with_capacity(n + 1);
        let mut pairs = Vec::new();
        match scheme {
            Scheme::Amps => {
                for m in 0..=n {
                    steps.push(if m < n {
                        Some(ConvStep {
                            source: m + 1,
                            same_op: normalized_with_self_loops(&x.per_dim_adjacency(m)?),
                            cross_op: row_mean_operator(&x.coboundary_incidence(m)?),
                        })
                    } else {
                        None
                    });
                }
            }
            Scheme::Cmps => {
                for m in 0..=n {
                    steps.push(if m > 0 {
                        Some(ConvStep {
                            source: m - 1,
                            same_op: normalized_with_self_loops(&x.per_dim_coadjacency(m)?),
                            cross_op: row_mean_operator(&x.coboundary_incidence(m - 1)?.transpose()),
                        })
                    } else {
                        None
                    });
                }
            }
            Scheme::Hcmps => {
                for m in 0..=n {
                    let mut p = IncidencePairs::default();
                    for (xi, g) in x.range(m).enumerate() {
                        if m > 0 {
                            let base = x.offset(m - 1);
                            p.faces.extend(x.facet_ids(g).iter().map(|&f| (xi, f - base)));
                        }
                        if m < n {
                            let base = x.offset(m + 1);
                            p.cofaces.extend(x.cofacet_ids(g).iter().map(|&c| (xi, c - base)));
                        }
                    }
                    pairs.push(p);
                }
            }
        }
        Ok(Self { scheme, n, counts: x.counts(), steps, pairs })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn complex_dim(&self) -> usize {
        self.n
    }

    fn check_input(&self, h: &FeatureSet, params: &LayerParams) -> Result<()> {
        if params.scheme() != self.scheme {
            return Err(Error::InvalidConfig(format!(
                "{} parameters used with {} propagation",
                params.scheme().name(),
                self.scheme.name()
            )));
        }
        if h.len() != self.n + 1 {
            return Err(Error::DimensionMismatch(format!("{} feature matrices, expected {}", h.len(), self.n + 1)));
        }
        for m in 0..=self.n {
            if h.get(m).nrows() != self.counts[m] {
                return Err(Error::shape("message passing input", h.get(m).shape(), (self.counts[m], 0)));
            }
        }
        Ok(())
    }

    pub fn forward(&self, h: &FeatureSet, params: &LayerParams) -> Result<(FeatureSet, LayerCache)> {
        self.check_input(h, params)?;
        let mut cache = LayerCache { input_widths: h.widths(), conv: Vec::new(), hcmps: Vec::new() };
        let mut out = Vec::with_capacity(self.n + 1);
        match params {
            LayerParams::Conv { per_dim, .. } => {
                if per_dim.len() != self.n + 1 {
                    return Err(Error::DimensionMismatch("layer parameters cover the wrong number of dimensions".into()));
                }
                for (m, (step, w)) in self.steps.iter().zip(per_dim).enumerate() {
                    match (step, w) {
                        (Some(step), Some(w)) => {
                            let same = step.same_op.apply(h.get(m))?;
                            let cross = step.cross_op.apply(h.get(step.source))?;
                            let mut z = same.matmul(&w.same)?;
                            z.add_assign(&cross.matmul(&w.cross)?)?;
                            out.push(z.relu());
                            cache.conv.push(Some(ConvCache {
                                aggregated_same: same,
                                aggregated_cross: cross,
                                pre_activation: z,
                            }));
                        }
                        (None, None) => {
                            out.push(h.get(m).clone());
                            cache.conv.push(None);
                        }
                        _ => {
                            return Err(Error::DimensionMismatch(format!(
                                "layer parameters at dimension {m} do not match the scheme"
                            )))
                        }
                    }
                }
            }
            LayerParams::Hcmps { per_dim } => {
                if per_dim.len() != self.n + 1 {
                    return Err(Error::DimensionMismatch("layer parameters cover the wrong number of dimensions".into()));
                }
                for (m, w) in per_dim.iter().enumerate() {
                    let (o, c) = self.hcmps_dim_forward(h, m, w)?;
                    out.push(o);
                    cache.hcmps.push(c);
                }
            }
        }
        Ok((FeatureSet::from_parts(out), cache))
    }

    fn hcmps_dim_forward(&self, h: &FeatureSet, m: usize, w: &HcmpsWeights) -> Result<(DenseMatrix, HcmpsCache)> {
        let hm = h.get(m);
        let out_width = w.combine.ncols();
        let mut aggregate = DenseMatrix::zeros(hm.nrows(), out_width);
        let pairs = &self.pairs[m];
        let mut run = |list: &[(usize, usize)], theta: Option<&DenseMatrix>, src: Option<usize>| -> Result<(DenseMatrix, DenseMatrix)> {
            let (Some(theta), Some(src)) = (theta, src) else {
                return Ok((DenseMatrix::zeros(0, 0), DenseMatrix::zeros(0, 0)));
            };
            let hs = h.get(src);
            let mut inputs = DenseMatrix::zeros(list.len(), hm.ncols() + hs.ncols());
            for (p, &(xi, ai)) in list.iter().enumerate() {
                let row = inputs.row_mut(p);
                row[..hm.ncols()].copy_from_slice(hm.row(xi));
                row[hm.ncols()..].copy_from_slice(hs.row(ai));
            }
            let pre = inputs.matmul(theta)?;
            for (p, &(xi, _)) in list.iter().enumerate() {
                for (a, v) in aggregate.row_mut(xi).iter_mut().zip(pre.row(p)) {
                    *a += crate::numerics::relu(*v);
                }
            }
            Ok((inputs, pre))
        };
        let (face_inputs, face_pre) = run(&pairs.faces, w.from_faces.as_ref(), m.checked_sub(1))?;
        let (coface_inputs, coface_pre) = run(&pairs.cofaces, w.from_cofaces.as_ref(), (m < self.n).then_some(m + 1))?;
        let combined_input = hm.concat_cols(&aggregate)?;
        let pre_activation = combined_input.matmul(&w.combine)?;
        let out = pre_activation.relu();
        Ok((out, HcmpsCache { face_inputs, face_pre, coface_inputs, coface_pre, combined_input, pre_activation }))
    }

    /// Back-propagates `grad_out` (same shapes as the layer output). Returns
    /// parameter gradients laid out like `params` and the input gradient.
    pub fn backward(
        &self,
        cache: &LayerCache,
        params: &LayerParams,
        grad_out: &FeatureSet,
    ) -> Result<(LayerParams, FeatureSet)> {
        let mut grads = params.zeros_like();
        let mut dh: Vec<DenseMatrix> =
            (0..=self.n).map(|m| DenseMatrix::zeros(self.counts[m], cache.input_widths[m])).collect();
        match (params, &mut grads) {
            (LayerParams::Conv { per_dim, .. }, LayerParams::Conv { per_dim: gpd, .. }) => {
                for m in 0..=self.n {
                    match (&cache.conv[m], &self.steps[m], &per_dim[m], &mut gpd[m]) {
                        (Some(c), Some(step), Some(w), Some(gw)) => {
                            let gz = relu_mask(grad_out.get(m), &c.pre_activation)?;
                            gw.same = c.aggregated_same.t_matmul(&gz)?;
                            gw.cross = c.aggregated_cross.t_matmul(&gz)?;
                            dh[m].add_assign(&step.same_op.apply_transpose(&gz.matmul_t(&w.same)?)?)?;
                            let src = step.source;
                            dh[src].add_assign(&step.cross_op.apply_transpose(&gz.matmul_t(&w.cross)?)?)?;
                        }
                        _ => dh[m].add_assign(grad_out.get(m))?,
                    }
                }
            }
            (LayerParams::Hcmps { per_dim }, LayerParams::Hcmps { per_dim: gpd }) => {
                for m in 0..=self.n {
                    self.hcmps_dim_backward(&cache.hcmps[m], m, &per_dim[m], &mut gpd[m], grad_out.get(m), &mut dh)?;
                }
            }
            _ => unreachable!("gradient layout is cloned from params"),
        }
        Ok((grads, FeatureSet::from_parts(dh)))
    }

    fn hcmps_dim_backward(
        &self,
        c: &HcmpsCache,
        m: usize,
        w: &HcmpsWeights,
        gw: &mut HcmpsWeights,
        grad_out: &DenseMatrix,
        dh: &mut [DenseMatrix],
    ) -> Result<()> {
        let width_m = c.combined_input.ncols() - w.combine.ncols();
        let gz = relu_mask(grad_out, &c.pre_activation)?;
        gw.combine = c.combined_input.t_matmul(&gz)?;
        let d_combined = gz.matmul_t(&w.combine)?;
        let (d_self, d_aggregate) = d_combined.split_cols(width_m);
        dh[m].add_assign(&d_self)?;

        let pairs = &self.pairs[m];
        let directions = [
            (&pairs.faces, w.from_faces.as_ref(), gw.from_faces.as_mut(), &c.face_inputs, &c.face_pre, m.checked_sub(1)),
            (
                &pairs.cofaces,
                w.from_cofaces.as_ref(),
                gw.from_cofaces.as_mut(),
                &c.coface_inputs,
                &c.coface_pre,
                (m < self.n).then_some(m + 1),
            ),
        ];
        for (list, theta, gtheta, inputs, pre, src) in directions {
            let (Some(theta), Some(gtheta), Some(src)) = (theta, gtheta, src) else { continue };
            let mut d_pre = DenseMatrix::zeros(list.len(), theta.ncols());
            for (p, &(xi, _)) in list.iter().enumerate() {
                for ((d, &g), &z) in d_pre.row_mut(p).iter_mut().zip(d_aggregate.row(xi)).zip(pre.row(p)) {
                    *d = if z > 0.0 { g } else { 0.0 };
                }
            }
            *gtheta = inputs.t_matmul(&d_pre)?;
            let d_inputs = d_pre.matmul_t(theta)?;
            for (p, &(xi, ai)) in list.iter().enumerate() {
                let (left, right) = d_inputs.row(p).split_at(width_m);
                for (d, v) in dh[m].row_mut(xi).iter_mut().zip(left) {
                    *d += v;
                }
                for (d, v) in dh[src].row_mut(ai).iter_mut().zip(right) {
                    *d += v;
                }
            }
        }
        Ok(())
    }
}

/// `grad ⊙ 1[pre > 0]`.
fn relu_mask(grad: &DenseMatrix, pre: &DenseMatrix) -> Result<DenseMatrix> {
    if grad.shape() != pre.shape() {
        return Err(Error::shape("relu backward", grad.shape(), pre.shape()));
    }
    let mut out = grad.clone();
    for (g, &z) in out.as_mut_slice().iter_mut().zip(pre.as_slice()) {
        if z <= 0.0 {
            *g = 0.0;
        }
    }
    Ok(out)
}

/// One AMPS layer: `H'_m = relu(Â_m H_m Θ1_m + R_m B_m H_{m+1} Θ2_m)` for
/// `m < n`, `H'_n = H_n`.
pub fn amps_layer(x: &SimplicialComplex, h: &FeatureSet, params: &LayerParams) -> Result<FeatureSet> {
    Ok(Propagation::new(x, Scheme::Amps)?.forward(h, params)?.0)
}

/// One CMPS layer: co-adjacency on the same dimension, mean over facets from
/// the dimension below; `H'_0 = H_0`.
pub fn cmps_layer(x: &SimplicialComplex, h: &FeatureSet, params: &LayerParams) -> Result<FeatureSet> {
    Ok(Propagation::new(x, Scheme::Cmps)?.forward(h, params)?.0)
}

/// One HCMPS layer over facets ∪ cofacets with sum aggregation.
pub fn hcmps_layer(x: &SimplicialComplex, h: &FeatureSet, params: &LayerParams) -> Result<FeatureSet> {
    Ok(Propagation::new(x, Scheme::Hcmps)?.forward(h, params)?.0)
}
