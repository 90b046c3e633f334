use alloc::vec::Vec;
use core::ops::Range;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::message_passing::{FeatureSet, LayerCache, LayerParams, Propagation, Scheme};
use crate::numerics::{glorot_uniform, DenseMatrix, Parameters, Rng};

/// Parameters of an `L`-layer message-passing stack.
#[derive(Debug, Clone, PartialEq)]
pub struct CxnParams {
    scheme: Scheme,
    width: usize,
    layers: Vec<LayerParams>,
}

impl CxnParams {
    fn build(
        x: &SimplicialComplex,
        scheme: Scheme,
        in_widths: &[usize],
        width: usize,
        num_layers: usize,
        mut make: impl FnMut(usize, usize) -> DenseMatrix,
    ) -> Result<Self> {
        if num_layers == 0 {
            return Err(Error::InvalidConfig("a message-passing encoder needs at least one layer".into()));
        }
        if width == 0 {
            return Err(Error::InvalidConfig("layer width must be positive".into()));
        }
        let mut widths = in_widths.to_vec();
        let mut layers = Vec::with_capacity(num_layers);
        for _ in 0..num_layers {
            let layer = LayerParams::build(scheme, x.dim(), &widths, width, &mut make)?;
            widths = layer.output_widths(&widths);
            layers.push(layer);
        }
        Ok(Self { scheme, width, layers })
    }

    /// Glorot-uniform initialization.
    pub fn init(
        x: &SimplicialComplex,
        scheme: Scheme,
        in_widths: &[usize],
        width: usize,
        num_layers: usize,
        rng: &mut Rng,
    ) -> Result<Self> {
        Self::build(x, scheme, in_widths, width, num_layers, |r, c| glorot_uniform(r, c, rng))
    }

    /// Every weight set to `value`.
    pub fn constant(
        x: &SimplicialComplex,
        scheme: Scheme,
        in_widths: &[usize],
        width: usize,
        num_layers: usize,
        value: f64,
    ) -> Result<Self> {
        Self::build(x, scheme, in_widths, width, num_layers, |r, c| DenseMatrix::filled(r, c, value))
    }

    pub fn from_layers(scheme: Scheme, width: usize, layers: Vec<LayerParams>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::InvalidConfig("a message-passing encoder needs at least one layer".into()));
        }
        if layers.iter().any(|l| l.scheme() != scheme) {
            return Err(Error::InvalidConfig("layers mix message-passing schemes".into()));
        }
        Ok(Self { scheme, width, layers })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn layers(&self) -> &[LayerParams] {
        &self.layers
    }
}

impl Parameters for CxnParams {
    fn tensors(&self) -> Vec<&DenseMatrix> {
        self.layers.iter().flat_map(|l| l.tensors()).collect()
    }

    fn tensors_mut(&mut self) -> Vec<&mut DenseMatrix> {
        self.layers.iter_mut().flat_map(|l| l.tensors_mut()).collect()
    }
}

/// Forward state of a full stack.
#[derive(Debug, Clone)]
pub struct EncoderPass {
    caches: Vec<LayerCache>,
    output: FeatureSet,
}

impl EncoderPass {
    pub fn output(&self) -> &FeatureSet {
        &self.output
    }
}

/// A message-passing encoder bound to one complex.
#[derive(Debug, Clone)]
pub struct CxnEncoder {
    propagation: Propagation,
    embedded: Range<usize>,
    counts: Vec<usize>,
}

impl CxnEncoder {
    pub fn new(x: &SimplicialComplex, scheme: Scheme) -> Result<Self> {
        Ok(Self {
            propagation: Propagation::new(x, scheme)?,
            embedded: scheme.embedded_dims(x.dim()),
            counts: x.counts(),
        })
    }

    pub fn scheme(&self) -> Scheme {
        self.propagation.scheme()
    }

    /// Dimensions present in the embedding table.
    pub fn embedded_dims(&self) -> Range<usize> {
        self.embedded.clone()
    }

    pub fn forward(&self, input: &FeatureSet, params: &CxnParams) -> Result<EncoderPass> {
        if params.scheme != self.scheme() {
            return Err(Error::InvalidConfig("encoder parameters belong to another scheme".into()));
        }
        let mut caches = Vec::with_capacity(params.layers.len());
        let mut h = input.clone();
        for layer in &params.layers {
            let (next, cache) = self.propagation.forward(&h, layer)?;
            caches.push(cache);
            h = next;
        }
        Ok(EncoderPass { caches, output: h })
    }

    /// The embedding table `U_X`: rows of the embedded dimensions in canonical order.
    pub fn embeddings(&self, pass: &EncoderPass, params: &CxnParams) -> Result<DenseMatrix> {
        pass.output.stack(self.embedded.clone(), params.width)
    }

    /// Gradient of the parameters given `dL/dU_X`.
    pub fn backward(&self, pass: &EncoderPass, params: &CxnParams, grad_embeddings: &DenseMatrix) -> Result<CxnParams> {
        let rows: usize = self.embedded.clone().map(|m| self.counts[m]).sum();
        if grad_embeddings.shape() != (rows, params.width) {
            return Err(Error::shape("CxnEncoder::backward", grad_embeddings.shape(), (rows, params.width)));
        }
        let mut grad = pass.output.zeros_like();
        let mut start = 0;
        for m in self.embedded.clone() {
            let end = start + self.counts[m];
            *grad.get_mut(m) = grad_embeddings.row_range(start, end);
            start = end;
        }
        let mut layer_grads = Vec::with_capacity(params.layers.len());
        for (layer, cache) in params.layers.iter().zip(&pass.caches).rev() {
            let (g, dh) = self.propagation.backward(cache, layer, &grad)?;
            layer_grads.push(g);
            grad = dh;
        }
        layer_grads.reverse();
        Ok(CxnParams { scheme: params.scheme, width: params.width, layers: layer_grads })
    }
}

/// Applies the `L` layers of `params` and returns `U_X` over the scheme's
/// embedded simplex set (`X^{<n}`, `X^{>0}` or all of `X`).
pub fn cxn_encode(x: &SimplicialComplex, input: &FeatureSet, params: &CxnParams) -> Result<DenseMatrix> {
    let encoder = CxnEncoder::new(x, params.scheme())?;
    let pass = encoder.forward(input, params)?;
    encoder.embeddings(&pass, params)
}
