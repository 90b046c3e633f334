use crate::autoencoder::DecoderKind;
use crate::error::{Error, Result};
use crate::numerics::{dot, exp, squared_distance, DenseMatrix};

/// Scores the pair `(a, c)`. `context` holds every embedding of the relevant
/// `X^k` and is only consulted by the softmax decoder, which normalizes
/// `exp(z_aᵀ z_c)` over `exp(z_aᵀ z_b)` for all rows `b`.
pub fn decode(kind: DecoderKind, z_a: &[f64], z_c: &[f64], context: &DenseMatrix) -> Result<f64> {
    if z_a.len() != z_c.len() {
        return Err(Error::shape("decode", (1, z_a.len()), (1, z_c.len())));
    }
    match kind {
        DecoderKind::Laplacian => Ok(squared_distance(z_a, z_c)),
        DecoderKind::InnerProduct => Ok(dot(z_a, z_c)),
        DecoderKind::SoftmaxRw => {
            if context.nrows() == 0 {
                return Err(Error::EmptyContext);
            }
            if context.ncols() != z_a.len() {
                return Err(Error::shape("decode", (1, z_a.len()), context.shape()));
            }
            let target = dot(z_a, z_c);
            let shift = context.rows().map(|z_b| dot(z_a, z_b)).fold(target, f64::max);
            let denom: f64 = context.rows().map(|z_b| exp(dot(z_a, z_b) - shift)).sum();
            Ok(exp(target - shift) / denom)
        }
    }
}
