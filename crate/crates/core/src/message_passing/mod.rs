//! Geometric message passing on simplicial complexes.
//!
//! Three schemes are provided, all with exact backward passes:
//!
//! - **AMPS**: `H'_m = relu(Â_m H_m Θ1_m + R_m B_m H_{m+1} Θ2_m)` for `m < n`,
//!   where `Â_m` is the self-loop, symmetrically normalized `A^m_adj` and
//!   `R_m B_m` averages over cofaces. `H_n` is passed through.
//! - **CMPS**: the mirror image with `A^m_co` and an average over faces;
//!   `H_0` is passed through.
//! - **HCMPS**: `h' = relu([h, Σ_{a ∈ faces ∪ cofaces} relu([h, h_a] Φ)] A)`,
//!   updating every dimension.

mod encoder;
mod features;
mod layers;

pub use encoder::{cxn_encode, CxnEncoder, CxnParams, EncoderPass};
pub use features::{init_features, structural_features_raw, FeatureSet, InitScheme, STRUCTURAL_WIDTH};
pub use layers::{
    amps_layer, cmps_layer, hcmps_layer, normalized_with_self_loops, ConvWeights, HcmpsWeights, LayerCache,
    LayerParams, Propagation, Scheme,
};
