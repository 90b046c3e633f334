//! Dense/sparse kernels, nonlinearities, optimizers, gradient checking and
//! seeded randomness shared by every trainable module.

mod dense;
mod eigen;
mod gradcheck;
mod optim;
mod rng;
mod sparse;

pub use dense::{dot, squared_distance, DenseMatrix};
pub use eigen::symmetric_eigen;
pub use gradcheck::{finite_difference_check, CoordinateSample};
pub use optim::{Optimizer, OptimizerConfig, OptimizerKind};
pub use rng::{glorot_uniform, streams, Rng, RngState};
pub use sparse::SparseOperator;

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn relu(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// Logistic function, evaluated without overflow for large `|x|`.
#[inline]
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + exp(-x))
    } else {
        let e = exp(x);
        e / (1.0 + e)
    }
}

/// A bundle of trainable tensors in a fixed order.
pub trait Parameters {
    fn tensors(&self) -> alloc::vec::Vec<&DenseMatrix>;
    fn tensors_mut(&mut self) -> alloc::vec::Vec<&mut DenseMatrix>;

    fn cloned_tensors(&self) -> alloc::vec::Vec<DenseMatrix> {
        self.tensors().into_iter().cloned().collect()
    }

    /// Overwrites every tensor from `values`, which must match in count and shape.
    fn load_tensors(&mut self, values: &[DenseMatrix]) -> crate::Result<()> {
        let mut targets = self.tensors_mut();
        if targets.len() != values.len() {
            return Err(crate::Error::shape("load_tensors", (targets.len(), 1), (values.len(), 1)));
        }
        for (t, v) in targets.iter_mut().zip(values) {
            if t.shape() != v.shape() {
                return Err(crate::Error::shape("load_tensors", t.shape(), v.shape()));
            }
            **t = v.clone();
        }
        Ok(())
    }
}
