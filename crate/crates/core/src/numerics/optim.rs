use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{sqrt, DenseMatrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OptimizerKind {
    Sgd,
    Adam { beta1: f64, beta2: f64, epsilon: f64 },
}

impl OptimizerKind {
    pub const fn adam() -> Self {
        OptimizerKind::Adam { beta1: 0.9, beta2: 0.999, epsilon: 1e-8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub kind: OptimizerKind,
    pub learning_rate: f64,
}

impl OptimizerConfig {
    pub const fn sgd(learning_rate: f64) -> Self {
        Self { kind: OptimizerKind::Sgd, learning_rate }
    }

    pub const fn adam(learning_rate: f64) -> Self {
        Self { kind: OptimizerKind::adam(), learning_rate }
    }
}

/// First-order optimizer. Moment buffers are allocated on the first step and
/// pinned to the shapes seen there.
#[derive(Debug, Clone)]
pub struct Optimizer {
    config: OptimizerConfig,
    step: u64,
    first_moment: Vec<DenseMatrix>,
    second_moment: Vec<DenseMatrix>,
}

impl Optimizer {
    pub fn new(config: OptimizerConfig) -> Self {
        Self { config, step: 0, first_moment: Vec::new(), second_moment: Vec::new() }
    }

    pub fn config(&self) -> &OptimizerConfig {
        &self.config
    }

    pub fn steps_taken(&self) -> u64 {
        self.step
    }

    pub fn step(&mut self, params: &mut [&mut DenseMatrix], grads: &[DenseMatrix]) -> Result<()> {
        if params.len() != grads.len() {
            return Err(Error::shape("optimizer_step", (params.len(), 1), (grads.len(), 1)));
        }
        for (p, g) in params.iter().zip(grads) {
            if p.shape() != g.shape() {
                return Err(Error::shape("optimizer_step", p.shape(), g.shape()));
            }
        }
        self.step += 1;
        let lr = self.config.learning_rate;
        match self.config.kind {
            OptimizerKind::Sgd => {
                for (p, g) in params.iter_mut().zip(grads) {
                    p.axpy(-lr, g)?;
                }
            }
            OptimizerKind::Adam { beta1, beta2, epsilon } => {
                if self.first_moment.is_empty() {
                    self.first_moment = grads.iter().map(|g| DenseMatrix::zeros(g.nrows(), g.ncols())).collect();
                    self.second_moment = self.first_moment.clone();
                }
                if self.first_moment.len() != grads.len() {
                    return Err(Error::shape(
                        "optimizer_step",
                        (self.first_moment.len(), 1),
                        (grads.len(), 1),
                    ));
                }
                let t = self.step as i32;
                let bias1 = 1.0 - libm::pow(beta1, t as f64);
                let bias2 = 1.0 - libm::pow(beta2, t as f64);
                for (((p, g), m), v) in params
                    .iter_mut()
                    .zip(grads)
                    .zip(self.first_moment.iter_mut())
                    .zip(self.second_moment.iter_mut())
                {
                    if m.shape() != g.shape() {
                        return Err(Error::shape("optimizer_step", m.shape(), g.shape()));
                    }
                    let ps = p.as_mut_slice();
                    let ms = m.as_mut_slice();
                    let vs = v.as_mut_slice();
                    for (((pi, &gi), mi), vi) in ps.iter_mut().zip(g.as_slice()).zip(ms).zip(vs) {
                        *mi = beta1 * *mi + (1.0 - beta1) * gi;
                        *vi = beta2 * *vi + (1.0 - beta2) * gi * gi;
                        let m_hat = *mi / bias1;
                        let v_hat = *vi / bias2;
                        *pi -= lr * m_hat / (sqrt(v_hat) + epsilon);
                    }
                }
            }
        }
        Ok(())
    }
}
