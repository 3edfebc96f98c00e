//! Adam optimizer with bias correction.

use super::tensor::{Scalar, Tensor};

/// One optimizer instance owns the update state for a fixed list of
/// parameter tensors, identified by position across calls.
pub struct Adam<S> {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    t: u64,
    m: Vec<Tensor<S>>,
    v: Vec<Tensor<S>>,
}

impl<S: Scalar> Adam<S> {
    pub fn new(lr: f64) -> Self {
        Adam { lr, beta1: 0.9, beta2: 0.999, eps: 1e-8, t: 0, m: Vec::new(), v: Vec::new() }
    }

    pub fn steps_taken(&self) -> u64 {
        self.t
    }

    /// One update. `grads[i]` pairs with `params[i]`; `None` means zero
    /// gradient (the moments still decay). Parameter order and shapes must
    /// stay fixed for the lifetime of the optimizer.
    pub fn step(&mut self, params: &mut [&mut Tensor<S>], grads: &[Option<&Tensor<S>>]) {
        assert_eq!(params.len(), grads.len(), "one gradient slot per parameter");
        if self.m.is_empty() {
            self.m = params.iter().map(|p| Tensor::zeros(p.rows, p.cols)).collect();
            self.v = self.m.clone();
        }
        assert_eq!(self.m.len(), params.len(), "parameter list changed size");
        self.t += 1;
        let bc1 = 1.0 - self.beta1.powi(self.t as i32);
        let bc2 = 1.0 - self.beta2.powi(self.t as i32);

        for (i, p) in params.iter_mut().enumerate() {
            if let Some(g) = grads[i] {
                assert_eq!(p.shape(), g.shape(), "gradient shape mismatch");
            }
            let (m, v) = (&mut self.m[i], &mut self.v[i]);
            for j in 0..p.data.len() {
                let g = grads[i].map(|g| g.data[j].f64()).unwrap_or(0.0);
                let mj = self.beta1 * m.data[j].f64() + (1.0 - self.beta1) * g;
                let vj = self.beta2 * v.data[j].f64() + (1.0 - self.beta2) * g * g;
                m.data[j] = S::of(mj);
                v.data[j] = S::of(vj);
                let step = self.lr * (mj / bc1) / ((vj / bc2).sqrt() + self.eps);
                p.data[j] = S::of(p.data[j].f64() - step);
            }
        }
    }
}
