//! Graph-convolution and perceptron layer stacks.
//!
//! Both stacks use ReLU on hidden layers and a linear final layer, with
//! uniform fan-in initialization. Each offers a pure evaluation forward
//! (fast, finiteness-checked) and a taped forward for training.

use rand::Rng;

use super::sparse::SparseMatrix;
use super::tape::{Tape, Var};
use super::tensor::{matmul, Scalar, Tensor};
use crate::{Error, Result};

/// One affine layer: weights `d_in x d_out`, bias `1 x d_out`.
#[derive(Clone, Debug)]
pub struct DenseLayer<S> {
    pub w: Tensor<S>,
    pub b: Tensor<S>,
}

impl<S: Scalar> DenseLayer<S> {
    pub fn init<R: Rng>(d_in: usize, d_out: usize, rng: &mut R) -> Self {
        let bound = 1.0 / (d_in as f64).sqrt();
        DenseLayer { w: Tensor::uniform(d_in, d_out, bound, rng), b: Tensor::zeros(1, d_out) }
    }
}

/// Weights of a multi-layer graph-convolution network
/// `H_{l+1} = act(Â H_l W_l + b_l)`.
#[derive(Clone, Debug)]
pub struct GcnParams<S> {
    pub layers: Vec<DenseLayer<S>>,
}

/// Weights of a multilayer perceptron.
#[derive(Clone, Debug)]
pub struct MlpParams<S> {
    pub layers: Vec<DenseLayer<S>>,
}

fn init_layers<S: Scalar, R: Rng>(dims: &[usize], rng: &mut R) -> Vec<DenseLayer<S>> {
    assert!(dims.len() >= 2, "need at least one layer");
    dims.windows(2).map(|d| DenseLayer::init(d[0], d[1], rng)).collect()
}

fn check_chain<S: Scalar>(layers: &[DenseLayer<S>], d_in: usize) -> Result<()> {
    let mut d = d_in;
    for (i, l) in layers.iter().enumerate() {
        if l.w.rows != d || l.b.cols != l.w.cols {
            return Err(Error::DimMismatch(format!(
                "layer {i}: expected input {d}, weights are {}x{}, bias 1x{}",
                l.w.rows, l.w.cols, l.b.cols
            )));
        }
        d = l.w.cols;
    }
    Ok(())
}

impl<S: Scalar> GcnParams<S> {
    /// `dims = [d_in, hidden.., d_out]`.
    pub fn init<R: Rng>(dims: &[usize], rng: &mut R) -> Self {
        GcnParams { layers: init_layers(dims, rng) }
    }

    pub fn in_dim(&self) -> usize {
        self.layers.first().expect("nonempty stack").w.rows
    }

    pub fn out_dim(&self) -> usize {
        self.layers.last().expect("nonempty stack").w.cols
    }

    /// Evaluation forward pass: returns final-layer node embeddings.
    pub fn forward_eval(&self, adj: &SparseMatrix<S>, x: &Tensor<S>) -> Result<Tensor<S>> {
        if x.cols != self.in_dim() {
            return Err(Error::DimMismatch(format!(
                "feature dim {} does not match first layer input {}",
                x.cols,
                self.in_dim()
            )));
        }
        check_chain(&self.layers, x.cols)?;
        let last = self.layers.len() - 1;
        let mut h = x.clone();
        for (i, l) in self.layers.iter().enumerate() {
            let mut z = adj.matmul(&matmul(&h, &l.w));
            for r in 0..z.rows {
                for (zv, &bv) in z.row_mut(r).iter_mut().zip(&l.b.data) {
                    *zv = *zv + bv;
                }
            }
            h = if i < last {
                z.map(|v| if v > S::zero() { v } else { S::zero() })
            } else {
                z
            };
        }
        if !h.is_finite() {
            return Err(Error::NonFinite("graph convolution output".into()));
        }
        Ok(h)
    }

    /// Taped forward pass; `vars` must come from [`GcnParams::bind`].
    pub fn forward_tape(&self, tape: &mut Tape<S>, adj: usize, x: Var, vars: &[Var]) -> Var {
        assert_eq!(vars.len(), 2 * self.layers.len(), "one (w, b) var pair per layer");
        let last = self.layers.len() - 1;
        let mut h = x;
        for i in 0..self.layers.len() {
            let hw = tape.matmul(h, vars[2 * i]);
            let agg = tape.spmm(adj, hw);
            let z = tape.add_row_bias(agg, vars[2 * i + 1]);
            h = if i < last { tape.relu(z) } else { z };
        }
        h
    }

    /// Insert the weights as tape leaves, `[w0, b0, w1, b1, ..]`.
    pub fn bind(&self, tape: &mut Tape<S>) -> Vec<Var> {
        bind_layers(&self.layers, tape)
    }

    /// All tensors in binding order.
    pub fn tensors(&self) -> Vec<&Tensor<S>> {
        self.layers.iter().flat_map(|l| [&l.w, &l.b]).collect()
    }

    pub fn tensors_mut(&mut self) -> Vec<&mut Tensor<S>> {
        self.layers.iter_mut().flat_map(|l| [&mut l.w, &mut l.b]).collect()
    }
}

impl<S: Scalar> MlpParams<S> {
    pub fn init<R: Rng>(dims: &[usize], rng: &mut R) -> Self {
        MlpParams { layers: init_layers(dims, rng) }
    }

    pub fn in_dim(&self) -> usize {
        self.layers.first().expect("nonempty stack").w.rows
    }

    pub fn forward_eval(&self, x: &Tensor<S>) -> Result<Tensor<S>> {
        check_chain(&self.layers, x.cols)?;
        let last = self.layers.len() - 1;
        let mut h = x.clone();
        for (i, l) in self.layers.iter().enumerate() {
            let mut z = matmul(&h, &l.w);
            for r in 0..z.rows {
                for (zv, &bv) in z.row_mut(r).iter_mut().zip(&l.b.data) {
                    *zv = *zv + bv;
                }
            }
            h = if i < last {
                z.map(|v| if v > S::zero() { v } else { S::zero() })
            } else {
                z
            };
        }
        if !h.is_finite() {
            return Err(Error::NonFinite("perceptron output".into()));
        }
        Ok(h)
    }

    pub fn forward_tape(&self, tape: &mut Tape<S>, x: Var, vars: &[Var]) -> Var {
        assert_eq!(vars.len(), 2 * self.layers.len(), "one (w, b) var pair per layer");
        let last = self.layers.len() - 1;
        let mut h = x;
        for i in 0..self.layers.len() {
            let hw = tape.matmul(h, vars[2 * i]);
            let z = tape.add_row_bias(hw, vars[2 * i + 1]);
            h = if i < last { tape.relu(z) } else { z };
        }
        h
    }

    pub fn bind(&self, tape: &mut Tape<S>) -> Vec<Var> {
        bind_layers(&self.layers, tape)
    }

    pub fn tensors(&self) -> Vec<&Tensor<S>> {
        self.layers.iter().flat_map(|l| [&l.w, &l.b]).collect()
    }

    pub fn tensors_mut(&mut self) -> Vec<&mut Tensor<S>> {
        self.layers.iter_mut().flat_map(|l| [&mut l.w, &mut l.b]).collect()
    }
}

fn bind_layers<S: Scalar>(layers: &[DenseLayer<S>], tape: &mut Tape<S>) -> Vec<Var> {
    layers
        .iter()
        .flat_map(|l| [tape.leaf(l.w.clone()), tape.leaf(l.b.clone())])
        .collect()
}
