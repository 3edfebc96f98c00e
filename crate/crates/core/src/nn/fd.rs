//! Finite-difference verification of reverse-mode gradients.
//!
//! Runs on a 64-bit shadow of the model under test: central differences
//! with a small step, compared element-by-element against the tape's
//! gradients. The standing requirement across the crate's differentiable
//! operations is a relative error below 1e-4.

use super::tape::{Tape, Var};
use super::tensor::Tensor;

/// Largest relative disagreement between tape gradients and central finite
/// differences of `build`, probing every element of every input tensor.
///
/// `build` must construct the same scalar loss every time it is called
/// with the same inputs; it receives the leaves in `tensors` order.
pub fn max_rel_grad_err<F>(tensors: &[Tensor<f64>], eps: f64, build: F) -> f64
where
    F: Fn(&mut Tape<f64>, &[Var]) -> Var,
{
    let eval = |ts: &[Tensor<f64>]| -> f64 {
        let mut tape = Tape::new();
        let vars: Vec<Var> = ts.iter().map(|t| tape.leaf(t.clone())).collect();
        let loss = build(&mut tape, &vars);
        tape.value(loss).get(0, 0)
    };

    let mut tape = Tape::new();
    let vars: Vec<Var> = tensors.iter().map(|t| tape.leaf(t.clone())).collect();
    let loss = build(&mut tape, &vars);
    let grads = tape.backward(loss);

    let mut work = tensors.to_vec();
    let mut worst = 0.0f64;
    for ti in 0..tensors.len() {
        for j in 0..tensors[ti].data.len() {
            let orig = work[ti].data[j];
            work[ti].data[j] = orig + eps;
            let up = eval(&work);
            work[ti].data[j] = orig - eps;
            let down = eval(&work);
            work[ti].data[j] = orig;
            let fd = (up - down) / (2.0 * eps);
            let ad = grads.get(vars[ti]).map(|g| g.data[j]).unwrap_or(0.0);
            let rel = (ad - fd).abs() / ad.abs().max(fd.abs()).max(1.0);
            if rel > worst {
                worst = rel;
            }
        }
    }
    worst
}
