//! Minimal deterministic neural kernel.
//!
//! Dense tensors with explicit scalar precision, a flat reverse-mode
//! autodiff tape covering exactly the operations the embedder and losses
//! need, graph-convolution and perceptron stacks, Adam, finite-difference
//! gradient checking, and a binary checkpoint container. No ML framework,
//! no hidden global state: results are bit-reproducible from seeds.

mod adam;
mod checkpoint;
mod fd;
mod layers;
mod sparse;
mod tape;
mod tensor;

pub use adam::Adam;
pub use checkpoint::{load_checkpoint, save_checkpoint};
pub use fd::max_rel_grad_err;
pub use layers::{DenseLayer, GcnParams, MlpParams};
pub use sparse::{normalized_adjacency, SparseMatrix};
pub use tape::{Gradients, Tape, Var};
pub use tensor::{matmul, matmul_nt, matmul_tn, Scalar, Tensor};
