//! Sparse propagation matrices for graph convolution.

use std::collections::BTreeSet;

use super::tensor::{Scalar, Tensor};

/// Symmetric sparse matrix in compressed-row form.
#[derive(Clone, Debug)]
pub struct SparseMatrix<S> {
    pub n: usize,
    row_ptr: Vec<usize>,
    col: Vec<usize>,
    val: Vec<S>,
}

impl<S: Scalar> SparseMatrix<S> {
    /// `self (n x n) * x (n x d)`, accumulating in `f64`.
    pub fn matmul(&self, x: &Tensor<S>) -> Tensor<S> {
        assert_eq!(self.n, x.rows, "sparse matmul dimensions must agree");
        let d = x.cols;
        let mut out = vec![0.0f64; self.n * d];
        for i in 0..self.n {
            let orow = &mut out[i * d..(i + 1) * d];
            for e in self.row_ptr[i]..self.row_ptr[i + 1] {
                let w = self.val[e].f64();
                let xrow = x.row(self.col[e]);
                for (o, &v) in orow.iter_mut().zip(xrow) {
                    *o += w * v.f64();
                }
            }
        }
        Tensor { rows: self.n, cols: d, data: out.into_iter().map(S::of).collect() }
    }
}

/// The normalized propagation matrix `D^{-1/2} (A + I) D^{-1/2}`, where `A`
/// is the symmetrized 0/1 adjacency of the arc list. Duplicate and
/// reversed arcs collapse to one undirected edge; self-loops are added
/// once. Symmetry is what lets backward reuse the same matrix.
pub fn normalized_adjacency<S: Scalar>(n: usize, arcs: &[(usize, usize)]) -> SparseMatrix<S> {
    let mut pairs = BTreeSet::new();
    for i in 0..n {
        pairs.insert((i, i));
    }
    for &(a, b) in arcs {
        assert!(a < n && b < n, "arc endpoint out of range");
        pairs.insert((a, b));
        pairs.insert((b, a));
    }
    let mut degree = vec![0usize; n];
    for &(a, _) in &pairs {
        degree[a] += 1;
    }
    let inv_sqrt: Vec<f64> = degree.iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();

    let mut row_ptr = vec![0usize; n + 1];
    let mut col = Vec::with_capacity(pairs.len());
    let mut val = Vec::with_capacity(pairs.len());
    // BTreeSet iterates (row, col) sorted, exactly CSR order.
    for &(a, b) in &pairs {
        row_ptr[a + 1] += 1;
        col.push(b);
        val.push(S::of(inv_sqrt[a] * inv_sqrt[b]));
    }
    for i in 0..n {
        row_ptr[i + 1] += row_ptr[i];
    }
    SparseMatrix { n, row_ptr, col, val }
}
