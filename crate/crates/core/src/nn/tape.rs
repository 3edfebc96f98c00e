//! Reverse-mode automatic differentiation over a flat operation tape.
//!
//! Forward runs eagerly: every operation computes its value when recorded.
//! `backward` then walks the tape once in reverse, accumulating gradients
//! for every node, leaves included — which is how input-feature gradients
//! (needed by the soft logic loss) come out for free.
//!
//! The op set is exactly what the embedder, classifier, and losses need;
//! this is not a general autodiff system.

use super::sparse::SparseMatrix;
use super::tensor::{matmul, matmul_nt, matmul_tn, Scalar, Tensor};

/// Handle to a tape node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Var(usize);

enum Op<S> {
    Leaf,
    MatMul(Var, Var),
    /// Sparse-times-dense with a symmetric matrix; symmetry makes the
    /// backward product the same matrix.
    SpMM(usize, Var),
    Add(Var, Var),
    Sub(Var, Var),
    Mul(Var, Var),
    Scale(Var, S),
    AddScalar(Var, S),
    /// `x (n x d)` plus a `1 x d` bias broadcast over rows.
    AddRowBias(Var, Var),
    Relu(Var),
    Sigmoid(Var),
    SumAll(Var),
    /// Row multiset selection; duplicate indices are allowed and their
    /// gradients accumulate.
    GatherRows(Var, Vec<usize>),
    /// Writes row `j` of `src` into row `rows[j]` of an otherwise-zero
    /// matrix, starting at column `col`. Target rows must be distinct.
    PlaceRows { src: Var, rows: Vec<usize>, col: usize },
    /// Mean binary cross-entropy between logits (`n x 1`) and fixed
    /// targets, in the numerically stable log-sum-exp form.
    BceWithLogits { logits: Var, targets: Vec<S> },
}

pub struct Tape<S> {
    values: Vec<Tensor<S>>,
    ops: Vec<Op<S>>,
    sparse: Vec<SparseMatrix<S>>,
}

/// Gradients of one scalar output with respect to every tape node.
pub struct Gradients<S> {
    grads: Vec<Option<Tensor<S>>>,
}

impl<S: Scalar> Gradients<S> {
    /// Gradient with respect to `v`; `None` when the loss does not depend
    /// on it.
    pub fn get(&self, v: Var) -> Option<&Tensor<S>> {
        self.grads[v.0].as_ref()
    }
}

impl<S: Scalar> Default for Tape<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> Tape<S> {
    pub fn new() -> Self {
        Tape { values: Vec::new(), ops: Vec::new(), sparse: Vec::new() }
    }

    fn push(&mut self, value: Tensor<S>, op: Op<S>) -> Var {
        self.values.push(value);
        self.ops.push(op);
        Var(self.values.len() - 1)
    }

    pub fn value(&self, v: Var) -> &Tensor<S> {
        &self.values[v.0]
    }

    pub fn leaf(&mut self, t: Tensor<S>) -> Var {
        self.push(t, Op::Leaf)
    }

    /// Register a symmetric propagation matrix for [`Tape::spmm`].
    pub fn sparse(&mut self, m: SparseMatrix<S>) -> usize {
        self.sparse.push(m);
        self.sparse.len() - 1
    }

    pub fn matmul(&mut self, a: Var, b: Var) -> Var {
        let v = matmul(self.value(a), self.value(b));
        self.push(v, Op::MatMul(a, b))
    }

    pub fn spmm(&mut self, m: usize, x: Var) -> Var {
        let v = self.sparse[m].matmul(self.value(x));
        self.push(v, Op::SpMM(m, x))
    }

    pub fn add(&mut self, a: Var, b: Var) -> Var {
        assert_eq!(self.value(a).shape(), self.value(b).shape(), "add shape mismatch");
        let v = zip(self.value(a), self.value(b), |x, y| x + y);
        self.push(v, Op::Add(a, b))
    }

    pub fn sub(&mut self, a: Var, b: Var) -> Var {
        assert_eq!(self.value(a).shape(), self.value(b).shape(), "sub shape mismatch");
        let v = zip(self.value(a), self.value(b), |x, y| x - y);
        self.push(v, Op::Sub(a, b))
    }

    pub fn mul(&mut self, a: Var, b: Var) -> Var {
        assert_eq!(self.value(a).shape(), self.value(b).shape(), "mul shape mismatch");
        let v = zip(self.value(a), self.value(b), |x, y| x * y);
        self.push(v, Op::Mul(a, b))
    }

    pub fn scale(&mut self, x: Var, c: S) -> Var {
        let v = self.value(x).map(|v| v * c);
        self.push(v, Op::Scale(x, c))
    }

    pub fn add_scalar(&mut self, x: Var, c: S) -> Var {
        let v = self.value(x).map(|v| v + c);
        self.push(v, Op::AddScalar(x, c))
    }

    pub fn add_row_bias(&mut self, x: Var, bias: Var) -> Var {
        let (xv, bv) = (self.value(x), self.value(bias));
        assert_eq!(bv.rows, 1, "bias must be a row vector");
        assert_eq!(xv.cols, bv.cols, "bias width mismatch");
        let mut out = xv.clone();
        for r in 0..out.rows {
            for (o, &b) in out.row_mut(r).iter_mut().zip(&bv.data) {
                *o = *o + b;
            }
        }
        self.push(out, Op::AddRowBias(x, bias))
    }

    pub fn relu(&mut self, x: Var) -> Var {
        let v = self.value(x).map(|v| if v > S::zero() { v } else { S::zero() });
        self.push(v, Op::Relu(x))
    }

    pub fn sigmoid(&mut self, x: Var) -> Var {
        let v = self.value(x).map(|v| S::of(sigmoid(v.f64())));
        self.push(v, Op::Sigmoid(x))
    }

    pub fn sum_all(&mut self, x: Var) -> Var {
        let total: f64 = self.value(x).data.iter().map(|v| v.f64()).sum();
        self.push(Tensor::scalar(S::of(total)), Op::SumAll(x))
    }

    pub fn gather_rows(&mut self, x: Var, rows: Vec<usize>) -> Var {
        let xv = self.value(x);
        let mut out = Tensor::zeros(rows.len(), xv.cols);
        for (j, &r) in rows.iter().enumerate() {
            out.row_mut(j).copy_from_slice(xv.row(r));
        }
        self.push(out, Op::GatherRows(x, rows))
    }

    pub fn place_rows(
        &mut self,
        src: Var,
        rows: Vec<usize>,
        col: usize,
        rows_out: usize,
        cols_out: usize,
    ) -> Var {
        let sv = self.value(src);
        assert_eq!(sv.rows, rows.len(), "one target row per source row");
        assert!(col + sv.cols <= cols_out, "placed block exceeds output width");
        debug_assert!(
            {
                let mut sorted = rows.clone();
                sorted.sort_unstable();
                sorted.windows(2).all(|w| w[0] != w[1])
            },
            "target rows must be distinct"
        );
        let width = sv.cols;
        let mut out = Tensor::zeros(rows_out, cols_out);
        for (j, &r) in rows.iter().enumerate() {
            out.row_mut(r)[col..col + width].copy_from_slice(sv.row(j));
        }
        self.push(out, Op::PlaceRows { src, rows, col })
    }

    pub fn bce_with_logits(&mut self, logits: Var, targets: Vec<S>) -> Var {
        let lv = self.value(logits);
        assert_eq!(lv.cols, 1, "logits must be a column");
        assert_eq!(lv.rows, targets.len(), "one target per logit");
        let n = targets.len() as f64;
        let mut total = 0.0f64;
        for (l, t) in lv.data.iter().zip(&targets) {
            let (x, y) = (l.f64(), t.f64());
            total += x.max(0.0) - x * y + (-x.abs()).exp().ln_1p();
        }
        self.push(Tensor::scalar(S::of(total / n)), Op::BceWithLogits { logits, targets })
    }

    /// Reverse pass from a `1 x 1` loss node.
    pub fn backward(&self, loss: Var) -> Gradients<S> {
        assert_eq!(self.value(loss).shape(), (1, 1), "loss must be scalar");
        let mut grads: Vec<Option<Tensor<S>>> = vec![None; self.values.len()];
        grads[loss.0] = Some(Tensor::scalar(S::one()));

        for i in (0..self.ops.len()).rev() {
            let g = match grads[i].take() {
                Some(g) => g,
                None => continue,
            };
            match &self.ops[i] {
                Op::Leaf => {}
                Op::MatMul(a, b) => {
                    let ga = matmul_nt(&g, self.value(*b));
                    let gb = matmul_tn(self.value(*a), &g);
                    accumulate(&mut grads, *a, ga);
                    accumulate(&mut grads, *b, gb);
                }
                Op::SpMM(m, x) => {
                    let gx = self.sparse[*m].matmul(&g);
                    accumulate(&mut grads, *x, gx);
                }
                Op::Add(a, b) => {
                    accumulate(&mut grads, *a, g.clone());
                    accumulate(&mut grads, *b, g);
                }
                Op::Sub(a, b) => {
                    accumulate(&mut grads, *b, g.map(|v| -v));
                    accumulate(&mut grads, *a, g);
                }
                Op::Mul(a, b) => {
                    let ga = zip(&g, self.value(*b), |x, y| x * y);
                    let gb = zip(&g, self.value(*a), |x, y| x * y);
                    accumulate(&mut grads, *a, ga);
                    accumulate(&mut grads, *b, gb);
                }
                Op::Scale(x, c) => {
                    let c = *c;
                    accumulate(&mut grads, *x, g.map(|v| v * c));
                }
                Op::AddScalar(x, _) => accumulate(&mut grads, *x, g),
                Op::AddRowBias(x, bias) => {
                    let mut gb = Tensor::zeros(1, g.cols);
                    for r in 0..g.rows {
                        for (o, &v) in gb.data.iter_mut().zip(g.row(r)) {
                            *o = *o + v;
                        }
                    }
                    accumulate(&mut grads, *bias, gb);
                    accumulate(&mut grads, *x, g);
                }
                Op::Relu(x) => {
                    let gx = zip(&g, &self.values[i], |gv, y| {
                        if y > S::zero() {
                            gv
                        } else {
                            S::zero()
                        }
                    });
                    accumulate(&mut grads, *x, gx);
                }
                Op::Sigmoid(x) => {
                    let gx = zip(&g, &self.values[i], |gv, y| gv * y * (S::one() - y));
                    accumulate(&mut grads, *x, gx);
                }
                Op::SumAll(x) => {
                    let seed = g.get(0, 0);
                    let (r, c) = self.value(*x).shape();
                    let gx = Tensor::from_vec(r, c, vec![seed; r * c]);
                    accumulate(&mut grads, *x, gx);
                }
                Op::GatherRows(x, rows) => {
                    let mut gx = Tensor::zeros(self.value(*x).rows, g.cols);
                    for (j, &r) in rows.iter().enumerate() {
                        for (o, &v) in gx.row_mut(r).iter_mut().zip(g.row(j)) {
                            *o = *o + v;
                        }
                    }
                    accumulate(&mut grads, *x, gx);
                }
                Op::PlaceRows { src, rows, col, .. } => {
                    let width = self.value(*src).cols;
                    let mut gs = Tensor::zeros(rows.len(), width);
                    for (j, &r) in rows.iter().enumerate() {
                        gs.row_mut(j).copy_from_slice(&g.row(r)[*col..*col + width]);
                    }
                    accumulate(&mut grads, *src, gs);
                }
                Op::BceWithLogits { logits, targets } => {
                    let seed = g.get(0, 0).f64();
                    let lv = self.value(*logits);
                    let n = targets.len() as f64;
                    let mut gl = Tensor::zeros(lv.rows, 1);
                    for (j, (l, t)) in lv.data.iter().zip(targets).enumerate() {
                        gl.data[j] = S::of(seed * (sigmoid(l.f64()) - t.f64()) / n);
                    }
                    accumulate(&mut grads, *logits, gl);
                }
            }
        }
        Gradients { grads }
    }
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

fn zip<S: Scalar, F: Fn(S, S) -> S>(a: &Tensor<S>, b: &Tensor<S>, f: F) -> Tensor<S> {
    Tensor {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(&x, &y)| f(x, y)).collect(),
    }
}

fn accumulate<S: Scalar>(grads: &mut [Option<Tensor<S>>], v: Var, g: Tensor<S>) {
    match &mut grads[v.0] {
        Some(acc) => acc.add_scaled(&g, S::one()),
        slot @ None => *slot = Some(g),
    }
}
