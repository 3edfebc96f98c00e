//! Dense row-major matrices over a generic float scalar.
//!
//! The working precision is `f32`; `f64` instantiations back the
//! finite-difference gradient checks. Reductions accumulate in `f64`
//! either way, which keeps results reproducible and gives the checks
//! headroom.

use std::fmt::Debug;

use num_traits::Float;
use rand::Rng;

/// Scalar types the kernel runs on.
pub trait Scalar: Float + Debug + Default + Send + Sync + 'static {
    fn of(v: f64) -> Self;
    fn f64(self) -> f64;
}

impl Scalar for f32 {
    fn of(v: f64) -> f32 {
        v as f32
    }
    fn f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    fn of(v: f64) -> f64 {
        v
    }
    fn f64(self) -> f64 {
        self
    }
}

/// A dense matrix; vectors are `1 x d` rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<S> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> Tensor<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Tensor { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must match shape");
        Tensor { rows, cols, data }
    }

    pub fn scalar(v: S) -> Self {
        Tensor { rows: 1, cols: 1, data: vec![v] }
    }

    /// Uniform init on `(-bound, bound)`, sampled in `f64` so every scalar
    /// type sees the same stream.
    pub fn uniform<R: Rng>(rows: usize, cols: usize, bound: f64, rng: &mut R) -> Self {
        let data = (0..rows * cols)
            .map(|_| S::of((rng.random::<f64>() * 2.0 - 1.0) * bound))
            .collect();
        Tensor { rows, cols, data }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [S] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// `self += other * factor`.
    pub fn add_scaled(&mut self, other: &Tensor<S>, factor: S) {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add_scaled");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = *a + *b * factor;
        }
    }

    pub fn map<F: Fn(S) -> S>(&self, f: F) -> Tensor<S> {
        Tensor { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn cast<T: Scalar>(&self) -> Tensor<T> {
        Tensor {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| T::of(v.f64())).collect(),
        }
    }
}

/// `a (m x k) * b (k x n)`, accumulating in `f64`.
pub fn matmul<S: Scalar>(a: &Tensor<S>, b: &Tensor<S>) -> Tensor<S> {
    assert_eq!(a.cols, b.rows, "matmul inner dimensions must agree");
    let (m, k, n) = (a.rows, a.cols, b.cols);
    let mut out = vec![0.0f64; m * n];
    for i in 0..m {
        let arow = a.row(i);
        for (kk, &av) in arow.iter().enumerate().take(k) {
            let av = av.f64();
            if av == 0.0 {
                continue;
            }
            let brow = b.row(kk);
            let orow = &mut out[i * n..(i + 1) * n];
            for (o, &bv) in orow.iter_mut().zip(brow) {
                *o += av * bv.f64();
            }
        }
    }
    Tensor { rows: m, cols: n, data: out.into_iter().map(S::of).collect() }
}

/// `a (m x k) * b^T (n x k)`.
pub fn matmul_nt<S: Scalar>(a: &Tensor<S>, b: &Tensor<S>) -> Tensor<S> {
    assert_eq!(a.cols, b.cols, "matmul_nt inner dimensions must agree");
    let (m, n) = (a.rows, b.rows);
    let mut out = Tensor::zeros(m, n);
    for i in 0..m {
        let arow = a.row(i);
        for j in 0..n {
            let brow = b.row(j);
            let mut acc = 0.0f64;
            for (&av, &bv) in arow.iter().zip(brow) {
                acc += av.f64() * bv.f64();
            }
            out.set(i, j, S::of(acc));
        }
    }
    out
}

/// `a^T (k x m) * b (k x n)`.
pub fn matmul_tn<S: Scalar>(a: &Tensor<S>, b: &Tensor<S>) -> Tensor<S> {
    assert_eq!(a.rows, b.rows, "matmul_tn inner dimensions must agree");
    let (k, m, n) = (a.rows, a.cols, b.cols);
    let mut out = vec![0.0f64; m * n];
    for kk in 0..k {
        let arow = a.row(kk);
        let brow = b.row(kk);
        for (i, &av) in arow.iter().enumerate().take(m) {
            let av = av.f64();
            if av == 0.0 {
                continue;
            }
            let orow = &mut out[i * n..(i + 1) * n];
            for (o, &bv) in orow.iter_mut().zip(brow) {
                *o += av * bv.f64();
            }
        }
    }
    Tensor { rows: m, cols: n, data: out.into_iter().map(S::of).collect() }
}
