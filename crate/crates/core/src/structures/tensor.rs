use super::algebra::{AlgebraStructure, CoalgebraStructure};
use super::matrix::Matrix;
use crate::scalars::Scalar;

/// Dense tensor with one axis per tensor factor, stored row-major.
///
/// Every identity in the law catalog is assembled from these slot-wise
/// operations: apply a linear map on one slot, split a slot by a
/// comultiplication or coaction, multiply two slots together, permute slots.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<Scalar>,
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * shape[k + 1];
    }
    s
}

/// Decode a flat row-major offset into a multi-index.
pub fn unflatten(shape: &[usize], mut flat: usize) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for k in (0..shape.len()).rev() {
        if shape[k] > 0 {
            idx[k] = flat % shape[k];
            flat /= shape[k];
        }
    }
    idx
}

impl Tensor {
    pub fn zeros(shape: Vec<usize>) -> Self {
        let size = shape.iter().product();
        Tensor {
            shape,
            data: vec![Scalar::zero(); size],
        }
    }

    /// Rank-0 tensor.
    pub fn scalar(s: Scalar) -> Self {
        Tensor {
            shape: Vec::new(),
            data: vec![s],
        }
    }

    pub fn vector(v: Vec<Scalar>) -> Self {
        Tensor {
            shape: vec![v.len()],
            data: v,
        }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        Tensor {
            shape: vec![m.rows(), m.cols()],
            data: m.entries().to_vec(),
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.rank(), 2, "to_matrix needs a rank-2 tensor");
        Matrix::from_fn(self.shape[0], self.shape[1], |i, j| self.get(&[i, j]).clone())
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.shape)
            .fold(0, |acc, (&i, &n)| acc * n + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Scalar) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Nonzero entries with their multi-indices, in row-major order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(f, v)| (unflatten(&self.shape, f), v))
    }

    /// First nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, &Scalar)> {
        self.nonzero().next()
    }

    fn zip_with(&self, other: &Tensor, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Tensor {
        assert_eq!(self.shape, other.shape, "tensor shape mismatch");
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Tensor {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn neg(&self) -> Tensor {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    /// Tensor product `self ⊗ other`.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        let mut shape = self.shape.clone();
        shape.extend(&other.shape);
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(if a.is_zero() || b.is_zero() { Scalar::zero() } else { a * b });
            }
        }
        Tensor { shape, data }
    }

    /// Generic slot rewrite: each entry at `idx` contributes `value * w` at
    /// every `(new_idx, w)` produced by `f`.
    fn rewrite(
        &self,
        new_shape: Vec<usize>,
        mut f: impl FnMut(&[usize], &mut dyn FnMut(Vec<usize>, &Scalar)),
    ) -> Tensor {
        let mut out = Tensor::zeros(new_shape);
        let out_strides = strides(&out.shape);
        for (flat, v) in self.data.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let idx = unflatten(&self.shape, flat);
            let data = &mut out.data;
            f(&idx, &mut |new_idx: Vec<usize>, w: &Scalar| {
                if w.is_zero() {
                    return;
                }
                let o: usize = new_idx.iter().zip(&out_strides).map(|(i, s)| i * s).sum();
                data[o] += v * w;
            });
        }
        out
    }

    /// Apply the linear map `m` (row convention) to one slot.
    pub fn apply(&self, slot: usize, m: &Matrix) -> Tensor {
        assert_eq!(self.shape[slot], m.rows(), "operator does not fit slot {slot}");
        let mut shape = self.shape.clone();
        shape[slot] = m.cols();
        self.rewrite(shape, |idx, emit| {
            let i = idx[slot];
            for j in 0..m.cols() {
                let mut n = idx.to_vec();
                n[slot] = j;
                emit(n, m.get(i, j));
            }
        })
    }

    /// Replace one slot by the two output slots of `Δ`.
    pub fn comul(&self, slot: usize, c: &CoalgebraStructure) -> Tensor {
        let n = c.dim();
        assert_eq!(self.shape[slot], n, "coalgebra does not fit slot {slot}");
        let mut shape = self.shape.clone();
        shape.splice(slot..=slot, [n, n]);
        self.rewrite(shape, |idx, emit| {
            let k = idx[slot];
            for p in 0..n {
                for q in 0..n {
                    let mut t = idx.to_vec();
                    t.splice(slot..=slot, [p, q]);
                    emit(t, c.d(k, p, q));
                }
            }
        })
    }

    /// Replace a module slot (dim `m`) by the two slots `A ⊗ V` of a coaction
    /// given as an `m × (n·m)` matrix.
    pub fn coact(&self, slot: usize, coaction: &Matrix, n: usize) -> Tensor {
        let m = self.shape[slot];
        assert_eq!(coaction.rows(), m);
        assert_eq!(coaction.cols(), n * m);
        let mut shape = self.shape.clone();
        shape.splice(slot..=slot, [n, m]);
        self.rewrite(shape, |idx, emit| {
            let a = idx[slot];
            for i in 0..n {
                for b in 0..m {
                    let mut t = idx.to_vec();
                    t.splice(slot..=slot, [i, b]);
                    emit(t, coaction.get(a, i * m + b));
                }
            }
        })
    }

    /// Multiply slot `a` (left factor) with slot `b` (right factor); the
    /// product lands in slot `a` and slot `b` disappears.
    pub fn mul_slots(&self, a: usize, b: usize, alg: &AlgebraStructure) -> Tensor {
        assert_ne!(a, b);
        let n = alg.dim();
        let mut shape = self.shape.clone();
        shape.remove(b);
        let target = if b < a { a - 1 } else { a };
        self.rewrite(shape, |idx, emit| {
            let (i, j) = (idx[a], idx[b]);
            let mut base = idx.to_vec();
            base.remove(b);
            for k in 0..n {
                let mut t = base.clone();
                t[target] = k;
                emit(t, alg.c(i, j, k));
            }
        })
    }

    /// Contract slots `a` and `b` against the bilinear form `w` (`w[i][j]` with
    /// `i` from slot `a`); both slots disappear.
    pub fn pair(&self, a: usize, b: usize, w: &Matrix) -> Tensor {
        assert_ne!(a, b);
        let mut shape = self.shape.clone();
        let (hi, lo) = if a > b { (a, b) } else { (b, a) };
        shape.remove(hi);
        shape.remove(lo);
        self.rewrite(shape, |idx, emit| {
            let mut t = idx.to_vec();
            t.remove(hi);
            t.remove(lo);
            emit(t, w.get(idx[a], idx[b]));
        })
    }

    /// Contract one slot with a covector; the slot disappears.
    pub fn contract(&self, slot: usize, covector: &[Scalar]) -> Tensor {
        let mut shape = self.shape.clone();
        shape.remove(slot);
        self.rewrite(shape, |idx, emit| {
            let mut t = idx.to_vec();
            t.remove(slot);
            emit(t, &covector[idx[slot]]);
        })
    }

    /// Reorder slots: new slot `k` is old slot `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        assert_eq!(perm.len(), self.rank());
        let shape: Vec<usize> = perm.iter().map(|&p| self.shape[p]).collect();
        let one = Scalar::one();
        self.rewrite(shape, |idx, emit| {
            let t = perm.iter().map(|&p| idx[p]).collect();
            emit(t, &one);
        })
    }

    pub fn swap(&self, a: usize, b: usize) -> Tensor {
        let mut perm: Vec<usize> = (0..self.rank()).collect();
        perm.swap(a, b);
        self.permute(&perm)
    }
}

macro_rules! tensor_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl std::ops::$tr<&Tensor> for &Tensor {
            type Output = Tensor;
            fn $m(self, rhs: &Tensor) -> Tensor {
                Tensor::$inner(self, rhs)
            }
        }
        impl std::ops::$tr<Tensor> for Tensor {
            type Output = Tensor;
            fn $m(self, rhs: Tensor) -> Tensor {
                Tensor::$inner(&self, &rhs)
            }
        }
        impl std::ops::$tr<&Tensor> for Tensor {
            type Output = Tensor;
            fn $m(self, rhs: &Tensor) -> Tensor {
                Tensor::$inner(&self, rhs)
            }
        }
        impl std::ops::$tr<Tensor> for &Tensor {
            type Output = Tensor;
            fn $m(self, rhs: Tensor) -> Tensor {
                Tensor::$inner(self, &rhs)
            }
        }
    };
}

tensor_binop!(Add, add, add);
tensor_binop!(Sub, sub, sub);

impl std::ops::Neg for Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        Tensor::neg(&self)
    }
}
