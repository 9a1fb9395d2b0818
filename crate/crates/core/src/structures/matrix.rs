use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Coordinate vector of scalars.
pub type Vector = Vec<Scalar>;

/// Dense matrix of scalars.
///
/// When used as a linear map the convention is row-wise:
/// `F(e_i) = Σ_j M[i][j] e_j`, so `apply(x)_j = Σ_i x_i M[i][j]`
/// and the map "first F, then G" has matrix `M_F · M_G`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Linear map `F(e_i) = Σ_j M[i][j] e_j`.
pub type LinearOperator = Matrix;
/// Bilinear form with `M[i][j] = ω(e_i, e_j)`.
pub type BilinearForm = Matrix;
/// Element `Σ M[i][j] e_i ⊗ e_j` of `A ⊗ A`.
pub type TensorElement = Matrix;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::dim("matrix row", c, row.len()));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Square matrix from integer entries, handy in tests and fixtures.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        Self::from_rows(v).expect("ragged integer matrix")
    }

    pub fn diag(entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// Image of the row vector `x` under the map: `Σ_i x_i M[i][·]`.
    pub fn apply(&self, x: &[Scalar]) -> Vector {
        debug_assert_eq!(x.len(), self.rows);
        let mut out = vec![Scalar::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o += xi * m;
                }
            }
        }
        out
    }

    pub fn checked_apply(&self, x: &[Scalar]) -> Result<Vector> {
        if x.len() != self.rows {
            return Err(Error::dim("operator input", self.rows, x.len()));
        }
        Ok(self.apply(x))
    }

    /// Ordinary matrix product `self · other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix of the composite map `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &Matrix) -> Matrix {
        inner.mul(self)
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        self.map(|a| a * s)
    }

    pub fn neg(&self) -> Matrix {
        self.map(|a| -a)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Determinant by fraction-field Gaussian elimination.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Scalar::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination; `what` names the matrix in errors.
    pub fn inverse(&self, what: &str) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::dim(format!("inverse of {what}"), self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut b = Matrix::identity(n).to_rows();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Err(Error::NotInvertible(what.to_string()));
            };
            a.swap(p, col);
            b.swap(p, col);
            let inv = a[col][col].inv()?;
            for c in 0..n {
                a[col][c] = &a[col][c] * &inv;
                b[col][c] = &b[col][c] * &inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let ta = &f * &a[col][c];
                    a[r][c] -= ta;
                    let tb = &f * &b[col][c];
                    b[r][c] -= tb;
                }
            }
        }
        Matrix::from_rows(b)
    }
}

/// The flip `e_i ⊗ e_j ↦ e_j ⊗ e_i` on a two-tensor, i.e. the transpose.
pub fn flip(t: &Matrix) -> Matrix {
    t.transpose()
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], s: &Scalar) -> Vector {
    a.iter().map(|x| x * s).collect()
}

/// Basis vector `e_i` of length `n`.
pub fn basis_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}
