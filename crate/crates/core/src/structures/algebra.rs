use super::matrix::{Matrix, Vector};
use super::tensor::Tensor;
use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Multiplication constants: `e_i ∘ e_j = Σ_k c[i][j][k] e_k`.
///
/// No axiom is implied by the type. The same type carries Lie brackets.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraStructure {
    dim: usize,
    mul: Vec<Scalar>,
}

impl AlgebraStructure {
    pub fn zero(dim: usize) -> Self {
        AlgebraStructure {
            dim,
            mul: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        let mut mul = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    mul.push(f(i, j, k));
                }
            }
        }
        AlgebraStructure { dim, mul }
    }

    /// Build from a list of `(i, j, k, value)` entries (0-based), others zero.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Self {
        let mut a = Self::zero(dim);
        for (i, j, k, v) in entries {
            a.set(i, j, k, v);
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.mul[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let n = self.dim;
        self.mul[(i * n + j) * n + k] = v;
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.mul
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        AlgebraStructure {
            dim: self.dim,
            mul: self.mul.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        Ok(AlgebraStructure {
            dim: self.dim,
            mul: self.mul.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// `x ∘ y` without dimension checks.
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        out
    }

    /// `(x∘y)_k = Σ_{i,j} x_i y_j c[i][j][k]`.
    pub fn mul_apply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        if x.len() != self.dim {
            return Err(Error::dim("left factor", self.dim, x.len()));
        }
        if y.len() != self.dim {
            return Err(Error::dim("right factor", self.dim, y.len()));
        }
        Ok(self.product(x, y))
    }

    /// Matrix of `L_x: y ↦ x∘y`.
    pub fn left(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim;
        Matrix::from_fn(n, n, |j, k| {
            x.iter()
                .enumerate()
                .filter(|(_, xi)| !xi.is_zero())
                .map(|(i, xi)| xi * self.c(i, j, k))
                .sum()
        })
    }

    /// Matrix of `R_x: y ↦ y∘x`.
    pub fn right(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim;
        Matrix::from_fn(n, n, |j, k| {
            x.iter()
                .enumerate()
                .filter(|(_, xi)| !xi.is_zero())
                .map(|(i, xi)| xi * self.c(j, i, k))
                .sum()
        })
    }
}

/// Comultiplication constants: `Δ(e_k) = Σ_{i,j} d[k][i][j] e_i ⊗ e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoalgebraStructure {
    dim: usize,
    comul: Vec<Scalar>,
}

impl CoalgebraStructure {
    pub fn zero(dim: usize) -> Self {
        CoalgebraStructure {
            dim,
            comul: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        let mut comul = Vec::with_capacity(dim * dim * dim);
        for k in 0..dim {
            for i in 0..dim {
                for j in 0..dim {
                    comul.push(f(k, i, j));
                }
            }
        }
        CoalgebraStructure { dim, comul }
    }

    /// Build from `(k, i, j, value)` entries (0-based), others zero.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Self {
        let mut c = Self::zero(dim);
        for (k, i, j, v) in entries {
            c.set(k, i, j, v);
        }
        c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn d(&self, k: usize, i: usize, j: usize) -> &Scalar {
        &self.comul[(k * self.dim + i) * self.dim + j]
    }

    pub fn set(&mut self, k: usize, i: usize, j: usize, v: Scalar) {
        let n = self.dim;
        self.comul[(k * n + i) * n + j] = v;
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.comul
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        CoalgebraStructure {
            dim: self.dim,
            comul: self.comul.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        Ok(CoalgebraStructure {
            dim: self.dim,
            comul: self.comul.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// `Δ(x)` as an `n×n` coefficient matrix, `Δ(x)[i][j] = Σ_k x_k d[k][i][j]`.
    pub fn comul_apply(&self, x: &[Scalar]) -> Result<Matrix> {
        if x.len() != self.dim {
            return Err(Error::dim("comultiplication input", self.dim, x.len()));
        }
        let n = self.dim;
        Ok(Matrix::from_fn(n, n, |i, j| {
            x.iter()
                .enumerate()
                .filter(|(_, xk)| !xk.is_zero())
                .map(|(k, xk)| xk * self.d(k, i, j))
                .sum()
        }))
    }

    /// `Δ(x)` as a rank-2 tensor.
    pub fn coproduct(&self, x: &[Scalar]) -> Tensor {
        Tensor::vector(x.to_vec()).comul(0, self)
    }

    /// The algebra on the dual space: `c*[i][j][k] = d[k][i][j]`.
    pub fn dual_algebra(&self) -> AlgebraStructure {
        AlgebraStructure::from_fn(self.dim, |i, j, k| self.d(k, i, j).clone())
    }
}

impl AlgebraStructure {
    /// The coalgebra on the dual space: `d*[k][i][j] = c[i][j][k]`.
    pub fn dual_coalgebra(&self) -> CoalgebraStructure {
        CoalgebraStructure::from_fn(self.dim, |k, i, j| self.c(i, j, k).clone())
    }
}

/// Pair of actions `ρ, φ: A → End(V)` with
/// `ρ(e_i) f_a = Σ_b rho[i][a][b] f_b` (row convention per matrix).
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub alg_dim: usize,
    pub rep_dim: usize,
    pub rho: Vec<Matrix>,
    pub phi: Vec<Matrix>,
}

impl Representation {
    pub fn zero(alg_dim: usize, rep_dim: usize) -> Self {
        Representation {
            alg_dim,
            rep_dim,
            rho: vec![Matrix::zeros(rep_dim, rep_dim); alg_dim],
            phi: vec![Matrix::zeros(rep_dim, rep_dim); alg_dim],
        }
    }

    pub fn new(rho: Vec<Matrix>, phi: Vec<Matrix>, rep_dim: usize) -> Result<Self> {
        if rho.len() != phi.len() {
            return Err(Error::dim("representation families", rho.len(), phi.len()));
        }
        for m in rho.iter().chain(&phi) {
            if m.rows() != rep_dim || m.cols() != rep_dim {
                return Err(Error::dim("representation matrix", rep_dim, m.rows().max(m.cols())));
            }
        }
        Ok(Representation {
            alg_dim: rho.len(),
            rep_dim,
            rho,
            phi,
        })
    }

    fn combine(family: &[Matrix], x: &[Scalar], m: usize) -> Matrix {
        let mut out = Matrix::zeros(m, m);
        for (xi, mat) in x.iter().zip(family) {
            if !xi.is_zero() {
                out = out.add(&mat.scale(xi));
            }
        }
        out
    }

    /// Matrix of `ρ(x)`.
    pub fn rho_of(&self, x: &[Scalar]) -> Matrix {
        Self::combine(&self.rho, x, self.rep_dim)
    }

    /// Matrix of `φ(x)`.
    pub fn phi_of(&self, x: &[Scalar]) -> Matrix {
        Self::combine(&self.phi, x, self.rep_dim)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar + Copy) -> Self {
        Representation {
            alg_dim: self.alg_dim,
            rep_dim: self.rep_dim,
            rho: self.rho.iter().map(|m| m.map(f)).collect(),
            phi: self.phi.iter().map(|m| m.map(f)).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar> + Copy) -> Result<Self> {
        Ok(Representation {
            alg_dim: self.alg_dim,
            rep_dim: self.rep_dim,
            rho: self.rho.iter().map(|m| m.try_map(f)).collect::<Result<_>>()?,
            phi: self.phi.iter().map(|m| m.try_map(f)).collect::<Result<_>>()?,
        })
    }
}

/// Pair of coactions `ξ, η: V → A ⊗ V`, each an `m × (n·m)` matrix with
/// `ξ(f_a) = Σ_{i,b} xi[a][i·m + b] e_i ⊗ f_b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Corepresentation {
    pub coalg_dim: usize,
    pub corep_dim: usize,
    pub xi: Matrix,
    pub eta: Matrix,
}

impl Corepresentation {
    pub fn zero(coalg_dim: usize, corep_dim: usize) -> Self {
        Corepresentation {
            coalg_dim,
            corep_dim,
            xi: Matrix::zeros(corep_dim, coalg_dim * corep_dim),
            eta: Matrix::zeros(corep_dim, coalg_dim * corep_dim),
        }
    }

    pub fn new(coalg_dim: usize, corep_dim: usize, xi: Matrix, eta: Matrix) -> Result<Self> {
        for m in [&xi, &eta] {
            if m.rows() != corep_dim {
                return Err(Error::dim("coaction rows", corep_dim, m.rows()));
            }
            if m.cols() != coalg_dim * corep_dim {
                return Err(Error::dim("coaction columns", coalg_dim * corep_dim, m.cols()));
            }
        }
        Ok(Corepresentation {
            coalg_dim,
            corep_dim,
            xi,
            eta,
        })
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar + Copy) -> Self {
        Corepresentation {
            coalg_dim: self.coalg_dim,
            corep_dim: self.corep_dim,
            xi: self.xi.map(f),
            eta: self.eta.map(f),
        }
    }

    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar> + Copy) -> Result<Self> {
        Ok(Corepresentation {
            coalg_dim: self.coalg_dim,
            corep_dim: self.corep_dim,
            xi: self.xi.try_map(f)?,
            eta: self.eta.try_map(f)?,
        })
    }

    pub fn add(&self, other: &Corepresentation) -> Corepresentation {
        Corepresentation {
            coalg_dim: self.coalg_dim,
            corep_dim: self.corep_dim,
            xi: self.xi.add(&other.xi),
            eta: self.eta.add(&other.eta),
        }
    }
}
