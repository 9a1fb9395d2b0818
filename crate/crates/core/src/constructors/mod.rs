//! Builders that produce new structures from given ones.
//!
//! Builders never check the hypotheses of the results they come from; pair
//! each output with the law it is expected to satisfy and check that.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::scalars::{ParamRing, Scalar};
use crate::structures::{
    basis_vector, names, AlgebraStructure, BilinearForm, Bundle, CoalgebraStructure, LinearOperator,
    Matrix, PiDescriptor, Representation, TensorElement,
};

/// A bundle on a direct sum `X ⊕ Y`, with the index ranges of both summands.
#[derive(Clone, Debug)]
pub struct ProductBundle {
    pub ambient: Bundle,
    pub first: Range<usize>,
    pub second: Range<usize>,
}

fn same(context: &str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::dim(context, expected, found));
    }
    Ok(())
}

fn square(context: &str, m: &Matrix, n: usize) -> Result<()> {
    same(context, n, m.rows())?;
    same(context, n, m.cols())
}

/// `Δ_r(x) = Σ x∘a_i ⊗ b_i + a_i ⊗ x∘b_i − a_i ⊗ b_i∘x` for `r = Σ a_i ⊗ b_i`.
pub fn delta_from_r(a: &AlgebraStructure, r: &TensorElement) -> Result<CoalgebraStructure> {
    let n = a.dim();
    square("delta_from_r: r", r, n)?;
    let mut d = CoalgebraStructure::zero(n);
    for (i, j) in (0..n).flat_map(|i| (0..n).map(move |j| (i, j))) {
        let rij = r.get(i, j);
        if rij.is_zero() {
            continue;
        }
        for k in 0..n {
            for p in 0..n {
                // e_k∘e_i ⊗ e_j
                let c = a.c(k, i, p);
                if !c.is_zero() {
                    let v = d.d(k, p, j) + &(rij * c);
                    d.set(k, p, j, v);
                }
                // e_i ⊗ e_k∘e_j − e_i ⊗ e_j∘e_k
                let c = a.c(k, j, p) - a.c(j, k, p);
                if !c.is_zero() {
                    let v = d.d(k, i, p) + &(rij * &c);
                    d.set(k, i, p, v);
                }
            }
        }
    }
    Ok(d)
}

/// `x ∘_ω y = x_(1) ω(x_(2), y) + y_(1) ω(x, y_(2)) − ω(x, y_(1)) y_(2)`.
pub fn circ_from_omega(c: &CoalgebraStructure, w: &BilinearForm) -> Result<AlgebraStructure> {
    let n = c.dim();
    square("circ_from_omega: omega", w, n)?;
    Ok(AlgebraStructure::from_fn(n, |i, j, p| {
        let mut acc = Scalar::zero();
        for q in 0..n {
            acc += c.d(i, p, q) * w.get(q, j);
            acc += c.d(j, p, q) * w.get(i, q);
            acc -= c.d(j, q, p) * w.get(i, q);
        }
        acc
    }))
}

/// `N(x) = Σ ω(x, a_i) b_i`, i.e. the matrix product `ω · r`.
pub fn nijenhuis_from_pairing(a: &AlgebraStructure, w: &BilinearForm, r: &TensorElement) -> Result<LinearOperator> {
    let n = a.dim();
    square("nijenhuis_from_pairing: omega", w, n)?;
    square("nijenhuis_from_pairing: r", r, n)?;
    Ok(w.mul(r))
}

/// `S(x) = Σ a_i ω(b_i, x)`, i.e. `(r · ω)^T`.
pub fn conijenhuis_from_pairing(c: &CoalgebraStructure, r: &TensorElement, w: &BilinearForm) -> Result<LinearOperator> {
    let n = c.dim();
    square("conijenhuis_from_pairing: r", r, n)?;
    square("conijenhuis_from_pairing: omega", w, n)?;
    Ok(r.mul(w).transpose())
}

/// `r^♯: A* → A`, `e^i ↦ Σ_j r[i][j] e_j`; the matrix of `r` itself.
pub fn r_sharp(r: &TensorElement) -> LinearOperator {
    r.clone()
}

/// Whether `r^♯` is invertible, i.e. its determinant is not the zero Scalar.
pub fn is_nondegenerate(r: &TensorElement) -> bool {
    r.is_square() && !r.det().is_zero()
}

/// `ω_r(x, y) = ⟨(r^♯)⁻¹ x, y⟩`: the inverse matrix of `r`.
pub fn omega_from_r(r: &TensorElement) -> Result<BilinearForm> {
    r.inverse("r")
}

/// `(L, R)`: `ρ(e_i) = L_{e_i}`, `φ(e_i) = R_{e_i}`.
pub fn regular_representation(a: &AlgebraStructure) -> Representation {
    let n = a.dim();
    let rho = (0..n).map(|i| a.left(&basis_vector(n, i))).collect();
    let phi = (0..n).map(|i| a.right(&basis_vector(n, i))).collect();
    Representation { alg_dim: n, rep_dim: n, rho, phi }
}

/// `(V*, ρ* − φ*, −φ*)` where `ρ*(x) = −ρ(x)^T`; with row-convention matrices
/// this is `(φ(x)^T − ρ(x)^T, φ(x)^T)`.
pub fn dual_representation(rep: &Representation) -> Representation {
    let rho = rep.rho.iter().zip(&rep.phi).map(|(r, p)| p.transpose().sub(&r.transpose())).collect();
    let phi = rep.phi.iter().map(Matrix::transpose).collect();
    Representation { alg_dim: rep.alg_dim, rep_dim: rep.rep_dim, rho, phi }
}

/// Product `(x+u)∘(y+v) = x∘y + ρ(x)v + φ(y)u` on `A ⊕ V` with operator `N + α`.
pub fn semidirect_product(
    ring: &ParamRing,
    a: &AlgebraStructure,
    op: &LinearOperator,
    rep: &Representation,
    alpha: &LinearOperator,
) -> Result<ProductBundle> {
    let (n, m) = (a.dim(), rep.rep_dim);
    same("semidirect_product: representation", n, rep.alg_dim)?;
    square("semidirect_product: N", op, n)?;
    square("semidirect_product: alpha", alpha, m)?;
    let alg = AlgebraStructure::from_fn(n + m, |i, j, k| match (i < n, j < n, k < n) {
        (true, true, true) => a.c(i, j, k).clone(),
        (true, false, false) => rep.rho[i].get(j - n, k - n).clone(),
        (false, true, false) => rep.phi[j].get(i - n, k - n).clone(),
        _ => Scalar::zero(),
    });
    let ambient = Bundle::new(ring.clone(), n + m)
        .with_alg(alg)
        .with_operator(names::N, direct_sum(op, alpha));
    Ok(ProductBundle { ambient, first: 0..n, second: n..n + m })
}

/// Block-diagonal `f ⊕ g`.
pub fn direct_sum(f: &Matrix, g: &Matrix) -> Matrix {
    let (n, m) = (f.rows(), g.rows());
    Matrix::from_fn(n + m, f.cols() + g.cols(), |i, j| match (i < n, j < f.cols()) {
        (true, true) => f.get(i, j).clone(),
        (false, false) => g.get(i - n, j - f.cols()).clone(),
        _ => Scalar::zero(),
    })
}

/// Assemble the members read by MATCHED_PAIR: the A side provides `mul` and
/// `N`, the H side its algebra and `N` (stored as `H` and `N_H`).
pub fn matched_pair_bundle(
    a_side: &Bundle,
    h_side: &Bundle,
    a_on_h: Representation,
    h_on_a: Representation,
) -> Result<Bundle> {
    let law = "matched_pair";
    let h = h_side.get_alg(law)?.clone();
    let nh = h_side.get_operator(law, names::N)?.clone();
    a_side.get_alg(law)?;
    a_side.get_operator(law, names::N)?;
    Ok(a_side
        .clone()
        .with_algebra(names::H, h)
        .with_operator(names::N_H, nh)
        .with_rep(names::A_ON_H, a_on_h)
        .with_rep(names::H_ON_A, h_on_a))
}

/// `(x+a)⋆(y+b) = x∘y + ρ_H(a)y + φ_H(b)x + a∘b + ρ_A(x)b + φ_A(y)a` with
/// operator `N_A + N_H`; `a_on_h = (ρ_A, φ_A)`, `h_on_a = (ρ_H, φ_H)`.
pub fn matched_pair_product(
    a_side: &Bundle,
    h_side: &Bundle,
    a_on_h: &Representation,
    h_on_a: &Representation,
) -> Result<ProductBundle> {
    let law = "matched_pair_product";
    let a = a_side.get_alg(law)?;
    let h = h_side.get_alg(law)?;
    let na = a_side.get_operator(law, names::N)?;
    let nh = h_side.get_operator(law, names::N)?;
    let (n, m) = (a.dim(), h.dim());
    same("matched_pair_product: A_on_H algebra", n, a_on_h.alg_dim)?;
    same("matched_pair_product: A_on_H module", m, a_on_h.rep_dim)?;
    same("matched_pair_product: H_on_A algebra", m, h_on_a.alg_dim)?;
    same("matched_pair_product: H_on_A module", n, h_on_a.rep_dim)?;
    let alg = AlgebraStructure::from_fn(n + m, |i, j, k| match (i < n, j < n, k < n) {
        (true, true, true) => a.c(i, j, k).clone(),
        (false, false, false) => h.c(i - n, j - n, k - n).clone(),
        // e_i ⋆ h_b: φ_H(h_b) e_i in A, ρ_A(e_i) h_b in H
        (true, false, true) => h_on_a.phi[j - n].get(i, k).clone(),
        (true, false, false) => a_on_h.rho[i].get(j - n, k - n).clone(),
        // h_a ⋆ e_j: ρ_H(h_a) e_j in A, φ_A(e_j) h_a in H
        (false, true, true) => h_on_a.rho[i - n].get(j, k).clone(),
        (false, true, false) => a_on_h.phi[j].get(i - n, k - n).clone(),
        _ => Scalar::zero(),
    });
    let ambient = Bundle::new(a_side.ring.clone(), n + m)
        .with_alg(alg)
        .with_operator(names::N, direct_sum(na, nh));
    Ok(ProductBundle { ambient, first: 0..n, second: n..n + m })
}

/// `Δ_{s,t} = s·Δ₁ + t·Δ₂`.
pub fn coalgebra_pencil(c1: &CoalgebraStructure, c2: &CoalgebraStructure, s: &Scalar, t: &Scalar) -> Result<CoalgebraStructure> {
    same("coalgebra_pencil", c1.dim(), c2.dim())?;
    Ok(CoalgebraStructure::from_fn(c1.dim(), |k, i, j| {
        &(s * c1.d(k, i, j)) + &(t * c2.d(k, i, j))
    }))
}

/// `x⋆y = x∘y + ω(x, y)c` on `A ⊕ Kc`, with `c` annihilating everything.
pub fn central_extension(a: &AlgebraStructure, w: &BilinearForm) -> Result<AlgebraStructure> {
    let n = a.dim();
    square("central_extension: omega", w, n)?;
    Ok(AlgebraStructure::from_fn(n + 1, |i, j, k| {
        if i == n || j == n {
            Scalar::zero()
        } else if k == n {
            w.get(i, j).clone()
        } else {
            a.c(i, j, k).clone()
        }
    }))
}

/// `[x, y] = x∘y − y∘x` and `δ = Δ − τΔ`; all other members carried over.
pub fn induced_lie_bialgebra(b: &Bundle) -> Result<Bundle> {
    let law = "induced_lie_bialgebra";
    let a = b.get_alg(law)?;
    let c = b.get_coalg(law)?;
    let bracket = AlgebraStructure::from_fn(a.dim(), |i, j, k| a.c(i, j, k) - a.c(j, i, k));
    let cobracket = CoalgebraStructure::from_fn(c.dim(), |k, i, j| c.d(k, i, j) - c.d(k, j, i));
    Ok(b.clone().with_alg(bracket).with_coalg(cobracket))
}

/// Data for lifting an O-operator `T: V → A` to a solution on `A ⋉ V*`.
#[derive(Clone, Debug)]
pub struct OOperatorData<'a> {
    pub alg: &'a AlgebraStructure,
    pub n: &'a LinearOperator,
    pub rep: &'a Representation,
    pub alpha: &'a LinearOperator,
    pub beta: &'a LinearOperator,
    /// `m × n` matrix of `T: V → A`.
    pub t: &'a Matrix,
    pub s: &'a LinearOperator,
}

/// Ambient `A ⋉_{ρ*−φ*, −φ*} V*` with `N + β*`, `S + α*` and
/// `r = T + τ(T) = Σ T(v_a) ⊗ v^a + v^a ⊗ T(v_a)`.
pub fn lift_o_operator_to_r(ring: &ParamRing, d: &OOperatorData<'_>) -> Result<(ProductBundle, TensorElement)> {
    let (n, m) = (d.alg.dim(), d.rep.rep_dim);
    same("lift_o_operator_to_r: T rows", m, d.t.rows())?;
    same("lift_o_operator_to_r: T columns", n, d.t.cols())?;
    square("lift_o_operator_to_r: beta", d.beta, m)?;
    square("lift_o_operator_to_r: S", d.s, n)?;
    let dual = dual_representation(d.rep);
    let mut pb = semidirect_product(ring, d.alg, d.n, &dual, &d.beta.transpose())?;
    square("lift_o_operator_to_r: alpha", d.alpha, m)?;
    let r = Matrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
        (true, false) => d.t.get(j - n, i).clone(),
        (false, true) => d.t.get(i - n, j).clone(),
        _ => Scalar::zero(),
    });
    pb.ambient = pb
        .ambient
        .with_operator(names::S, direct_sum(d.s, &d.alpha.transpose()))
        .with_tensor(names::R, r.clone());
    Ok((pb, r))
}

/// As [`lift_o_operator_to_r`] with `β = Π(α)` and `S = Π(N)`.
pub fn lift_o_operator_with_pi(
    ring: &ParamRing,
    alg: &AlgebraStructure,
    n: &LinearOperator,
    rep: &Representation,
    alpha: &LinearOperator,
    t: &Matrix,
    pi: &PiDescriptor,
) -> Result<(ProductBundle, TensorElement)> {
    let beta = pi.apply(alpha, "alpha")?;
    let s = pi.apply(n, "N")?;
    lift_o_operator_to_r(ring, &OOperatorData { alg, n, rep, alpha, beta: &beta, t, s: &s })
}

/// The second condition of the lifting equivalence, `T∘β = S∘T`, as a matrix
/// residual (`β·T − T·S` in row convention).
pub fn intertwining_residual(t: &Matrix, beta: &LinearOperator, s: &LinearOperator) -> Matrix {
    beta.mul(t).sub(&t.mul(s))
}
