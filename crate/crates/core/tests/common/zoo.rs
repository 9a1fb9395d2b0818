//! Small parameter-free algebras and random data for sweeps.

use num_rational::BigRational;
use prelie_core::constructors::{regular_representation, semidirect_product};
use prelie_core::scalars::{ParamRing, Scalar};
use prelie_core::structures::{fixture, names, AlgebraStructure, Bundle, CoalgebraStructure, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// A nonzero small rational.
pub fn nonzero_rational(rng: &mut impl Rng) -> BigRational {
    loop {
        let n = rng.gen_range(-5..=5);
        if n != 0 {
            return qr(n, rng.gen_range(1..=3));
        }
    }
}

pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    Scalar::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| random_scalar(rng))
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let s = random_scalar(rng);
            m.set(i, j, s.clone());
            m.set(j, i, s);
        }
    }
    m
}

/// `x∘y` on the two-dimensional example family with parameter `l`.
pub fn ex_alg(l: BigRational) -> AlgebraStructure {
    fixture("ExAlg", Some(&[("l", l)])).unwrap().alg.unwrap()
}

/// `K[x]/(x^n)` on the basis `1, x, …, x^{n-1}`.
pub fn truncated(n: usize) -> AlgebraStructure {
    AlgebraStructure::from_fn(n, |i, j, k| if i + j == k { Scalar::one() } else { Scalar::zero() })
}

/// `xK[x]/(x^{n+1})` on the basis `x, …, x^n`.
pub fn nilpotent(n: usize) -> AlgebraStructure {
    AlgebraStructure::from_fn(n, |i, j, k| if i + j + 1 == k { Scalar::one() } else { Scalar::zero() })
}

/// Upper-triangular 2×2 matrices on `E11, E12, E22`.
pub fn upper_triangular() -> AlgebraStructure {
    let one = Scalar::one;
    AlgebraStructure::from_entries(3, [(0, 0, 0, one()), (0, 1, 1, one()), (1, 2, 1, one()), (2, 2, 2, one())])
}

/// `A ⊕ K` with a one-dimensional idempotent summand.
pub fn plus_idempotent(a: &AlgebraStructure) -> AlgebraStructure {
    let n = a.dim();
    AlgebraStructure::from_fn(n + 1, |i, j, k| {
        if i < n && j < n && k < n {
            a.c(i, j, k).clone()
        } else if i == n && j == n && k == n {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// `A ⋉ A` by the regular representation.
pub fn regular_semidirect(a: &AlgebraStructure) -> AlgebraStructure {
    let n = a.dim();
    let id = Matrix::identity(n);
    semidirect_product(&ParamRing::empty(), a, &id, &regular_representation(a), &id)
        .unwrap()
        .ambient
        .alg
        .unwrap()
}

/// Pre-Lie algebras of dimension 2 to 4, all parameter-free.
pub fn algebras() -> Vec<(String, AlgebraStructure)> {
    let ex1 = ex_alg(q(1));
    vec![
        ("ExAlg(l=1)".into(), ex1.clone()),
        ("ExAlg(l=2)".into(), ex_alg(q(2))),
        ("ExAlg(l=-1/2)".into(), ex_alg(qr(-1, 2))),
        ("ExAlg(l=0)".into(), ex_alg(q(0))),
        ("K[x]/x^2".into(), truncated(2)),
        ("K[x]/x^3".into(), truncated(3)),
        ("K[x]/x^4".into(), truncated(4)),
        ("xK[x]/x^4".into(), nilpotent(3)),
        ("T2".into(), upper_triangular()),
        ("ExAlg(l=1)+K".into(), plus_idempotent(&ex1)),
        ("ExAlg(l=1)|x ExAlg(l=1)".into(), regular_semidirect(&ex1)),
    ]
}

pub fn algebras_up_to(dim: usize) -> Vec<(String, AlgebraStructure)> {
    algebras().into_iter().filter(|(_, a)| a.dim() <= dim).collect()
}

pub fn bare(a: &AlgebraStructure) -> Bundle {
    Bundle::new(ParamRing::empty(), a.dim()).with_alg(a.clone())
}

/// Every free parameter of `b` bound to a random nonzero rational.
pub fn bind_random(b: &Bundle, rng: &mut impl Rng) -> Bundle {
    let names = b.free_params();
    let values: Vec<(String, BigRational)> = names.into_iter().map(|n| (n, nonzero_rational(rng))).collect();
    let refs: Vec<(&str, BigRational)> = values.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
    b.substitute(&refs).unwrap()
}

/// Fill in every member a law might read, keeping what the bundle has.
pub fn augment(b: &Bundle, rng: &mut impl Rng) -> Bundle {
    let n = b.dim;
    let mut b = b.clone();
    if b.alg.is_none() {
        b = b.with_alg(ex_alg(q(1)).clone());
        if n != 2 {
            b = b.with_alg(truncated(n));
        }
    }
    if b.coalg.is_none() {
        let a = b.alg.as_ref().unwrap().clone();
        b = b.with_coalg(a.dual_coalgebra());
    }
    for name in [names::N, names::S] {
        if !b.operators.contains_key(name) {
            b = b.with_operator(name, random_matrix(rng, n, n));
        }
    }
    if !b.forms.contains_key(names::OMEGA) {
        b = b.with_form(names::OMEGA, random_symmetric(rng, n));
    }
    if !b.tensors.contains_key(names::R) {
        b = b.with_tensor(names::R, random_symmetric(rng, n));
    }
    if !b.reps.contains_key(names::REP) {
        let rep = regular_representation(b.alg.as_ref().unwrap());
        b = b.with_rep(names::REP, rep);
    }
    for name in [names::ALPHA, names::BETA, names::T] {
        if !b.operators.contains_key(name) {
            b = b.with_operator(name, random_matrix(rng, n, n));
        }
    }
    if !b.coalgebras.contains_key(names::DELTA) {
        let d = CoalgebraStructure::from_fn(n, |_, _, _| random_scalar(rng));
        b = b.with_coalgebra(names::DELTA, d);
    }
    b
}
