//! Catalog of two-dimensional example structures on the basis `e, f`
//! (index 0 is `e`, index 1 is `f`).
//!
//! Every fixture shares one parameter ring, so bundles can be compared and
//! combined freely. Parameter names: `l` (λ), `phi` (φ), `v` (ν), `k` (κ),
//! `k1 k2 k3`, `l1 l2 l3`, `theta` (ϑ).

use num_rational::BigRational;

use super::algebra::{AlgebraStructure, CoalgebraStructure};
use super::bundle::{names, Bundle};
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalars::{ParamRing, Scalar};

pub const PARAMS: [&str; 11] = ["l", "phi", "v", "k", "k1", "k2", "k3", "l1", "l2", "l3", "theta"];

pub struct FixtureInfo {
    pub name: &'static str,
    pub summary: &'static str,
}

pub const CATALOG: &[FixtureInfo] = &[
    FixtureInfo { name: "ExAlg", summary: "pre-Lie algebra f∘e = -e, f∘f = l f (l != -1)" },
    FixtureInfo { name: "ExOmegaA", summary: "ExAlg at l = 1 with pseudo-Hessian form [[0,l3],[l3,l2]]" },
    FixtureInfo { name: "ExOmegaB", summary: "ExAlg with pseudo-Hessian form [[0,0],[0,l2]]" },
    FixtureInfo { name: "ExCoalg1", summary: "pre-Lie coalgebra Δe = l e⊗e, Δf = phi f⊗f" },
    FixtureInfo { name: "ExCoalg2", summary: "pre-Lie coalgebra Δe = l(e⊗e + e⊗f), Δf = l(f⊗e + f⊗f)" },
    FixtureInfo { name: "ExOmega1a", summary: "ExCoalg1 with co-S-equation solution diag(v, k)" },
    FixtureInfo { name: "ExOmega1b", summary: "ExCoalg1 with co-S-equation solution [[phi^2 v/l^2, phi v/l],[phi v/l, v]]" },
    FixtureInfo { name: "ExOmega2a", summary: "ExCoalg2 with co-S-equation solution [[0,0],[0,v]]" },
    FixtureInfo { name: "ExOmega2b", summary: "ExCoalg2 with co-S-equation solution [[v,k],[k,k^2/v]]" },
    FixtureInfo { name: "ExNijA1", summary: "Nijenhuis operator N(e) = k2 l3 e, N(f) = (k1 l3 + k2 l2)e + k2 l3 f on ExOmegaA, from r = [[k1,k2],[k2,0]]" },
    FixtureInfo { name: "ExNijA2", summary: "Nijenhuis operator diag(0, k3 l2) on ExOmegaA" },
    FixtureInfo { name: "ExNijA3", summary: "Nijenhuis operator N(f) = k1 l3 e on ExOmegaA, from r = k1 e⊗e" },
    FixtureInfo { name: "ExNijB1", summary: "Nijenhuis operator diag(0, k3 l2) on ExOmegaB, from r = k3 f⊗f" },
    FixtureInfo { name: "ExNijB2", summary: "Nijenhuis operator N(f) = k2 l2 e on ExOmegaB at l = 1, from r = k2(e⊗f + f⊗e)" },
    FixtureInfo { name: "ExBialgI", summary: "Nijenhuis pre-Lie bialgebra on ExAlg at l = 1: Δe = k2 e⊗e, Δf = -2k1 e⊗e - k2 e⊗f, S = N" },
    FixtureInfo { name: "ExBialgII", summary: "Nijenhuis pre-Lie bialgebra on ExAlg: Δe = k3 f⊗e, Δf = l k3 f⊗f, N = diag(0, k3 l2), S = k3 l2 id" },
    FixtureInfo { name: "ExBialgIII", summary: "Nijenhuis pre-Lie bialgebra on ExAlg: Δe = 0, Δf = -2k1 e⊗e, N = diag(0, k1 l3), S = diag(0, theta)" },
    FixtureInfo { name: "ExLieBialgI", summary: "Nijenhuis Lie bialgebra [e,f] = e, δf = k2(f⊗e - e⊗f), S = N" },
    FixtureInfo { name: "ExLieBialgII", summary: "Nijenhuis Lie bialgebra [e,f] = e, δe = k3(f⊗e - e⊗f), N = diag(0, k3 l2), S = k3 l2 id" },
    FixtureInfo { name: "ExLieBialgIII", summary: "Nijenhuis Lie bialgebra [e,f] = e, δ = 0, N = diag(0, k1 l3), S = diag(0, theta)" },
];

pub fn catalog() -> &'static [FixtureInfo] {
    CATALOG
}

pub fn ring() -> ParamRing {
    ParamRing::new(&PARAMS).expect("catalog ring is valid")
}

fn p(name: &str) -> Scalar {
    let i = PARAMS.iter().position(|n| *n == name).expect("catalog parameter");
    Scalar::param(i)
}

fn n(v: i64) -> Scalar {
    Scalar::from_int(v)
}

fn mat(rows: [[Scalar; 2]; 2]) -> Matrix {
    Matrix::from_rows(rows.into_iter().map(Vec::from).collect()).expect("2x2")
}

const E: usize = 0;
const F: usize = 1;

fn ex_alg(l: Scalar) -> AlgebraStructure {
    AlgebraStructure::from_entries(2, [(F, E, E, n(-1)), (F, F, F, l)])
}

fn lie_bracket() -> AlgebraStructure {
    AlgebraStructure::from_entries(2, [(E, F, E, n(1)), (F, E, E, n(-1))])
}

fn base(alg: AlgebraStructure) -> Bundle {
    Bundle::new(ring(), 2)
        .with_alg(alg)
        .with_assumption(n(1) + p("l"))
}

fn coalg1() -> CoalgebraStructure {
    CoalgebraStructure::from_entries(2, [(E, E, E, p("l")), (F, F, F, p("phi"))])
}

fn coalg2() -> CoalgebraStructure {
    let l = p("l");
    CoalgebraStructure::from_entries(
        2,
        [(E, E, E, l.clone()), (E, E, F, l.clone()), (F, F, E, l.clone()), (F, F, F, l)],
    )
}

fn omega_a() -> Matrix {
    mat([[n(0), p("l3")], [p("l3"), p("l2")]])
}

fn omega_b() -> Matrix {
    mat([[n(0), n(0)], [n(0), p("l2")]])
}

fn nij_i() -> Matrix {
    let (k1, k2, l2, l3) = (p("k1"), p("k2"), p("l2"), p("l3"));
    mat([[&k2 * &l3, n(0)], [&k1 * &l3 + &k2 * &l2, &k2 * &l3]])
}

fn nij_ii() -> Matrix {
    mat([[n(0), n(0)], [n(0), p("k3") * p("l2")]])
}

fn nij_iii() -> Matrix {
    mat([[n(0), n(0)], [n(0), p("k1") * p("l3")]])
}

fn co_i() -> CoalgebraStructure {
    CoalgebraStructure::from_entries(
        2,
        [(E, E, E, p("k2")), (F, E, E, n(-2) * p("k1")), (F, E, F, -p("k2"))],
    )
}

fn co_ii() -> CoalgebraStructure {
    CoalgebraStructure::from_entries(2, [(E, F, E, p("k3")), (F, F, F, p("l") * p("k3"))])
}

fn co_iii() -> CoalgebraStructure {
    CoalgebraStructure::from_entries(2, [(F, E, E, n(-2) * p("k1"))])
}

fn s_ii() -> Matrix {
    Matrix::identity(2).scale(&(p("k3") * p("l2")))
}

fn s_iii() -> Matrix {
    mat([[n(0), n(0)], [n(0), p("theta")]])
}

fn build(name: &str) -> Result<Bundle> {
    let l = p("l");
    let b = match name {
        "ExAlg" => base(ex_alg(l)),
        "ExOmegaA" => base(ex_alg(n(1))).with_form(names::OMEGA, omega_a()),
        "ExOmegaB" => base(ex_alg(l)).with_form(names::OMEGA, omega_b()),
        "ExCoalg1" => Bundle::new(ring(), 2).with_coalg(coalg1()),
        "ExCoalg2" => Bundle::new(ring(), 2).with_coalg(coalg2()),
        "ExOmega1a" => Bundle::new(ring(), 2)
            .with_coalg(coalg1())
            .with_form(names::OMEGA, Matrix::diag(vec![p("v"), p("k")])),
        "ExOmega1b" => {
            let phi = p("phi");
            let v = p("v");
            let ratio = phi.checked_div(&l)?;
            let off = &ratio * &v;
            let corner = &(&ratio * &ratio) * &v;
            Bundle::new(ring(), 2)
                .with_coalg(coalg1())
                .with_form(names::OMEGA, mat([[corner, off.clone()], [off, v]]))
                .with_assumption(l)
        }
        "ExOmega2a" => Bundle::new(ring(), 2)
            .with_coalg(coalg2())
            .with_form(names::OMEGA, mat([[n(0), n(0)], [n(0), p("v")]])),
        "ExOmega2b" => {
            let (v, k) = (p("v"), p("k"));
            let corner = (&k * &k).checked_div(&v)?;
            Bundle::new(ring(), 2)
                .with_coalg(coalg2())
                .with_form(names::OMEGA, mat([[v.clone(), k.clone()], [k, corner]]))
                .with_assumption(v)
        }
        "ExNijA1" => base(ex_alg(n(1)))
            .with_form(names::OMEGA, omega_a())
            .with_tensor(names::R, mat([[p("k1"), p("k2")], [p("k2"), n(0)]]))
            .with_operator(names::N, nij_i())
            .with_assumption(p("k2")),
        "ExNijA2" => base(ex_alg(n(1)))
            .with_form(names::OMEGA, omega_a())
            .with_operator(names::N, nij_ii())
            .with_assumption(p("k3")),
        "ExNijA3" => base(ex_alg(n(1)))
            .with_form(names::OMEGA, omega_a())
            .with_tensor(names::R, mat([[p("k1"), n(0)], [n(0), n(0)]]))
            .with_operator(names::N, mat([[n(0), n(0)], [p("k1") * p("l3"), n(0)]]))
            .with_assumption(p("k1")),
        "ExNijB1" => base(ex_alg(l))
            .with_form(names::OMEGA, omega_b())
            .with_tensor(names::R, mat([[n(0), n(0)], [n(0), p("k3")]]))
            .with_operator(names::N, nij_ii())
            .with_assumption(p("k3")),
        "ExNijB2" => base(ex_alg(n(1)))
            .with_form(names::OMEGA, omega_b())
            .with_tensor(names::R, mat([[n(0), p("k2")], [p("k2"), n(0)]]))
            .with_operator(names::N, mat([[n(0), n(0)], [p("k2") * p("l2"), n(0)]]))
            .with_assumption(p("k2")),
        "ExBialgI" => base(ex_alg(n(1)))
            .with_coalg(co_i())
            .with_operator(names::N, nij_i())
            .with_operator(names::S, nij_i()),
        "ExBialgII" => base(ex_alg(l))
            .with_coalg(co_ii())
            .with_operator(names::N, nij_ii())
            .with_operator(names::S, s_ii()),
        "ExBialgIII" => base(ex_alg(l))
            .with_coalg(co_iii())
            .with_operator(names::N, nij_iii())
            .with_operator(names::S, s_iii()),
        "ExLieBialgI" => Bundle::new(ring(), 2)
            .with_alg(lie_bracket())
            .with_coalg(CoalgebraStructure::from_entries(2, [(F, F, E, p("k2")), (F, E, F, -p("k2"))]))
            .with_operator(names::N, nij_i())
            .with_operator(names::S, nij_i()),
        "ExLieBialgII" => Bundle::new(ring(), 2)
            .with_alg(lie_bracket())
            .with_coalg(CoalgebraStructure::from_entries(2, [(E, F, E, p("k3")), (E, E, F, -p("k3"))]))
            .with_operator(names::N, nij_ii())
            .with_operator(names::S, s_ii()),
        "ExLieBialgIII" => Bundle::new(ring(), 2)
            .with_alg(lie_bracket())
            .with_coalg(CoalgebraStructure::zero(2))
            .with_operator(names::N, nij_iii())
            .with_operator(names::S, s_iii()),
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    Ok(b)
}

/// Build a catalog fixture, optionally binding some parameters to rationals.
pub fn fixture(name: &str, bindings: Option<&[(&str, BigRational)]>) -> Result<Bundle> {
    let b = build(name)?;
    match bindings {
        Some(bs) if !bs.is_empty() => b.substitute(bs),
        _ => Ok(b),
    }
}
