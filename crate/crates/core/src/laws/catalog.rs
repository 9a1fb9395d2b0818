//! Per-law identity builders.
//!
//! Builders take explicit structure references so macro laws can reuse them
//! with other members (e.g. the same Nijenhuis condition for a bracket).

use std::sync::Arc;

use super::{missing, Identity, LawId};
use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::structures::{
    names, AlgebraStructure, Bundle, CoalgebraStructure, Corepresentation, Matrix, PiFamily,
    Representation, Tensor,
};

pub(crate) fn mul(a: &AlgebraStructure, x: &Tensor, y: &Tensor) -> Tensor {
    x.outer(y).mul_slots(0, 1, a)
}

fn lin(m: &Matrix, x: &Tensor) -> Tensor {
    x.apply(0, m)
}

fn cop(c: &CoalgebraStructure, x: &Tensor) -> Tensor {
    x.comul(0, c)
}

fn rho(rep: &Representation, x: &Tensor, v: &Tensor) -> Tensor {
    v.apply(0, &rep.rho_of(x.data()))
}

fn phi(rep: &Representation, x: &Tensor, v: &Tensor) -> Tensor {
    v.apply(0, &rep.phi_of(x.data()))
}

fn form(w: &Matrix, x: &Tensor, y: &Tensor) -> Tensor {
    x.outer(y).pair(0, 1, w)
}

fn tau(t: &Tensor) -> Tensor {
    t.swap(0, 1)
}

fn square(law: LawId, name: &str, m: &Matrix, dim: usize) -> Result<()> {
    if m.rows() != dim || m.cols() != dim {
        let found = if m.rows() != dim { m.rows() } else { m.cols() };
        return Err(Error::dim(format!("{law}: {name}"), dim, found));
    }
    Ok(())
}

fn rep_fits(law: LawId, name: &str, rep: &Representation, alg_dim: usize) -> Result<()> {
    if rep.alg_dim != alg_dim {
        return Err(Error::dim(format!("{law}: {name}"), alg_dim, rep.alg_dim));
    }
    Ok(())
}

fn prefix<'a>(p: &str, ids: Vec<Identity<'a>>) -> Vec<Identity<'a>> {
    ids.into_iter().map(|i| i.prefixed(p)).collect()
}

pub(crate) fn pre_lie(a: &AlgebraStructure) -> Vec<Identity<'_>> {
    let n = a.dim();
    vec![Identity::new("associator_symmetry", vec![n, n, n], move |v| {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        mul(a, &mul(a, x, y), z) - mul(a, x, &mul(a, y, z)) - mul(a, &mul(a, y, x), z)
            + mul(a, y, &mul(a, x, z))
    })]
}

pub(crate) fn pre_lie_co(c: &CoalgebraStructure) -> Vec<Identity<'_>> {
    vec![Identity::new("coassociator_symmetry", vec![c.dim()], move |v| {
        let d = cop(c, &v[0]);
        let l1 = d.comul(0, c);
        let l2 = d.comul(1, c);
        &l1 - &l2 - tau(&l1) + tau(&l2)
    })]
}

pub(crate) fn pre_lie_bialg<'a>(a: &'a AlgebraStructure, c: &'a CoalgebraStructure) -> Vec<Identity<'a>> {
    let n = a.dim();
    let antisym = Identity::new("compat_antisym", vec![n, n], move |v| {
        let (x, y) = (&v[0], &v[1]);
        let (lx, ly) = (a.left(x.data()), a.left(y.data()));
        let (rx, ry) = (a.right(x.data()), a.right(y.data()));
        let (dx, dy) = (cop(c, x), cop(c, y));
        cop(c, &mul(a, x, y)) - cop(c, &mul(a, y, x))
            - (dy.apply(0, &lx) + dy.apply(1, &lx) - dy.apply(1, &rx) - dx.apply(0, &ly)
                - dx.apply(1, &ly)
                + dx.apply(1, &ry))
    });
    let flip = Identity::new("compat_flip", vec![n, n], move |v| {
        let (x, y) = (&v[0], &v[1]);
        let lx = a.left(x.data());
        let ry = a.right(y.data());
        let (dx, dy) = (cop(c, x), cop(c, y));
        let dxy = cop(c, &mul(a, x, y));
        let dy_lx0 = dy.apply(0, &lx);
        let dy_lx1 = dy.apply(1, &lx);
        let dx_ry1 = dx.apply(1, &ry);
        &dxy - tau(&dxy)
            - (&dx_ry1 + &dy_lx1 - tau(&dy_lx0) - tau(&dx_ry1) - tau(&dy_lx1) + &dy_lx0)
    });
    vec![antisym, flip]
}

/// The S-equation on `r` as a rank-3 tensor.
pub(crate) fn s_equation_tensor(a: &AlgebraStructure, r: &Matrix) -> Tensor {
    let rt = Tensor::from_matrix(r);
    let rr = rt.outer(&rt);
    let t1 = rr.mul_slots(1, 2, a);
    let t2 = rr.mul_slots(1, 3, a).swap(1, 2);
    let t3 = rr.mul_slots(0, 2, a);
    let t4 = rr.mul_slots(3, 1, a);
    t1 + t2 - t3 - t4
}

pub(crate) fn s_equation<'a>(a: &'a AlgebraStructure, r: &'a Matrix) -> Vec<Identity<'a>> {
    vec![Identity::new("s_equation", vec![], move |_| s_equation_tensor(a, r))]
}

pub(crate) fn co_s_equation<'a>(c: &'a CoalgebraStructure, w: &'a Matrix) -> Vec<Identity<'a>> {
    let n = c.dim();
    vec![Identity::new("co_s_equation", vec![n, n, n], move |v| {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let (dx, dy, dz) = (cop(c, x), cop(c, y), cop(c, z));
        let xydz = x.outer(y).outer(&dz);
        x.outer(&dy).outer(z).pair(0, 1, w).pair(0, 1, w)
            + xydz.pair(0, 2, w).pair(0, 1, w)
            - dx.outer(y).outer(z).pair(0, 2, w).pair(0, 1, w)
            - xydz.pair(1, 2, w).pair(0, 1, w)
    })]
}

pub(crate) fn pseudo_hessian<'a>(a: &'a AlgebraStructure, w: &'a Matrix) -> Vec<Identity<'a>> {
    let n = a.dim();
    vec![Identity::new("cocycle", vec![n, n, n], move |v| {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        form(w, &mul(a, x, y), z) - form(w, x, &mul(a, y, z)) - form(w, &mul(a, y, x), z)
            + form(w, y, &mul(a, x, z))
    })]
}

pub(crate) fn pseudo_hessian_co<'a>(c: &'a CoalgebraStructure, r: &'a Matrix) -> Vec<Identity<'a>> {
    vec![Identity::new("co_cocycle", vec![], move |_| {
        let rt = Tensor::from_matrix(r);
        let l1 = rt.comul(0, c);
        let l2 = rt.comul(1, c);
        &l1 - &l2 - tau(&l1) + tau(&l2)
    })]
}

pub(crate) fn nijenhuis<'a>(a: &'a AlgebraStructure, op: &'a Matrix) -> Vec<Identity<'a>> {
    let n = a.dim();
    let op2 = op.pow(2);
    vec![Identity::new("nijenhuis", vec![n, n], move |v| {
        let (x, y) = (&v[0], &v[1]);
        let (nx, ny) = (lin(op, x), lin(op, y));
        mul(a, &nx, &ny) + lin(&op2, &mul(a, x, y)) - lin(op, &mul(a, &nx, y))
            - lin(op, &mul(a, x, &ny))
    })]
}

pub(crate) fn co_nijenhuis<'a>(c: &'a CoalgebraStructure, s: &'a Matrix) -> Vec<Identity<'a>> {
    let s2 = s.pow(2);
    vec![Identity::new("co_nijenhuis", vec![c.dim()], move |v| {
        let x = &v[0];
        let dsx = cop(c, &lin(s, x));
        cop(c, x).apply(0, s).apply(1, s) + cop(c, &lin(&s2, x)) - dsx.apply(0, s) - dsx.apply(1, s)
    })]
}

pub(crate) fn rep_laws<'a>(a: &'a AlgebraStructure, rep: &'a Representation) -> Vec<Identity<'a>> {
    let (n, m) = (a.dim(), rep.rep_dim);
    let left = Identity::new("left_bracket", vec![n, n, m], move |t| {
        let (x, y, v) = (&t[0], &t[1], &t[2]);
        let br = mul(a, x, y) - mul(a, y, x);
        rho(rep, &br, v) - rho(rep, x, &rho(rep, y, v)) + rho(rep, y, &rho(rep, x, v))
    });
    let right = Identity::new("right_action", vec![n, n, m], move |t| {
        let (x, y, v) = (&t[0], &t[1], &t[2]);
        phi(rep, &mul(a, x, y), v) - rho(rep, x, &phi(rep, y, v)) + phi(rep, y, &rho(rep, x, v))
            - phi(rep, y, &phi(rep, x, v))
    });
    vec![left, right]
}

pub(crate) fn nij_rep<'a>(op: &'a Matrix, rep: &'a Representation, alpha: &'a Matrix) -> Vec<Identity<'a>> {
    let (n, m) = (rep.alg_dim, rep.rep_dim);
    let alpha2 = alpha.pow(2);
    let alpha2b = alpha2.clone();
    let left = Identity::new("nij_left", vec![n, m], move |t| {
        let (x, v) = (&t[0], &t[1]);
        let nx = lin(op, x);
        let av = lin(alpha, v);
        rho(rep, &nx, &av) + lin(&alpha2, &rho(rep, x, v)) - lin(alpha, &rho(rep, &nx, v))
            - lin(alpha, &rho(rep, x, &av))
    });
    let right = Identity::new("nij_right", vec![n, m], move |t| {
        let (x, v) = (&t[0], &t[1]);
        let nx = lin(op, x);
        let av = lin(alpha, v);
        phi(rep, &nx, &av) + lin(&alpha2b, &phi(rep, x, v)) - lin(alpha, &phi(rep, &nx, v))
            - lin(alpha, &phi(rep, x, &av))
    });
    vec![left, right]
}

/// Both corepresentation residuals at `v`.
fn corep_residuals(c: &CoalgebraStructure, cr: &Corepresentation, v: &Tensor) -> [Tensor; 2] {
    let n = c.dim();
    let x = v.coact(0, &cr.xi, n);
    let y = v.coact(0, &cr.eta, n);
    let x_d = x.comul(0, c);
    let x_xi = x.coact(1, &cr.xi, n);
    let x_eta = x.coact(1, &cr.eta, n);
    let left = &x_d - tau(&x_d) - &x_xi + tau(&x_xi);
    let right = y.comul(0, c) - &x_eta + tau(&y.coact(1, &cr.xi, n)) - tau(&y.coact(1, &cr.eta, n));
    [left, right]
}

pub(crate) fn corep<'a>(c: &'a CoalgebraStructure, cr: &'a Corepresentation) -> Vec<Identity<'a>> {
    let m = cr.corep_dim;
    vec![
        Identity::new("corep_left", vec![m], move |t| {
            let [l, _] = corep_residuals(c, cr, &t[0]);
            l
        }),
        Identity::new("corep_right", vec![m], move |t| {
            let [_, r] = corep_residuals(c, cr, &t[0]);
            r
        }),
    ]
}

pub(crate) fn admissible_s<'a>(a: &'a AlgebraStructure, op: &'a Matrix, s: &'a Matrix) -> Vec<Identity<'a>> {
    let n = a.dim();
    let s2 = s.pow(2);
    let s2b = s2.clone();
    let left = Identity::new("s_left", vec![n, n], move |t| {
        let (x, y) = (&t[0], &t[1]);
        let nx = lin(op, x);
        lin(s, &mul(a, &nx, y)) + mul(a, x, &lin(&s2, y)) - mul(a, &nx, &lin(s, y))
            - lin(s, &mul(a, x, &lin(s, y)))
    });
    let right = Identity::new("s_right", vec![n, n], move |t| {
        let (x, y) = (&t[0], &t[1]);
        let ny = lin(op, y);
        lin(s, &mul(a, x, &ny)) + mul(a, &lin(&s2b, x), y) - mul(a, &lin(s, x), &ny)
            - lin(s, &mul(a, &lin(s, x), y))
    });
    vec![left, right]
}

pub(crate) fn admissible_beta<'a>(op: &'a Matrix, rep: &'a Representation, beta: &'a Matrix) -> Vec<Identity<'a>> {
    let (n, m) = (rep.alg_dim, rep.rep_dim);
    let b2 = beta.pow(2);
    let b2b = b2.clone();
    let left = Identity::new("beta_rho", vec![n, m], move |t| {
        let (x, v) = (&t[0], &t[1]);
        let nx = lin(op, x);
        let bv = lin(beta, v);
        lin(beta, &rho(rep, &nx, v)) + rho(rep, x, &lin(&b2, v)) - rho(rep, &nx, &bv)
            - lin(beta, &rho(rep, x, &bv))
    });
    let right = Identity::new("beta_phi", vec![n, m], move |t| {
        let (x, v) = (&t[0], &t[1]);
        let nx = lin(op, x);
        let bv = lin(beta, v);
        lin(beta, &phi(rep, &nx, v)) + phi(rep, x, &lin(&b2b, v)) - phi(rep, &nx, &bv)
            - lin(beta, &phi(rep, x, &bv))
    });
    vec![left, right]
}

pub(crate) fn admissible_nstar<'a>(c: &'a CoalgebraStructure, op: &'a Matrix, s: &'a Matrix) -> Vec<Identity<'a>> {
    let n = c.dim();
    let n2 = op.pow(2);
    let n2b = n2.clone();
    let left = Identity::new("nstar_left", vec![n], move |t| {
        let x = &t[0];
        let dnx = cop(c, &lin(op, x));
        let dx = cop(c, x);
        dnx.apply(1, s) + dx.apply(0, &n2) - dx.apply(0, op).apply(1, s) - dnx.apply(0, op)
    });
    let right = Identity::new("nstar_right", vec![n], move |t| {
        let x = &t[0];
        let dnx = cop(c, &lin(op, x));
        let dx = cop(c, x);
        dnx.apply(0, s) + dx.apply(1, &n2b) - dx.apply(0, s).apply(1, op) - dnx.apply(1, op)
    });
    vec![left, right]
}

fn balanced<'a>(a: &'a AlgebraStructure, c: &'a CoalgebraStructure) -> Vec<Identity<'a>> {
    let n = a.dim();
    vec![Identity::new("balanced", vec![n, n], move |t| {
        let (x, y) = (&t[0], &t[1]);
        let px = cop(c, x).apply(0, &a.right(y.data()));
        let py = cop(c, y).apply(0, &a.right(x.data()));
        &px + tau(&py) - &py - tau(&px)
    })]
}

fn lie_alg(a: &AlgebraStructure) -> Vec<Identity<'_>> {
    let n = a.dim();
    vec![
        Identity::new("antisymmetry", vec![n, n], move |t| mul(a, &t[0], &t[1]) + mul(a, &t[1], &t[0])),
        Identity::new("jacobi", vec![n, n, n], move |t| {
            let (x, y, z) = (&t[0], &t[1], &t[2]);
            mul(a, x, &mul(a, y, z)) + mul(a, y, &mul(a, z, x)) + mul(a, z, &mul(a, x, y))
        }),
    ]
}

fn lie_co(c: &CoalgebraStructure) -> Vec<Identity<'_>> {
    let n = c.dim();
    vec![
        Identity::new("coantisymmetry", vec![n], move |t| {
            let d = cop(c, &t[0]);
            &d + tau(&d)
        }),
        Identity::new("cojacobi", vec![n], move |t| {
            let q = cop(c, &t[0]).comul(1, c);
            &q + q.permute(&[1, 2, 0]) + q.permute(&[2, 0, 1])
        }),
    ]
}

fn lie_bialg<'a>(a: &'a AlgebraStructure, c: &'a CoalgebraStructure) -> Vec<Identity<'a>> {
    let n = a.dim();
    let mut ids = prefix("LIE_ALG", lie_alg(a));
    ids.extend(prefix("LIE_CO", lie_co(c)));
    ids.push(Identity::new("cocycle_bracket", vec![n, n], move |t| {
        let (x, y) = (&t[0], &t[1]);
        let (adx, ady) = (a.left(x.data()), a.left(y.data()));
        let (dx, dy) = (cop(c, x), cop(c, y));
        cop(c, &mul(a, x, y)) - dy.apply(0, &adx) - dy.apply(1, &adx) + dx.apply(0, &ady)
            + dx.apply(1, &ady)
    }));
    ids
}

fn nij_lie_bialg<'a>(
    a: &'a AlgebraStructure,
    c: &'a CoalgebraStructure,
    op: &'a Matrix,
    s: &'a Matrix,
) -> Vec<Identity<'a>> {
    let n = a.dim();
    let mut ids = prefix("LIE_BIALG", lie_bialg(a, c));
    ids.extend(prefix("NIJENHUIS", nijenhuis(a, op)));
    ids.extend(prefix("CO_NIJENHUIS", co_nijenhuis(c, s)));
    let s2 = s.pow(2);
    ids.push(Identity::new("lie_admissible", vec![n, n], move |t| {
        let (x, y) = (&t[0], &t[1]);
        let nx = lin(op, x);
        lin(s, &mul(a, &nx, y)) + mul(a, x, &lin(&s2, y)) - mul(a, &nx, &lin(s, y))
            - lin(s, &mul(a, x, &lin(s, y)))
    }));
    let n2 = op.pow(2);
    ids.push(Identity::new("lie_coadmissible", vec![n], move |t| {
        let x = &t[0];
        let dnx = cop(c, &lin(op, x));
        let dx = cop(c, x);
        dnx.apply(0, s) + dx.apply(1, &n2) - dx.apply(0, s).apply(1, op) - dnx.apply(1, op)
    }));
    ids
}

fn matched_pair<'a>(
    a: &'a AlgebraStructure,
    h: &'a AlgebraStructure,
    na: &'a Matrix,
    nh: &'a Matrix,
    a_on_h: &'a Representation,
    h_on_a: &'a Representation,
) -> Vec<Identity<'a>> {
    let (n, m) = (a.dim(), h.dim());
    let mut ids = prefix("A.PRE_LIE", pre_lie(a));
    ids.extend(prefix("A.NIJENHUIS", nijenhuis(a, na)));
    ids.extend(prefix("H.PRE_LIE", pre_lie(h)));
    ids.extend(prefix("H.NIJENHUIS", nijenhuis(h, nh)));
    ids.extend(prefix("A_on_H.REP", rep_laws(a, a_on_h)));
    ids.extend(prefix("A_on_H.NIJ_REP", nij_rep(na, a_on_h, nh)));
    ids.extend(prefix("H_on_A.REP", rep_laws(h, h_on_a)));
    ids.extend(prefix("H_on_A.NIJ_REP", nij_rep(nh, h_on_a, na)));
    ids.push(mp_rho(n, m, h, a_on_h, h_on_a, "mp_rho_A"));
    ids.push(mp_phi(n, m, h, a_on_h, h_on_a, "mp_phi_A"));
    ids.push(mp_rho(m, n, a, h_on_a, a_on_h, "mp_rho_H"));
    ids.push(mp_phi(m, n, a, h_on_a, a_on_h, "mp_phi_H"));
    ids
}

/// `own` acts on `other` through `act`, and `other` acts back through `back`;
/// inputs are one element of `own` and two of `other`.
fn mp_rho<'a>(
    n: usize,
    m: usize,
    other: &'a AlgebraStructure,
    act: &'a Representation,
    back: &'a Representation,
    label: &str,
) -> Identity<'a> {
    Identity::new(label, vec![n, m, m], move |t| {
        let (x, p, q) = (&t[0], &t[1], &t[2]);
        let moved = rho(back, p, x) - phi(back, p, x);
        let pa = rho(act, x, p) - phi(act, x, p);
        rho(act, x, &mul(other, p, q)) + rho(act, &moved, q) - mul(other, &pa, q)
            - phi(act, &phi(back, q, x), p)
            - mul(other, p, &rho(act, x, q))
    })
}

fn mp_phi<'a>(
    n: usize,
    m: usize,
    other: &'a AlgebraStructure,
    act: &'a Representation,
    back: &'a Representation,
    label: &str,
) -> Identity<'a> {
    Identity::new(label, vec![n, m, m], move |t| {
        let (x, p, q) = (&t[0], &t[1], &t[2]);
        let br = mul(other, p, q) - mul(other, q, p);
        phi(act, x, &br) - phi(act, &rho(back, q, x), p) + phi(act, &rho(back, p, x), q)
            - mul(other, p, &phi(act, x, q))
            + mul(other, q, &phi(act, x, p))
    })
}

fn o_operator_weak<'a>(
    a: &'a AlgebraStructure,
    op: &'a Matrix,
    rep: &'a Representation,
    alpha: &'a Matrix,
    t_map: &'a Matrix,
) -> Vec<Identity<'a>> {
    let m = rep.rep_dim;
    vec![
        Identity::new("o_product", vec![m, m], move |t| {
            let (u, v) = (&t[0], &t[1]);
            let (tu, tv) = (lin(t_map, u), lin(t_map, v));
            mul(a, &tu, &tv) - lin(t_map, &(rho(rep, &tu, v) + phi(rep, &tv, u)))
        }),
        Identity::new("o_intertwine", vec![m], move |t| {
            let u = &t[0];
            lin(op, &lin(t_map, u)) - lin(t_map, &lin(alpha, u))
        }),
    ]
}

fn sum_coalg(c: &CoalgebraStructure, d: &CoalgebraStructure) -> CoalgebraStructure {
    CoalgebraStructure::from_fn(c.dim(), |k, i, j| c.d(k, i, j) + d.d(k, i, j))
}

fn pencil_compat<'a>(
    c: &'a CoalgebraStructure,
    d: &'a CoalgebraStructure,
    coreps: Option<(&'a Corepresentation, &'a Corepresentation)>,
) -> Vec<Identity<'a>> {
    let n = c.dim();
    let mut ids = prefix("comul.PRE_LIE_CO", pre_lie_co(c));
    ids.extend(prefix("delta.PRE_LIE_CO", pre_lie_co(d)));
    ids.push(Identity::new("cross", vec![n], move |t| {
        let x = &t[0];
        let (dx, ex) = (cop(c, x), cop(d, x));
        let p = dx.comul(0, d) + ex.comul(0, c);
        let q = dx.comul(1, d) + ex.comul(1, c);
        &p - &q - tau(&p) + tau(&q)
    }));
    if let Some((cr, cr2)) = coreps {
        ids.extend(prefix("corep.COREP", corep(c, cr)));
        ids.extend(prefix("corep2.COREP", corep(d, cr2)));
        let sum = sum_coalg(c, d);
        let crsum = cr.add(cr2);
        let m = cr.corep_dim;
        for (k, label) in ["corep_cross_left", "corep_cross_right"].into_iter().enumerate() {
            let (sum, crsum) = (sum.clone(), crsum.clone());
            ids.push(Identity::new(label, vec![m], move |t| {
                let v = &t[0];
                let whole = corep_residuals(&sum, &crsum, v);
                let first = corep_residuals(c, cr, v);
                let second = corep_residuals(d, cr2, v);
                &whole[k] - &first[k] - &second[k]
            }));
        }
    }
    ids
}

fn pencil_morphism<'a>(
    c: &'a CoalgebraStructure,
    d: &'a CoalgebraStructure,
    s: &'a Matrix,
    coreps: Option<(&'a Corepresentation, &'a Corepresentation, &'a Matrix)>,
) -> Vec<Identity<'a>> {
    let n = c.dim();
    let mut ids = vec![
        Identity::new("hom_delta", vec![n], move |t| {
            let x = &t[0];
            cop(d, &lin(s, x)) - cop(c, x).apply(0, s).apply(1, s)
        }),
        Identity::new("hom_sum", vec![n], move |t| {
            let x = &t[0];
            let dx = cop(c, x);
            cop(c, &lin(s, x)) + cop(d, x) - dx.apply(1, s) - dx.apply(0, s)
        }),
    ];
    if let Some((cr, cr2, theta)) = coreps {
        let m = cr.corep_dim;
        let pairs: [(&str, &str, &'a Matrix, &'a Matrix); 2] =
            [("hom_xi", "hom_xi_sum", &cr.xi, &cr2.xi), ("hom_eta", "hom_eta_sum", &cr.eta, &cr2.eta)];
        for (hom, hom_sum, first, second) in pairs {
            ids.push(Identity::new(hom, vec![m], move |t| {
                let v = &t[0];
                lin(theta, v).coact(0, second, n) - v.coact(0, first, n).apply(0, s).apply(1, theta)
            }));
            ids.push(Identity::new(hom_sum, vec![m], move |t| {
                let v = &t[0];
                let xv = v.coact(0, first, n);
                lin(theta, v).coact(0, first, n) + v.coact(0, second, n) - xv.apply(1, theta)
                    - xv.apply(0, s)
            }));
        }
    }
    ids
}

struct PiCtx<'a> {
    a: &'a AlgebraStructure,
    op: &'a Matrix,
    rep: &'a Representation,
    alpha: &'a Matrix,
    n2: Matrix,
    a2: Matrix,
    family: PiFamily,
    theta: Scalar,
    one_plus: Scalar,
}

type Action = fn(&Representation, &Tensor, &Tensor) -> Tensor;

impl PiCtx<'_> {
    /// `outer2`/`outer1` carry the square and the single operator on the
    /// argument the identity targets; `base` is the undeformed product and
    /// `(p, p2)` the operator pair on the output space.
    fn combine(&self, outer2: Tensor, outer1: Tensor, base: Tensor, p: &Matrix, p2: &Matrix) -> Tensor {
        let th = &self.theta;
        match self.family {
            PiFamily::Scale => outer2 + lin(p2, &base).scale(th) - lin(p, &outer1).scale(&self.one_plus),
            PiFamily::Reflect => outer2 + lin(p, &base).scale(th) - lin(p2, &base) - outer1.scale(th),
            PiFamily::Invert => lin(p, &(base.scale(th) + outer2)) - outer1.scale(th) - lin(p2, &outer1),
        }
    }

    fn alg(&self, t: &[Tensor], right: bool) -> Tensor {
        let (a, op, n2) = (self.a, self.op, &self.n2);
        let (x, y) = (&t[0], &t[1]);
        let (outer2, outer1) = if right {
            (mul(a, &lin(n2, x), y), mul(a, &lin(op, x), y))
        } else {
            (mul(a, x, &lin(n2, y)), mul(a, x, &lin(op, y)))
        };
        self.combine(outer2, outer1, mul(a, x, y), op, n2)
    }

    /// `on_alpha` puts the operator on the module argument, otherwise on the
    /// algebra argument.
    fn module(&self, t: &[Tensor], act: Action, on_alpha: bool) -> Tensor {
        let (rep, op, alpha) = (self.rep, self.op, self.alpha);
        let (x, v) = (&t[0], &t[1]);
        let (outer2, outer1) = if on_alpha {
            (act(rep, x, &lin(&self.a2, v)), act(rep, x, &lin(alpha, v)))
        } else {
            (act(rep, &lin(&self.n2, x), v), act(rep, &lin(op, x), v))
        };
        self.combine(outer2, outer1, act(rep, x, v), alpha, &self.a2)
    }
}

fn pi_admissible<'a>(
    a: &'a AlgebraStructure,
    op: &'a Matrix,
    rep: &'a Representation,
    alpha: &'a Matrix,
    family: PiFamily,
    theta: Scalar,
) -> Vec<Identity<'a>> {
    let (n, m) = (a.dim(), rep.rep_dim);
    let ctx = Arc::new(PiCtx {
        a,
        op,
        rep,
        alpha,
        n2: op.pow(2),
        a2: alpha.pow(2),
        family,
        one_plus: &Scalar::one() + &theta,
        theta,
    });
    let alg = |label: &str, right: bool| {
        let ctx = Arc::clone(&ctx);
        Identity::new(label, vec![n, n], move |t| ctx.alg(t, right))
    };
    let module = |label: &str, act: Action, on_alpha: bool| {
        let ctx = Arc::clone(&ctx);
        Identity::new(label, vec![n, m], move |t| ctx.module(t, act, on_alpha))
    };
    vec![
        alg("pi_alg_left", false),
        alg("pi_alg_right", true),
        module("pi_rho_alpha", rho, true),
        module("pi_phi_alpha", phi, true),
        module("pi_rho_n", rho, false),
        module("pi_phi_n", phi, false),
    ]
}

fn commutative(a: &AlgebraStructure) -> Vec<Identity<'_>> {
    let n = a.dim();
    vec![Identity::new("commutative", vec![n, n], move |t| mul(a, &t[0], &t[1]) - mul(a, &t[1], &t[0]))]
}

fn cocommutative(c: &CoalgebraStructure) -> Vec<Identity<'_>> {
    vec![Identity::new("cocommutative", vec![c.dim()], move |t| {
        let d = cop(c, &t[0]);
        &d - tau(&d)
    })]
}

fn symmetric_form(w: &Matrix) -> Vec<Identity<'_>> {
    let n = w.rows();
    vec![Identity::new("symmetric", vec![n, n], move |t| form(w, &t[0], &t[1]) - form(w, &t[1], &t[0]))]
}

fn symmetric_tensor(r: &Matrix) -> Vec<Identity<'_>> {
    vec![Identity::new("symmetric", vec![], move |_| {
        let rt = Tensor::from_matrix(r);
        &rt - tau(&rt)
    })]
}

/// Representation plus its operator on the module, with shapes checked.
fn rep_with_op<'a>(
    law: LawId,
    b: &'a Bundle,
    op_name: &str,
) -> Result<(&'a Representation, &'a Matrix)> {
    let l = law.as_str();
    let rep = b.get_rep(l, names::REP)?;
    rep_fits(law, names::REP, rep, b.dim)?;
    let op = b.get_map(l, op_name)?;
    square(law, op_name, op, rep.rep_dim)?;
    Ok((rep, op))
}

/// Expand `law` into its identity parts, reading members from `b`.
pub fn identities(law: LawId, b: &Bundle) -> Result<Vec<Identity<'_>>> {
    use LawId::*;
    let l = law.as_str();
    let ids = match law {
        PRE_LIE => pre_lie(b.get_alg(l)?),
        PRE_LIE_CO => pre_lie_co(b.get_coalg(l)?),
        PRE_LIE_BIALG => pre_lie_bialg(b.get_alg(l)?, b.get_coalg(l)?),
        S_EQUATION => s_equation(b.get_alg(l)?, b.get_tensor(l, names::R)?),
        CO_S_EQUATION => co_s_equation(b.get_coalg(l)?, b.get_form(l, names::OMEGA)?),
        PSEUDO_HESSIAN => pseudo_hessian(b.get_alg(l)?, b.get_form(l, names::OMEGA)?),
        PSEUDO_HESSIAN_CO => pseudo_hessian_co(b.get_coalg(l)?, b.get_tensor(l, names::R)?),
        NIJENHUIS => nijenhuis(b.get_alg(l)?, b.get_operator(l, names::N)?),
        CO_NIJENHUIS => co_nijenhuis(b.get_coalg(l)?, b.get_operator(l, names::S)?),
        REP => {
            let a = b.get_alg(l)?;
            let rep = b.get_rep(l, names::REP)?;
            rep_fits(law, names::REP, rep, a.dim())?;
            rep_laws(a, rep)
        }
        NIJ_REP => {
            let op = b.get_operator(l, names::N)?;
            let (rep, alpha) = rep_with_op(law, b, names::ALPHA)?;
            nij_rep(op, rep, alpha)
        }
        COREP => corep(b.get_coalg(l)?, b.get_corep(l, names::COREP)?),
        ADMISSIBLE_S => admissible_s(b.get_alg(l)?, b.get_operator(l, names::N)?, b.get_operator(l, names::S)?),
        ADMISSIBLE_BETA => {
            let op = b.get_operator(l, names::N)?;
            let (rep, beta) = rep_with_op(law, b, names::BETA)?;
            admissible_beta(op, rep, beta)
        }
        ADMISSIBLE_NSTAR => {
            admissible_nstar(b.get_coalg(l)?, b.get_operator(l, names::N)?, b.get_operator(l, names::S)?)
        }
        NIJ_PRE_LIE_BIALG => {
            let a = b.get_alg(l)?;
            let c = b.get_coalg(l)?;
            let op = b.get_operator(l, names::N)?;
            let s = b.get_operator(l, names::S)?;
            let mut ids = prefix("PRE_LIE", pre_lie(a));
            ids.extend(prefix("NIJENHUIS", nijenhuis(a, op)));
            ids.extend(prefix("PRE_LIE_CO", pre_lie_co(c)));
            ids.extend(prefix("CO_NIJENHUIS", co_nijenhuis(c, s)));
            ids.extend(prefix("PRE_LIE_BIALG", pre_lie_bialg(a, c)));
            ids.extend(prefix("ADMISSIBLE_S", admissible_s(a, op, s)));
            ids.extend(prefix("ADMISSIBLE_NSTAR", admissible_nstar(c, op, s)));
            ids
        }
        MATCHED_PAIR => {
            let a = b.get_alg(l)?;
            let h = b.get_algebra(l, names::H)?;
            let na = b.get_operator(l, names::N)?;
            let nh = b.get_map(l, names::N_H)?;
            square(law, names::N_H, nh, h.dim())?;
            let a_on_h = b.get_rep(l, names::A_ON_H)?;
            rep_fits(law, names::A_ON_H, a_on_h, a.dim())?;
            if a_on_h.rep_dim != h.dim() {
                return Err(Error::dim(format!("{law}: {}", names::A_ON_H), h.dim(), a_on_h.rep_dim));
            }
            let h_on_a = b.get_rep(l, names::H_ON_A)?;
            rep_fits(law, names::H_ON_A, h_on_a, h.dim())?;
            if h_on_a.rep_dim != a.dim() {
                return Err(Error::dim(format!("{law}: {}", names::H_ON_A), a.dim(), h_on_a.rep_dim));
            }
            matched_pair(a, h, na, nh, a_on_h, h_on_a)
        }
        O_OPERATOR_WEAK | O_OPERATOR => {
            let a = b.get_alg(l)?;
            let op = b.get_operator(l, names::N)?;
            let (rep, alpha) = rep_with_op(law, b, names::ALPHA)?;
            let t_map = b.get_map(l, names::T)?;
            if t_map.rows() != rep.rep_dim {
                return Err(Error::dim(format!("{law}: T rows"), rep.rep_dim, t_map.rows()));
            }
            if t_map.cols() != a.dim() {
                return Err(Error::dim(format!("{law}: T columns"), a.dim(), t_map.cols()));
            }
            let weak = o_operator_weak(a, op, rep, alpha, t_map);
            if law == O_OPERATOR_WEAK {
                weak
            } else {
                let mut ids = prefix("O_OPERATOR_WEAK", weak);
                ids.extend(prefix("REP", rep_laws(a, rep)));
                ids.extend(prefix("NIJ_REP", nij_rep(op, rep, alpha)));
                ids
            }
        }
        S_NIJ_S_EQUATION => {
            let a = b.get_alg(l)?;
            let r = b.get_tensor(l, names::R)?;
            let op = b.get_operator(l, names::N)?;
            let s = b.get_operator(l, names::S)?;
            let mut ids = prefix("S_EQUATION", s_equation(a, r));
            ids.push(Identity::new("s_nijenhuis", vec![], move |_| {
                let rt = Tensor::from_matrix(r);
                rt.apply(0, s) - rt.apply(1, op)
            }));
            ids
        }
        PENCIL_COMPAT => {
            let c = b.get_coalg(l)?;
            let d = b.get_coalgebra(l, names::DELTA)?;
            let coreps = pencil_coreps(law, b)?;
            pencil_compat(c, d, coreps)
        }
        PENCIL_MORPHISM => {
            let c = b.get_coalg(l)?;
            let d = b.get_coalgebra(l, names::DELTA)?;
            let s = b.get_operator(l, names::S)?;
            let coreps = match b.operators.get(names::THETA) {
                None => None,
                Some(theta) => {
                    let (cr, cr2) = pencil_coreps(law, b)?
                        .ok_or_else(|| missing(law, names::COREP))?;
                    square(law, names::THETA, theta, cr.corep_dim)?;
                    Some((cr, cr2, theta))
                }
            };
            pencil_morphism(c, d, s, coreps)
        }
        PI_ADMISSIBLE => {
            let a = b.get_alg(l)?;
            let op = b.get_operator(l, names::N)?;
            let (rep, alpha) = rep_with_op(law, b, names::ALPHA)?;
            let pi = b.get_pi(l)?;
            pi.validate()?;
            if pi.family == PiFamily::Invert {
                for (name, m) in [(names::N, op), (names::ALPHA, alpha)] {
                    if m.det().is_zero() {
                        return Err(Error::NotInvertible(format!("{law}: {name}")));
                    }
                }
            }
            pi_admissible(a, op, rep, alpha, pi.family, pi.theta.clone())
        }
        BALANCED => balanced(b.get_alg(l)?, b.get_coalg(l)?),
        LIE_ALG => lie_alg(b.get_alg(l)?),
        LIE_CO => lie_co(b.get_coalg(l)?),
        LIE_BIALG => lie_bialg(b.get_alg(l)?, b.get_coalg(l)?),
        NIJ_LIE_BIALG => nij_lie_bialg(
            b.get_alg(l)?,
            b.get_coalg(l)?,
            b.get_operator(l, names::N)?,
            b.get_operator(l, names::S)?,
        ),
        COMMUTATIVE => commutative(b.get_alg(l)?),
        COCOMMUTATIVE => cocommutative(b.get_coalg(l)?),
        SYMMETRIC_FORM => symmetric_form(b.get_form(l, names::OMEGA)?),
        SYMMETRIC_TENSOR => symmetric_tensor(b.get_tensor(l, names::R)?),
    };
    Ok(ids)
}

/// Both coreps of a pencil, or neither.
fn pencil_coreps(law: LawId, b: &Bundle) -> Result<Option<(&Corepresentation, &Corepresentation)>> {
    let l = law.as_str();
    let has1 = b.coreps.contains_key(names::COREP);
    let has2 = b.coreps.contains_key(names::COREP2);
    if !has1 && !has2 {
        return Ok(None);
    }
    let cr = b.get_corep(l, names::COREP)?;
    let cr2 = b.get_corep(l, names::COREP2)?;
    if cr.corep_dim != cr2.corep_dim {
        return Err(Error::dim(format!("{law}: {}", names::COREP2), cr.corep_dim, cr2.corep_dim));
    }
    Ok(Some((cr, cr2)))
}
