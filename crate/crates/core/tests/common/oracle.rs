//! Element-level evaluation of the defining identities.
//!
//! Everything here is written from the Sweedler-notation statements with
//! explicit sums over basis terms; none of it goes through the law catalog's
//! tensor-slot machinery. Part names match the catalog so a residual entry
//! can be looked up here.

use prelie_core::laws::LawId;
use prelie_core::scalars::Scalar;
use prelie_core::structures::{names, AlgebraStructure, Bundle, CoalgebraStructure, Matrix, Representation};
use rand::Rng;

pub type V = Vec<Scalar>;

pub fn zero(n: usize) -> V {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> V {
    let mut v = zero(n);
    v[i] = Scalar::one();
    v
}

pub fn add(x: &[Scalar], y: &[Scalar]) -> V {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[Scalar], y: &[Scalar]) -> V {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale(x: &[Scalar], s: &Scalar) -> V {
    x.iter().map(|a| a * s).collect()
}

/// `x∘y = Σ x_i y_j c[i][j][k] e_k`.
pub fn mul(a: &AlgebraStructure, x: &[Scalar], y: &[Scalar]) -> V {
    let n = a.dim();
    let mut out = zero(n);
    for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
        for (j, yj) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            let xy = xi * yj;
            for (k, o) in out.iter_mut().enumerate() {
                let c = a.c(i, j, k);
                if !c.is_zero() {
                    *o += &xy * c;
                }
            }
        }
    }
    out
}

/// `F(x)` for `F(e_i) = Σ_j F[i][j] e_j`.
pub fn ap(f: &Matrix, x: &[Scalar]) -> V {
    let mut out = zero(f.cols());
    for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
        for (j, o) in out.iter_mut().enumerate() {
            let m = f.get(i, j);
            if !m.is_zero() {
                *o += xi * m;
            }
        }
    }
    out
}

/// `ω(x, y) = Σ x_i ω[i][j] y_j`.
pub fn om(w: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
        for (j, yj) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            let m = w.get(i, j);
            if !m.is_zero() {
                acc += &(xi * m) * yj;
            }
        }
    }
    acc
}

/// `ρ(x)v` for one of the two actions of a representation.
pub fn act(maps: &[Matrix], x: &[Scalar], v: &[Scalar]) -> V {
    let mut out = zero(v.len());
    for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
        out = add(&out, &scale(&ap(&maps[i], v), xi));
    }
    out
}

/// Sweedler terms of `Δ(x)`: `Δ(x) = Σ c · x₁ ⊗ x₂` over basis pairs.
pub fn sw(d: &CoalgebraStructure, x: &[Scalar]) -> Vec<(Scalar, V, V)> {
    let n = d.dim();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut c = Scalar::zero();
            for (k, xk) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                c += xk * d.d(k, a, b);
            }
            if !c.is_zero() {
                out.push((c, unit(n, a), unit(n, b)));
            }
        }
    }
    out
}

/// Terms of `r = Σ r[p][q] e_p ⊗ e_q`.
pub fn terms(r: &Matrix) -> Vec<(Scalar, V, V)> {
    let mut out = Vec::new();
    for p in 0..r.rows() {
        for q in 0..r.cols() {
            let c = r.get(p, q);
            if !c.is_zero() {
                out.push((c.clone(), unit(r.rows(), p), unit(r.cols(), q)));
            }
        }
    }
    out
}

/// A tensor accumulated from pure tensors.
#[derive(Clone, Debug, PartialEq)]
pub struct Acc {
    pub dims: Vec<usize>,
    pub data: Vec<Scalar>,
}

impl Acc {
    pub fn new(dims: &[usize]) -> Self {
        Acc { dims: dims.to_vec(), data: vec![Scalar::zero(); dims.iter().product()] }
    }

    pub fn from_vec(v: V) -> Self {
        Acc { dims: vec![v.len()], data: v }
    }

    pub fn from_scalar(s: Scalar) -> Self {
        Acc { dims: vec![], data: vec![s] }
    }

    fn index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            idx[k] = flat % self.dims[k];
            flat /= self.dims[k];
        }
        idx
    }

    /// Add `c · legs[0] ⊗ legs[1] ⊗ …`.
    pub fn put(&mut self, c: &Scalar, legs: &[&[Scalar]]) {
        assert_eq!(legs.len(), self.dims.len());
        if c.is_zero() {
            return;
        }
        'outer: for flat in 0..self.data.len() {
            let idx = self.index(flat);
            let mut p = c.clone();
            for (leg, &i) in legs.iter().zip(&idx) {
                if leg[i].is_zero() {
                    continue 'outer;
                }
                p = &p * &leg[i];
            }
            self.data[flat] += p;
        }
    }

    pub fn put_neg(&mut self, c: &Scalar, legs: &[&[Scalar]]) {
        self.put(&-c, legs);
    }

    pub fn plus(mut self, other: &Acc) -> Acc {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        self
    }

    pub fn minus(mut self, other: &Acc) -> Acc {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn at(&self, idx: &[usize]) -> &Scalar {
        let mut flat = 0;
        for (k, &i) in idx.iter().enumerate() {
            flat = flat * self.dims[k] + i;
        }
        &self.data[flat]
    }
}

type Eval<'a> = Box<dyn Fn(&[V]) -> Acc + 'a>;

/// One identity of a law as a function of its input vectors.
pub struct Part<'a> {
    pub name: String,
    pub arity: Vec<usize>,
    eval: Eval<'a>,
}

impl<'a> Part<'a> {
    fn new(name: &str, arity: Vec<usize>, eval: impl Fn(&[V]) -> Acc + 'a) -> Self {
        Part { name: name.to_string(), arity, eval: Box::new(eval) }
    }

    fn prefixed(mut self, p: &str) -> Self {
        self.name = format!("{p}.{}", self.name);
        self
    }

    pub fn eval(&self, inputs: &[V]) -> Acc {
        (self.eval)(inputs)
    }

    pub fn eval_basis(&self, tuple: &[usize]) -> Acc {
        let inputs: Vec<V> = tuple.iter().zip(&self.arity).map(|(&i, &n)| unit(n, i)).collect();
        self.eval(&inputs)
    }
}

fn prefixed<'a>(p: &str, parts: Vec<Part<'a>>) -> Vec<Part<'a>> {
    parts.into_iter().map(|x| x.prefixed(p)).collect()
}

fn vsum(parts: &[(i64, V)]) -> Acc {
    let n = parts[0].1.len();
    let mut out = zero(n);
    for (s, v) in parts {
        out = add(&out, &scale(v, &Scalar::from_int(*s)));
    }
    Acc::from_vec(out)
}

fn pre_lie(a: &AlgebraStructure) -> Vec<Part<'_>> {
    let n = a.dim();
    vec![Part::new("associator_symmetry", vec![n, n, n], move |v| {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let m = |p: &[Scalar], q: &[Scalar]| mul(a, p, q);
        vsum(&[(1, m(&m(x, y), z)), (-1, m(x, &m(y, z))), (-1, m(&m(y, x), z)), (1, m(y, &m(x, z)))])
    })]
}

/// Left minus right side of the co-pre-Lie identity at `x`.
pub fn coassoc(d: &CoalgebraStructure, x: &[Scalar]) -> Acc {
    let n = d.dim();
    let mut t = Acc::new(&[n, n, n]);
    for (c1, x1, x2) in sw(d, x) {
        for (c2, p, q) in sw(d, &x1) {
            let c = &c1 * &c2;
            t.put(&c, &[&p, &q, &x2]);
            t.put_neg(&c, &[&q, &p, &x2]);
        }
        for (c2, p, q) in sw(d, &x2) {
            let c = &c1 * &c2;
            t.put_neg(&c, &[&x1, &p, &q]);
            t.put(&c, &[&p, &x1, &q]);
        }
    }
    t
}

fn pre_lie_co(d: &CoalgebraStructure) -> Vec<Part<'_>> {
    vec![Part::new("coassociator_symmetry", vec![d.dim()], move |v| coassoc(d, &v[0]))]
}

/// `Δ(u)` as a two-tensor.
fn cop2(d: &CoalgebraStructure, u: &[Scalar]) -> Acc {
    let n = d.dim();
    let mut t = Acc::new(&[n, n]);
    for (c, p, q) in sw(d, u) {
        t.put(&c, &[&p, &q]);
    }
    t
}

fn pre_lie_bialg<'a>(a: &'a AlgebraStructure, d: &'a CoalgebraStructure) -> Vec<Part<'a>> {
    let n = a.dim();
    let b1 = Part::new("compat_antisym", vec![n, n], move |v| {
        let (x, y) = (&v[0], &v[1]);
        let m = |p: &[Scalar], q: &[Scalar]| mul(a, p, q);
        let mut t = cop2(d, &m(x, y)).minus(&cop2(d, &m(y, x)));
        for (c, y1, y2) in sw(d, y) {
            t.put_neg(&c, &[&m(x, &y1), &y2]);
            t.put_neg(&c, &[&y1, &m(x, &y2)]);
            t.put(&c, &[&y1, &m(&y2, x)]);
        }
        for (c, x1, x2) in sw(d, x) {
            t.put(&c, &[&m(y, &x1), &x2]);
            t.put(&c, &[&x1, &m(y, &x2)]);
            t.put_neg(&c, &[&x1, &m(&x2, y)]);
        }
        t
    });
    let b2 = Part::new("compat_flip", vec![n, n], move |v| {
        let (x, y) = (&v[0], &v[1]);
        let m = |p: &[Scalar], q: &[Scalar]| mul(a, p, q);
        let mut t = Acc::new(&[n, n]);
        for (c, p, q) in sw(d, &m(x, y)) {
            t.put(&c, &[&p, &q]);
            t.put_neg(&c, &[&q, &p]);
        }
        for (c, x1, x2) in sw(d, x) {
            t.put_neg(&c, &[&x1, &m(&x2, y)]);
            t.put(&c, &[&m(&x2, y), &x1]);
        }
        for (c, y1, y2) in sw(d, y) {
            t.put_neg(&c, &[&y1, &m(x, &y2)]);
            t.put(&c, &[&y2, &m(x, &y1)]);
            t.put(&c, &[&m(x, &y2), &y1]);
            t.put_neg(&c, &[&m(x, &y1), &y2]);
        }
        t
    });
    vec![b1, b2]
}

/// Both sides of the S-equation on `r`, left minus right.
pub fn s_equation_residual(a: &AlgebraStructure, r: &Matrix) -> Acc {
    let n = a.dim();
    let mut t = Acc::new(&[n, n, n]);
    let rs = terms(r);
    for (c1, ai, bi) in &rs {
        for (c2, aj, bj) in &rs {
            let c = c1 * c2;
            t.put(&c, &[ai, &mul(a, bi, aj), bj]);
            t.put(&c, &[ai, aj, &mul(a, bi, bj)]);
            t.put_neg(&c, &[&mul(a, ai, aj), bi, bj]);
            t.put_neg(&c, &[ai, aj, &mul(a, bj, bi)]);
        }
    }
    t
}

fn co_s_equation<'a>(d: &'a CoalgebraStructure, w: &'a Matrix) -> Vec<Part<'a>> {
    let n = d.dim();
    vec![Part::new("co_s_equation", vec![n, n, n], move |v| {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let mut s = Scalar::zero();
        for (c, y1, y2) in sw(d, y) {
            s += &c * &(&om(w, x, &y1) * &om(w, &y2, z));
        }
        for (c, z1, z2) in sw(d, z) {
            s += &c * &(&om(w, x, &z1) * &om(w, y, &z2));
            s -= &c * &(&om(w, y, &z1) * &om(w, x, &z2));
        }
        for (c, x1, x2) in sw(d, x) {
            s -= &c * &(&om(w, &x1, y) * &om(w, &x2, z));
        }
        Acc::from_scalar(s)
    })]
}

fn pseudo_hessian<'a>(a: &'a AlgebraStructure, w: &'a Matrix) -> Vec<Part<'a>> {
    let n = a.dim();
    vec![Part::new("cocycle", vec![n, n, n], move |v| {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let m = |p: &[Scalar], q: &[Scalar]| mul(a, p, q);
        let mut s = om(w, &m(x, y), z);
        s -= om(w, x, &m(y, z));
        s -= om(w, &m(y, x), z);
        s += om(w, y, &m(x, z));
        Acc::from_scalar(s)
    })]
}

fn pseudo_hessian_co<'a>(d: &'a CoalgebraStructure, r: &'a Matrix) -> Vec<Part<'a>> {
    let n = d.dim();
    vec![Part::new("co_cocycle", vec![], move |_| {
        let mut t = Acc::new(&[n, n, n]);
        for (c, ai, bi) in terms(r) {
            for (c2, p, q) in sw(d, &ai) {
                let k = &c * &c2;
                t.put(&k, &[&p, &q, &bi]);
                t.put_neg(&k, &[&q, &p, &bi]);
            }
            for (c2, p, q) in sw(d, &bi) {
                let k = &c * &c2;
                t.put_neg(&k, &[&ai, &p, &q]);
                t.put(&k, &[&p, &ai, &q]);
            }
        }
        t
    })]
}

fn nijenhuis<'a>(a: &'a AlgebraStructure, op: &'a Matrix) -> Vec<Part<'a>> {
    let n = a.dim();
    vec![Part::new("nijenhuis", vec![n, n], move |v| {
        let (x, y) = (&v[0], &v[1]);
        let m = |p: &[Scalar], q: &[Scalar]| mul(a, p, q);
        let f = |p: &[Scalar]| ap(op, p);
        let (nx, ny) = (f(x), f(y));
        vsum(&[(1, m(&nx, &ny)), (1, f(&f(&m(x, y)))), (-1, f(&m(&nx, y))), (-1, f(&m(x, &ny)))])
    })]
}

fn co_nijenhuis<'a>(d: &'a CoalgebraStructure, s: &'a Matrix) -> Vec<Part<'a>> {
    let n = d.dim();
    vec![Part::new("co_nijenhuis", vec![n], move |v| {
        let x = &v[0];
        let f = |p: &[Scalar]| ap(s, p);
        let mut t = cop2(d, &f(&f(x)));
        for (c, x1, x2) in sw(d, x) {
            t.put(&c, &[&f(&x1), &f(&x2)]);
        }
        for (c, p, q) in sw(d, &f(x)) {
            t.put_neg(&c, &[&f(&p), &q]);
            t.put_neg(&c, &[&p, &f(&q)]);
        }
        t
    })]
}

fn rep_parts<'a>(a: &'a AlgebraStructure, rep: &'a Representation) -> Vec<Part<'a>> {
    let (n, m) = (a.dim(), rep.rep_dim);
    let rho = |x: &[Scalar], v: &[Scalar]| act(&rep.rho, x, v);
    let phi = |x: &[Scalar], v: &[Scalar]| act(&rep.phi, x, v);
    vec![
        Part::new("left_bracket", vec![n, n, m], move |t| {
            let (x, y, v) = (&t[0], &t[1], &t[2]);
            let br = sub(&mul(a, x, y), &mul(a, y, x));
            vsum(&[(1, rho(&br, v)), (-1, rho(x, &rho(y, v))), (1, rho(y, &rho(x, v)))])
        }),
        Part::new("right_action", vec![n, n, m], move |t| {
            let (x, y, v) = (&t[0], &t[1], &t[2]);
            vsum(&[
                (1, phi(&mul(a, x, y), v)),
                (-1, rho(x, &phi(y, v))),
                (1, phi(y, &rho(x, v))),
                (-1, phi(y, &phi(x, v))),
            ])
        }),
    ]
}

fn nij_rep<'a>(op: &'a Matrix, rep: &'a Representation, alpha: &'a Matrix) -> Vec<Part<'a>> {
    let (n, m) = (rep.alg_dim, rep.rep_dim);
    let one = move |name: &str, maps: &'a [Matrix]| {
        Part::new(name, vec![n, m], move |t| {
            let (x, v) = (&t[0], &t[1]);
            let al = |p: &[Scalar]| ap(alpha, p);
            let nx = ap(op, x);
            vsum(&[
                (1, act(maps, &nx, &al(v))),
                (1, al(&al(&act(maps, x, v)))),
                (-1, al(&act(maps, &nx, v))),
                (-1, al(&act(maps, x, &al(v)))),
            ])
        })
    };
    vec![one("nij_left", &rep.rho), one("nij_right", &rep.phi)]
}

fn admissible_s<'a>(a: &'a AlgebraStructure, op: &'a Matrix, s: &'a Matrix) -> Vec<Part<'a>> {
    let n = a.dim();
    vec![
        Part::new("s_left", vec![n, n], move |t| {
            let (x, y) = (&t[0], &t[1]);
            let m = |p: &[Scalar], q: &[Scalar]| mul(a, p, q);
            let f = |p: &[Scalar]| ap(s, p);
            let nx = ap(op, x);
            vsum(&[(1, f(&m(&nx, y))), (1, m(x, &f(&f(y)))), (-1, m(&nx, &f(y))), (-1, f(&m(x, &f(y))))])
        }),
        Part::new("s_right", vec![n, n], move |t| {
            let (x, y) = (&t[0], &t[1]);
            let m = |p: &[Scalar], q: &[Scalar]| mul(a, p, q);
            let f = |p: &[Scalar]| ap(s, p);
            let ny = ap(op, y);
            vsum(&[(1, f(&m(x, &ny))), (1, m(&f(&f(x)), y)), (-1, m(&f(x), &ny)), (-1, f(&m(&f(x), y)))])
        }),
    ]
}

fn admissible_beta<'a>(op: &'a Matrix, rep: &'a Representation, beta: &'a Matrix) -> Vec<Part<'a>> {
    let (n, m) = (rep.alg_dim, rep.rep_dim);
    let one = move |name: &str, maps: &'a [Matrix]| {
        Part::new(name, vec![n, m], move |t| {
            let (x, v) = (&t[0], &t[1]);
            let b = |p: &[Scalar]| ap(beta, p);
            let nx = ap(op, x);
            vsum(&[
                (1, b(&act(maps, &nx, v))),
                (1, act(maps, x, &b(&b(v)))),
                (-1, act(maps, &nx, &b(v))),
                (-1, b(&act(maps, x, &b(v)))),
            ])
        })
    };
    vec![one("beta_rho", &rep.rho), one("beta_phi", &rep.phi)]
}

fn admissible_nstar<'a>(d: &'a CoalgebraStructure, op: &'a Matrix, s: &'a Matrix) -> Vec<Part<'a>> {
    let n = d.dim();
    vec![
        Part::new("nstar_left", vec![n], move |v| {
            let x = &v[0];
            let f = |p: &[Scalar]| ap(op, p);
            let g = |p: &[Scalar]| ap(s, p);
            let mut t = Acc::new(&[n, n]);
            for (c, p, q) in sw(d, &f(x)) {
                t.put(&c, &[&p, &g(&q)]);
                t.put_neg(&c, &[&f(&p), &q]);
            }
            for (c, x1, x2) in sw(d, x) {
                t.put(&c, &[&f(&f(&x1)), &x2]);
                t.put_neg(&c, &[&f(&x1), &g(&x2)]);
            }
            t
        }),
        Part::new("nstar_right", vec![n], move |v| {
            let x = &v[0];
            let f = |p: &[Scalar]| ap(op, p);
            let g = |p: &[Scalar]| ap(s, p);
            let mut t = Acc::new(&[n, n]);
            for (c, p, q) in sw(d, &f(x)) {
                t.put(&c, &[&g(&p), &q]);
                t.put_neg(&c, &[&p, &f(&q)]);
            }
            for (c, x1, x2) in sw(d, x) {
                t.put(&c, &[&x1, &f(&f(&x2))]);
                t.put_neg(&c, &[&g(&x1), &f(&x2)]);
            }
            t
        }),
    ]
}

fn o_operator_weak<'a>(
    a: &'a AlgebraStructure,
    op: &'a Matrix,
    rep: &'a Representation,
    alpha: &'a Matrix,
    tm: &'a Matrix,
) -> Vec<Part<'a>> {
    let m = rep.rep_dim;
    vec![
        Part::new("o_product", vec![m, m], move |t| {
            let (u, v) = (&t[0], &t[1]);
            let (tu, tv) = (ap(tm, u), ap(tm, v));
            let inner = add(&act(&rep.rho, &tu, v), &act(&rep.phi, &tv, u));
            vsum(&[(1, mul(a, &tu, &tv)), (-1, ap(tm, &inner))])
        }),
        Part::new("o_intertwine", vec![m], move |t| {
            let u = &t[0];
            vsum(&[(1, ap(op, &ap(tm, u))), (-1, ap(tm, &ap(alpha, u)))])
        }),
    ]
}

fn balanced<'a>(a: &'a AlgebraStructure, d: &'a CoalgebraStructure) -> Vec<Part<'a>> {
    let n = a.dim();
    vec![Part::new("balanced", vec![n, n], move |v| {
        let (x, y) = (&v[0], &v[1]);
        let mut t = Acc::new(&[n, n]);
        for (c, x1, x2) in sw(d, x) {
            t.put(&c, &[&mul(a, &x1, y), &x2]);
            t.put_neg(&c, &[&x2, &mul(a, &x1, y)]);
        }
        for (c, y1, y2) in sw(d, y) {
            t.put(&c, &[&y2, &mul(a, &y1, x)]);
            t.put_neg(&c, &[&mul(a, &y1, x), &y2]);
        }
        t
    })]
}

fn lie_alg(a: &AlgebraStructure) -> Vec<Part<'_>> {
    let n = a.dim();
    vec![
        Part::new("antisymmetry", vec![n, n], move |v| vsum(&[(1, mul(a, &v[0], &v[1])), (1, mul(a, &v[1], &v[0]))])),
        Part::new("jacobi", vec![n, n, n], move |v| {
            let (x, y, z) = (&v[0], &v[1], &v[2]);
            let m = |p: &[Scalar], q: &[Scalar]| mul(a, p, q);
            vsum(&[(1, m(x, &m(y, z))), (1, m(y, &m(z, x))), (1, m(z, &m(x, y)))])
        }),
    ]
}

fn lie_co(d: &CoalgebraStructure) -> Vec<Part<'_>> {
    let n = d.dim();
    vec![
        Part::new("coantisymmetry", vec![n], move |v| {
            let mut t = Acc::new(&[n, n]);
            for (c, p, q) in sw(d, &v[0]) {
                t.put(&c, &[&p, &q]);
                t.put(&c, &[&q, &p]);
            }
            t
        }),
        Part::new("cojacobi", vec![n], move |v| {
            let mut t = Acc::new(&[n, n, n]);
            for (c1, x1, x2) in sw(d, &v[0]) {
                for (c2, p, q) in sw(d, &x2) {
                    let c = &c1 * &c2;
                    t.put(&c, &[&x1, &p, &q]);
                    t.put(&c, &[&p, &q, &x1]);
                    t.put(&c, &[&q, &x1, &p]);
                }
            }
            t
        }),
    ]
}

fn lie_bialg<'a>(a: &'a AlgebraStructure, d: &'a CoalgebraStructure) -> Vec<Part<'a>> {
    let n = a.dim();
    let mut parts = prefixed("LIE_ALG", lie_alg(a));
    parts.extend(prefixed("LIE_CO", lie_co(d)));
    parts.push(Part::new("cocycle_bracket", vec![n, n], move |v| {
        let (x, y) = (&v[0], &v[1]);
        let mut t = cop2(d, &mul(a, x, y));
        for (c, y1, y2) in sw(d, y) {
            t.put_neg(&c, &[&mul(a, x, &y1), &y2]);
            t.put_neg(&c, &[&y1, &mul(a, x, &y2)]);
        }
        for (c, x1, x2) in sw(d, x) {
            t.put(&c, &[&mul(a, y, &x1), &x2]);
            t.put(&c, &[&x1, &mul(a, y, &x2)]);
        }
        t
    }));
    parts
}

fn nij_lie_bialg<'a>(
    a: &'a AlgebraStructure,
    d: &'a CoalgebraStructure,
    op: &'a Matrix,
    s: &'a Matrix,
) -> Vec<Part<'a>> {
    let n = a.dim();
    let mut parts = prefixed("LIE_BIALG", lie_bialg(a, d));
    parts.extend(prefixed("NIJENHUIS", nijenhuis(a, op)));
    parts.extend(prefixed("CO_NIJENHUIS", co_nijenhuis(d, s)));
    parts.push(Part::new("lie_admissible", vec![n, n], move |v| {
        let (x, y) = (&v[0], &v[1]);
        let m = |p: &[Scalar], q: &[Scalar]| mul(a, p, q);
        let g = |p: &[Scalar]| ap(s, p);
        let nx = ap(op, x);
        vsum(&[(1, g(&m(&nx, y))), (1, m(x, &g(&g(y)))), (-1, m(&nx, &g(y))), (-1, g(&m(x, &g(y))))])
    }));
    parts.push(Part::new("lie_coadmissible", vec![n], move |v| {
        let x = &v[0];
        let f = |p: &[Scalar]| ap(op, p);
        let g = |p: &[Scalar]| ap(s, p);
        let mut t = Acc::new(&[n, n]);
        for (c, p, q) in sw(d, &f(x)) {
            t.put(&c, &[&g(&p), &q]);
            t.put_neg(&c, &[&p, &f(&q)]);
        }
        for (c, x1, x2) in sw(d, x) {
            t.put(&c, &[&x1, &f(&f(&x2))]);
            t.put_neg(&c, &[&g(&x1), &f(&x2)]);
        }
        t
    }));
    parts
}

fn sum_coalg(d: &CoalgebraStructure, e: &CoalgebraStructure) -> CoalgebraStructure {
    CoalgebraStructure::from_fn(d.dim(), |k, i, j| d.d(k, i, j) + e.d(k, i, j))
}

/// Members a law needs, read without the catalog's shape checks; `None`
/// when something is missing or the law has no oracle here.
pub fn parts<'a>(law: LawId, b: &'a Bundle) -> Option<Vec<Part<'a>>> {
    use LawId::*;
    let alg = || b.alg.as_ref();
    let coalg = || b.coalg.as_ref();
    let op = |k: &str| b.operators.get(k);
    let rep = || b.reps.get(names::REP);
    Some(match law {
        PRE_LIE => pre_lie(alg()?),
        PRE_LIE_CO => pre_lie_co(coalg()?),
        PRE_LIE_BIALG => pre_lie_bialg(alg()?, coalg()?),
        S_EQUATION => {
            let (a, r) = (alg()?, b.tensors.get(names::R)?);
            vec![Part::new("s_equation", vec![], move |_| s_equation_residual(a, r))]
        }
        CO_S_EQUATION => co_s_equation(coalg()?, b.forms.get(names::OMEGA)?),
        PSEUDO_HESSIAN => pseudo_hessian(alg()?, b.forms.get(names::OMEGA)?),
        PSEUDO_HESSIAN_CO => pseudo_hessian_co(coalg()?, b.tensors.get(names::R)?),
        NIJENHUIS => nijenhuis(alg()?, op(names::N)?),
        CO_NIJENHUIS => co_nijenhuis(coalg()?, op(names::S)?),
        REP => rep_parts(alg()?, rep()?),
        NIJ_REP => nij_rep(op(names::N)?, rep()?, op(names::ALPHA)?),
        ADMISSIBLE_S => admissible_s(alg()?, op(names::N)?, op(names::S)?),
        ADMISSIBLE_BETA => admissible_beta(op(names::N)?, rep()?, op(names::BETA)?),
        ADMISSIBLE_NSTAR => admissible_nstar(coalg()?, op(names::N)?, op(names::S)?),
        NIJ_PRE_LIE_BIALG => {
            let (a, d, n, s) = (alg()?, coalg()?, op(names::N)?, op(names::S)?);
            let mut p = prefixed("PRE_LIE", pre_lie(a));
            p.extend(prefixed("NIJENHUIS", nijenhuis(a, n)));
            p.extend(prefixed("PRE_LIE_CO", pre_lie_co(d)));
            p.extend(prefixed("CO_NIJENHUIS", co_nijenhuis(d, s)));
            p.extend(prefixed("PRE_LIE_BIALG", pre_lie_bialg(a, d)));
            p.extend(prefixed("ADMISSIBLE_S", admissible_s(a, n, s)));
            p.extend(prefixed("ADMISSIBLE_NSTAR", admissible_nstar(d, n, s)));
            p
        }
        O_OPERATOR_WEAK => o_operator_weak(alg()?, op(names::N)?, rep()?, op(names::ALPHA)?, op(names::T)?),
        O_OPERATOR => {
            let (a, n, r, al) = (alg()?, op(names::N)?, rep()?, op(names::ALPHA)?);
            let mut p = prefixed("O_OPERATOR_WEAK", o_operator_weak(a, n, r, al, op(names::T)?));
            p.extend(prefixed("REP", rep_parts(a, r)));
            p.extend(prefixed("NIJ_REP", nij_rep(n, r, al)));
            p
        }
        S_NIJ_S_EQUATION => {
            let (a, r, n, s) = (alg()?, b.tensors.get(names::R)?, op(names::N)?, op(names::S)?);
            let dim = a.dim();
            vec![
                Part::new("S_EQUATION.s_equation", vec![], move |_| s_equation_residual(a, r)),
                Part::new("s_nijenhuis", vec![], move |_| {
                    let mut t = Acc::new(&[dim, dim]);
                    for (c, p, q) in terms(r) {
                        t.put(&c, &[&ap(s, &p), &q]);
                        t.put_neg(&c, &[&p, &ap(n, &q)]);
                    }
                    t
                }),
            ]
        }
        BALANCED => balanced(alg()?, coalg()?),
        LIE_ALG => lie_alg(alg()?),
        LIE_CO => lie_co(coalg()?),
        LIE_BIALG => lie_bialg(alg()?, coalg()?),
        NIJ_LIE_BIALG => nij_lie_bialg(alg()?, coalg()?, op(names::N)?, op(names::S)?),
        COMMUTATIVE => {
            let a = alg()?;
            let n = a.dim();
            vec![Part::new("commutative", vec![n, n], move |v| {
                vsum(&[(1, mul(a, &v[0], &v[1])), (-1, mul(a, &v[1], &v[0]))])
            })]
        }
        COCOMMUTATIVE => {
            let d = coalg()?;
            let n = d.dim();
            vec![Part::new("cocommutative", vec![n], move |v| {
                let mut t = Acc::new(&[n, n]);
                for (c, p, q) in sw(d, &v[0]) {
                    t.put(&c, &[&p, &q]);
                    t.put_neg(&c, &[&q, &p]);
                }
                t
            })]
        }
        SYMMETRIC_FORM => {
            let w = b.forms.get(names::OMEGA)?;
            let n = w.rows();
            vec![Part::new("symmetric", vec![n, n], move |v| {
                Acc::from_scalar(&om(w, &v[0], &v[1]) - &om(w, &v[1], &v[0]))
            })]
        }
        SYMMETRIC_TENSOR => {
            let r = b.tensors.get(names::R)?;
            let n = r.rows();
            vec![Part::new("symmetric", vec![], move |_| {
                let mut t = Acc::new(&[n, n]);
                for (c, p, q) in terms(r) {
                    t.put(&c, &[&p, &q]);
                    t.put_neg(&c, &[&q, &p]);
                }
                t
            })]
        }
        PENCIL_COMPAT if b.coreps.is_empty() => {
            let (d, e) = (coalg()?, b.coalgebras.get(names::DELTA)?);
            let sum = sum_coalg(d, e);
            let n = d.dim();
            let mut p = prefixed("comul.PRE_LIE_CO", pre_lie_co(d));
            p.extend(prefixed("delta.PRE_LIE_CO", pre_lie_co(e)));
            p.push(Part::new("cross", vec![n], move |v| {
                coassoc(&sum, &v[0]).minus(&coassoc(d, &v[0])).minus(&coassoc(e, &v[0]))
            }));
            p
        }
        PENCIL_MORPHISM if !b.operators.contains_key(names::THETA) => {
            let (d, e, s) = (coalg()?, b.coalgebras.get(names::DELTA)?, op(names::S)?);
            let n = d.dim();
            vec![
                Part::new("hom_delta", vec![n], move |v| {
                    let x = &v[0];
                    let mut t = cop2(e, &ap(s, x));
                    for (c, x1, x2) in sw(d, x) {
                        t.put_neg(&c, &[&ap(s, &x1), &ap(s, &x2)]);
                    }
                    t
                }),
                Part::new("hom_sum", vec![n], move |v| {
                    let x = &v[0];
                    let mut t = cop2(d, &ap(s, x)).plus(&cop2(e, x));
                    for (c, x1, x2) in sw(d, x) {
                        t.put_neg(&c, &[&x1, &ap(s, &x2)]);
                        t.put_neg(&c, &[&ap(s, &x1), &x2]);
                    }
                    t
                }),
            ]
        }
        _ => return None,
    })
}

/// A random vector with small rational entries.
pub fn random_vector(rng: &mut impl Rng, n: usize) -> V {
    (0..n).map(|_| Scalar::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect()
}

/// Verdict of `law` from `samples` random input tuples (a single evaluation
/// for parts without inputs); `None` without an oracle.
pub fn verdict(law: LawId, b: &Bundle, samples: usize, rng: &mut impl Rng) -> Option<bool> {
    let parts = parts(law, b)?;
    for p in &parts {
        let rounds = if p.arity.is_empty() { 1 } else { samples };
        for _ in 0..rounds {
            let inputs: Vec<V> = p.arity.iter().map(|&n| random_vector(rng, n)).collect();
            if !p.eval(&inputs).is_zero() {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// The oracle part named `part`, evaluated on basis vectors.
pub fn at_basis(law: LawId, b: &Bundle, part: &str, tuple: &[usize]) -> Option<Acc> {
    let parts = parts(law, b)?;
    let p = parts.into_iter().find(|p| p.name == part)?;
    Some(p.eval_basis(tuple))
}

/// Every basis tuple of the given input dimensions, in row-major order.
pub fn tuples(arity: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &n in arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Nonzero evaluations on basis inputs as `(part, input, residual)`.
pub fn nonzero(law: LawId, b: &Bundle) -> Option<Vec<(String, Vec<usize>, Acc)>> {
    let parts = parts(law, b)?;
    let mut out = Vec::new();
    for p in &parts {
        for t in tuples(&p.arity) {
            let v = p.eval_basis(&t);
            if !v.is_zero() {
                out.push((p.name.clone(), t, v));
            }
        }
    }
    Some(out)
}

/// Deterministic verdict over all basis inputs; exact for symbolic bundles.
pub fn holds(law: LawId, b: &Bundle) -> Option<bool> {
    nonzero(law, b).map(|v| v.is_empty())
}
