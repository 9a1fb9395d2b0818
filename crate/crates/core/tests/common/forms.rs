//! Equivalent reformulations of several laws, each evaluated directly.

use prelie_core::scalars::Scalar;
use prelie_core::structures::{AlgebraStructure, CoalgebraStructure, Matrix};

use super::oracle::{ap, mul, om, sw, terms, unit, Acc, V};

/// `Δ_r(x) = Σ x∘a_i⊗b_i + a_i⊗x∘b_i − a_i⊗b_i∘x`.
pub fn delta_r(a: &AlgebraStructure, r: &Matrix) -> CoalgebraStructure {
    let n = a.dim();
    let mut d = CoalgebraStructure::zero(n);
    for k in 0..n {
        let x = unit(n, k);
        let mut t = Acc::new(&[n, n]);
        for (c, ai, bi) in terms(r) {
            t.put(&c, &[&mul(a, &x, &ai), &bi]);
            t.put(&c, &[&ai, &mul(a, &x, &bi)]);
            t.put_neg(&c, &[&ai, &mul(a, &bi, &x)]);
        }
        for i in 0..n {
            for j in 0..n {
                d.set(k, i, j, t.at(&[i, j]).clone());
            }
        }
    }
    d
}

/// `(id⊗Δ_r)(r) − Σ a_i∘a_j⊗b_i⊗b_j`.
pub fn qt2(a: &AlgebraStructure, r: &Matrix) -> Acc {
    let n = a.dim();
    let d = delta_r(a, r);
    let rs = terms(r);
    let mut t = Acc::new(&[n, n, n]);
    for (c, ai, bi) in &rs {
        for (c2, p, q) in sw(&d, bi) {
            t.put(&(c * &c2), &[ai, &p, &q]);
        }
    }
    for (c1, ai, bi) in &rs {
        for (c2, aj, bj) in &rs {
            t.put_neg(&(c1 * c2), &[&mul(a, ai, aj), bi, bj]);
        }
    }
    t
}

/// `(Δ_r⊗id)(r) − Σ a_i⊗a_j⊗b_i∘b_j`.
pub fn qt2_1(a: &AlgebraStructure, r: &Matrix) -> Acc {
    let n = a.dim();
    let d = delta_r(a, r);
    let rs = terms(r);
    let mut t = Acc::new(&[n, n, n]);
    for (c, ai, bi) in &rs {
        for (c2, p, q) in sw(&d, ai) {
            t.put(&(c * &c2), &[&p, &q, bi]);
        }
    }
    for (c1, ai, bi) in &rs {
        for (c2, aj, bj) in &rs {
            t.put_neg(&(c1 * c2), &[ai, aj, &mul(a, bi, bj)]);
        }
    }
    t
}

/// `x∘_ω y = x₁ω(x₂, y) + y₁ω(x, y₂) − ω(x, y₁)y₂`.
pub fn circ_omega(c: &CoalgebraStructure, w: &Matrix) -> AlgebraStructure {
    let n = c.dim();
    let product = |x: &V, y: &V| -> V {
        let mut out = vec![Scalar::zero(); n];
        let mut push = |coef: Scalar, v: &V| {
            for (o, vi) in out.iter_mut().zip(v) {
                *o += &coef * vi;
            }
        };
        for (k, x1, x2) in sw(c, x) {
            push(&k * &om(w, &x2, y), &x1);
        }
        for (k, y1, y2) in sw(c, y) {
            push(&k * &om(w, x, &y2), &y1);
            push(-(&k * &om(w, x, &y1)), &y2);
        }
        out
    };
    let table: Vec<Vec<V>> = (0..n).map(|i| (0..n).map(|j| product(&unit(n, i), &unit(n, j))).collect()).collect();
    AlgebraStructure::from_fn(n, |i, j, k| table[i][j][k].clone())
}

fn all_triples(n: usize) -> impl Iterator<Item = (V, V, V)> {
    (0..n * n * n).map(move |f| (unit(n, f / (n * n)), unit(n, (f / n) % n), unit(n, f % n)))
}

/// `ω(x, y∘_ω z) = ω(x₁, y)ω(x₂, z)` on all basis triples.
pub fn cqt2_holds(c: &CoalgebraStructure, w: &Matrix) -> bool {
    let a = circ_omega(c, w);
    all_triples(c.dim()).all(|(x, y, z)| {
        let mut s = om(w, &x, &mul(&a, &y, &z));
        for (k, x1, x2) in sw(c, &x) {
            s -= &k * &(&om(w, &x1, &y) * &om(w, &x2, &z));
        }
        s.is_zero()
    })
}

/// `ω(x∘_ω y, z) = ω(x, z₁)ω(y, z₂)` on all basis triples.
pub fn cqt2_1_holds(c: &CoalgebraStructure, w: &Matrix) -> bool {
    let a = circ_omega(c, w);
    all_triples(c.dim()).all(|(x, y, z)| {
        let mut s = om(w, &mul(&a, &x, &y), &z);
        for (k, z1, z2) in sw(c, &z) {
            s -= &k * &(&om(w, &x, &z1) * &om(w, &y, &z2));
        }
        s.is_zero()
    })
}

/// `r^♯(ξ) = Σ_k ξ_k r[k][·]`.
fn sharp(r: &Matrix, xi: &[Scalar]) -> V {
    let n = r.cols();
    let mut out = vec![Scalar::zero(); n];
    for (k, x) in xi.iter().enumerate() {
        for (j, o) in out.iter_mut().enumerate() {
            *o += x * r.get(k, j);
        }
    }
    out
}

/// `r^♯(a*)∘r^♯(b*) = r^♯((L*−R*)(r^♯(a*))b* − R*(r^♯(b*))a*)` on dual basis
/// vectors.
pub fn rr1_holds(a: &AlgebraStructure, r: &Matrix) -> bool {
    let n = a.dim();
    for p in 0..n {
        for q in 0..n {
            let x = sharp(r, &unit(n, p));
            let y = sharp(r, &unit(n, q));
            let xi: V = (0..n)
                .map(|k| {
                    let ek = unit(n, k);
                    let left = &mul(a, &ek, &x)[q] - &mul(a, &x, &ek)[q];
                    &left + &mul(a, &ek, &y)[p]
                })
                .collect();
            if mul(a, &x, &y) != sharp(r, &xi) {
                return false;
            }
        }
    }
    true
}

/// `N r^♯ = r^♯ S*`.
pub fn rr2_holds(r: &Matrix, op: &Matrix, s: &Matrix) -> bool {
    let n = r.rows();
    (0..n).all(|p| ap(op, &sharp(r, &unit(n, p))) == sharp(r, &ap(&s.transpose(), &unit(n, p))))
}

type Map<'a> = Box<dyn Fn(&V) -> V + 'a>;

/// `Σ_k (f_k ⊗ g_k)(t)`, each summand carrying a sign.
fn apply(n: usize, t: &Matrix, maps: &[(bool, &Map, &Map)]) -> Acc {
    let mut out = Acc::new(&[n, n]);
    for (c, a, b) in terms(t) {
        for (plus, f, g) in maps {
            if *plus {
                out.put(&c, &[&f(&a), &g(&b)]);
            } else {
                out.put_neg(&c, &[&f(&a), &g(&b)]);
            }
        }
    }
    out
}

fn two_leg(n: usize, r: &Matrix, f: &Map, g: &Map) -> Matrix {
    let acc = apply(n, r, &[(true, f, &id()), (false, &id(), g)]);
    Matrix::from_fn(n, n, |i, j| acc.at(&[i, j]).clone())
}

fn id<'a>() -> Map<'a> {
    Box::new(|v: &V| v.clone())
}

fn op<'a>(m: &'a Matrix) -> Map<'a> {
    Box::new(move |v: &V| ap(m, v))
}

/// `(S⊗id − id⊗N)(r)` and `(N⊗id − id⊗S)(r)`.
fn twisted(n: usize, r: &Matrix, nn: &Matrix, s: &Matrix) -> (Matrix, Matrix) {
    (two_leg(n, r, &op(s), &op(nn)), two_leg(n, r, &op(nn), &op(s)))
}

struct Actions<'a> {
    a: &'a AlgebraStructure,
}

impl<'a> Actions<'a> {
    fn l(&self, x: V) -> Map<'a> {
        let a = self.a;
        Box::new(move |v: &V| mul(a, &x, v))
    }
    fn r(&self, x: V) -> Map<'a> {
        let a = self.a;
        Box::new(move |v: &V| mul(a, v, &x))
    }
    fn then(&self, f: Map<'a>, m: &'a Matrix) -> Map<'a> {
        Box::new(move |v: &V| ap(m, &f(v)))
    }
    fn after(&self, f: Map<'a>, m: &'a Matrix) -> Map<'a> {
        Box::new(move |v: &V| f(&ap(m, v)))
    }
}

/// Operator form of CO_NIJENHUIS on `Δ_r`, for every basis `x`.
pub fn nc1_holds(a: &AlgebraStructure, r: &Matrix, nn: &Matrix, s: &Matrix) -> bool {
    let n = a.dim();
    let (ps, pm) = twisted(n, r, nn, s);
    let act = Actions { a };
    (0..n).all(|i| {
        let x = unit(n, i);
        let sx = ap(s, &x);
        let e = id();
        let first = apply(
            n,
            &ps,
            &[
                (true, &e, &act.then(act.r(x.clone()), s)),
                (false, &e, &act.r(sx.clone())),
                (false, &e, &act.then(act.l(x.clone()), s)),
                (true, &e, &act.l(sx.clone())),
            ],
        );
        let second = apply(n, &pm, &[(true, &act.then(act.l(x.clone()), s), &e), (false, &act.l(sx), &e)]);
        first.plus(&second).is_zero()
    })
}

/// Operator form of the left N*-admissibility part on `Δ_r`:
/// `Op_x((N⊗id − id⊗S)(r)) + R_x(r) = 0`. With `minus` set, tests
/// `Op_x(..) = R_x(r)` instead.
pub fn nl1_holds(a: &AlgebraStructure, r: &Matrix, nn: &Matrix, s: &Matrix, minus: bool) -> bool {
    let n = a.dim();
    let (_, pm) = twisted(n, r, nn, s);
    let (s2, n2) = (s.mul(s), nn.mul(nn));
    let act = Actions { a };
    (0..n).all(|i| {
        let x = unit(n, i);
        let nx = ap(nn, &x);
        let e = id();
        let lhs = apply(
            n,
            &pm,
            &[
                (true, &e, &act.l(nx.clone())),
                (false, &e, &act.r(nx.clone())),
                (true, &act.l(nx.clone()), &e),
                (false, &e, &act.then(act.r(x.clone()), s)),
                (true, &e, &act.then(act.l(x.clone()), s)),
                (false, &act.then(act.l(x.clone()), nn), &e),
            ],
        );
        let rhs = apply(
            n,
            r,
            &[
                (true, &e, &act.after(act.l(x.clone()), &s2)),
                (false, &op(&n2), &act.l(x.clone())),
                (true, &op(&n2), &act.r(x.clone())),
                (false, &e, &act.after(act.r(x.clone()), &s2)),
            ],
        );
        if minus { lhs.minus(&rhs) } else { lhs.plus(&rhs) }.is_zero()
    })
}

/// Operator form of the right N*-admissibility part on `Δ_r`.
pub fn nl2_holds(a: &AlgebraStructure, r: &Matrix, nn: &Matrix, s: &Matrix) -> bool {
    let n = a.dim();
    let (ps, _) = twisted(n, r, nn, s);
    let (s2, n2) = (s.mul(s), nn.mul(nn));
    let act = Actions { a };
    (0..n).all(|i| {
        let x = unit(n, i);
        let nx = ap(nn, &x);
        let e = id();
        let lhs = apply(
            n,
            &ps,
            &[
                (true, &act.l(nx.clone()), &e),
                (true, &e, &act.l(nx.clone())),
                (false, &e, &act.r(nx.clone())),
                (true, &act.then(act.l(x.clone()), s), &e),
                (false, &e, &act.then(act.l(x.clone()), nn)),
                (true, &e, &act.then(act.r(x.clone()), nn)),
            ],
        );
        let rhs = apply(
            n,
            r,
            &[(true, &act.after(act.l(x.clone()), &s2), &e), (false, &act.l(x.clone()), &op(&n2))],
        );
        lhs.minus(&rhs).is_zero()
    })
}
