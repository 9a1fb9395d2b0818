use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ParamRing;

/// Exponent vector with trailing zeros trimmed, so that vectors of different
/// lengths compare as if zero-padded.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        let mut v = vec![0; index + 1];
        v[index] = 1;
        Monomial(v)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial(v)
    }

    fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().min(other.0.len());
        Monomial::from_exponents((0..n).map(|i| self.exp(i).min(other.exp(i))).collect())
    }

    fn lcm(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial((0..n).map(|i| self.exp(i).max(other.exp(i))).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    fn div(&self, other: &Monomial) -> Monomial {
        let v = self
            .0
            .iter()
            .enumerate()
            .map(|(i, e)| e - other.exp(i))
            .collect();
        Monomial::from_exponents(v)
    }

    pub(crate) fn render(&self, ring: &ParamRing) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(ring.name(i).to_string()),
                _ => parts.push(format!("{}^{}", ring.name(i), e)),
            }
        }
        parts.join("*")
    }

    fn factor_count(&self) -> usize {
        self.0.iter().filter(|&&e| e > 0).count()
    }
}

/// Multivariate polynomial with rational coefficients. No zero coefficients
/// are ever stored, so the zero polynomial is the empty map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(index: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(index), BigRational::one());
        Poly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Greatest term in lexicographic order of the declared parameters.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Single term with any coefficient.
    pub fn as_term(&self) -> Option<(&Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Indices of parameters that occur with positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 && !out.contains(&i) {
                    out.push(i);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.mul(mono), k.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Gcd of all monomials occurring in the polynomial.
    pub(crate) fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.gcd(m)))
    }

    pub(crate) fn div_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.div(mono), k.clone())).collect(),
        }
    }

    pub(crate) fn monomial_lcm(a: &Monomial, b: &Monomial) -> Monomial {
        a.lcm(b)
    }

    pub(crate) fn monomial_quotient(a: &Monomial, b: &Monomial) -> Monomial {
        a.div(b)
    }

    /// Replace the variables that have a binding by their value.
    pub fn substitute(&self, values: &[Option<BigRational>]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::with_capacity(m.exponents().len());
            for (i, &e) in m.exponents().iter().enumerate() {
                match values.get(i).and_then(|v| v.as_ref()) {
                    Some(v) if e > 0 => {
                        coeff *= num_traits::pow(v.clone(), e as usize);
                        rest.push(0);
                    }
                    _ => rest.push(e),
                }
            }
            out.add_term(Monomial::from_exponents(rest), coeff);
        }
        out
    }

    pub(crate) fn render(&self, ring: &ParamRing) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            let body = if m.is_one() {
                render_rational(&abs)
            } else if abs.is_one() {
                m.render(ring)
            } else {
                format!("{}*{}", render_rational(&abs), m.render(ring))
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    /// True when rendering needs no parentheses as a numerator or denominator.
    pub(crate) fn is_atomic_factor(&self) -> bool {
        match self.as_term() {
            Some((m, c)) => {
                if m.is_one() {
                    c.is_integer() && !c.is_negative()
                } else {
                    c.is_one() && m.factor_count() == 1
                }
            }
            None => false,
        }
    }
}

pub(crate) fn render_rational(q: &BigRational) -> String {
    let mut s = String::new();
    if q.denom() == &BigInt::one() {
        write!(s, "{}", q.numer()).unwrap();
    } else {
        write!(s, "{}/{}", q.numer(), q.denom()).unwrap();
    }
    s
}
