use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use super::poly::{render_rational, Poly};
use super::ParamRing;
use crate::error::{Error, Result};

type Small = Ratio<i128>;

/// Element of the fraction field of `Q[params]`.
///
/// Fractions are not reduced by a polynomial gcd. Only common monomial
/// factors are cancelled and the denominator is made monic, which keeps the
/// representation canonical enough for deterministic rendering. Equality and
/// zero tests never depend on the representation: `a/b == c/d` iff `a*d - c*b`
/// is the zero polynomial.
#[derive(Clone)]
pub struct Scalar(Repr);

#[derive(Clone)]
enum Repr {
    /// Parameter-free value that fits in 128-bit numerator and denominator.
    Num(Small),
    Frac { num: Poly, den: Poly },
}

fn small_to_big(q: &Small) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

fn big_to_small(q: &BigRational) -> Option<Small> {
    let n = q.numer().to_i128()?;
    let d = q.denom().to_i128()?;
    Some(Small::new_raw(n, d))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Num(Small::zero()))
    }

    pub fn one() -> Self {
        Scalar(Repr::Num(Small::one()))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Repr::Num(Small::from_integer(n as i128)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar(Repr::Num(Small::new(n as i128, d as i128)))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        match big_to_small(q) {
            Some(s) => Scalar(Repr::Num(s)),
            None => Scalar(Repr::Frac {
                num: Poly::constant(q.clone()),
                den: Poly::one(),
            }),
        }
    }

    /// The parameter with the given ring index.
    pub fn param(index: usize) -> Self {
        Scalar(Repr::Frac {
            num: Poly::var(index),
            den: Poly::one(),
        })
    }

    /// Build `num/den` and normalize. Fails when `den` is the zero polynomial.
    pub fn from_polys(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::frac(num, den))
    }

    pub fn from_poly(num: Poly) -> Self {
        Self::frac(num, Poly::one())
    }

    fn frac(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = (num, den);
        if let (Some(a), Some(b)) = (num.monomial_content(), den.monomial_content()) {
            let g = gcd_mono(&a, &b);
            if !g.is_one() {
                num = num.div_monomial(&g);
                den = den.div_monomial(&g);
            }
        }
        let lc = den.leading().map(|(_, c)| c.clone()).unwrap();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if den.as_constant().is_some() {
            // den is monic and constant, hence 1
            if let Some(c) = num.as_constant() {
                if let Some(s) = big_to_small(&c) {
                    return Scalar(Repr::Num(s));
                }
            }
        }
        Scalar(Repr::Frac { num, den })
    }

    /// Numerator and denominator polynomials of the stored representation.
    pub fn parts(&self) -> (Poly, Poly) {
        match &self.0 {
            Repr::Num(q) => (Poly::constant(small_to_big(q)), Poly::one()),
            Repr::Frac { num, den } => (num.clone(), den.clone()),
        }
    }

    pub fn numerator(&self) -> Poly {
        self.parts().0
    }

    pub fn denominator(&self) -> Poly {
        self.parts().1
    }

    /// True iff the numerator is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Num(q) => q.is_zero(),
            Repr::Frac { num, .. } => num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Num(q) => q.is_one(),
            Repr::Frac { .. } => (self - &Scalar::one()).is_zero(),
        }
    }

    /// Value of a parameter-free scalar.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Repr::Num(q) => Some(small_to_big(q)),
            Repr::Frac { num, den } => {
                let n = num.as_constant()?;
                let d = den.as_constant()?;
                Some(n / d)
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Ring indices of parameters occurring in numerator or denominator.
    pub fn variables(&self) -> Vec<usize> {
        match &self.0 {
            Repr::Num(_) => Vec::new(),
            Repr::Frac { num, den } => {
                let mut v = num.variables();
                for i in den.variables() {
                    if !v.contains(&i) {
                        v.push(i);
                    }
                }
                v.sort_unstable();
                v
            }
        }
    }

    fn add_impl(&self, other: &Scalar, negate: bool) -> Scalar {
        if let (Repr::Num(a), Repr::Num(b)) = (&self.0, &other.0) {
            let r = if negate { a.checked_sub(b) } else { a.checked_add(b) };
            if let Some(r) = r {
                return Scalar(Repr::Num(r));
            }
        }
        if other.is_zero() {
            return self.clone();
        }
        let (n1, d1) = self.parts();
        let (n2, d2) = other.parts();
        let n2 = if negate { n2.neg() } else { n2 };
        if d1 == d2 {
            return Self::frac(n1.add(&n2), d1);
        }
        if let (Some((m1, c1)), Some((m2, c2))) = (d1.as_term(), d2.as_term()) {
            let l = Poly::monomial_lcm(m1, m2);
            let f1 = Poly::monomial_quotient(&l, m1);
            let f2 = Poly::monomial_quotient(&l, m2);
            let a = n1.mul_monomial(&f1).scale(&c1.recip());
            let b = n2.mul_monomial(&f2).scale(&c2.recip());
            let den = Poly::from_terms([(l, BigRational::one())]);
            return Self::frac(a.add(&b), den);
        }
        Self::frac(n1.mul(&d2).add(&n2.mul(&d1)), d1.mul(&d2))
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        if let (Repr::Num(a), Repr::Num(b)) = (&self.0, &other.0) {
            if let Some(r) = a.checked_mul(b) {
                return Scalar(Repr::Num(r));
            }
        }
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        let (n1, d1) = self.parts();
        let (n2, d2) = other.parts();
        Self::frac(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let (Repr::Num(a), Repr::Num(b)) = (&self.0, &other.0) {
            if let Some(r) = a.checked_div(b) {
                return Ok(Scalar(Repr::Num(r)));
            }
        }
        let (n1, d1) = self.parts();
        let (n2, d2) = other.parts();
        Ok(Self::frac(n1.mul(&d2), d1.mul(&n2)))
    }

    pub fn inv(&self) -> Result<Scalar> {
        Scalar::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at the bound parameters (by ring index); unbound ones stay symbolic.
    pub fn substitute_indexed(&self, values: &[Option<BigRational>]) -> Result<Scalar> {
        match &self.0 {
            Repr::Num(_) => Ok(self.clone()),
            Repr::Frac { num, den } => {
                let n = num.substitute(values);
                let d = den.substitute(values);
                if d.is_zero() {
                    return Err(Error::EvalDenZero {
                        expr: format!("{self:?}"),
                    });
                }
                Ok(Self::frac(n, d))
            }
        }
    }

    /// Evaluate with bindings given by parameter name.
    pub fn substitute(&self, ring: &ParamRing, bindings: &[(&str, BigRational)]) -> Result<Scalar> {
        let values = bindings_to_values(ring, bindings)?;
        self.substitute_indexed(&values).map_err(|e| match e {
            Error::EvalDenZero { .. } => Error::EvalDenZero {
                expr: self.render(ring),
            },
            other => other,
        })
    }

    /// Canonical text under the expression grammar; parses back to an equal scalar.
    pub fn render(&self, ring: &ParamRing) -> String {
        match &self.0 {
            Repr::Num(q) => render_rational(&small_to_big(q)),
            Repr::Frac { num, den } => {
                if den.as_constant().is_some() {
                    return num.render(ring);
                }
                let n = if num.term_count() == 1 {
                    num.render(ring)
                } else {
                    format!("({})", num.render(ring))
                };
                let d = if den.is_atomic_factor() {
                    den.render(ring)
                } else {
                    format!("({})", den.render(ring))
                };
                format!("{n}/{d}")
            }
        }
    }

    /// Sign of a parameter-free scalar.
    pub fn signum(&self) -> Option<i32> {
        let q = self.as_rational()?;
        Some(if q.is_zero() {
            0
        } else if q.is_positive() {
            1
        } else {
            -1
        })
    }
}

fn gcd_mono(a: &super::Monomial, b: &super::Monomial) -> super::Monomial {
    let n = a.exponents().len().min(b.exponents().len());
    super::Monomial::from_exponents((0..n).map(|i| a.exp(i).min(b.exp(i))).collect())
}

pub(crate) fn bindings_to_values(
    ring: &ParamRing,
    bindings: &[(&str, BigRational)],
) -> Result<Vec<Option<BigRational>>> {
    let mut values = vec![None; ring.len()];
    for (name, v) in bindings {
        let idx = ring.index_of(name).ok_or_else(|| Error::UnknownParam {
            name: name.to_string(),
            offset: 0,
        })?;
        values[idx] = Some(v.clone());
    }
    Ok(values)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Num(a), Repr::Num(b)) => a == b,
            _ => (self - other).is_zero(),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Num(q) => write!(f, "{q}"),
            Repr::Frac { num, den } => {
                // Debug output uses positional names x0, x1, ...
                let n = num.variables().into_iter().chain(den.variables()).max().map_or(0, |m| m + 1);
                let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
                let ring = ParamRing::new(&names).unwrap();
                write!(f, "{}", self.render(&ring))
            }
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a, 'b> Add<&'b Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'b Scalar) -> Scalar {
        self.add_impl(rhs, false)
    }
}

impl<'a, 'b> Sub<&'b Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'b Scalar) -> Scalar {
        self.add_impl(rhs, true)
    }
}

impl<'a, 'b> Mul<&'b Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'b Scalar) -> Scalar {
        self.mul_impl(rhs)
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Num(q) => match Small::zero().checked_sub(q) {
                Some(r) => Scalar(Repr::Num(r)),
                None => Scalar::zero() - self.clone(),
            },
            Repr::Frac { num, den } => Scalar(Repr::Frac {
                num: num.neg(),
                den: den.clone(),
            }),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = &*self - &rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}
