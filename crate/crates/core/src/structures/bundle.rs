use std::collections::BTreeMap;

use num_rational::BigRational;

use super::algebra::{AlgebraStructure, CoalgebraStructure, Corepresentation, Representation};
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalars::{bindings_to_values, ParamRing, Scalar};

/// Conventional member names. Laws look members up under these keys.
pub mod names {
    pub const N: &str = "N";
    pub const S: &str = "S";
    pub const ALPHA: &str = "alpha";
    pub const BETA: &str = "beta";
    pub const T: &str = "T";
    pub const THETA: &str = "theta";
    /// Nijenhuis operator on the second algebra of a matched pair.
    pub const N_H: &str = "N_H";
    pub const OMEGA: &str = "omega";
    pub const R: &str = "r";
    pub const REP: &str = "rep";
    /// Action of the primary algebra on the second algebra of a matched pair.
    pub const A_ON_H: &str = "A_on_H";
    /// Action of the second algebra on the primary algebra.
    pub const H_ON_A: &str = "H_on_A";
    pub const COREP: &str = "corep";
    /// Corepresentation of the second coalgebra of a pencil.
    pub const COREP2: &str = "corep2";
    /// Second algebra of a matched pair.
    pub const H: &str = "H";
    /// Second comultiplication of a pencil.
    pub const DELTA: &str = "delta";
}

/// Shape of the twisting map `Π` used by the Π-admissible equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PiFamily {
    /// `Π(N) = θN` with `θ = ±1`.
    Scale,
    /// `Π(N) = θ·id − N` with `θ ≠ 0`.
    Reflect,
    /// `Π(N) = θN⁻¹` with `θ ≠ 0`.
    Invert,
}

impl PiFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            PiFamily::Scale => "scale",
            PiFamily::Reflect => "reflect",
            PiFamily::Invert => "invert",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "scale" => Ok(PiFamily::Scale),
            "reflect" => Ok(PiFamily::Reflect),
            "invert" => Ok(PiFamily::Invert),
            _ => Err(Error::InvalidDescriptor(format!("unknown family `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiDescriptor {
    pub family: PiFamily,
    pub theta: Scalar,
}

impl PiDescriptor {
    pub fn new(family: PiFamily, theta: Scalar) -> Result<Self> {
        let d = PiDescriptor { family, theta };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        match self.family {
            PiFamily::Scale => {
                let ok = self.theta.is_one() || (-&self.theta).is_one();
                if !ok {
                    return Err(Error::InvalidDescriptor("scale family needs theta = 1 or -1".into()));
                }
            }
            PiFamily::Reflect | PiFamily::Invert => {
                if self.theta.is_zero() {
                    return Err(Error::InvalidDescriptor(format!(
                        "{} family needs a nonzero theta",
                        self.family.as_str()
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Π(M)` for a square matrix `M`.
    pub fn apply(&self, m: &Matrix, what: &str) -> Result<Matrix> {
        self.validate()?;
        match self.family {
            PiFamily::Scale => Ok(m.scale(&self.theta)),
            PiFamily::Reflect => Ok(Matrix::identity(m.rows()).scale(&self.theta).sub(m)),
            PiFamily::Invert => Ok(m.inverse(what)?.scale(&self.theta)),
        }
    }
}

/// Everything a law or constructor may read: one ambient space of dimension
/// `dim` with optional product and coproduct plus named auxiliary members.
///
/// Members are stored with 0-based indices; see [`names`] for the keys the
/// laws expect.
#[derive(Clone, Debug, PartialEq)]
pub struct Bundle {
    pub ring: ParamRing,
    pub dim: usize,
    pub alg: Option<AlgebraStructure>,
    pub coalg: Option<CoalgebraStructure>,
    pub operators: BTreeMap<String, Matrix>,
    pub forms: BTreeMap<String, Matrix>,
    pub tensors: BTreeMap<String, Matrix>,
    pub reps: BTreeMap<String, Representation>,
    pub coreps: BTreeMap<String, Corepresentation>,
    pub algebras: BTreeMap<String, AlgebraStructure>,
    pub coalgebras: BTreeMap<String, CoalgebraStructure>,
    /// Scalars asserted nonzero. Annotations only; laws never read them.
    pub assumptions: Vec<Scalar>,
    pub pi: Option<PiDescriptor>,
}

fn missing(law: &str, member: &str) -> Error {
    Error::MissingMember {
        law: law.to_string(),
        member: member.to_string(),
    }
}

impl Bundle {
    pub fn new(ring: ParamRing, dim: usize) -> Self {
        Bundle {
            ring,
            dim,
            alg: None,
            coalg: None,
            operators: BTreeMap::new(),
            forms: BTreeMap::new(),
            tensors: BTreeMap::new(),
            reps: BTreeMap::new(),
            coreps: BTreeMap::new(),
            algebras: BTreeMap::new(),
            coalgebras: BTreeMap::new(),
            assumptions: Vec::new(),
            pi: None,
        }
    }

    pub fn with_alg(mut self, a: AlgebraStructure) -> Self {
        self.alg = Some(a);
        self
    }

    pub fn with_coalg(mut self, c: CoalgebraStructure) -> Self {
        self.coalg = Some(c);
        self
    }

    pub fn with_operator(mut self, name: &str, m: Matrix) -> Self {
        self.operators.insert(name.to_string(), m);
        self
    }

    pub fn with_form(mut self, name: &str, m: Matrix) -> Self {
        self.forms.insert(name.to_string(), m);
        self
    }

    pub fn with_tensor(mut self, name: &str, m: Matrix) -> Self {
        self.tensors.insert(name.to_string(), m);
        self
    }

    pub fn with_rep(mut self, name: &str, r: Representation) -> Self {
        self.reps.insert(name.to_string(), r);
        self
    }

    pub fn with_corep(mut self, name: &str, c: Corepresentation) -> Self {
        self.coreps.insert(name.to_string(), c);
        self
    }

    pub fn with_algebra(mut self, name: &str, a: AlgebraStructure) -> Self {
        self.algebras.insert(name.to_string(), a);
        self
    }

    pub fn with_coalgebra(mut self, name: &str, c: CoalgebraStructure) -> Self {
        self.coalgebras.insert(name.to_string(), c);
        self
    }

    pub fn with_assumption(mut self, s: Scalar) -> Self {
        self.assumptions.push(s);
        self
    }

    pub fn with_pi(mut self, pi: PiDescriptor) -> Self {
        self.pi = Some(pi);
        self
    }

    pub fn get_alg(&self, law: &str) -> Result<&AlgebraStructure> {
        let a = self.alg.as_ref().ok_or_else(|| missing(law, "mul"))?;
        self.same_dim(law, a.dim())?;
        Ok(a)
    }

    pub fn get_coalg(&self, law: &str) -> Result<&CoalgebraStructure> {
        let c = self.coalg.as_ref().ok_or_else(|| missing(law, "comul"))?;
        self.same_dim(law, c.dim())?;
        Ok(c)
    }

    /// Square operator on the ambient space.
    pub fn get_operator(&self, law: &str, name: &str) -> Result<&Matrix> {
        let m = self.operators.get(name).ok_or_else(|| missing(law, name))?;
        check_shape(law, name, m, self.dim, self.dim)?;
        Ok(m)
    }

    /// Operator of arbitrary shape; the caller checks dimensions.
    pub fn get_map(&self, law: &str, name: &str) -> Result<&Matrix> {
        self.operators.get(name).ok_or_else(|| missing(law, name))
    }

    pub fn get_form(&self, law: &str, name: &str) -> Result<&Matrix> {
        let m = self.forms.get(name).ok_or_else(|| missing(law, name))?;
        check_shape(law, name, m, self.dim, self.dim)?;
        Ok(m)
    }

    pub fn get_tensor(&self, law: &str, name: &str) -> Result<&Matrix> {
        let m = self.tensors.get(name).ok_or_else(|| missing(law, name))?;
        check_shape(law, name, m, self.dim, self.dim)?;
        Ok(m)
    }

    pub fn get_rep(&self, law: &str, name: &str) -> Result<&Representation> {
        self.reps.get(name).ok_or_else(|| missing(law, name))
    }

    pub fn get_corep(&self, law: &str, name: &str) -> Result<&Corepresentation> {
        let c = self.coreps.get(name).ok_or_else(|| missing(law, name))?;
        if c.coalg_dim != self.dim {
            return Err(Error::dim(format!("{law}: {name}"), self.dim, c.coalg_dim));
        }
        Ok(c)
    }

    pub fn get_algebra(&self, law: &str, name: &str) -> Result<&AlgebraStructure> {
        self.algebras.get(name).ok_or_else(|| missing(law, name))
    }

    pub fn get_coalgebra(&self, law: &str, name: &str) -> Result<&CoalgebraStructure> {
        let c = self.coalgebras.get(name).ok_or_else(|| missing(law, name))?;
        self.same_dim(law, c.dim())?;
        Ok(c)
    }

    pub fn get_pi(&self, law: &str) -> Result<&PiDescriptor> {
        self.pi.as_ref().ok_or_else(|| missing(law, "pi"))
    }

    fn same_dim(&self, law: &str, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::dim(law, self.dim, found));
        }
        Ok(())
    }

    /// Apply `f` to every scalar in every member.
    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar> + Copy) -> Result<Bundle> {
        let mats = |m: &BTreeMap<String, Matrix>| -> Result<BTreeMap<String, Matrix>> {
            m.iter().map(|(k, v)| Ok((k.clone(), v.try_map(f)?))).collect()
        };
        Ok(Bundle {
            ring: self.ring.clone(),
            dim: self.dim,
            alg: self.alg.as_ref().map(|a| a.try_map(f)).transpose()?,
            coalg: self.coalg.as_ref().map(|c| c.try_map(f)).transpose()?,
            operators: mats(&self.operators)?,
            forms: mats(&self.forms)?,
            tensors: mats(&self.tensors)?,
            reps: self
                .reps
                .iter()
                .map(|(k, v)| Ok((k.clone(), v.try_map(f)?)))
                .collect::<Result<_>>()?,
            coreps: self
                .coreps
                .iter()
                .map(|(k, v)| Ok((k.clone(), v.try_map(f)?)))
                .collect::<Result<_>>()?,
            algebras: self
                .algebras
                .iter()
                .map(|(k, v)| Ok((k.clone(), v.try_map(f)?)))
                .collect::<Result<_>>()?,
            coalgebras: self
                .coalgebras
                .iter()
                .map(|(k, v)| Ok((k.clone(), v.try_map(f)?)))
                .collect::<Result<_>>()?,
            assumptions: self.assumptions.iter().map(f).collect::<Result<_>>()?,
            pi: self
                .pi
                .as_ref()
                .map(|p| Ok::<_, Error>(PiDescriptor { family: p.family, theta: f(&p.theta)? }))
                .transpose()?,
        })
    }

    /// Bind some parameters to rationals. Unbound parameters stay symbolic.
    pub fn substitute(&self, bindings: &[(&str, BigRational)]) -> Result<Bundle> {
        let values = bindings_to_values(&self.ring, bindings)?;
        let ring = &self.ring;
        self.try_map(|s| {
            s.substitute_indexed(&values).map_err(|e| match e {
                Error::EvalDenZero { .. } => Error::EvalDenZero { expr: s.render(ring) },
                other => other,
            })
        })
    }

    /// Every scalar in the bundle, in a fixed order.
    pub fn scalars(&self) -> Vec<Scalar> {
        let mut out = Vec::new();
        if let Some(a) = &self.alg {
            out.extend(a.constants().iter().cloned());
        }
        if let Some(c) = &self.coalg {
            out.extend(c.constants().iter().cloned());
        }
        for m in self.operators.values().chain(self.forms.values()).chain(self.tensors.values()) {
            out.extend(m.entries().iter().cloned());
        }
        for r in self.reps.values() {
            for m in r.rho.iter().chain(&r.phi) {
                out.extend(m.entries().iter().cloned());
            }
        }
        for c in self.coreps.values() {
            out.extend(c.xi.entries().iter().cloned());
            out.extend(c.eta.entries().iter().cloned());
        }
        for a in self.algebras.values() {
            out.extend(a.constants().iter().cloned());
        }
        for c in self.coalgebras.values() {
            out.extend(c.constants().iter().cloned());
        }
        if let Some(p) = &self.pi {
            out.push(p.theta.clone());
        }
        out
    }

    /// Names of parameters that occur in some member (assumptions excluded).
    pub fn free_params(&self) -> Vec<String> {
        let mut seen = vec![false; self.ring.len()];
        for s in self.scalars() {
            for v in s.variables() {
                seen[v] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| self.ring.name(i).to_string())
            .collect()
    }
}

fn check_shape(law: &str, name: &str, m: &Matrix, rows: usize, cols: usize) -> Result<()> {
    if m.rows() != rows {
        return Err(Error::dim(format!("{law}: rows of {name}"), rows, m.rows()));
    }
    if m.cols() != cols {
        return Err(Error::dim(format!("{law}: columns of {name}"), cols, m.cols()));
    }
    Ok(())
}
