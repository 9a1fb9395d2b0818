//! Every identity as a residual checker over basis tuples.
//!
//! A law expands into one or more [`Identity`] parts. Each part is a
//! multilinear map from its inputs to a tensor that must vanish; evaluating
//! it on every tuple of basis vectors is therefore a complete test. Parts of
//! macro laws are labelled `COMPONENT.part` so a failure names the condition
//! it came from.

mod catalog;
mod profiles;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::structures::{basis_vector, Bundle, Tensor};

pub use catalog::identities;
pub use profiles::{parse_profile, PROFILES};

macro_rules! law_ids {
    ($($id:ident => $text:literal, $doc:literal;)*) => {
        /// Identifier of a checkable law.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        #[allow(non_camel_case_types)]
        pub enum LawId {
            $(#[doc = $doc] $id,)*
        }

        impl LawId {
            pub const ALL: &'static [LawId] = &[$(LawId::$id,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(LawId::$id => $text,)*
                }
            }

            /// Bundle members read by the law and the shape of its inputs.
            pub fn describe(self) -> &'static str {
                match self {
                    $(LawId::$id => $doc,)*
                }
            }
        }
    };
}

law_ids! {
    PRE_LIE => "PRE_LIE", "mul; inputs x,y,z in A: (xy)z - x(yz) = (yx)z - y(xz)";
    PRE_LIE_CO => "PRE_LIE_CO", "comul; input x: coassociator symmetric in its first two legs";
    PRE_LIE_BIALG => "PRE_LIE_BIALG", "mul, comul; inputs x,y: the two compatibility conditions";
    S_EQUATION => "S_EQUATION", "mul, tensor r; no inputs: S-equation on r";
    CO_S_EQUATION => "CO_S_EQUATION", "comul, form omega; inputs x,y,z: co-S-equation (scalar)";
    PSEUDO_HESSIAN => "PSEUDO_HESSIAN", "mul, form omega; inputs x,y,z: 2-cocycle condition (scalar)";
    PSEUDO_HESSIAN_CO => "PSEUDO_HESSIAN_CO", "comul, tensor r; no inputs: dual cocycle condition on r";
    NIJENHUIS => "NIJENHUIS", "mul, operator N; inputs x,y";
    CO_NIJENHUIS => "CO_NIJENHUIS", "comul, operator S; input x";
    REP => "REP", "mul, rep; inputs x,y in A, v in V";
    NIJ_REP => "NIJ_REP", "operator N, rep, operator alpha on V; inputs x in A, v in V";
    COREP => "COREP", "comul, corep; input v in V";
    ADMISSIBLE_S => "ADMISSIBLE_S", "mul, operators N, S; inputs x,y";
    ADMISSIBLE_BETA => "ADMISSIBLE_BETA", "operator N, rep, operator beta on V; inputs x, v";
    ADMISSIBLE_NSTAR => "ADMISSIBLE_NSTAR", "comul, operators N, S; input x";
    NIJ_PRE_LIE_BIALG => "NIJ_PRE_LIE_BIALG", "macro: PRE_LIE, NIJENHUIS, PRE_LIE_CO, CO_NIJENHUIS, PRE_LIE_BIALG, ADMISSIBLE_S, ADMISSIBLE_NSTAR";
    MATCHED_PAIR => "MATCHED_PAIR", "mul, algebra H, operators N, N_H, reps A_on_H, H_on_A";
    O_OPERATOR_WEAK => "O_OPERATOR_WEAK", "mul, operator N, rep, operator alpha, map T: V -> A; inputs u,v in V";
    O_OPERATOR => "O_OPERATOR", "macro: O_OPERATOR_WEAK, REP, NIJ_REP";
    S_NIJ_S_EQUATION => "S_NIJ_S_EQUATION", "mul, tensor r, operators N, S; no inputs";
    PENCIL_COMPAT => "PENCIL_COMPAT", "comul, coalgebra delta, optional coreps corep, corep2; input x (or v)";
    PENCIL_MORPHISM => "PENCIL_MORPHISM", "comul, coalgebra delta, operator S, optional coreps corep, corep2 with operator theta";
    PI_ADMISSIBLE => "PI_ADMISSIBLE", "mul, operator N, rep, operator alpha, pi descriptor; inputs x,y or x,v";
    BALANCED => "BALANCED", "mul, comul; inputs x,y";
    LIE_ALG => "LIE_ALG", "mul as bracket; antisymmetry and Jacobi";
    LIE_CO => "LIE_CO", "comul as cobracket; coantisymmetry and co-Jacobi";
    LIE_BIALG => "LIE_BIALG", "macro: LIE_ALG, LIE_CO and the cocycle condition";
    NIJ_LIE_BIALG => "NIJ_LIE_BIALG", "macro: LIE_BIALG, Nijenhuis conditions for N and S, and their compatibilities";
    COMMUTATIVE => "COMMUTATIVE", "mul; inputs x,y: xy = yx";
    COCOMMUTATIVE => "COCOMMUTATIVE", "comul; input x: flip of the coproduct";
    SYMMETRIC_FORM => "SYMMETRIC_FORM", "form omega; inputs x,y";
    SYMMETRIC_TENSOR => "SYMMETRIC_TENSOR", "tensor r; no inputs";
}

impl LawId {
    /// Parse the canonical upper-case name (case-insensitive, `-` accepted for `_`).
    pub fn parse(text: &str) -> Option<LawId> {
        let norm = text.trim().to_ascii_uppercase().replace('-', "_");
        LawId::ALL.iter().copied().find(|l| l.as_str() == norm)
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One multilinear part of a law.
pub struct Identity<'a> {
    part: String,
    dims: Vec<usize>,
    eval: Box<dyn Fn(&[Tensor]) -> Tensor + Send + Sync + 'a>,
}

impl<'a> Identity<'a> {
    pub(crate) fn new(
        part: impl Into<String>,
        dims: Vec<usize>,
        eval: impl Fn(&[Tensor]) -> Tensor + Send + Sync + 'a,
    ) -> Self {
        Identity {
            part: part.into(),
            dims,
            eval: Box::new(eval),
        }
    }

    pub(crate) fn prefixed(mut self, prefix: &str) -> Self {
        self.part = format!("{prefix}.{}", self.part);
        self
    }

    pub fn part(&self) -> &str {
        &self.part
    }

    /// Dimension of each input slot.
    pub fn input_dims(&self) -> &[usize] {
        &self.dims
    }

    /// Evaluate on arbitrary input vectors; the law holds iff this vanishes
    /// for all inputs.
    pub fn eval(&self, inputs: &[Tensor]) -> Tensor {
        assert_eq!(inputs.len(), self.dims.len(), "wrong number of inputs for {}", self.part);
        (self.eval)(inputs)
    }

    /// Every tuple of basis indices, in row-major order.
    pub fn basis_tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let total: usize = self.dims.iter().product();
        (0..total).map(move |f| crate::structures::unflatten(&self.dims, f))
    }

    pub fn eval_basis(&self, tuple: &[usize]) -> Tensor {
        let inputs: Vec<Tensor> = tuple
            .iter()
            .zip(&self.dims)
            .map(|(&i, &n)| Tensor::vector(basis_vector(n, i)))
            .collect();
        self.eval(&inputs)
    }
}

/// A nonzero coefficient of a law's defining identity.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualEntry {
    /// Which identity of the law (e.g. `PRE_LIE.associator_symmetry`).
    pub part: String,
    /// Basis indices of the inputs, 0-based.
    pub input: Vec<usize>,
    /// Output component, 0-based; empty for scalar-valued identities.
    pub component: Vec<usize>,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub law: LawId,
    /// Nonzero entries only, in part order then row-major input and
    /// component order.
    pub entries: Vec<ResidualEntry>,
    /// Number of basis tuples evaluated.
    pub evaluated: usize,
}

impl Residual {
    pub fn passes(&self) -> bool {
        self.entries.iter().all(|e| e.value.is_zero())
    }

    pub fn first_failure(&self) -> Option<&ResidualEntry> {
        self.entries.iter().find(|e| !e.value.is_zero())
    }

    /// Names of the parts with at least one nonzero entry, in order.
    pub fn failing_parts(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for e in &self.entries {
            if !e.value.is_zero() && !out.contains(&e.part.as_str()) {
                out.push(&e.part);
            }
        }
        out
    }
}

fn collect_entries(id: &Identity<'_>, tuple: &[usize], out: &mut Vec<ResidualEntry>) {
    let t = id.eval_basis(tuple);
    for (component, value) in t.nonzero() {
        out.push(ResidualEntry {
            part: id.part.clone(),
            input: tuple.to_vec(),
            component,
            value: value.clone(),
        });
    }
}

/// Full residual of `law` on `bundle`.
pub fn check(law: LawId, bundle: &Bundle) -> Result<Residual> {
    let ids = identities(law, bundle)?;
    let mut entries = Vec::new();
    let mut evaluated = 0;
    for id in &ids {
        for tuple in id.basis_tuples() {
            evaluated += 1;
            collect_entries(id, &tuple, &mut entries);
        }
    }
    Ok(Residual { law, entries, evaluated })
}

/// First nonzero residual entry, stopping as soon as one is found.
///
/// Parts are tried in order, then basis tuples in row-major order, then
/// output components in row-major order.
pub fn first_failure(law: LawId, bundle: &Bundle) -> Result<Option<ResidualEntry>> {
    let ids = identities(law, bundle)?;
    for id in &ids {
        for tuple in id.basis_tuples() {
            let t = id.eval_basis(&tuple);
            if let Some((component, value)) = t.first_nonzero() {
                return Ok(Some(ResidualEntry {
                    part: id.part.clone(),
                    input: tuple,
                    component,
                    value: value.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// Short-circuiting verdict.
pub fn passes(law: LawId, bundle: &Bundle) -> Result<bool> {
    Ok(first_failure(law, bundle)?.is_none())
}

/// Check a list of laws; laws run in parallel, each keeps its own error.
pub fn check_composite(bundle: &Bundle, profile: &[LawId]) -> BTreeMap<LawId, Result<Residual>> {
    profile
        .par_iter()
        .map(|&law| (law, check(law, bundle)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// True iff every law in the composite result passed without error.
pub fn composite_passes(results: &BTreeMap<LawId, Result<Residual>>) -> bool {
    results.values().all(|r| matches!(r, Ok(res) if res.passes()))
}

pub(crate) fn missing(law: LawId, member: &str) -> Error {
    Error::MissingMember {
        law: law.as_str().to_string(),
        member: member.to_string(),
    }
}
