//! Exhaustive grid search over one unknown member, and symbolic verification
//! of parameter families.
//!
//! Candidates are numbered in row-major order over the free entries of the
//! unknown (upper triangle only when it is symmetric), the last free entry
//! varying fastest, each entry running through `entries` in the given order.
//! Candidates are evaluated in parallel but hits are always reported in that
//! order. A candidate is rejected at its first nonzero residual entry, laws
//! tried in list order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::laws::{check, identities, passes, LawId, ResidualEntry};
use crate::scalars::Scalar;
use crate::structures::{fixture, names, Bundle, Matrix};

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "PRELIE_FORGE_MAX_GRID";
pub const DEFAULT_CAP: u128 = 10_000_000;

/// The enumeration cap in force: `PRELIE_FORGE_MAX_GRID` if set and valid,
/// else [`DEFAULT_CAP`].
pub fn max_grid() -> u128 {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

/// Which kind of member the unknown is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Operator,
    Tensor,
    Form,
}

impl Shape {
    pub fn as_str(self) -> &'static str {
        match self {
            Shape::Operator => "operator",
            Shape::Tensor => "tensor",
            Shape::Form => "form",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub entries: Vec<BigRational>,
    pub shape: Shape,
    /// Member name, e.g. `N` or `r`.
    pub member: String,
    /// Enumerate the upper triangle only and mirror it.
    pub symmetric: bool,
    /// Overrides [`max_grid`] when set.
    pub cap: Option<u128>,
}

fn default_entries() -> Vec<BigRational> {
    vec![-BigRational::one(), BigRational::zero(), BigRational::one()]
}

impl GridSpec {
    fn new(shape: Shape, member: &str, symmetric: bool) -> Self {
        GridSpec { entries: default_entries(), shape, member: member.to_string(), symmetric, cap: None }
    }

    pub fn operator(member: &str) -> Self {
        Self::new(Shape::Operator, member, false)
    }

    pub fn symmetric_tensor(member: &str) -> Self {
        Self::new(Shape::Tensor, member, true)
    }

    pub fn form(member: &str, symmetric: bool) -> Self {
        Self::new(Shape::Form, member, symmetric)
    }

    pub fn with_entries(mut self, entries: Vec<BigRational>) -> Self {
        self.entries = entries;
        self
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = Some(cap);
        self
    }

    /// Positions enumerated for an `n × n` unknown, in enumeration order.
    pub fn free_positions(&self, n: usize) -> Vec<(usize, usize)> {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.symmetric || i <= j)
            .collect()
    }

    /// Number of candidates, saturating at `u128::MAX`.
    pub fn size(&self, n: usize) -> u128 {
        let k = self.free_positions(n).len() as u32;
        (self.entries.len() as u128).checked_pow(k).unwrap_or(u128::MAX)
    }

    /// The matrix of candidate number `index`.
    pub fn candidate(&self, n: usize, index: u128) -> Matrix {
        let values: Vec<Scalar> = self.entries.iter().map(Scalar::from_rational).collect();
        let base = values.len() as u128;
        let pos = self.free_positions(n);
        let mut m = Matrix::zeros(n, n);
        let mut rest = index;
        for &(i, j) in pos.iter().rev() {
            let v = &values[(rest % base) as usize];
            rest /= base;
            m.set(i, j, v.clone());
            if self.symmetric {
                m.set(j, i, v.clone());
            }
        }
        m
    }

    /// `template` with the unknown replaced by `m`.
    pub fn complete(&self, template: &Bundle, m: Matrix) -> Bundle {
        let b = template.clone();
        match self.shape {
            Shape::Operator => b.with_operator(&self.member, m),
            Shape::Tensor => b.with_tensor(&self.member, m),
            Shape::Form => b.with_form(&self.member, m),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hit {
    /// Position in the enumeration order.
    pub index: u128,
    pub value: Matrix,
    pub bundle: Bundle,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchReport {
    pub member: String,
    pub shape: Shape,
    pub symmetric: bool,
    pub entries: Vec<BigRational>,
    pub laws: Vec<LawId>,
    pub total: u128,
    pub hits: Vec<Hit>,
}

impl SearchReport {
    /// Plain-text rendering; identical inputs give identical text.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let ring = self.hits.first().map(|h| h.bundle.ring.clone()).unwrap_or_default();
        let entries: Vec<String> = self.entries.iter().map(|q| Scalar::from_rational(q).render(&ring)).collect();
        let laws: Vec<&str> = self.laws.iter().map(|l| l.as_str()).collect();
        let _ = writeln!(
            out,
            "unknown {} ({}{}), entries {{{}}}, laws {}",
            self.member,
            self.shape.as_str(),
            if self.symmetric { ", symmetric" } else { "" },
            entries.join(", "),
            laws.join(", ")
        );
        let _ = writeln!(out, "{} hits / {} candidates", self.hits.len(), self.total);
        for h in &self.hits {
            let rows: Vec<String> = h
                .value
                .to_rows()
                .iter()
                .map(|r| format!("[{}]", r.iter().map(|s| s.render(&ring)).collect::<Vec<_>>().join(", ")))
                .collect();
            let _ = writeln!(out, "#{}: [{}]", h.index, rows.join(", "));
        }
        out
    }
}

/// Enumerate every candidate for the unknown and keep those passing all laws.
pub fn grid_search(template: &Bundle, unknown: &GridSpec, laws: &[LawId]) -> Result<SearchReport> {
    if unknown.entries.is_empty() {
        return Err(Error::InvalidDescriptor("entry set is empty".into()));
    }
    let unbound = template.free_params();
    if !unbound.is_empty() {
        return Err(Error::SymbolicTemplate { params: unbound });
    }
    let n = template.dim;
    let total = unknown.size(n);
    let cap = unknown.cap.unwrap_or_else(max_grid);
    if total > cap {
        return Err(Error::GridTooLarge { size: total, cap });
    }
    // surface missing members and shape errors once, before the sweep
    let first = unknown.complete(template, unknown.candidate(n, 0));
    for &law in laws {
        identities(law, &first)?;
    }
    let hits: Vec<Hit> = (0..total as u64)
        .into_par_iter()
        .filter_map(|i| {
            let value = unknown.candidate(n, i as u128);
            let bundle = unknown.complete(template, value.clone());
            let ok = laws.iter().all(|&law| passes(law, &bundle).unwrap_or(false));
            ok.then_some(Hit { index: i as u128, value, bundle })
        })
        .collect();
    Ok(SearchReport {
        member: unknown.member.clone(),
        shape: unknown.shape,
        symmetric: unknown.symmetric,
        entries: unknown.entries.clone(),
        laws: laws.to_vec(),
        total,
        hits,
    })
}

/// Outcome of one law on a possibly symbolic bundle.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Pass,
    /// Distinct nonzero residual values (up to sign), whose common zero set
    /// is where the law holds, and the entries they came from.
    Fail { factors: Vec<Scalar>, entries: Vec<ResidualEntry> },
    Error(Error),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Check every law symbolically and collect the conditions for failures.
pub fn verify_family(bundle: &Bundle, laws: &[LawId]) -> BTreeMap<LawId, Verdict> {
    laws.par_iter()
        .map(|&law| {
            let v = match check(law, bundle) {
                Ok(res) if res.passes() => Verdict::Pass,
                Ok(res) => {
                    let mut factors: Vec<Scalar> = Vec::new();
                    for e in &res.entries {
                        if !factors.iter().any(|f| *f == e.value || *f == -&e.value) {
                            factors.push(e.value.clone());
                        }
                    }
                    Verdict::Fail { factors, entries: res.entries }
                }
                Err(e) => Verdict::Error(e),
            };
            (law, v)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Catalog fixtures with the law profile each is asserted to satisfy.
pub const FIXTURE_PROFILES: &[(&str, &[LawId])] = {
    use LawId::*;
    const NIJ_BIALG: &[LawId] = &[
        PRE_LIE,
        NIJENHUIS,
        PRE_LIE_CO,
        CO_NIJENHUIS,
        PRE_LIE_BIALG,
        ADMISSIBLE_S,
        ADMISSIBLE_NSTAR,
        BALANCED,
    ];
    const CO_S: &[LawId] = &[PRE_LIE_CO, SYMMETRIC_FORM, CO_S_EQUATION];
    const HESSIAN: &[LawId] = &[PRE_LIE, SYMMETRIC_FORM, PSEUDO_HESSIAN];
    const NIJ: &[LawId] = &[PRE_LIE, NIJENHUIS];
    &[
        ("ExAlg", &[PRE_LIE]),
        ("ExOmegaA", HESSIAN),
        ("ExOmegaB", HESSIAN),
        ("ExCoalg1", &[PRE_LIE_CO]),
        ("ExCoalg2", &[PRE_LIE_CO]),
        ("ExOmega1a", CO_S),
        ("ExOmega1b", CO_S),
        ("ExOmega2a", CO_S),
        ("ExOmega2b", CO_S),
        ("ExNijA1", NIJ),
        ("ExNijA2", NIJ),
        ("ExNijA3", NIJ),
        ("ExNijB1", NIJ),
        ("ExNijB2", NIJ),
        ("ExBialgI", NIJ_BIALG),
        ("ExBialgII", NIJ_BIALG),
        ("ExBialgIII", NIJ_BIALG),
        ("ExLieBialgI", &[NIJ_LIE_BIALG]),
        ("ExLieBialgII", &[NIJ_LIE_BIALG]),
        ("ExLieBialgIII", &[NIJ_LIE_BIALG]),
    ]
};

#[derive(Clone, Debug, PartialEq)]
pub struct FixtureRow {
    pub name: String,
    pub profile: Vec<LawId>,
    pub verdicts: BTreeMap<LawId, Verdict>,
}

impl FixtureRow {
    pub fn passed(&self) -> bool {
        self.verdicts.values().all(Verdict::passed)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixtureReport {
    pub rows: Vec<FixtureRow>,
}

impl FixtureReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(FixtureRow::passed)
    }

    pub fn row(&self, name: &str) -> Option<&FixtureRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

/// Run [`verify_family`] on every catalog fixture with its asserted profile.
/// Failures are report content, not errors.
pub fn classify_dim2_prelie_fixtures() -> FixtureReport {
    let rows = FIXTURE_PROFILES
        .iter()
        .map(|&(name, profile)| {
            let verdicts = match fixture(name, None) {
                Ok(b) => verify_family(&b, profile),
                Err(e) => profile.iter().map(|&l| (l, Verdict::Error(e.clone()))).collect(),
            };
            FixtureRow { name: name.to_string(), profile: profile.to_vec(), verdicts }
        })
        .collect();
    FixtureReport { rows }
}

/// Default member name for an unknown of the given shape.
pub fn default_member(shape: Shape) -> &'static str {
    match shape {
        Shape::Operator => names::N,
        Shape::Tensor => names::R,
        Shape::Form => names::OMEGA,
    }
}
