//! The JSON structure file.
//!
//! Indices are 1-based. Every coefficient is a string in the scalar
//! expression grammar, parsed against `params`. A file keeps the exact
//! strings it was read with, so loading and saving it again changes nothing
//! but whitespace.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "params": ["l", "k2"],
//!   "mul": [[2, 1, 1, "-1"], [2, 2, 2, "l"]],
//!   "comul": [[1, 1, 1, "k2"]],
//!   "operators": {"N": [["0", "0"], ["0", "k2"]]},
//!   "reps": {"rep": {"dim": 2, "rho": [[["1","0"],["0","1"]], ...], "phi": [...]}}
//! }
//! ```
//!
//! `mul` entries are `[i, j, k, c]` for `e_i ∘ e_j ∋ c e_k`; `comul` entries
//! are `[k, i, j, d]` for `Δ(e_k) ∋ d e_i ⊗ e_j`. Matrices are lists of rows;
//! an operator row `i` holds the image of `e_i`. A representation lists one
//! matrix per algebra basis vector for each of `rho` and `phi`; a
//! corepresentation stores `xi` and `eta` as `dim × (n·dim)` matrices.

use std::collections::BTreeMap;
use std::path::Path;

use prelie_core::scalars::{parse_scalar, ParamRing, Scalar};
use prelie_core::structures::{
    AlgebraStructure, Bundle, CoalgebraStructure, Corepresentation, Matrix, PiDescriptor, PiFamily,
    Representation,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub type Entry = (usize, usize, usize, String);
pub type Rows = Vec<Vec<String>>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assumptions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comul: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub operators: BTreeMap<String, Rows>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, Rows>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tensors: BTreeMap<String, Rows>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub reps: BTreeMap<String, RepFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coreps: BTreeMap<String, CorepFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coalgebras: BTreeMap<String, CoalgFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<PiFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub dim: usize,
    pub rho: Vec<Rows>,
    pub phi: Vec<Rows>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorepFile {
    pub dim: usize,
    pub xi: Rows,
    pub eta: Rows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgFile {
    pub dim: usize,
    pub mul: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgFile {
    pub dim: usize,
    pub comul: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiFile {
    pub family: String,
    pub theta: String,
}

fn invalid(at: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Invalid(format!("{at}: {msg}"))
}

fn expr(ring: &ParamRing, at: &str, text: &str) -> Result<Scalar, CliError> {
    parse_scalar(text, ring).map_err(|e| CliError::Invalid(format!("{at}: {e} (in \"{text}\")")))
}

fn index(at: &str, i: usize, n: usize) -> Result<usize, CliError> {
    if i == 0 || i > n {
        return Err(invalid(at, format!("index {i} out of range 1..={n}")));
    }
    Ok(i - 1)
}

fn matrix(ring: &ParamRing, at: &str, rows: &Rows, nrows: usize, ncols: usize) -> Result<Matrix, CliError> {
    if rows.len() != nrows {
        return Err(invalid(at, format!("expected {nrows} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(nrows);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(invalid(&format!("{at}[{}]", i + 1), format!("expected {ncols} entries, found {}", row.len())));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, t)| expr(ring, &format!("{at}[{}][{}]", i + 1, j + 1), t))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(parsed);
    }
    if nrows == 0 {
        return Ok(Matrix::zeros(0, ncols));
    }
    Ok(Matrix::from_rows(out)?)
}

/// Rows of a matrix whose column count is not fixed by the file (operators
/// such as `T: V → A`).
fn free_matrix(ring: &ParamRing, at: &str, rows: &Rows) -> Result<Matrix, CliError> {
    let ncols = rows.first().map_or(0, Vec::len);
    matrix(ring, at, rows, rows.len(), ncols)
}

fn product(ring: &ParamRing, at: &str, entries: &[Entry], n: usize) -> Result<Vec<(usize, usize, usize, Scalar)>, CliError> {
    entries
        .iter()
        .enumerate()
        .map(|(pos, (i, j, k, t))| {
            let here = format!("{at}[{}]", pos + 1);
            let v = expr(ring, &here, t)?;
            Ok((index(&here, *i, n)?, index(&here, *j, n)?, index(&here, *k, n)?, v))
        })
        .collect()
}

fn algebra(ring: &ParamRing, at: &str, entries: &[Entry], n: usize) -> Result<AlgebraStructure, CliError> {
    let mut a = AlgebraStructure::zero(n);
    for (i, j, k, v) in product(ring, at, entries, n)? {
        let cur = a.c(i, j, k) + &v;
        a.set(i, j, k, cur);
    }
    Ok(a)
}

fn coalgebra(ring: &ParamRing, at: &str, entries: &[Entry], n: usize) -> Result<CoalgebraStructure, CliError> {
    let mut c = CoalgebraStructure::zero(n);
    for (k, i, j, v) in product(ring, at, entries, n)? {
        let cur = c.d(k, i, j) + &v;
        c.set(k, i, j, cur);
    }
    Ok(c)
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("JSON: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Invalid(m) => CliError::Invalid(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Objects one key per line, innermost arrays on a single line.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("structure files serialize");
        let mut s = String::new();
        layout(&v, 0, &mut s);
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }

    pub fn ring(&self) -> Result<ParamRing, CliError> {
        ParamRing::new(&self.params).map_err(|e| invalid("params", e))
    }

    /// Parse and validate every member.
    pub fn to_bundle(&self) -> Result<Bundle, CliError> {
        let ring = self.ring()?;
        let n = self.dim;
        if let Some(basis) = &self.basis {
            if basis.len() != n {
                return Err(invalid("basis", format!("expected {n} names, found {}", basis.len())));
            }
        }
        let mut b = Bundle::new(ring.clone(), n);
        for (i, t) in self.assumptions.iter().enumerate() {
            b = b.with_assumption(expr(&ring, &format!("assumptions[{}]", i + 1), t)?);
        }
        if let Some(m) = &self.mul {
            b = b.with_alg(algebra(&ring, "mul", m, n)?);
        }
        if let Some(c) = &self.comul {
            b = b.with_coalg(coalgebra(&ring, "comul", c, n)?);
        }
        for (name, rows) in &self.operators {
            b = b.with_operator(name, free_matrix(&ring, &format!("operators.{name}"), rows)?);
        }
        for (name, rows) in &self.forms {
            b = b.with_form(name, matrix(&ring, &format!("forms.{name}"), rows, n, n)?);
        }
        for (name, rows) in &self.tensors {
            b = b.with_tensor(name, matrix(&ring, &format!("tensors.{name}"), rows, n, n)?);
        }
        for (name, r) in &self.reps {
            let at = format!("reps.{name}");
            let fam = |key: &str, list: &[Rows]| -> Result<Vec<Matrix>, CliError> {
                list.iter()
                    .enumerate()
                    .map(|(i, rows)| matrix(&ring, &format!("{at}.{key}[{}]", i + 1), rows, r.dim, r.dim))
                    .collect()
            };
            let rep = Representation::new(fam("rho", &r.rho)?, fam("phi", &r.phi)?, r.dim)
                .map_err(|e| invalid(&at, e))?;
            b = b.with_rep(name, rep);
        }
        for (name, c) in &self.coreps {
            let at = format!("coreps.{name}");
            let xi = free_matrix(&ring, &format!("{at}.xi"), &c.xi)?;
            let eta = free_matrix(&ring, &format!("{at}.eta"), &c.eta)?;
            let cr = Corepresentation::new(n, c.dim, xi, eta).map_err(|e| invalid(&at, e))?;
            b = b.with_corep(name, cr);
        }
        for (name, a) in &self.algebras {
            b = b.with_algebra(name, algebra(&ring, &format!("algebras.{name}.mul"), &a.mul, a.dim)?);
        }
        for (name, c) in &self.coalgebras {
            b = b.with_coalgebra(name, coalgebra(&ring, &format!("coalgebras.{name}.comul"), &c.comul, c.dim)?);
        }
        if let Some(p) = &self.pi {
            let family = PiFamily::parse(&p.family).map_err(|e| invalid("pi.family", e))?;
            let theta = expr(&ring, "pi.theta", &p.theta)?;
            b = b.with_pi(PiDescriptor::new(family, theta).map_err(|e| invalid("pi", e))?);
        }
        Ok(b)
    }

    /// Render a bundle. Only nonzero product and coproduct constants are
    /// listed; matrices are written in full.
    pub fn from_bundle(b: &Bundle) -> Self {
        let ring = &b.ring;
        let rows = |m: &Matrix| -> Rows { render_rows(ring, m) };
        StructureFile {
            dim: b.dim,
            params: ring.names().to_vec(),
            assumptions: b.assumptions.iter().map(|s| s.render(ring)).collect(),
            basis: None,
            mul: b.alg.as_ref().map(|a| render_alg(ring, a)),
            comul: b.coalg.as_ref().map(|c| render_coalg(ring, c)),
            operators: b.operators.iter().map(|(k, m)| (k.clone(), rows(m))).collect(),
            forms: b.forms.iter().map(|(k, m)| (k.clone(), rows(m))).collect(),
            tensors: b.tensors.iter().map(|(k, m)| (k.clone(), rows(m))).collect(),
            reps: b
                .reps
                .iter()
                .map(|(k, r)| {
                    let f = RepFile {
                        dim: r.rep_dim,
                        rho: r.rho.iter().map(rows).collect(),
                        phi: r.phi.iter().map(rows).collect(),
                    };
                    (k.clone(), f)
                })
                .collect(),
            coreps: b
                .coreps
                .iter()
                .map(|(k, c)| (k.clone(), CorepFile { dim: c.corep_dim, xi: rows(&c.xi), eta: rows(&c.eta) }))
                .collect(),
            algebras: b
                .algebras
                .iter()
                .map(|(k, a)| (k.clone(), AlgFile { dim: a.dim(), mul: render_alg(ring, a) }))
                .collect(),
            coalgebras: b
                .coalgebras
                .iter()
                .map(|(k, c)| (k.clone(), CoalgFile { dim: c.dim(), comul: render_coalg(ring, c) }))
                .collect(),
            pi: b.pi.as_ref().map(|p| PiFile { family: p.family.as_str().to_string(), theta: p.theta.render(ring) }),
        }
    }
}

fn layout(v: &serde_json::Value, depth: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                layout(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                layout(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

pub fn render_rows(ring: &ParamRing, m: &Matrix) -> Rows {
    m.to_rows().iter().map(|r| r.iter().map(|s| s.render(ring)).collect()).collect()
}

pub fn render_alg(ring: &ParamRing, a: &AlgebraStructure) -> Vec<Entry> {
    let n = a.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = a.c(i, j, k);
                if !v.is_zero() {
                    out.push((i + 1, j + 1, k + 1, v.render(ring)));
                }
            }
        }
    }
    out
}

pub fn render_coalg(ring: &ParamRing, c: &CoalgebraStructure) -> Vec<Entry> {
    let n = c.dim();
    let mut out = Vec::new();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let v = c.d(k, i, j);
                if !v.is_zero() {
                    out.push((k + 1, i + 1, j + 1, v.render(ring)));
                }
            }
        }
    }
    out
}
