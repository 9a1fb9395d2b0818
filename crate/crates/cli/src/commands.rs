use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use prelie_core::constructors::{self as build, OOperatorData};
use prelie_core::laws::{check_composite, parse_profile};
use prelie_core::scalars::{parse_scalar, ParamRing, Scalar};
use prelie_core::search::{default_member, grid_search, GridSpec};
use prelie_core::structures::{catalog, fixture, names, Bundle, Matrix};
use prelie_core::Error;

use crate::file::{render_alg, render_coalg, render_rows, RepFile, StructureFile};
use crate::report::{tool_version, CheckReport, LawReport, SearchOutput};
use crate::{CliError, Command, Format, Op, Unknown};

type Res<T> = Result<T, CliError>;

fn io(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn rational(text: &str, at: &str) -> Res<BigRational> {
    parse_scalar(text, &ParamRing::empty())
        .ok()
        .and_then(|s| s.as_rational())
        .ok_or_else(|| CliError::Invalid(format!("{at}: `{text}` is not a rational number")))
}

/// Parse `NAME=VALUE` pairs with rational values.
pub fn parse_bindings(items: &[String]) -> Res<Vec<(String, BigRational)>> {
    items
        .iter()
        .map(|item| {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Invalid(format!("--bind expects NAME=VALUE, got `{item}`")))?;
            Ok((k.trim().to_string(), rational(v.trim(), &format!("--bind {k}"))?))
        })
        .collect()
}

fn bind(b: &Bundle, bindings: &[(String, BigRational)]) -> Res<Bundle> {
    if bindings.is_empty() {
        return Ok(b.clone());
    }
    let refs: Vec<(&str, BigRational)> = bindings.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    Ok(b.substitute(&refs)?)
}

fn binding_map(bindings: &[(String, BigRational)], ring: &ParamRing) -> BTreeMap<String, String> {
    bindings
        .iter()
        .map(|(k, v)| (k.clone(), Scalar::from_rational(v).render(ring)))
        .collect()
}

/// File name used for a catalog fixture: `ExBialgI` becomes `ex_bialg_I.json`.
pub fn fixture_file_name(name: &str) -> String {
    let mut tokens: Vec<String> = Vec::new();
    let mut prev_upper = false;
    for ch in name.chars() {
        let upper = ch.is_ascii_uppercase();
        if (upper && !prev_upper) || tokens.is_empty() {
            tokens.push(String::new());
        }
        tokens.last_mut().expect("token").push(ch);
        prev_upper = upper;
    }
    let parts: Vec<String> = tokens
        .into_iter()
        .map(|t| if t.chars().any(|c| c.is_ascii_lowercase()) { t.to_ascii_lowercase() } else { t })
        .collect();
    format!("{}.json", parts.join("_"))
}

pub(crate) fn dispatch(cmd: Command, out: &mut dyn Write) -> Res<i32> {
    match cmd {
        Command::Check { file, laws, format, bind } => cmd_check(&file, &laws, format, &bind, out),
        Command::Construct { file, op, args, out: dest, bind } => cmd_construct(&file, op, &args, dest.as_deref(), &bind, out),
        Command::Search { file, unknown, member, entries, laws, bind, symmetric, allow_empty, format } => {
            let opts = SearchOpts { unknown, member, entries, laws, symmetric, allow_empty, format };
            cmd_search(&file, &opts, &bind, out)
        }
        Command::Fixtures { list, emit, emit_all } => cmd_fixtures(list, emit, emit_all, out),
    }
}

fn load(path: &Path, bind_args: &[String]) -> Res<(StructureFile, Bundle, Vec<(String, BigRational)>)> {
    let f = StructureFile::read(path)?;
    let b = f.to_bundle()?;
    let bindings = parse_bindings(bind_args)?;
    let b = bind(&b, &bindings)?;
    Ok((f, b, bindings))
}

pub fn check_report(path: &Path, profile: &str, bind_args: &[String]) -> Res<CheckReport> {
    let laws = parse_profile(profile)?;
    let (_, b, bindings) = load(path, bind_args)?;
    let results = check_composite(&b, &laws);
    let reports: Vec<LawReport> = laws.iter().map(|l| LawReport::new(*l, &results[l], &b.ring)).collect();
    let pass = reports.iter().all(|r| r.verdict == crate::report::Verdict::Pass);
    Ok(CheckReport {
        tool: tool_version(),
        file: path.display().to_string(),
        profile: profile.to_string(),
        bindings: binding_map(&bindings, &b.ring),
        laws: reports,
        pass,
    })
}

fn cmd_check(path: &Path, profile: &str, format: Format, bind_args: &[String], out: &mut dyn Write) -> Res<i32> {
    let report = check_report(path, profile, bind_args)?;
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(if report.pass { 0 } else { 1 })
}

struct Args {
    map: BTreeMap<String, String>,
}

impl Args {
    fn parse(items: &[String]) -> Res<Self> {
        let mut map = BTreeMap::new();
        for item in items {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Invalid(format!("--arg expects KEY=VALUE, got `{item}`")))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Args { map })
    }

    fn get<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.map.get(key).map_or(default, String::as_str)
    }
}

fn missing(op: &str, member: &str) -> CliError {
    CliError::Core(Error::MissingMember { law: op.to_string(), member: member.to_string() })
}

fn get_rep<'a>(b: &'a Bundle, op: &str, name: &str) -> Res<&'a prelie_core::structures::Representation> {
    b.reps.get(name).ok_or_else(|| missing(op, name))
}

fn rep_file(ring: &ParamRing, r: &prelie_core::structures::Representation) -> RepFile {
    RepFile {
        dim: r.rep_dim,
        rho: r.rho.iter().map(|m| render_rows(ring, m)).collect(),
        phi: r.phi.iter().map(|m| render_rows(ring, m)).collect(),
    }
}

/// Build the output of a constructor. Same-dimension constructors patch the
/// input file so untouched members keep their original text.
fn construct(f: &StructureFile, b: &Bundle, op: Op, args: &Args, bound: bool) -> Res<StructureFile> {
    let ring = &b.ring;
    let mut patched = if bound { StructureFile::from_bundle(b) } else { f.clone() };
    let alg = |name: &str| b.alg.as_ref().ok_or_else(|| missing(name, "mul"));
    let coalg = |name: &str| b.coalg.as_ref().ok_or_else(|| missing(name, "comul"));
    let op_name = format!("{op:?}");
    let tensor = |key: &str, default: &str| -> Res<&Matrix> {
        let name = args.get(key, default);
        b.tensors.get(name).ok_or_else(|| missing(&op_name, name))
    };
    let form = |key: &str, default: &str| -> Res<&Matrix> {
        let name = args.get(key, default);
        b.forms.get(name).ok_or_else(|| missing(&op_name, name))
    };
    let operator = |key: &str, default: &str| -> Res<&Matrix> {
        let name = args.get(key, default);
        b.operators.get(name).ok_or_else(|| missing(&op_name, name))
    };
    let scalar = |key: &str| -> Res<Scalar> {
        let text = args.get(key, "1");
        parse_scalar(text, ring).map_err(|e| CliError::Invalid(format!("--arg {key}: {e}")))
    };
    match op {
        Op::DeltaFromR => {
            let d = build::delta_from_r(alg(&op_name)?, tensor("r", names::R)?)?;
            patched.comul = Some(render_coalg(ring, &d));
        }
        Op::CircFromOmega => {
            let a = build::circ_from_omega(coalg(&op_name)?, form("omega", names::OMEGA)?)?;
            patched.mul = Some(render_alg(ring, &a));
        }
        Op::NijenhuisFromPairing => {
            let n = build::nijenhuis_from_pairing(alg(&op_name)?, form("omega", names::OMEGA)?, tensor("r", names::R)?)?;
            patched.operators.insert(args.get("out", names::N).to_string(), render_rows(ring, &n));
        }
        Op::ConijenhuisFromPairing => {
            let s = build::conijenhuis_from_pairing(coalg(&op_name)?, tensor("r", names::R)?, form("omega", names::OMEGA)?)?;
            patched.operators.insert(args.get("out", names::S).to_string(), render_rows(ring, &s));
        }
        Op::OmegaFromR => {
            let w = build::omega_from_r(tensor("r", names::R)?)?;
            patched.forms.insert(args.get("out", names::OMEGA).to_string(), render_rows(ring, &w));
        }
        Op::RegularRep => {
            let rep = build::regular_representation(alg(&op_name)?);
            patched.reps.insert(args.get("out", names::REP).to_string(), rep_file(ring, &rep));
        }
        Op::DualRep => {
            let name = args.get("rep", names::REP);
            let dual = build::dual_representation(get_rep(b, &op_name, name)?);
            let out = args.map.get("out").cloned().unwrap_or_else(|| format!("{name}_dual"));
            patched.reps.insert(out, rep_file(ring, &dual));
        }
        Op::Pencil => {
            let name = args.get("delta", names::DELTA);
            let other = b.coalgebras.get(name).ok_or_else(|| missing(&op_name, name))?;
            let d = build::coalgebra_pencil(coalg(&op_name)?, other, &scalar("s")?, &scalar("t")?)?;
            patched.comul = Some(render_coalg(ring, &d));
        }
        Op::InduceLie => {
            let lie = build::induced_lie_bialgebra(b)?;
            patched.mul = lie.alg.as_ref().map(|a| render_alg(ring, a));
            patched.comul = lie.coalg.as_ref().map(|c| render_coalg(ring, c));
        }
        Op::Semidirect => {
            let rep = get_rep(b, &op_name, args.get("rep", names::REP))?;
            let pb = build::semidirect_product(ring, alg(&op_name)?, operator("N", names::N)?, rep, operator("alpha", names::ALPHA)?)?;
            return Ok(fresh(f, &pb.ambient));
        }
        Op::MatchedPair => {
            let h = b.algebras.get(names::H).ok_or_else(|| missing(&op_name, names::H))?;
            let a_side = Bundle::new(ring.clone(), b.dim)
                .with_alg(alg(&op_name)?.clone())
                .with_operator(names::N, operator("N", names::N)?.clone());
            let h_side = Bundle::new(ring.clone(), h.dim())
                .with_alg(h.clone())
                .with_operator(names::N, operator("N_H", names::N_H)?.clone());
            let pb = build::matched_pair_product(
                &a_side,
                &h_side,
                get_rep(b, &op_name, names::A_ON_H)?,
                get_rep(b, &op_name, names::H_ON_A)?,
            )?;
            return Ok(fresh(f, &pb.ambient));
        }
        Op::CentralExtension => {
            let a = build::central_extension(alg(&op_name)?, form("omega", names::OMEGA)?)?;
            let ext = Bundle::new(ring.clone(), a.dim()).with_alg(a);
            return Ok(fresh(f, &ext));
        }
        Op::LiftOOperator => {
            let a = alg(&op_name)?;
            let n = operator("N", names::N)?;
            let rep = get_rep(b, &op_name, args.get("rep", names::REP))?;
            let alpha = operator("alpha", names::ALPHA)?;
            let t = operator("T", names::T)?;
            let have_explicit = b.operators.contains_key(args.get("beta", names::BETA))
                && b.operators.contains_key(args.get("S", names::S));
            let (pb, _) = match (&b.pi, have_explicit) {
                (Some(pi), false) => build::lift_o_operator_with_pi(ring, a, n, rep, alpha, t, pi)?,
                _ => {
                    let data = OOperatorData {
                        alg: a,
                        n,
                        rep,
                        alpha,
                        beta: operator("beta", names::BETA)?,
                        t,
                        s: operator("S", names::S)?,
                    };
                    build::lift_o_operator_to_r(ring, &data)?
                }
            };
            return Ok(fresh(f, &pb.ambient));
        }
    }
    Ok(patched)
}

/// A new file for a bundle of a different shape, keeping parameters and
/// assumptions.
fn fresh(f: &StructureFile, b: &Bundle) -> StructureFile {
    let mut out = StructureFile::from_bundle(b);
    out.params = f.params.clone();
    out.assumptions = f.assumptions.clone();
    out
}

fn cmd_construct(path: &Path, op: Op, arg_items: &[String], dest: Option<&Path>, bind_args: &[String], out: &mut dyn Write) -> Res<i32> {
    let (f, b, bindings) = load(path, bind_args)?;
    let args = Args::parse(arg_items)?;
    let result = construct(&f, &b, op, &args, !bindings.is_empty())?;
    // the output must load again
    result.to_bundle()?;
    match dest {
        Some(p) => {
            result.write(p)?;
            writeln!(out, "wrote {}", p.display()).map_err(io)?;
        }
        None => out.write_all(result.to_json().as_bytes()).map_err(io)?,
    }
    Ok(0)
}

struct SearchOpts {
    unknown: Unknown,
    member: Option<String>,
    entries: String,
    laws: String,
    symmetric: bool,
    allow_empty: bool,
    format: Format,
}

fn cmd_search(path: &Path, o: &SearchOpts, bind_args: &[String], out: &mut dyn Write) -> Res<i32> {
    let laws = parse_profile(&o.laws)?;
    let (_, b, bindings) = load(path, bind_args)?;
    let entries = o
        .entries
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| rational(s, "--entries"))
        .collect::<Res<Vec<_>>>()?;
    let spec = match o.unknown {
        Unknown::Operator => GridSpec::operator(""),
        Unknown::SymmetricTensor => GridSpec::symmetric_tensor(""),
        Unknown::Form => GridSpec::form("", o.symmetric),
    };
    let member = o.member.clone().unwrap_or_else(|| default_member(spec.shape).to_string());
    let spec = GridSpec { member, ..spec }.with_entries(entries);
    let report = grid_search(&b, &spec, &laws)?;
    let rendered = SearchOutput::new(&path.display().to_string(), binding_map(&bindings, &b.ring), &report, &b.ring);
    let text = match o.format {
        Format::Text => rendered.to_text(),
        Format::Json => rendered.to_json(),
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(if report.hits.is_empty() && !o.allow_empty { 1 } else { 0 })
}

fn emit(name: &str, dir: &Path) -> Res<PathBuf> {
    let b = fixture(name, None)?;
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(fixture_file_name(name));
    StructureFile::from_bundle(&b).write(&path)?;
    Ok(path)
}

fn cmd_fixtures(list: bool, emit_one: Option<Vec<String>>, emit_all: Option<PathBuf>, out: &mut dyn Write) -> Res<i32> {
    if list || (emit_one.is_none() && emit_all.is_none()) {
        let width = catalog().iter().map(|f| f.name.len()).max().unwrap_or(0);
        for f in catalog() {
            writeln!(out, "{:width$}  {}", f.name, f.summary).map_err(io)?;
        }
    }
    if let Some(v) = emit_one {
        let path = emit(&v[0], Path::new(&v[1]))?;
        writeln!(out, "wrote {}", path.display()).map_err(io)?;
    }
    if let Some(dir) = emit_all {
        for f in catalog() {
            let path = emit(f.name, &dir)?;
            writeln!(out, "wrote {}", path.display()).map_err(io)?;
        }
    }
    Ok(0)
}
