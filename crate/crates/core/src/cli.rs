//! Command-line front end. Every command returns its exit code and stdout so
//! it can be driven from tests without spawning a process.
//!
//! Exit codes: 0 success, 1 negative result or failure witness, 2 usage or
//! parse error, 3 resource cap.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::cone;
use crate::corpus::{self, CorpusOptions, Property};
use crate::error::{Error, Result};
use crate::json::{self, parse_instance, Instance, InstanceFile, Payload};
use crate::matroid::enumerate_matroids_capped;
use crate::matroid::DEFAULT_ENUMERATION_CAP;
use crate::polymatroid::{check_polymatroid_bases, divide_by_variable, symmetric_exchange_violation, usable_variables};
use crate::reescone::{self, classify, facet_normals, rees_generators, FacetSystem, ReesCone};
use crate::semigroup::{self, Verdict, DEFAULT_VOLUME_CAP};

/// Generator count up to which the brute-force facet oracle runs by default.
pub const AUTO_ORACLE_LIMIT: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "rees", version, about = "Rees cones, Hilbert bases and normality of monomial ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    /// Cross-check when the cone has at most 12 generators.
    Auto,
    Always,
    Never,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Budget on parallelepiped lattice points for Hilbert bases.
    #[arg(long, default_value_t = DEFAULT_VOLUME_CAP, global = true)]
    pub cap: u64,
    /// Cross-check facets against the brute-force oracle; a bare flag means always.
    #[arg(long, value_enum, default_value_t = OracleMode::Auto, num_args = 0..=1,
          default_missing_value = "always", global = true)]
    pub oracle: OracleMode,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate an instance file.
    Validate {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Facets, classification, Hilbert basis and normality in one report.
    Analyze {
        path: PathBuf,
        /// Dilation bound for the equality check (default: derived from the Hilbert basis).
        #[arg(long)]
        bmax: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Irreducible facet normals of the Rees cone.
    ReesFacets {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Ideal / quasi-ideal / neither.
    Classify {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Hilbert basis of the Rees semigroup's normalization.
    Hilbert {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Normality certificate, cross-checked by both routes.
    Normality {
        path: PathBuf,
        #[arg(long)]
        bmax: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Lattice points of dilates versus sums of generators.
    EhrhartCheck {
        path: PathBuf,
        #[arg(long)]
        bmax: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Validate exponents as polymatroid bases and check division closure.
    PolymatroidCheck {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run properties over all small matroids.
    Corpus {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Restrict to one rank.
        #[arg(long)]
        rank: Option<usize>,
        /// Properties to run (default: all).
        #[arg(long = "property", value_parser = parse_property)]
        properties: Vec<Property>,
        #[arg(long, default_value_t = 3)]
        bmax: u64,
        #[command(flatten)]
        common: Common,
    },
    /// List all matroids on n elements.
    EnumerateMatroids {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rank: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_property(s: &str) -> std::result::Result<Property, String> {
    Property::from_id(s).ok_or_else(|| {
        let ids: Vec<&str> = Property::ALL.iter().map(|p| p.id()).collect();
        format!("unknown property {s:?}; expected one of {}", ids.join(", "))
    })
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        Error::CapExceeded { .. } => 3,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run_command(&cli.command),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            (code, e.render().to_string())
        }
    }
}

pub fn run_command(cmd: &Command) -> (i32, String) {
    let (common, outcome) = match cmd {
        Command::Validate { path, common } => (common, cmd_validate(path)),
        Command::Analyze { path, bmax, common } => (common, cmd_analyze(path, common, *bmax)),
        Command::ReesFacets { path, common } => (common, cmd_rees_facets(path, common)),
        Command::Classify { path, common } => (common, cmd_classify(path, common)),
        Command::Hilbert { path, common } => (common, cmd_hilbert(path, common)),
        Command::Normality { path, bmax, common } => (common, cmd_normality(path, common, *bmax)),
        Command::EhrhartCheck { path, bmax, common } => (common, cmd_ehrhart_check(path, common, *bmax)),
        Command::PolymatroidCheck { path, common } => (common, cmd_polymatroid_check(path)),
        Command::Corpus { n_max, rank, properties, bmax, common } => {
            (common, cmd_corpus(*n_max, *rank, properties, *bmax, common))
        }
        Command::EnumerateMatroids { n, rank, common } => (common, cmd_enumerate(*n, *rank)),
    };
    match outcome {
        Ok((code, v)) => (code, render(&v, common.format)),
        Err(e) => (exit_code(&e), render(&json::error_to_json(&e), common.format)),
    }
}

fn render(v: &Value, f: Format) -> String {
    match f {
        Format::Json => json::render(v),
        Format::Text => to_text(v),
    }
}

/// One `key: value` line per top-level field, values in compact JSON.
pub fn to_text(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut s = String::new();
            for (k, x) in map {
                let body = match x {
                    Value::String(t) => t.clone(),
                    other => other.to_string(),
                };
                s.push_str(&format!("{k}: {body}\n"));
            }
            s
        }
        other => format!("{other}\n"),
    }
}

pub fn read_instance(path: &Path) -> Result<InstanceFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
    parse_instance(&text, stem)
}

fn load(path: &Path) -> Result<(InstanceFile, Instance)> {
    let file = read_instance(path)?;
    let inst = file.payload.validate()?;
    Ok((file, inst))
}

fn instance_json(inst: &Instance) -> Value {
    match inst {
        Instance::Matroid(m) => json::matroid_to_json(m),
        Instance::Ideal(i) => json::ideal_to_json(i),
        Instance::Polymatroid(p) => json::polymatroid_to_json(p),
    }
}

/// Facets by double description, cross-checked against the oracle when asked.
pub fn checked_facets(c: &ReesCone, mode: OracleMode) -> Result<(FacetSystem, bool)> {
    let f = facet_normals(c)?;
    let run = match mode {
        OracleMode::Always => true,
        OracleMode::Never => false,
        OracleMode::Auto => c.generators().len() <= AUTO_ORACLE_LIMIT,
    };
    if run {
        let o = reescone::facet_normals_oracle(c, c.generators().len().max(cone::DEFAULT_ORACLE_CAP))?;
        if o != f {
            return Err(Error::IntegrityError("double description and brute-force facets differ".into()));
        }
    }
    Ok((f, run))
}

pub fn cmd_validate(path: &Path) -> Result<(i32, Value)> {
    let file = read_instance(path)?;
    let kind = file.payload.kind().as_str();
    Ok(match file.payload.validate() {
        Ok(inst) => (0, json!({ "name": file.name, "kind": kind, "valid": true, "instance": instance_json(&inst) })),
        Err(e) => {
            let mut v = json::error_to_json(&e);
            if let Value::Object(m) = &mut v {
                m.insert("name".into(), json!(file.name));
                m.insert("kind".into(), json!(kind));
                m.insert("valid".into(), json!(false));
            }
            (exit_code(&e), v)
        }
    })
}

pub fn cmd_analyze(path: &Path, common: &Common, bmax: Option<u64>) -> Result<(i32, Value)> {
    let (file, inst) = load(path)?;
    analyze(&file.name, &inst, common.cap, bmax, common.oracle)
}

/// The `analyze` document for a validated instance.
pub fn analyze(name: &str, inst: &Instance, cap: u64, bmax: Option<u64>, oracle: OracleMode) -> Result<(i32, Value)> {
    let ideal = inst.ideal()?;
    let c = rees_generators(&ideal);
    let (facets, oracle_checked) = checked_facets(&c, oracle)?;
    let class = classify(&facets);
    let mut doc = Map::new();
    doc.insert("name".into(), json!(name));
    doc.insert("kind".into(), json!(kind_of(inst)));
    doc.insert("instance".into(), instance_json(inst));
    doc.insert("generators".into(), json::vecs_to_json(c.generators()));
    doc.insert("facets".into(), json::facets_to_json(&facets));
    doc.insert("oracle_checked".into(), json!(oracle_checked));
    doc.insert("classification".into(), json::classification_to_json(&class));
    let code = match semigroup::run_pipeline(&ideal, cap, bmax) {
        Ok(out) => {
            doc.insert("hilbert_basis".into(), json::hilbert_to_json(&out.hilbert));
            if let Some(q) = &out.quasi {
                doc.insert("decomposition".into(), json::decomposition_to_json(&q.decomposition));
                doc.insert("dilation_bound".into(), json!(q.b_max));
                if let Some(eq) = &q.equality {
                    doc.insert("equality".into(), json::equality_to_json(eq));
                }
            }
            doc.insert("certificate".into(), json::certificate_to_json(&out.certificate));
            0
        }
        Err(e @ Error::CapExceeded { .. }) => {
            doc.insert("hilbert_basis".into(), json::error_to_json(&e));
            3
        }
        Err(e) => return Err(e),
    };
    Ok((code, Value::Object(doc)))
}

fn kind_of(inst: &Instance) -> &'static str {
    match inst {
        Instance::Matroid(_) => "matroid",
        Instance::Ideal(_) => "ideal",
        Instance::Polymatroid(_) => "polymatroid",
    }
}

fn cone_of(path: &Path) -> Result<(InstanceFile, ReesCone)> {
    let (file, inst) = load(path)?;
    Ok((file, rees_generators(&inst.ideal()?)))
}

pub fn cmd_rees_facets(path: &Path, common: &Common) -> Result<(i32, Value)> {
    let (file, c) = cone_of(path)?;
    let (f, checked) = checked_facets(&c, common.oracle)?;
    let mut v = json::facets_to_json(&f);
    if let Value::Object(m) = &mut v {
        m.insert("name".into(), json!(file.name));
        m.insert("oracle_checked".into(), json!(checked));
    }
    Ok((0, v))
}

pub fn cmd_classify(path: &Path, common: &Common) -> Result<(i32, Value)> {
    let (file, c) = cone_of(path)?;
    let (f, _) = checked_facets(&c, common.oracle)?;
    let mut v = json::classification_to_json(&classify(&f));
    if let Value::Object(m) = &mut v {
        m.insert("name".into(), json!(file.name));
    }
    Ok((0, v))
}

pub fn cmd_hilbert(path: &Path, common: &Common) -> Result<(i32, Value)> {
    let (file, c) = cone_of(path)?;
    let (f, _) = checked_facets(&c, common.oracle)?;
    let hb = semigroup::hilbert_basis_capped(&c, &f, common.cap)?;
    let mut v = json::hilbert_to_json(&hb);
    if let Value::Object(m) = &mut v {
        m.insert("name".into(), json!(file.name));
    }
    Ok((0, v))
}

pub fn cmd_normality(path: &Path, common: &Common, bmax: Option<u64>) -> Result<(i32, Value)> {
    let (file, inst) = load(path)?;
    let ideal = inst.ideal()?;
    let cert = if ideal.num_generators() == 1 {
        semigroup::is_normal_capped(&ideal, common.cap)?
    } else {
        semigroup::run_pipeline(&ideal, common.cap, bmax)?.certificate
    };
    if !semigroup::verify_certificate(&ideal, &cert)? {
        return Err(Error::IntegrityError("certificate witness does not verify".into()));
    }
    let code = if cert.verdict == Verdict::Normal { 0 } else { 1 };
    let mut v = json::certificate_to_json(&cert);
    if let Value::Object(m) = &mut v {
        m.insert("name".into(), json!(file.name));
    }
    Ok((code, v))
}

pub fn cmd_ehrhart_check(path: &Path, common: &Common, bmax: Option<u64>) -> Result<(i32, Value)> {
    let (file, inst) = load(path)?;
    let ideal = inst.ideal()?;
    let b_max = match bmax {
        Some(b) => b,
        None => {
            let c = rees_generators(&ideal);
            let f = facet_normals(&c)?;
            let hb = semigroup::hilbert_basis_capped(&c, &f, common.cap)?;
            hb.elements.iter().filter_map(|h| h.last().to_u64()).max().unwrap_or(1).max(1)
        }
    };
    let report = semigroup::ehrhart_equality_check(ideal.exponents(), b_max)?;
    let code = if report.passed { 0 } else { 1 };
    let mut v = json::equality_to_json(&report);
    if let Value::Object(m) = &mut v {
        m.insert("name".into(), json!(file.name));
    }
    Ok((code, v))
}

pub fn cmd_polymatroid_check(path: &Path) -> Result<(i32, Value)> {
    let file = read_instance(path)?;
    let (n, vectors) = match &file.payload {
        Payload::Ideal { n, exponents } => (*n, exponents.clone()),
        Payload::Polymatroid { n, vectors } => (*n, vectors.clone()),
        Payload::Matroid { .. } => {
            let inst = file.payload.validate()?;
            let ideal = inst.ideal()?;
            (ideal.n(), ideal.exponents().to_vec())
        }
    };
    let f = match check_polymatroid_bases(n, &vectors) {
        Ok(f) => f,
        Err(e) => {
            let mut v = json::error_to_json(&e);
            if let Value::Object(m) = &mut v {
                m.insert("name".into(), json!(file.name));
                m.insert("valid".into(), json!(false));
            }
            return Ok((exit_code(&e), v));
        }
    };
    let mut quotients = Vec::new();
    let mut closure_holds = true;
    for i in usable_variables(&f) {
        match divide_by_variable(&f, i) {
            Ok(q) => quotients.push(json!({ "variable": i, "quotient": json::vecs_to_json(q.vectors()) })),
            Err(e) => {
                closure_holds = false;
                quotients.push(json!({ "variable": i, "error": json::error_to_json(&e) }));
            }
        }
    }
    let symmetric = match symmetric_exchange_violation(&f) {
        None => json!({ "holds": true }),
        Some(w) => json!({
            "holds": false,
            "a": json::vec_to_json(&w.a),
            "c": json::vec_to_json(&w.c),
            "i": w.coordinate,
        }),
    };
    let code = if closure_holds { 0 } else { 1 };
    Ok((
        code,
        json!({
            "name": file.name,
            "valid": true,
            "modulus": json::int_to_json(f.modulus()),
            "division": { "holds": closure_holds, "quotients": quotients },
            "symmetric_exchange": symmetric,
        }),
    ))
}

pub fn cmd_corpus(
    n_max: usize,
    rank: Option<usize>,
    properties: &[Property],
    bmax: u64,
    common: &Common,
) -> Result<(i32, Value)> {
    let opts = CorpusOptions {
        n_max,
        rank,
        properties: if properties.is_empty() { Property::ALL.to_vec() } else { properties.to_vec() },
        b_max: bmax,
        cap: common.cap,
    };
    let reports = corpus::run_corpus(&opts)?;
    let code = if reports.iter().all(|r| r.passed()) { 0 } else { 1 };
    Ok((code, corpus::reports_to_json(&reports)))
}

pub fn cmd_enumerate(n: usize, rank: Option<usize>) -> Result<(i32, Value)> {
    let ranks: Vec<usize> = match rank {
        Some(d) => vec![d],
        None => (1..=n).collect(),
    };
    let mut out = Vec::new();
    for d in ranks {
        for m in enumerate_matroids_capped(n, d, DEFAULT_ENUMERATION_CAP)? {
            out.push(json::matroid_to_json(&m));
        }
    }
    Ok((0, json!({ "n": n, "count": out.len(), "matroids": out })))
}
