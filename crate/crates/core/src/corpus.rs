//! Bundled instances and the exhaustive property runner over small matroids.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::json::{self, parse_instance, Instance, InstanceFile};
use crate::matroid::{basis_monomial_ideal, enumerate_matroids_capped, Matroid, DEFAULT_ENUMERATION_CAP};
use crate::polymatroid::{
    divide_by_variable, enumerate_polymatroids, from_matroid, usable_variables, PolymatroidBases,
};
use crate::reescone::{self, rees_generators, verify_basis_facet_shape};
use crate::semigroup::{self, Method, Verdict, DEFAULT_VOLUME_CAP};

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".json")))),*]
    };
}

/// `(name, file contents)` of every bundled instance, sorted by name.
pub const BUNDLED: &[(&str, &str)] = bundled!(
    "k3",
    "k4",
    "mixed",
    "neither",
    "principal",
    "square",
    "transversal",
    "u12",
    "u14",
    "u23",
    "u24",
    "u35",
    "veronese_2_3",
    "veronese_3_2",
);

pub fn bundled_file(name: &str) -> Option<InstanceFile> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(n, text)| parse_instance(text, n).expect("bundled instances parse"))
}

/// Every bundled instance, validated.
pub fn bundled_instances() -> Vec<(String, Instance)> {
    BUNDLED
        .iter()
        .map(|(n, text)| {
            let file = parse_instance(text, n).expect("bundled instances parse");
            let inst = file.payload.validate().expect("bundled instances are valid");
            (file.name, inst)
        })
        .collect()
}

/// Properties checked by the corpus runner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    /// Every facet normal of a basis Rees cone is a unit or an indicator with last entry in `[-d, -1]`.
    FacetShape,
    /// Lattice points of `bP` are `b`-fold sums of bases.
    DilationEquality,
    /// Basis ideals are normal.
    BasisNormality,
    /// Hilbert basis elements of quasi-ideal cones are units or lie over dilates of `P`.
    Decomposition,
    /// Dividing a polymatroid by a variable gives a polymatroid.
    DivisionClosure,
    /// The quasi-ideal route and the Hilbert route agree.
    PipelineConsistency,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::FacetShape,
        Property::DilationEquality,
        Property::BasisNormality,
        Property::Decomposition,
        Property::DivisionClosure,
        Property::PipelineConsistency,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Property::FacetShape => "facet-shape",
            Property::DilationEquality => "dilation-equality",
            Property::BasisNormality => "basis-normality",
            Property::Decomposition => "decomposition",
            Property::DivisionClosure => "division-closure",
            Property::PipelineConsistency => "pipeline-consistency",
        }
    }

    pub fn from_id(s: &str) -> Option<Property> {
        Property::ALL.into_iter().find(|p| p.id() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub instance: String,
    pub witness: Value,
}

#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub property: Property,
    pub instances: usize,
    pub failures: Vec<Failure>,
    pub wall_ms: u128,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct CorpusOptions {
    pub n_max: usize,
    /// Only matroids of this rank.
    pub rank: Option<usize>,
    pub properties: Vec<Property>,
    /// Dilation bound for the equality check.
    pub b_max: u64,
    pub cap: u64,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions { n_max: 4, rank: None, properties: Property::ALL.to_vec(), b_max: 3, cap: DEFAULT_VOLUME_CAP }
    }
}

/// All matroids with `n <= n_max`, named `m<n>r<d>#<index>`.
pub fn named_matroids(n_max: usize, rank: Option<usize>) -> Result<Vec<(String, Matroid)>> {
    if n_max > DEFAULT_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "matroid ground set size",
            needed: n_max as u128,
            limit: DEFAULT_ENUMERATION_CAP as u128,
        });
    }
    let mut out = Vec::new();
    for n in 1..=n_max {
        for d in 1..=n {
            if rank.is_some_and(|r| r != d) {
                continue;
            }
            for (k, m) in enumerate_matroids_capped(n, d, DEFAULT_ENUMERATION_CAP)?.into_iter().enumerate() {
                out.push((format!("m{n}r{d}#{k}"), m));
            }
        }
    }
    Ok(out)
}

/// Polymatroids for the division property: matroid indicators, small
/// enumerated polymatroids and the bundled ones.
fn division_instances(matroids: &[(String, Matroid)]) -> Result<Vec<(String, PolymatroidBases)>> {
    let mut out: Vec<(String, PolymatroidBases)> =
        matroids.iter().map(|(name, m)| (name.clone(), from_matroid(m))).collect();
    for (n, d) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        for (k, p) in enumerate_polymatroids(n, d)?.into_iter().enumerate() {
            out.push((format!("p{n}d{d}#{k}"), p));
        }
    }
    for (name, inst) in bundled_instances() {
        if let Instance::Polymatroid(p) = inst {
            out.push((name, p));
        }
    }
    Ok(out)
}

fn check_matroid(p: Property, m: &Matroid, opts: &CorpusOptions) -> Result<Option<Value>> {
    let ideal = basis_monomial_ideal(m);
    Ok(match p {
        Property::FacetShape => {
            let report = verify_basis_facet_shape(m)?;
            let class = reescone::classify(&report.facets);
            if report.holds && class.verdict.is_quasi_ideal() {
                None
            } else {
                Some(
                    json!({ "facets": json::facets_to_json(&report.facets), "classification": class.verdict.as_str() }),
                )
            }
        }
        Property::DilationEquality => {
            let r = semigroup::ehrhart_equality_check(ideal.exponents(), opts.b_max)?;
            r.first_failure().map(|d| json!({ "b": d.b, "a": d.witness.as_ref().map(json::vec_to_json) }))
        }
        Property::BasisNormality => {
            let cert = semigroup::is_normal_capped(&ideal, opts.cap)?;
            (cert.verdict != Verdict::Normal).then(|| json::certificate_to_json(&cert))
        }
        Property::Decomposition => {
            let r = semigroup::decomposition_check_capped(&ideal, opts.cap)?;
            (!r.holds).then(|| json::decomposition_to_json(&r))
        }
        Property::PipelineConsistency => {
            let out = semigroup::run_pipeline(&ideal, opts.cap, None)?;
            (out.certificate.method != Method::Both).then(|| json::certificate_to_json(&out.certificate))
        }
        Property::DivisionClosure => unreachable!("handled over polymatroids"),
    })
}

fn check_division(p: &PolymatroidBases) -> Option<Value> {
    for i in usable_variables(p) {
        if let Err(e) = divide_by_variable(p, i) {
            return Some(json!({ "variable": i, "error": json::error_to_json(&e) }));
        }
    }
    None
}

// Errors other than caps count as failures with the error as witness.
fn outcome(name: &str, r: Result<Option<Value>>) -> Result<Option<Failure>> {
    match r {
        Ok(None) => Ok(None),
        Ok(Some(witness)) => Ok(Some(Failure { instance: name.to_string(), witness })),
        Err(e @ Error::CapExceeded { .. }) => Err(e),
        Err(e) => Ok(Some(Failure { instance: name.to_string(), witness: json::error_to_json(&e) })),
    }
}

/// Runs the selected properties; reports are sorted by property.
pub fn run_corpus(opts: &CorpusOptions) -> Result<Vec<PropertyReport>> {
    let matroids = named_matroids(opts.n_max, opts.rank)?;
    let mut props = opts.properties.clone();
    props.sort();
    props.dedup();
    props
        .into_iter()
        .map(|p| {
            let start = Instant::now();
            let (instances, failures) = if p == Property::DivisionClosure {
                let polys = division_instances(&matroids)?;
                let failures: Vec<Failure> = polys
                    .par_iter()
                    .filter_map(|(name, f)| check_division(f).map(|w| Failure { instance: name.clone(), witness: w }))
                    .collect();
                (polys.len(), failures)
            } else {
                let failures: Vec<Option<Failure>> = matroids
                    .par_iter()
                    .map(|(name, m)| outcome(name, check_matroid(p, m, opts)))
                    .collect::<Result<_>>()?;
                (matroids.len(), failures.into_iter().flatten().collect())
            };
            Ok(PropertyReport { property: p, instances, failures, wall_ms: start.elapsed().as_millis() })
        })
        .collect()
}

/// Report body plus a `meta` trailer holding wall times.
pub fn reports_to_json(reports: &[PropertyReport]) -> Value {
    let body: Vec<Value> = reports
        .iter()
        .map(|r| {
            let failures: Vec<Value> =
                r.failures.iter().map(|f| json!({ "instance": f.instance, "witness": f.witness })).collect();
            json!({
                "property": r.property.id(),
                "instances": r.instances,
                "status": if r.passed() { "pass" } else { "fail" },
                "failures": failures,
            })
        })
        .collect();
    let mut wall = Map::new();
    for r in reports {
        wall.insert(r.property.id().to_string(), json!(r.wall_ms));
    }
    json!({ "reports": body, "meta": { "wall_ms": wall } })
}

/// The generators of the Rees cone of a bundled instance.
pub fn bundled_generators(name: &str) -> Option<Vec<crate::exactlat::IntVec>> {
    let file = bundled_file(name)?;
    let ideal = file.payload.validate().ok()?.ideal().ok()?;
    Some(rees_generators(&ideal).generators().to_vec())
}
