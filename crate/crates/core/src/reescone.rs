//! Rees cones, their irreducible facet representations, and the ideal /
//! quasi-ideal classification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cone;
use crate::error::{Error, Result};
use crate::exactlat::{self, IntMat, IntVec};
use crate::matroid::{basis_monomial_ideal, Matroid, MonomialIdeal};

/// The cone in dimension `n + 1` spanned by `e_1..e_n, (v_1,1)..(v_q,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesCone {
    n: usize,
    generators: Vec<IntVec>,
}

impl ReesCone {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// Units first, then the lifted exponents in the ideal's order.
    pub fn generators(&self) -> &[IntVec] {
        &self.generators
    }

    pub fn lifted(&self) -> &[IntVec] {
        &self.generators[self.n..]
    }

    /// The exponent vectors `v_j` (lifted generators with the last coordinate dropped).
    pub fn exponents(&self) -> Vec<IntVec> {
        self.lifted().iter().map(IntVec::head).collect()
    }

    pub fn spans(&self) -> bool {
        exactlat::rank(&IntMat::new(self.generators.clone()).expect("same dim")) == self.dim()
    }
}

pub fn rees_generators(ideal: &MonomialIdeal) -> ReesCone {
    let n = ideal.n();
    let mut generators: Vec<IntVec> = (0..n).map(|i| IntVec::unit(n + 1, i)).collect();
    generators.extend(ideal.exponents().iter().map(|v| v.lift(BigInt::one())));
    ReesCone { n, generators }
}

/// Irreducible representation `{y : <b, y> >= 0}` of a Rees cone, split into
/// unit normals `e_i` (1-indexed, `i` in `1..=n+1`) and the remaining normals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FacetSystem {
    pub n: usize,
    pub unit_normals: Vec<usize>,
    pub ell_normals: Vec<IntVec>,
}

impl FacetSystem {
    pub fn from_normals(n: usize, normals: Vec<IntVec>) -> FacetSystem {
        let mut unit_normals = Vec::new();
        let mut ell_normals = Vec::new();
        for b in normals {
            match unit_index(&b) {
                Some(i) => unit_normals.push(i),
                None => ell_normals.push(b),
            }
        }
        unit_normals.sort_unstable();
        ell_normals.sort();
        FacetSystem { n, unit_normals, ell_normals }
    }

    pub fn normals(&self) -> Vec<IntVec> {
        self.unit_normals
            .iter()
            .map(|&i| IntVec::unit(self.n + 1, i - 1))
            .chain(self.ell_normals.iter().cloned())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.unit_normals.len() + self.ell_normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Membership in the cone cut out by the system.
    pub fn contains(&self, p: &IntVec) -> bool {
        self.unit_normals.iter().all(|&i| !p[i - 1].is_negative())
            && self.ell_normals.iter().all(|b| !b.dot(p).is_negative())
    }
}

fn unit_index(b: &IntVec) -> Option<usize> {
    let mut hit = None;
    for (i, x) in b.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if !x.is_one() || hit.is_some() {
            return None;
        }
        hit = Some(i + 1);
    }
    hit
}

/// Facet system via double description, checked against every structural
/// postcondition before it is returned.
pub fn facet_normals(c: &ReesCone) -> Result<FacetSystem> {
    let normals = cone::facets(&c.generators)?;
    let system = FacetSystem::from_normals(c.n, normals);
    verify_facet_system(c, &system)?;
    Ok(system)
}

/// Facet system via brute force over generator subsets.
pub fn facet_normals_oracle(c: &ReesCone, cap: usize) -> Result<FacetSystem> {
    let normals = cone::oracle_facets(&c.generators, cap)?;
    Ok(FacetSystem::from_normals(c.n, normals))
}

/// Checks primitivity, validity on the generators, the rank-`n` tightness
/// condition, irredundancy (with an explicit integral witness point), and the
/// sign pattern of non-unit normals.
pub fn verify_facet_system(c: &ReesCone, f: &FacetSystem) -> Result<()> {
    let normals = f.normals();
    let fail = |msg: String| Err(Error::IntegrityError(msg));
    for (k, b) in normals.iter().enumerate() {
        if !b.is_primitive() {
            return fail(format!("normal {b} is not primitive"));
        }
        if let Some(g) = c.generators.iter().find(|g| b.dot(g).is_negative()) {
            return fail(format!("generator {g} violates normal {b}"));
        }
        let tight: Vec<IntVec> = c.generators.iter().filter(|g| b.dot(g).is_zero()).cloned().collect();
        if tight.is_empty() || exactlat::rank(&IntMat::new(tight.clone())?) != c.n {
            return fail(format!("normal {b} is not tight on a rank-{} generator set", c.n));
        }
        // x = N s - b lies strictly outside H_b^+ and inside every other halfspace
        let s = tight.iter().skip(1).fold(tight[0].clone(), |acc, g| &acc + g);
        let mut big_n = BigInt::one();
        for (j, other) in normals.iter().enumerate() {
            if j == k {
                continue;
            }
            let at_s = other.dot(&s);
            if !at_s.is_positive() {
                return fail(format!("normals {b} and {other} share a facet"));
            }
            let need = other.dot(b).div_ceil(&at_s);
            if need > big_n {
                big_n = need;
            }
        }
        let witness = &s.scale(&big_n) - b;
        let outside = b.dot(&witness).is_negative();
        let others_ok = normals.iter().enumerate().all(|(j, o)| j == k || !o.dot(&witness).is_negative());
        if !(outside && others_ok) {
            return fail(format!("normal {b} is redundant"));
        }
    }
    for b in &f.ell_normals {
        let head_ok = b.entries()[..c.n].iter().all(|x| !x.is_negative());
        if !head_ok || !b.last().is_negative() {
            return fail(format!("normal {b} breaks the sign pattern of Rees cone facets"));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Ideal,
    QuasiIdeal,
    Neither,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Ideal => "ideal",
            Classification::QuasiIdeal => "quasi_ideal",
            Classification::Neither => "neither",
        }
    }

    /// Ideal cones are quasi-ideal too.
    pub fn is_quasi_ideal(self) -> bool {
        self != Classification::Neither
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeClassification {
    pub verdict: Classification,
    /// First non-unit normal (lexicographically) whose first `n` entries leave `{0,1}`.
    pub offending_normal: Option<IntVec>,
    /// `d_k = -last entry` of each non-unit normal, when quasi-ideal.
    pub degrees: Vec<BigInt>,
}

/// Reads the classification off the facet system alone.
pub fn classify(f: &FacetSystem) -> ConeClassification {
    let mut degrees = Vec::with_capacity(f.ell_normals.len());
    for b in &f.ell_normals {
        let head_ok = b.entries()[..f.n].iter().all(|x| x.is_zero() || x.is_one());
        let d = -b.last();
        if !head_ok || !d.is_positive() {
            return ConeClassification {
                verdict: Classification::Neither,
                offending_normal: Some(b.clone()),
                degrees: Vec::new(),
            };
        }
        degrees.push(d);
    }
    let verdict = if degrees.iter().all(One::is_one) { Classification::Ideal } else { Classification::QuasiIdeal };
    ConeClassification { verdict, offending_normal: None, degrees }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalCategory {
    /// `e_i`, 1-indexed.
    Unit(usize),
    /// First `n` entries are the indicator of `support`; last entry is `-degree`.
    Ell {
        support: Vec<usize>,
        degree: BigInt,
    },
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    pub rank: usize,
    pub facets: FacetSystem,
    pub categories: Vec<(IntVec, NormalCategory)>,
    pub holds: bool,
    pub notes: Vec<String>,
}

/// Checks that every facet normal of the basis Rees cone is a unit vector or
/// a 0/1 vector with last entry in `[-d, -1]`.
pub fn verify_basis_facet_shape(m: &Matroid) -> Result<ShapeReport> {
    let d = BigInt::from(m.rank());
    let cone = rees_generators(&basis_monomial_ideal(m));
    let facets = facet_normals(&cone)?;
    let n = m.ground_set_size();
    let mut categories = Vec::new();
    for &i in &facets.unit_normals {
        categories.push((IntVec::unit(n + 1, i - 1), NormalCategory::Unit(i)));
    }
    for b in &facets.ell_normals {
        let head = &b.entries()[..n];
        let last = b.last();
        let ok = head.iter().all(|x| x.is_zero() || x.is_one()) && *last <= -BigInt::one() && *last >= -&d;
        let cat = if ok {
            let support = (1..=n).filter(|&i| head[i - 1].is_one()).collect();
            NormalCategory::Ell { support, degree: -last }
        } else {
            NormalCategory::Violation
        };
        categories.push((b.clone(), cat));
    }
    let holds = categories.iter().all(|(_, c)| *c != NormalCategory::Violation);
    let mut notes = Vec::new();
    if n == 1 {
        notes.push("n = 1: computed normals are e_2 = (0,1) and (1,-1); e_1 = (1,0) is not a facet normal".into());
    }
    Ok(ShapeReport { rank: m.rank(), facets, categories, holds, notes })
}

/// Closed-form facet system of the rank-one matroid on `n` elements with bases `{i}`.
pub fn rank_one_facets(n: usize) -> Result<FacetSystem> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let mut b = vec![1i64; n];
    b.push(-1);
    let units = if n == 1 { vec![2] } else { (1..=n + 1).collect() };
    Ok(FacetSystem { n, unit_normals: units, ell_normals: vec![IntVec::from_i64s(&b)] })
}
