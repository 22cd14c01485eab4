//! Affine semigroups of Rees cones: Hilbert bases, membership, Ehrhart
//! lattice points and normality certificates.
//!
//! The Hilbert basis comes from a placing triangulation. For each simplicial
//! cone with generator rows `G` and `D = |det G|`, the group `Z^k / G^T Z^k`
//! is walked from zero by adding the images of the unit vectors; each element
//! is stored as `D * lambda mod D` in `i64`, and maps back to the unique
//! lattice point `sum(lambda_i g_i)` of the half-open parallelepiped. The
//! union of those points and the generators is then reduced to irreducibles.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cone::{self, HRep};
use crate::error::{Error, Result};
use crate::exactlat::{adjugate, IntMat, IntVec};
use crate::matroid::MonomialIdeal;
use crate::reescone::{self, classify, facet_normals, rees_generators, Classification, FacetSystem, ReesCone};

/// Default budget on the number of parallelepiped lattice points.
pub const DEFAULT_VOLUME_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HilbertMeta {
    pub simplices: usize,
    pub total_volume: u64,
    pub max_volume: u64,
    pub parallelepiped_points: usize,
    pub candidates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasisResult {
    pub elements: Vec<IntVec>,
    pub meta: HilbertMeta,
}

/// Hilbert basis of `Z^{n+1} ∩ cone` for a Rees cone and its facet system.
pub fn hilbert_basis(c: &ReesCone, f: &FacetSystem) -> Result<HilbertBasisResult> {
    hilbert_basis_capped(c, f, DEFAULT_VOLUME_CAP)
}

pub fn hilbert_basis_capped(c: &ReesCone, f: &FacetSystem, cap: u64) -> Result<HilbertBasisResult> {
    if let Some(g) = c.generators().iter().find(|g| !g.is_nonnegative()) {
        return Err(Error::PreconditionFailed(format!("generator {g} leaves the first orthant")));
    }
    hilbert_basis_of_cone(c.generators(), &f.normals(), cap)
}

/// Hilbert basis of a full-dimensional pointed cone given by generators and
/// its inner facet normals.
pub fn hilbert_basis_of_cone(gens: &[IntVec], normals: &[IntVec], cap: u64) -> Result<HilbertBasisResult> {
    let inside = |p: &IntVec| normals.iter().all(|b| !b.dot(p).is_negative());
    let simplices = cone::placing_triangulation(gens)?;
    let prepared: Vec<(Vec<IntVec>, IntMat, u64)> = simplices
        .iter()
        .map(|s| {
            let rows: Vec<IntVec> = s.iter().map(|&i| gens[i].clone()).collect();
            let (adj, det) = adjugate(&IntMat::new(rows.clone())?).expect("simplex is nonsingular");
            let vol = det.abs().to_u64().unwrap_or(u64::MAX);
            let w = if det.is_negative() { scale_mat(&adj, -1) } else { adj };
            Ok((rows, w, vol))
        })
        .collect::<Result<_>>()?;
    let total: u128 = prepared.iter().map(|p| u128::from(p.2)).sum();
    if total > u128::from(cap) {
        return Err(Error::CapExceeded {
            what: "parallelepiped lattice points",
            needed: total,
            limit: u128::from(cap),
        });
    }
    let per_simplex: Vec<Vec<IntVec>> =
        prepared.par_iter().map(|(rows, w, vol)| parallelepiped_points(rows, w, *vol)).collect();
    let parallelepiped_points = per_simplex.iter().map(Vec::len).sum();
    let mut candidates: BTreeSet<IntVec> = per_simplex.into_iter().flatten().collect();
    candidates.extend(gens.iter().filter(|g| !g.is_zero()).cloned());
    let candidates: Vec<IntVec> = candidates.into_iter().collect();
    let elements: Vec<IntVec> = candidates
        .par_iter()
        .filter(|x| {
            !candidates.iter().any(|h| {
                h != *x && {
                    let r = *x - h;
                    !r.is_zero() && inside(&r)
                }
            })
        })
        .cloned()
        .collect();
    Ok(HilbertBasisResult {
        elements,
        meta: HilbertMeta {
            simplices: simplices.len(),
            total_volume: total as u64,
            max_volume: prepared.iter().map(|p| p.2).max().unwrap_or(0),
            parallelepiped_points,
            candidates: candidates.len(),
        },
    })
}

fn scale_mat(m: &IntMat, c: i64) -> IntMat {
    let c = BigInt::from(c);
    IntMat::new(m.rows().iter().map(|r| r.scale(&c)).collect()).expect("same dim")
}

// Nonzero lattice points of the half-open parallelepiped of `rows`, where
// `adj` satisfies `rows * adj = vol * I` with `vol > 0`.
fn parallelepiped_points(rows: &[IntVec], adj: &IntMat, vol: u64) -> Vec<IntVec> {
    if vol == 1 {
        return Vec::new();
    }
    let k = rows.len();
    let d = BigInt::from(vol);
    let modd = vol as i64;
    // column j of W = adj^T is row j of adj; W e_j mod D
    let steps: Vec<Vec<i64>> = (0..k)
        .map(|j| (0..k).map(|i| adj.get(j, i).mod_floor(&d).to_i64().expect("residue below cap")).collect())
        .collect();
    let zero = vec![0i64; k];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(u) = queue.pop_front() {
        for s in &steps {
            let next: Vec<i64> = u.iter().zip(s).map(|(a, b)| (a + b) % modd).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter()
        .filter(|u| u.iter().any(|&x| x != 0))
        .map(|u| {
            let mut acc = IntVec::zeros(k);
            for (coef, g) in u.iter().zip(rows) {
                acc = &acc + &g.scale(&BigInt::from(*coef));
            }
            let entries: Vec<BigInt> = acc
                .iter()
                .map(|x| {
                    debug_assert!((x % &d).is_zero());
                    x / &d
                })
                .collect();
            IntVec::new(entries).expect("k >= 1")
        })
        .collect()
}

/// Decides whether a target is a sum of generators with a fixed number of
/// terms, each term dominated by the running residual.
struct Decomposer<'a> {
    gens: &'a [IntVec],
    exact: bool,
    min_mod: BigInt,
    max_mod: BigInt,
    failed: HashSet<(usize, BigInt, IntVec)>,
}

impl<'a> Decomposer<'a> {
    fn new(gens: &'a [IntVec], exact: bool) -> Self {
        let mods: Vec<BigInt> = gens.iter().map(IntVec::modulus).collect();
        Decomposer {
            gens,
            exact,
            min_mod: mods.iter().min().cloned().unwrap_or_default(),
            max_mod: mods.iter().max().cloned().unwrap_or_default(),
            failed: HashSet::new(),
        }
    }

    fn search(&mut self, start: usize, terms: &BigInt, residual: &IntVec) -> bool {
        if terms.is_zero() {
            return !self.exact || residual.is_zero();
        }
        let m = residual.modulus();
        if m < terms * &self.min_mod || (self.exact && m > terms * &self.max_mod) {
            return false;
        }
        let key = (start, terms.clone(), residual.clone());
        if self.failed.contains(&key) {
            return false;
        }
        let fewer = terms - BigInt::one();
        for j in start..self.gens.len() {
            if self.gens[j].le(residual) && self.search(j, &fewer, &(residual - &self.gens[j])) {
                return true;
            }
        }
        self.failed.insert(key);
        false
    }
}

/// `(a, b)` in the semigroup generated by `e_1..e_n, (v_j, 1)`: some `c_j >= 0`
/// with `sum c_j = b` and `sum c_j v_j <= a`.
pub fn semigroup_member(p: &IntVec, c: &ReesCone) -> bool {
    if p.dim() != c.dim() || !p.is_nonnegative() {
        return false;
    }
    if c.generators().contains(p) {
        return true;
    }
    let exps = c.exponents();
    Decomposer::new(&exps, false).search(0, p.last(), &p.head())
}

/// `a` is a sum of exactly `b` members of `exps`.
pub fn is_sum_of_exactly(a: &IntVec, b: &BigInt, exps: &[IntVec]) -> bool {
    if b.is_negative() || !a.is_nonnegative() {
        return false;
    }
    Decomposer::new(exps, true).search(0, b, a)
}

/// `p` is a nonnegative integer combination of `set`, assuming all vectors
/// are nonnegative and nonzero.
pub fn is_nonneg_combination(p: &IntVec, set: &[IntVec]) -> bool {
    fn go(p: &IntVec, set: &[IntVec], start: usize, failed: &mut HashSet<(usize, IntVec)>) -> bool {
        if p.is_zero() {
            return true;
        }
        if failed.contains(&(start, p.clone())) {
            return false;
        }
        for j in start..set.len() {
            let r = p - &set[j];
            if r.is_nonnegative() && go(&r, set, j, failed) {
                return true;
            }
        }
        failed.insert((start, p.clone()));
        false
    }
    p.is_nonnegative() && go(p, set, 0, &mut HashSet::new())
}

/// `P = conv(points)` with exact dilate membership.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    n: usize,
    points: Vec<IntVec>,
    lifted_cone: HRep,
}

impl LatticePolytope {
    pub fn new(n: usize, points: Vec<IntVec>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(p) = points.iter().find(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
        }
        let lifted: Vec<IntVec> = points.iter().map(|v| v.lift(BigInt::one())).collect();
        let lifted_cone = cone::h_representation(&lifted)?;
        Ok(LatticePolytope { n, points, lifted_cone })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[IntVec] {
        &self.points
    }

    /// `a ∈ bP`, decided as `(a, b) ∈ cone{(v_j, 1)}`.
    pub fn contains_dilate(&self, a: &IntVec, b: &BigInt) -> bool {
        a.dim() == self.n && self.lifted_cone.contains(&a.lift(b.clone()))
    }
}

/// Budget on the lattice points visited by [`ehrhart_points`].
pub const EHRHART_SCAN_CAP: u64 = 10_000_000;

/// Lattice points of `bP`, lexicographically sorted, by a bounding-box scan
/// pruned on the coordinate sum.
pub fn ehrhart_points(p: &LatticePolytope, b: u64) -> Result<Vec<IntVec>> {
    let bb = BigInt::from(b);
    let n = p.n;
    let lo: Vec<BigInt> = (0..n).map(|i| p.points.iter().map(|v| &v[i] * &bb).min().expect("nonempty")).collect();
    let hi: Vec<BigInt> = (0..n).map(|i| p.points.iter().map(|v| &v[i] * &bb).max().expect("nonempty")).collect();
    let min_mod = p.points.iter().map(IntVec::modulus).min().expect("nonempty") * &bb;
    let max_mod = p.points.iter().map(IntVec::modulus).max().expect("nonempty") * &bb;
    // suffix sums of the box bounds for pruning
    let mut lo_tail = vec![BigInt::zero(); n + 1];
    let mut hi_tail = vec![BigInt::zero(); n + 1];
    for i in (0..n).rev() {
        lo_tail[i] = &lo_tail[i + 1] + &lo[i];
        hi_tail[i] = &hi_tail[i + 1] + &hi[i];
    }
    let mut out = Vec::new();
    let mut scanned = 0u64;
    let mut cur: Vec<BigInt> = Vec::with_capacity(n);
    struct Scan<'s> {
        p: &'s LatticePolytope,
        b: &'s BigInt,
        lo: &'s [BigInt],
        hi: &'s [BigInt],
        lo_tail: &'s [BigInt],
        hi_tail: &'s [BigInt],
        min_mod: &'s BigInt,
        max_mod: &'s BigInt,
    }
    fn rec(s: &Scan<'_>, cur: &mut Vec<BigInt>, sum: &BigInt, out: &mut Vec<IntVec>, scanned: &mut u64) -> Result<()> {
        let i = cur.len();
        if i == s.lo.len() {
            *scanned += 1;
            if *scanned > EHRHART_SCAN_CAP {
                return Err(Error::CapExceeded {
                    what: "Ehrhart box scan",
                    needed: u128::from(*scanned),
                    limit: u128::from(EHRHART_SCAN_CAP),
                });
            }
            let a = IntVec::new(cur.clone()).expect("n >= 1");
            if s.p.contains_dilate(&a, s.b) {
                out.push(a);
            }
            return Ok(());
        }
        let mut x = s.lo[i].clone();
        while x <= s.hi[i] {
            let partial = sum + &x;
            let reach_lo = &partial + &s.lo_tail[i + 1];
            let reach_hi = &partial + &s.hi_tail[i + 1];
            if reach_lo > *s.max_mod {
                break;
            }
            if reach_hi >= *s.min_mod {
                cur.push(x.clone());
                rec(s, cur, &partial, out, scanned)?;
                cur.pop();
            }
            x += 1;
        }
        Ok(())
    }
    let scan = Scan {
        p,
        b: &bb,
        lo: &lo,
        hi: &hi,
        lo_tail: &lo_tail,
        hi_tail: &hi_tail,
        min_mod: &min_mod,
        max_mod: &max_mod,
    };
    rec(&scan, &mut cur, &BigInt::zero(), &mut out, &mut scanned)?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilationCheck {
    pub b: u64,
    pub points: usize,
    pub passed: bool,
    pub witness: Option<IntVec>,
}

/// Per-dilation outcome of comparing `bP ∩ Z^n` with `b`-fold sums of `F`.
/// Passing up to a finite bound is evidence, not a proof, so the report is
/// always flagged as a semidecision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityReport {
    pub b_max: u64,
    pub dilations: Vec<DilationCheck>,
    pub passed: bool,
    pub semidecision: bool,
}

impl EqualityReport {
    pub fn first_failure(&self) -> Option<&DilationCheck> {
        self.dilations.iter().find(|d| !d.passed)
    }
}

/// Every lattice point of `bP` is a sum of exactly `b` members of `F`, for `1 <= b <= b_max`.
pub fn ehrhart_equality_check(f: &[IntVec], b_max: u64) -> Result<EqualityReport> {
    let first = f.first().ok_or(Error::EmptyInput)?;
    let d = first.modulus();
    if f.iter().any(|v| v.modulus() != d) {
        return Err(Error::PreconditionFailed("generators must share one degree".into()));
    }
    let poly = LatticePolytope::new(first.dim(), f.to_vec())?;
    let dilations: Vec<DilationCheck> = (1..=b_max)
        .into_par_iter()
        .map(|b| {
            let pts = ehrhart_points(&poly, b)?;
            let bb = BigInt::from(b);
            let witness = pts.iter().find(|a| !is_sum_of_exactly(a, &bb, f)).cloned();
            Ok(DilationCheck { b, points: pts.len(), passed: witness.is_none(), witness })
        })
        .collect::<Result<_>>()?;
    let passed = dilations.iter().all(|d| d.passed);
    Ok(EqualityReport { b_max, dilations, passed, semidecision: true })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementStatus {
    /// `(e_i, 0)`, 1-indexed.
    Unit(usize),
    /// `b >= 1` and `a ∈ bP`.
    InDilation(BigInt),
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub holds: bool,
    pub elements: Vec<(IntVec, ElementStatus)>,
}

/// Every Hilbert basis element is a unit or lies over a dilate of `P`.
/// Requires a quasi-ideal Rees cone.
pub fn decomposition_check(ideal: &MonomialIdeal) -> Result<DecompositionReport> {
    decomposition_check_capped(ideal, DEFAULT_VOLUME_CAP)
}

pub fn decomposition_check_capped(ideal: &MonomialIdeal, cap: u64) -> Result<DecompositionReport> {
    let c = rees_generators(ideal);
    let f = facet_normals(&c)?;
    let class = classify(&f);
    if !class.verdict.is_quasi_ideal() {
        return Err(Error::PreconditionFailed(format!(
            "Rees cone is neither ideal nor quasi-ideal (normal {})",
            class.offending_normal.expect("set for neither")
        )));
    }
    let hb = hilbert_basis_capped(&c, &f, cap)?;
    decomposition_from_parts(ideal, &hb)
}

fn decomposition_from_parts(ideal: &MonomialIdeal, hb: &HilbertBasisResult) -> Result<DecompositionReport> {
    let n = ideal.n();
    let poly = LatticePolytope::new(n, ideal.exponents().to_vec())?;
    let elements: Vec<(IntVec, ElementStatus)> = hb
        .elements
        .iter()
        .map(|h| {
            let (a, b) = (h.head(), h.last().clone());
            let status = if b.is_zero() {
                match (0..n).find(|&i| a == IntVec::unit(n, i)) {
                    Some(i) => ElementStatus::Unit(i + 1),
                    None => ElementStatus::Violation,
                }
            } else if b.is_positive() && poly.contains_dilate(&a, &b) {
                ElementStatus::InDilation(b)
            } else {
                ElementStatus::Violation
            };
            (h.clone(), status)
        })
        .collect();
    let holds = elements.iter().all(|(_, s)| *s != ElementStatus::Violation);
    Ok(DecompositionReport { holds, elements })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Normal,
    NotNormal,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Normal => "normal",
            Verdict::NotNormal => "not_normal",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Hilbert,
    QuasiEhrhart,
    Both,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Hilbert => "hilbert",
            Method::QuasiEhrhart => "quasi_ehrhart",
            Method::Both => "both",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityCertificate {
    pub verdict: Verdict,
    /// A lattice point of the Rees cone outside the semigroup, for `NotNormal`.
    pub witness: Option<IntVec>,
    pub method: Method,
}

/// Normality by comparing the Hilbert basis against the semigroup.
pub fn is_normal(ideal: &MonomialIdeal) -> Result<NormalityCertificate> {
    is_normal_capped(ideal, DEFAULT_VOLUME_CAP)
}

pub fn is_normal_capped(ideal: &MonomialIdeal, cap: u64) -> Result<NormalityCertificate> {
    if ideal.num_generators() == 1 {
        return Ok(NormalityCertificate { verdict: Verdict::Normal, witness: None, method: Method::Hilbert });
    }
    let c = rees_generators(ideal);
    let f = facet_normals(&c)?;
    let hb = hilbert_basis_capped(&c, &f, cap)?;
    Ok(hilbert_certificate(&c, &hb))
}

fn hilbert_certificate(c: &ReesCone, hb: &HilbertBasisResult) -> NormalityCertificate {
    let witness = hb.elements.iter().find(|h| !semigroup_member(h, c)).cloned();
    let verdict = if witness.is_some() { Verdict::NotNormal } else { Verdict::Normal };
    NormalityCertificate { verdict, witness, method: Method::Hilbert }
}

/// Re-checks a certificate's witness without the double description path:
/// membership in the cone uses brute-force facets, and the witness must fail
/// semigroup membership. Certificates without a witness pass trivially.
pub fn verify_certificate(ideal: &MonomialIdeal, cert: &NormalityCertificate) -> Result<bool> {
    let Some(w) = &cert.witness else {
        return Ok(cert.verdict == Verdict::Normal);
    };
    if cert.verdict != Verdict::NotNormal {
        return Ok(false);
    }
    let c = rees_generators(ideal);
    let normals = match cone::oracle_facets(c.generators(), 24) {
        Ok(n) => n,
        Err(Error::CapExceeded { .. }) => cone::facets(c.generators())?,
        Err(e) => return Err(e),
    };
    let in_cone = w.dim() == c.dim() && normals.iter().all(|b| !b.dot(w).is_negative());
    Ok(in_cone && !semigroup_member(w, &c))
}

/// Outcome of the quasi-ideal route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiRoute {
    pub b_max: u64,
    pub decomposition: DecompositionReport,
    /// Present for equal-degree generators.
    pub equality: Option<EqualityReport>,
    pub normal: bool,
    pub witness: Option<IntVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineOutcome {
    pub cone: ReesCone,
    pub facets: FacetSystem,
    pub classification: reescone::ConeClassification,
    pub hilbert: HilbertBasisResult,
    pub quasi: Option<QuasiRoute>,
    pub certificate: NormalityCertificate,
}

/// Normality through the quasi-ideal route, cross-checked with the Hilbert
/// basis route. The two must agree; disagreement is a hard error.
pub fn certify_normality_pipeline(ideal: &MonomialIdeal) -> Result<NormalityCertificate> {
    Ok(run_pipeline(ideal, DEFAULT_VOLUME_CAP, None)?.certificate)
}

/// `b_max` overrides the dilation bound derived from the Hilbert basis.
pub fn run_pipeline(ideal: &MonomialIdeal, cap: u64, b_max: Option<u64>) -> Result<PipelineOutcome> {
    let c = rees_generators(ideal);
    let facets = facet_normals(&c)?;
    let classification = classify(&facets);
    let hilbert = hilbert_basis_capped(&c, &facets, cap)?;
    let direct = hilbert_certificate(&c, &hilbert);
    if classification.verdict == Classification::Neither {
        return Ok(PipelineOutcome { cone: c, facets, classification, hilbert, quasi: None, certificate: direct });
    }
    let decomposition = decomposition_from_parts(ideal, &hilbert)?;
    if !decomposition.holds {
        let bad = decomposition.elements.iter().find(|(_, s)| *s == ElementStatus::Violation).expect("exists");
        return Err(Error::IntegrityError(format!(
            "quasi-ideal cone has Hilbert basis element {} outside A(P)[x]",
            bad.0
        )));
    }
    let derived = hilbert
        .elements
        .iter()
        .map(|h| h.last().clone())
        .max()
        .unwrap_or_else(BigInt::one)
        .to_u64()
        .ok_or(Error::CapExceeded { what: "dilation bound", needed: u128::MAX, limit: u128::from(u64::MAX) })?;
    let b_max = b_max.unwrap_or(derived).max(1);
    let (equality, witness) = if ideal.common_degree().is_some() {
        let report = ehrhart_equality_check(ideal.exponents(), b_max)?;
        let w = report
            .first_failure()
            .map(|d| d.witness.as_ref().expect("failed dilation has a witness").lift(BigInt::from(d.b)));
        (Some(report), w)
    } else {
        (None, first_dilate_outside_semigroup(ideal, &c, b_max)?)
    };
    let quasi_normal = witness.is_none();
    let hilbert_normal = direct.verdict == Verdict::Normal;
    // a custom b_max below the derived bound can only under-report failures
    if quasi_normal != hilbert_normal && b_max >= derived {
        return Err(Error::MethodDisagreement { hilbert: hilbert_normal, quasi_ehrhart: quasi_normal });
    }
    let certificate = NormalityCertificate {
        verdict: direct.verdict,
        witness: direct.witness.clone(),
        method: if quasi_normal == hilbert_normal { Method::Both } else { Method::Hilbert },
    };
    let quasi = Some(QuasiRoute { b_max, decomposition, equality, normal: quasi_normal, witness });
    Ok(PipelineOutcome { cone: c, facets, classification, hilbert, quasi, certificate })
}

// Unequal degrees: a missing exact decomposition need not leave the Rees
// semigroup, so test the lifted points directly.
fn first_dilate_outside_semigroup(ideal: &MonomialIdeal, c: &ReesCone, b_max: u64) -> Result<Option<IntVec>> {
    let poly = LatticePolytope::new(ideal.n(), ideal.exponents().to_vec())?;
    for b in 1..=b_max {
        for a in ehrhart_points(&poly, b)? {
            let p = a.lift(BigInt::from(b));
            if !semigroup_member(&p, c) {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{basis_monomial_ideal, enumerate_all_matroids, graphic_matroid, uniform_matroid};
    use crate::polymatroid::veronese;
    use proptest::prelude::*;

    fn ideal(n: usize, rows: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::from_i64_rows(n, rows).unwrap()
    }

    fn v(xs: &[i64]) -> IntVec {
        IntVec::from_i64s(xs)
    }

    fn hb(i: &MonomialIdeal) -> Vec<IntVec> {
        let c = rees_generators(i);
        hilbert_basis(&c, &facet_normals(&c).unwrap()).unwrap().elements
    }

    #[test]
    fn hilbert_basis_examples() {
        assert_eq!(hb(&ideal(1, &[&[1]])), vec![v(&[1, 0]), v(&[1, 1])]);
        assert_eq!(
            hb(&ideal(2, &[&[2, 0], &[0, 2]])),
            vec![v(&[0, 1, 0]), v(&[0, 2, 1]), v(&[1, 0, 0]), v(&[1, 1, 1]), v(&[2, 0, 1])]
        );
        assert_eq!(
            hb(&ideal(2, &[&[1, 0], &[0, 1]])),
            vec![v(&[0, 1, 0]), v(&[0, 1, 1]), v(&[1, 0, 0]), v(&[1, 0, 1])]
        );
    }

    #[test]
    fn hilbert_basis_cap() {
        let c = rees_generators(&ideal(2, &[&[2, 0], &[0, 2]]));
        let f = facet_normals(&c).unwrap();
        assert!(matches!(hilbert_basis_capped(&c, &f, 1), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn membership_examples() {
        let c = rees_generators(&ideal(2, &[&[2, 0], &[0, 2]]));
        assert!(!semigroup_member(&v(&[1, 1, 1]), &c));
        assert!(semigroup_member(&v(&[2, 0, 1]), &c));
        assert!(semigroup_member(&v(&[3, 2, 2]), &c));
        assert!(semigroup_member(&v(&[0, 0, 0]), &c));
        assert!(!semigroup_member(&v(&[5, 5, -1]), &c));
    }

    #[test]
    fn normality_examples() {
        let cert = is_normal(&ideal(2, &[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(cert.verdict, Verdict::NotNormal);
        assert_eq!(cert.witness, Some(v(&[1, 1, 1])));
        assert!(verify_certificate(&ideal(2, &[&[2, 0], &[0, 2]]), &cert).unwrap());

        let u23 = basis_monomial_ideal(&uniform_matroid(3, 2).unwrap());
        assert_eq!(is_normal(&u23).unwrap().verdict, Verdict::Normal);
        assert_eq!(is_normal(&ideal(1, &[&[1]])).unwrap().verdict, Verdict::Normal);
    }

    #[test]
    fn ehrhart_examples() {
        let u23 = basis_monomial_ideal(&uniform_matroid(3, 2).unwrap());
        let p = LatticePolytope::new(3, u23.exponents().to_vec()).unwrap();
        assert_eq!(ehrhart_points(&p, 1).unwrap(), vec![v(&[0, 1, 1]), v(&[1, 0, 1]), v(&[1, 1, 0])]);
        assert_eq!(ehrhart_points(&p, 0).unwrap(), vec![v(&[0, 0, 0])]);
        let seg = LatticePolytope::new(2, vec![v(&[2, 0]), v(&[0, 2])]).unwrap();
        assert_eq!(ehrhart_points(&seg, 1).unwrap(), vec![v(&[0, 2]), v(&[1, 1]), v(&[2, 0])]);
        assert_eq!(ehrhart_points(&seg, 2).unwrap().len(), 5);
    }

    #[test]
    fn equality_examples() {
        let u23 = basis_monomial_ideal(&uniform_matroid(3, 2).unwrap());
        let r = ehrhart_equality_check(u23.exponents(), 3).unwrap();
        assert!(r.passed && r.semidecision);
        assert_eq!(r.dilations.len(), 3);

        let r = ehrhart_equality_check(&[v(&[2, 0]), v(&[0, 2])], 1).unwrap();
        assert!(!r.passed);
        assert_eq!(r.first_failure().unwrap().witness, Some(v(&[1, 1])));

        let ver = veronese(2, 2).unwrap();
        assert!(ehrhart_equality_check(ver.vectors(), 4).unwrap().passed);

        assert!(matches!(ehrhart_equality_check(&[v(&[1, 0]), v(&[1, 1])], 1), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn decomposition_examples() {
        let r = decomposition_check(&ideal(2, &[&[2, 0], &[0, 2]])).unwrap();
        assert!(r.holds);
        assert!(r.elements.contains(&(v(&[1, 1, 1]), ElementStatus::InDilation(BigInt::one()))));
        assert!(matches!(
            decomposition_check(&ideal(2, &[&[3, 0], &[1, 1], &[0, 3]])),
            Err(Error::PreconditionFailed(_))
        ));
        for m in enumerate_all_matroids(4).unwrap() {
            assert!(decomposition_check(&basis_monomial_ideal(&m)).unwrap().holds, "{m:?}");
        }
    }

    #[test]
    fn pipeline_examples() {
        let k4 = graphic_matroid(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let cert = certify_normality_pipeline(&basis_monomial_ideal(&k4)).unwrap();
        assert_eq!((cert.verdict, cert.method), (Verdict::Normal, Method::Both));

        let bad = ideal(2, &[&[2, 0], &[0, 2]]);
        let out = run_pipeline(&bad, DEFAULT_VOLUME_CAP, None).unwrap();
        assert_eq!((out.certificate.verdict, out.certificate.method), (Verdict::NotNormal, Method::Both));
        let eq = out.quasi.unwrap().equality.unwrap();
        assert_eq!(eq.first_failure().unwrap().b, 1);

        let ver = veronese(2, 3).unwrap().to_ideal().unwrap();
        assert_eq!(certify_normality_pipeline(&ver).unwrap().verdict, Verdict::Normal);

        // unequal degrees, quasi-ideal
        let mixed = ideal(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let out = run_pipeline(&mixed, DEFAULT_VOLUME_CAP, None).unwrap();
        assert_eq!(out.certificate.method, Method::Both);
        assert!(out.quasi.unwrap().equality.is_none());

        let neither = ideal(2, &[&[3, 0], &[1, 1], &[0, 3]]);
        let out = run_pipeline(&neither, DEFAULT_VOLUME_CAP, None).unwrap();
        assert_eq!(out.certificate.method, Method::Hilbert);
        assert!(out.quasi.is_none());
    }

    #[test]
    fn dilations_decompose_on_small_matroids() {
        for m in enumerate_all_matroids(4).unwrap() {
            let i = basis_monomial_ideal(&m);
            assert!(ehrhart_equality_check(i.exponents(), 3).unwrap().passed, "{m:?}");
            assert_eq!(is_normal(&i).unwrap().verdict, Verdict::Normal, "{m:?}");
        }
    }

    #[test]
    fn veronese_suite_is_normal() {
        for n in 1..=3usize {
            for d in 1..=4u32 {
                if n == 3 && d == 4 {
                    continue;
                }
                let i = veronese(n, d).unwrap().to_ideal().unwrap();
                assert_eq!(is_normal(&i).unwrap().verdict, Verdict::Normal, "n={n} d={d}");
            }
        }
    }

    fn small_ideal() -> impl Strategy<Value = MonomialIdeal> {
        (1usize..=3).prop_flat_map(|n| {
            proptest::collection::btree_set(proptest::collection::vec(0i64..=3, n), 1..=4).prop_filter_map(
                "nonzero exponents",
                move |rows| {
                    let rows: Vec<Vec<i64>> = rows.into_iter().filter(|r| r.iter().any(|&x| x > 0)).collect();
                    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
                    MonomialIdeal::from_i64_rows(n, &refs).ok()
                },
            )
        })
    }

    // all lattice points in the box [0, hi] satisfying the normals
    fn box_points(hi: &[i64], f: &FacetSystem) -> Vec<IntVec> {
        let mut out = vec![Vec::<i64>::new()];
        for &h in hi {
            out = out.into_iter().flat_map(|p| (0..=h).map(move |x| [p.clone(), vec![x]].concat())).collect();
        }
        out.into_iter().map(|p| IntVec::from_i64s(&p)).filter(|p| f.contains(p)).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn hilbert_basis_generates_and_is_minimal(i in small_ideal()) {
            let c = rees_generators(&i);
            let f = facet_normals(&c).unwrap();
            let h = hilbert_basis(&c, &f).unwrap().elements;
            for x in &h {
                prop_assert!(f.contains(x));
                for y in &h {
                    if x != y {
                        prop_assert!(!f.contains(&(x - y)));
                    }
                }
            }
            let mut hi = vec![0i64; c.dim()];
            for g in c.generators() {
                for (k, x) in g.to_i64s().unwrap().into_iter().enumerate() {
                    hi[k] += x;
                }
            }
            // keep the box small
            for x in hi.iter_mut() { *x = (*x).min(6); }
            for p in box_points(&hi, &f) {
                prop_assert!(is_nonneg_combination(&p, &h), "{} not generated", p);
            }
        }

        #[test]
        fn certificates_verify_and_routes_agree(i in small_ideal()) {
            let cert = is_normal(&i).unwrap();
            prop_assert!(verify_certificate(&i, &cert).unwrap());
            let out = run_pipeline(&i, DEFAULT_VOLUME_CAP, None).unwrap();
            prop_assert_eq!(out.certificate.verdict, cert.verdict);
            if out.classification.verdict.is_quasi_ideal() {
                prop_assert_eq!(out.certificate.method, Method::Both);
            }
        }
    }
}
