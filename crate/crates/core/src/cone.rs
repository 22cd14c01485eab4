//! Pointed rational cones given by integer generators.
//!
//! Facets are computed by the double description method run on the dual
//! cone: start from the simplicial cone of `k` independent generators, whose
//! dual rays are the columns of the adjugate, and add the remaining
//! generators one constraint at a time. Adjacency uses the combinatorial
//! test on zero sets. All normals are inner (`<b, g> >= 0` for every
//! generator) and primitive.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlat::{self, adjugate, determinant, primitive, IntMat, IntVec};

/// Default generator budget for [`oracle_facets`].
pub const DEFAULT_ORACLE_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(bits: usize) -> Self {
        BitSet(vec![0; bits.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

fn check_dims(gens: &[IntVec]) -> Result<usize> {
    let dim = gens.first().ok_or(Error::EmptyInput)?.dim();
    if let Some(g) = gens.iter().find(|g| g.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: g.dim() });
    }
    Ok(dim)
}

/// Greedily picks generators (in order) that raise the rank.
fn independent_subset(gens: &[IntVec]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<IntVec> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        rows.push(g.clone());
        if exactlat::rank(&IntMat::new(rows.clone()).expect("same dim")) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

fn require_full_dim(gens: &[IntVec]) -> Result<(usize, Vec<usize>)> {
    let dim = check_dims(gens)?;
    let basis = independent_subset(gens);
    if basis.len() < dim {
        return Err(Error::DegenerateCone { rank: basis.len(), dim });
    }
    Ok((dim, basis))
}

/// Columns of the adjugate of the row matrix `rows`, signed so the `i`-th is
/// positive on `rows[i]` and zero on the others.
fn dual_basis(rows: &[IntVec]) -> Vec<IntVec> {
    let m = IntMat::new(rows.to_vec()).expect("same dim");
    let (adj, det) = adjugate(&m).expect("independent rows");
    let t = adj.transpose();
    t.rows().iter().map(|c| if det.is_negative() { c.neg() } else { c.clone() }).collect()
}

struct Ray {
    normal: IntVec,
    zeros: BitSet,
}

/// Inner facet normals of a full-dimensional pointed cone, sorted lexicographically.
pub fn facets(gens: &[IntVec]) -> Result<Vec<IntVec>> {
    let (dim, basis) = require_full_dim(gens)?;
    let m = gens.len();
    let init_rows: Vec<IntVec> = basis.iter().map(|&i| gens[i].clone()).collect();
    let mut rays: Vec<Ray> = dual_basis(&init_rows)
        .into_iter()
        .enumerate()
        .map(|(j, c)| {
            let mut zeros = BitSet::new(m);
            for (pos, &gi) in basis.iter().enumerate() {
                if pos != j {
                    zeros.insert(gi);
                }
            }
            Ray { normal: primitive(&c).expect("dual basis vector is nonzero"), zeros }
        })
        .collect();

    for (gi, g) in gens.iter().enumerate() {
        if basis.contains(&gi) || g.is_zero() {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| r.normal.dot(g)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(gi);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.intersect(&rays[q].zeros);
                if common.len() + 2 < dim {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(i, r)| i == p || i == q || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let combo = &rays[q].normal.scale(&values[p]) - &rays[p].normal.scale(&values[q]);
                let mut zeros = common;
                zeros.insert(gi);
                fresh.push(Ray { normal: primitive(&combo).expect("adjacent rays are independent"), zeros });
            }
        }
        let mut next = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.zeros.insert(gi);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }
    let mut out: Vec<IntVec> = rays.into_iter().map(|r| r.normal).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Brute-force facet enumeration: every `dim - 1` generators of full rank
/// span a candidate hyperplane, whose normal comes from signed maximal minors;
/// it is kept when all generators lie on one side. Independent of [`facets`].
pub fn oracle_facets(gens: &[IntVec], cap: usize) -> Result<Vec<IntVec>> {
    let nonzero: Vec<IntVec> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.len() > cap {
        return Err(Error::CapExceeded {
            what: "oracle generators",
            needed: nonzero.len() as u128,
            limit: cap as u128,
        });
    }
    let dim = check_dims(gens)?;
    let r = exactlat::rank(&IntMat::new(nonzero.clone())?);
    if r < dim {
        return Err(Error::DegenerateCone { rank: r, dim });
    }
    let mut found = BTreeSet::new();
    for subset in (0..nonzero.len()).combinations(dim - 1) {
        let rows: Vec<IntVec> = subset.iter().map(|&i| nonzero[i].clone()).collect();
        let m = IntMat::new(rows)?;
        let all_rows: Vec<usize> = (0..dim - 1).collect();
        let normal: Vec<BigInt> = (0..dim)
            .map(|j| {
                let cols: Vec<usize> = (0..dim).filter(|&c| c != j).collect();
                let minor = determinant(&m.select(&all_rows, &cols));
                if j % 2 == 0 {
                    minor
                } else {
                    -minor
                }
            })
            .collect();
        let normal = IntVec::new(normal)?;
        if normal.is_zero() {
            continue;
        }
        let vals: Vec<BigInt> = nonzero.iter().map(|g| normal.dot(g)).collect();
        let oriented = if vals.iter().all(|v| !v.is_negative()) {
            normal
        } else if vals.iter().all(|v| !v.is_positive()) {
            normal.neg()
        } else {
            continue;
        };
        found.insert(primitive(&oriented)?);
    }
    Ok(found.into_iter().collect())
}

/// `{y : <e, y> = 0 for e in equations, <b, y> >= 0 for b in inequalities}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub dim: usize,
    pub equations: Vec<IntVec>,
    pub inequalities: Vec<IntVec>,
}

impl HRep {
    pub fn contains(&self, p: &IntVec) -> bool {
        self.equations.iter().all(|e| e.dot(p).is_zero()) && self.inequalities.iter().all(|b| !b.dot(p).is_negative())
    }
}

/// H-representation of a pointed cone of any dimension: equations cut out its
/// linear span, and the inequalities are the facets of the cone projected
/// onto a pivot coordinate set of that span, lifted back by zero padding.
pub fn h_representation(gens: &[IntVec]) -> Result<HRep> {
    let dim = check_dims(gens)?;
    let m = IntMat::new(gens.to_vec())?;
    let equations = exactlat::nullspace(&m);
    let pivots = exactlat::pivot_columns(&m);
    if pivots.is_empty() {
        return Ok(HRep { dim, equations, inequalities: Vec::new() });
    }
    let all_rows: Vec<usize> = (0..gens.len()).collect();
    let projected = m.select(&all_rows, &pivots);
    let inequalities = facets(projected.rows())?
        .into_iter()
        .map(|b| {
            let mut full = vec![BigInt::zero(); dim];
            for (x, &p) in b.into_entries().into_iter().zip(&pivots) {
                full[p] = x;
            }
            IntVec::new(full).expect("dim >= 1")
        })
        .collect();
    Ok(HRep { dim, equations, inequalities })
}

/// Placing triangulation: simplicial cones (as generator index lists, each of
/// `dim` linearly independent generators) covering the cone with disjoint interiors.
pub fn placing_triangulation(gens: &[IntVec]) -> Result<Vec<Vec<usize>>> {
    let (_, basis) = require_full_dim(gens)?;
    struct Simplex {
        idx: Vec<usize>,
        functionals: Vec<IntVec>,
    }
    let make = |idx: Vec<usize>| {
        let rows: Vec<IntVec> = idx.iter().map(|&i| gens[i].clone()).collect();
        Simplex { functionals: dual_basis(&rows), idx }
    };
    let mut used: Vec<usize> = basis.clone();
    let mut simplices = vec![make(basis.clone())];
    for (gi, g) in gens.iter().enumerate() {
        if basis.contains(&gi) || g.is_zero() {
            continue;
        }
        let mut fresh = Vec::new();
        for s in &simplices {
            for (pos, f) in s.functionals.iter().enumerate() {
                if !f.dot(g).is_negative() {
                    continue;
                }
                if used.iter().any(|&h| f.dot(&gens[h]).is_negative()) {
                    continue;
                }
                let mut idx = s.idx.clone();
                idx[pos] = gi;
                fresh.push(make(idx));
            }
        }
        simplices.extend(fresh);
        used.push(gi);
    }
    Ok(simplices.into_iter().map(|s| s.idx).collect())
}
