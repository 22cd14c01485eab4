//! Matroids given by their bases, and monomial ideals.
//!
//! Ground-set elements are 1-indexed. Bases are kept as sorted element lists
//! and the family in lexicographic order; internally a basis is also a bit
//! mask, which caps the ground set at 63 elements.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, ExchangeViolation, Result};
use crate::exactlat::IntVec;

pub const MAX_GROUND_SET: usize = 63;

/// Default cap on the ground-set size accepted by [`enumerate_matroids`].
pub const DEFAULT_ENUMERATION_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: usize,
    d: usize,
    bases: Vec<Vec<usize>>,
}

impl Matroid {
    pub fn ground_set_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }

    pub fn is_basis(&self, set: &[usize]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.bases.binary_search(&s).is_ok()
    }

    /// Applies `perm` (a permutation of `1..=n`, given as `perm[i-1] = image of i`)
    /// to every basis.
    pub fn relabel(&self, perm: &[usize]) -> Result<Matroid> {
        let family: Vec<Vec<usize>> = self.bases.iter().map(|b| b.iter().map(|&e| perm[e - 1]).collect()).collect();
        check_basis_exchange(self.n, &family)
    }
}

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |m, &e| m | (1u64 << e))
}

fn elements_of(mask: u64) -> Vec<usize> {
    (1..=MAX_GROUND_SET).filter(|&e| mask >> e & 1 == 1).collect()
}

fn first_exchange_violation(masks: &[u64], lookup: impl Fn(u64) -> bool) -> Option<(u64, u64, usize)> {
    for &b1 in masks {
        for &b2 in masks {
            let only1 = b1 & !b2;
            let only2 = b2 & !b1;
            for x in elements_of(only1) {
                let base = b1 & !(1u64 << x);
                let ok = elements_of(only2).into_iter().any(|y| lookup(base | (1u64 << y)));
                if !ok {
                    return Some((b1, b2, x));
                }
            }
        }
    }
    None
}

/// Validates a family of subsets of `{1..n}` as the bases of a matroid.
///
/// Duplicated sets are merged. The first violating triple in lexicographic
/// order is returned as [`Error::ExchangeFailure`].
pub fn check_basis_exchange(n: usize, family: &[Vec<usize>]) -> Result<Matroid> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if n > MAX_GROUND_SET {
        return Err(Error::InvalidInput(format!("ground set of size {n} exceeds {MAX_GROUND_SET}")));
    }
    let mut sets = BTreeSet::new();
    for raw in family {
        let mut s = raw.clone();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("set {raw:?} repeats an element")));
        }
        if let Some(&e) = s.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::InvalidInput(format!("element {e} outside 1..={n}")));
        }
        sets.insert(s);
    }
    let bases: Vec<Vec<usize>> = sets.into_iter().collect();
    let d = bases[0].len();
    if let Some(other) = bases.iter().find(|b| b.len() != d) {
        return Err(Error::UnequalCardinalities { first: bases[0].clone(), second: other.clone() });
    }
    if d == 0 {
        return Err(Error::BadRank { n, d });
    }
    let masks: Vec<u64> = bases.iter().map(|b| mask_of(b)).collect();
    let set: HashSet<u64> = masks.iter().copied().collect();
    if let Some((b1, b2, x)) = first_exchange_violation(&masks, |m| set.contains(&m)) {
        return Err(Error::ExchangeFailure(ExchangeViolation {
            first: elements_of(b1),
            second: elements_of(b2),
            element: x,
        }));
    }
    Ok(Matroid { n, d, bases })
}

/// Smallest `b2` in `B2 \ B1` such that both swaps of `b1` and `b2` are bases.
pub fn symmetric_exchange_witness(m: &Matroid, b1_set: &[usize], b2_set: &[usize], b1: usize) -> Result<usize> {
    if !m.is_basis(b1_set) || !m.is_basis(b2_set) {
        return Err(Error::PreconditionFailed("both sets must be bases".into()));
    }
    if !b1_set.contains(&b1) || b2_set.contains(&b1) {
        return Err(Error::PreconditionFailed(format!("{b1} is not in B1 \\ B2")));
    }
    let mut candidates: Vec<usize> = b2_set.iter().copied().filter(|y| !b1_set.contains(y)).collect();
    candidates.sort_unstable();
    candidates
        .into_iter()
        .find(|&y| {
            let mut s1: Vec<usize> = b1_set.iter().copied().filter(|&e| e != b1).collect();
            s1.push(y);
            let mut s2: Vec<usize> = b2_set.iter().copied().filter(|&e| e != y).collect();
            s2.push(b1);
            m.is_basis(&s1) && m.is_basis(&s2)
        })
        .ok_or_else(|| {
            Error::IntegrityError(format!("no symmetric exchange for B1={b1_set:?}, B2={b2_set:?}, b1={b1}"))
        })
}

/// `U_{d,n}`: every `d`-subset is a basis.
pub fn uniform_matroid(n: usize, d: usize) -> Result<Matroid> {
    if d < 1 || d > n {
        return Err(Error::BadRank { n, d });
    }
    let family: Vec<Vec<usize>> = (1..=n).combinations(d).collect();
    check_basis_exchange(n, &family)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    /// False when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

fn is_forest(vertices: usize, edges: &[(usize, usize)], subset: &[usize]) -> bool {
    let mut uf = UnionFind::new(vertices + 1);
    subset.iter().all(|&i| {
        let (a, b) = edges[i - 1];
        uf.union(a, b)
    })
}

/// Cycle matroid of a multigraph on vertices `1..=vertices`; edge `i` of the
/// list is ground-set element `i + 1`. Bases are the maximal spanning forests.
pub fn graphic_matroid(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
    if edges.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a == 0 || b == 0 || a > vertices || b > vertices) {
        return Err(Error::InvalidInput(format!("edge ({a},{b}) uses a vertex outside 1..={vertices}")));
    }
    let all: Vec<usize> = (1..=edges.len()).collect();
    let mut uf = UnionFind::new(vertices + 1);
    let d = all.iter().filter(|&&i| uf.union(edges[i - 1].0, edges[i - 1].1)).count();
    if d == 0 {
        return Err(Error::InvalidInput("graph has only loops".into()));
    }
    let family: Vec<Vec<usize>> =
        all.iter().copied().combinations(d).filter(|s| is_forest(vertices, edges, s)).collect();
    check_basis_exchange(edges.len(), &family)
}

/// All labeled matroids of rank `d` on `{1..n}`, sorted by their bases lists.
pub fn enumerate_matroids(n: usize, d: usize) -> Result<Vec<Matroid>> {
    enumerate_matroids_capped(n, d, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_matroids_capped(n: usize, d: usize, cap: usize) -> Result<Vec<Matroid>> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "matroid enumeration ground set",
            needed: n as u128,
            limit: cap as u128,
        });
    }
    if d < 1 || d > n {
        return Err(Error::BadRank { n, d });
    }
    let subsets: Vec<u64> = (1..=n).combinations(d).map(|s| mask_of(&s)).collect();
    let k = subsets.len();
    if k > 30 {
        return Err(Error::CapExceeded { what: "candidate families (2^k)", needed: 1u128 << k, limit: 1u128 << 30 });
    }
    // subset mask -> position in `subsets`
    let mut index = vec![usize::MAX; 1usize << (n + 1)];
    for (i, &m) in subsets.iter().enumerate() {
        index[m as usize] = i;
    }
    let mut found: Vec<Matroid> = (1u64..1u64 << k)
        .into_par_iter()
        .filter_map(|family| {
            let masks: Vec<u64> = (0..k).filter(|&i| family >> i & 1 == 1).map(|i| subsets[i]).collect();
            let lookup = |m: u64| {
                let i = index[m as usize];
                i != usize::MAX && family >> i & 1 == 1
            };
            if first_exchange_violation(&masks, lookup).is_some() {
                return None;
            }
            let mut bases: Vec<Vec<usize>> = masks.iter().map(|&m| elements_of(m)).collect();
            bases.sort();
            Some(Matroid { n, d, bases })
        })
        .collect();
    found.sort_by(|a, b| a.bases.cmp(&b.bases));
    Ok(found)
}

/// Every matroid of every rank on up to `n_max` elements.
pub fn enumerate_all_matroids(n_max: usize) -> Result<Vec<Matroid>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for d in 1..=n {
            out.extend(enumerate_matroids(n, d)?);
        }
    }
    Ok(out)
}

/// Matroid with bases `{B \ {j} : j in B}`, on the same ground set.
pub fn contract_element(m: &Matroid, j: usize) -> Result<Matroid> {
    let family: Vec<Vec<usize>> =
        m.bases.iter().filter(|b| b.contains(&j)).map(|b| b.iter().copied().filter(|&e| e != j).collect()).collect();
    if family.is_empty() {
        return Err(Error::ElementInNoBasis(j));
    }
    if m.d == 1 {
        return Err(Error::BadRank { n: m.n, d: 0 });
    }
    check_basis_exchange(m.n, &family)
}

/// A proper monomial ideal, stored by its generator exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    exponents: Vec<IntVec>,
}

impl MonomialIdeal {
    /// Rejects empty input, zero or negative exponents, and duplicates. Sorts lexicographically.
    pub fn new(n: usize, exponents: Vec<IntVec>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("ambient dimension must be positive".into()));
        }
        if exponents.is_empty() {
            return Err(Error::EmptyInput);
        }
        for v in &exponents {
            if v.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
            }
            if !v.is_nonnegative() {
                return Err(Error::InvalidInput(format!("exponent {v} has a negative entry")));
            }
            if v.is_zero() {
                return Err(Error::InvalidInput("the zero exponent generates the unit ideal".into()));
            }
        }
        let mut exponents = exponents;
        exponents.sort();
        if let Some(w) = exponents.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("duplicate exponent {}", w[0])));
        }
        Ok(MonomialIdeal { n, exponents })
    }

    pub fn from_i64_rows(n: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::new(n, rows.iter().map(|r| IntVec::from_i64s(r)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn exponents(&self) -> &[IntVec] {
        &self.exponents
    }

    pub fn num_generators(&self) -> usize {
        self.exponents.len()
    }

    /// Common degree of the generators, if they all have one.
    pub fn common_degree(&self) -> Option<BigInt> {
        let d = self.exponents[0].modulus();
        self.exponents.iter().all(|v| v.modulus() == d).then_some(d)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|v| v.iter().all(|x| x.is_zero() || x.is_one()))
    }

    /// Permutes coordinates: coordinate `i` (0-based) moves to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<MonomialIdeal> {
        let exps = self
            .exponents
            .iter()
            .map(|v| {
                let mut e = vec![BigInt::zero(); self.n];
                for (i, x) in v.iter().enumerate() {
                    e[perm[i]] = x.clone();
                }
                IntVec::new(e)
            })
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(self.n, exps)
    }
}

/// The ideal generated by the squarefree monomials of the bases.
pub fn basis_monomial_ideal(m: &Matroid) -> MonomialIdeal {
    let exps = m
        .bases
        .iter()
        .map(|b| {
            let mut e = vec![0i64; m.n];
            for &x in b {
                e[x - 1] = 1;
            }
            IntVec::from_i64s(&e)
        })
        .collect();
    MonomialIdeal::new(m.n, exps).expect("indicator vectors of distinct nonempty bases")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exchange_examples() {
        let u24 = check_basis_exchange(4, &(1..=4).combinations(2).collect::<Vec<_>>()).unwrap();
        assert_eq!(u24.rank(), 2);
        assert_eq!(u24.bases().len(), 6);

        let err = check_basis_exchange(4, &[vec![1, 2], vec![3, 4]]).unwrap_err();
        assert_eq!(
            err,
            Error::ExchangeFailure(ExchangeViolation { first: vec![1, 2], second: vec![3, 4], element: 1 })
        );

        assert!(check_basis_exchange(3, &[vec![1, 2], vec![1, 3]]).is_ok());
    }

    #[test]
    fn exchange_errors() {
        assert_eq!(check_basis_exchange(3, &[]), Err(Error::EmptyFamily));
        assert_eq!(
            check_basis_exchange(3, &[vec![1], vec![2, 3]]),
            Err(Error::UnequalCardinalities { first: vec![1], second: vec![2, 3] })
        );
        assert!(matches!(check_basis_exchange(2, &[vec![3]]), Err(Error::InvalidInput(_))));
        assert!(matches!(check_basis_exchange(2, &[vec![1, 1]]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn symmetric_exchange_examples() {
        let u24 = uniform_matroid(4, 2).unwrap();
        assert_eq!(symmetric_exchange_witness(&u24, &[1, 2], &[3, 4], 1), Ok(3));
        let k3 = graphic_matroid(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(symmetric_exchange_witness(&k3, &[1, 2], &[2, 3], 1), Ok(3));
        assert!(matches!(symmetric_exchange_witness(&u24, &[1, 2], &[1, 3], 1), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn uniform_examples() {
        assert_eq!(uniform_matroid(3, 2).unwrap().bases(), &[vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(uniform_matroid(2, 1).unwrap().bases(), &[vec![1], vec![2]]);
        assert_eq!(uniform_matroid(4, 4).unwrap().bases(), &[vec![1, 2, 3, 4]]);
        assert_eq!(uniform_matroid(2, 3), Err(Error::BadRank { n: 2, d: 3 }));
        assert_eq!(uniform_matroid(2, 0), Err(Error::BadRank { n: 2, d: 0 }));
    }

    #[test]
    fn graphic_examples() {
        let k3 = graphic_matroid(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k3.rank(), 2);
        assert_eq!(k3.bases(), uniform_matroid(3, 2).unwrap().bases());

        let k4 = graphic_matroid(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(k4.rank(), 3);
        assert_eq!(k4.bases().len(), 16);

        let two = graphic_matroid(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(two.rank(), 2);
        assert_eq!(two.bases(), &[vec![1, 2]]);

        // a loop is in no basis
        let lp = graphic_matroid(2, &[(1, 2), (2, 2)]).unwrap();
        assert_eq!(lp.bases(), &[vec![1]]);
        assert_eq!(graphic_matroid(2, &[]), Err(Error::EmptyInput));
    }

    #[test]
    fn enumeration_counts() {
        let m32 = enumerate_matroids(3, 2).unwrap();
        assert_eq!(m32.len(), 7);
        assert_eq!(m32.last().unwrap().bases(), &[vec![2, 3]]);
        assert_eq!(enumerate_matroids(1, 1).unwrap().len(), 1);
        assert_eq!(enumerate_matroids(2, 1).unwrap().len(), 3);
        // exhaustive counts for n = 4
        let counts: Vec<usize> = (1..=4).map(|d| enumerate_matroids(4, d).unwrap().len()).collect();
        assert_eq!(counts, vec![15, 36, 15, 1]);
        assert!(matches!(enumerate_matroids(7, 2), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn basis_ideal_examples() {
        let u23 = basis_monomial_ideal(&uniform_matroid(3, 2).unwrap());
        let expect: Vec<IntVec> = [[0, 1, 1], [1, 0, 1], [1, 1, 0]].iter().map(|r| IntVec::from_i64s(r)).collect();
        assert_eq!(u23.exponents(), &expect[..]);
        let u12 = basis_monomial_ideal(&uniform_matroid(2, 1).unwrap());
        assert_eq!(u12.exponents(), &[IntVec::from_i64s(&[0, 1]), IntVec::from_i64s(&[1, 0])]);
    }

    #[test]
    fn contraction_examples() {
        let c = contract_element(&uniform_matroid(3, 2).unwrap(), 1).unwrap();
        assert_eq!(c.bases(), &[vec![2], vec![3]]);
        let k4 = graphic_matroid(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let c = contract_element(&k4, 1).unwrap();
        assert_eq!(c.rank(), 2);
        assert_eq!(c.bases().len(), k4.bases().iter().filter(|b| b.contains(&1)).count());
        assert_eq!(contract_element(&uniform_matroid(2, 1).unwrap(), 3), Err(Error::ElementInNoBasis(3)));
    }

    #[test]
    fn ideal_validation() {
        assert_eq!(MonomialIdeal::new(2, vec![]), Err(Error::EmptyInput));
        assert!(MonomialIdeal::from_i64_rows(2, &[&[0, 0]]).is_err());
        assert!(MonomialIdeal::from_i64_rows(2, &[&[1, 0], &[1, 0]]).is_err());
        assert!(MonomialIdeal::from_i64_rows(2, &[&[1, -1]]).is_err());
        let i = MonomialIdeal::from_i64_rows(2, &[&[0, 2], &[2, 0]]).unwrap();
        assert_eq!(i.exponents()[0], IntVec::from_i64s(&[0, 2]));
        assert_eq!(i.common_degree(), Some(BigInt::from(2)));
    }

    #[test]
    fn corpus_properties() {
        for m in enumerate_all_matroids(4).unwrap() {
            // constructors re-validate
            assert_eq!(check_basis_exchange(m.ground_set_size(), m.bases()).unwrap(), m);
            for b1 in m.bases() {
                for b2 in m.bases() {
                    for &x in b1.iter().filter(|x| !b2.contains(x)) {
                        symmetric_exchange_witness(&m, b1, b2, x).unwrap();
                    }
                }
            }
            for j in 1..=m.ground_set_size() {
                let through = m.bases().iter().filter(|b| b.contains(&j)).count();
                match contract_element(&m, j) {
                    Ok(c) => {
                        assert_eq!(c.rank(), m.rank() - 1);
                        assert_eq!(c.bases().len(), through);
                    }
                    Err(Error::ElementInNoBasis(_)) => assert_eq!(through, 0),
                    Err(Error::BadRank { .. }) => assert_eq!(m.rank(), 1),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    proptest! {
        #[test]
        fn enumeration_closed_under_relabeling(n in 2usize..=4, d_off in 0usize..4, perm in Just((1..=4).collect::<Vec<usize>>()).prop_shuffle()) {
            let d = 1 + d_off % n;
            // restrict the permutation of 1..=4 to 1..=n
            let mut p: Vec<usize> = perm.into_iter().filter(|&x| x <= n).collect();
            p.truncate(n);
            let all = enumerate_matroids(n, d).unwrap();
            let set: HashSet<Vec<Vec<usize>>> = all.iter().map(|m| m.bases().to_vec()).collect();
            for m in &all {
                let r = m.relabel(&p).unwrap();
                prop_assert!(set.contains(r.bases()));
            }
        }
    }
}
