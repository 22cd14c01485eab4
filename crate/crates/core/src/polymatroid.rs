//! Bases of discrete polymatroids.
//!
//! Coordinate indices in this module's public API are 1-indexed, matching
//! variable names `x_1..x_n`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, PolymatroidViolation, Result};
use crate::exactlat::IntVec;
use crate::matroid::{Matroid, MonomialIdeal};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolymatroidBases {
    n: usize,
    d: BigInt,
    vectors: Vec<IntVec>,
}

impl PolymatroidBases {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The common modulus `|a|`.
    pub fn modulus(&self) -> &BigInt {
        &self.d
    }

    pub fn vectors(&self) -> &[IntVec] {
        &self.vectors
    }

    fn contains(&self, v: &IntVec) -> bool {
        self.vectors.binary_search(v).is_ok()
    }

    /// The polymatroidal ideal. Fails for the modulus-0 set `{0}`.
    pub fn to_ideal(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::new(self.n, self.vectors.clone())
    }
}

fn shifted(a: &IntVec, minus: usize, plus: usize) -> IntVec {
    let mut e = a.entries().to_vec();
    e[minus] -= 1;
    e[plus] += 1;
    IntVec::new(e).expect("non-empty")
}

/// Validates `vectors` as the bases of a discrete polymatroid.
pub fn check_polymatroid_bases(n: usize, vectors: &[IntVec]) -> Result<PolymatroidBases> {
    if vectors.is_empty() {
        return Err(Error::EmptyInput);
    }
    for v in vectors {
        if v.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
        }
        if v.iter().any(Signed::is_negative) {
            return Err(Error::InvalidInput(format!("{v} has a negative entry")));
        }
    }
    let vectors: Vec<IntVec> = vectors.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let d = vectors[0].modulus();
    if let Some(other) = vectors.iter().find(|v| v.modulus() != d) {
        return Err(Error::UnequalModuli { first: vectors[0].clone(), second: other.clone() });
    }
    let out = PolymatroidBases { n, d, vectors };
    if let Some(violation) = first_violation(&out) {
        return Err(Error::PolymatroidExchangeFailure(violation));
    }
    Ok(out)
}

fn first_violation(f: &PolymatroidBases) -> Option<PolymatroidViolation> {
    // smallest coordinate first, then lexicographic (a, c)
    for i in 0..f.n {
        for a in &f.vectors {
            for c in f.vectors.iter().filter(|c| a[i] > c[i]) {
                let ok = (0..f.n).any(|j| a[j] < c[j] && f.contains(&shifted(a, i, j)));
                if !ok {
                    return Some(PolymatroidViolation { a: a.clone(), c: c.clone(), coordinate: i + 1 });
                }
            }
        }
    }
    None
}

/// `{a - e_i : a_i >= 1}`, deduplicated and re-validated. A validation failure
/// is a counterexample to the closure claim and is reported as
/// [`Error::IntegrityError`].
pub fn divide_by_variable(f: &PolymatroidBases, i: usize) -> Result<PolymatroidBases> {
    if i == 0 || i > f.n {
        return Err(Error::InvalidInput(format!("variable {i} outside 1..={}", f.n)));
    }
    let quotient: Vec<IntVec> = f
        .vectors
        .iter()
        .filter(|a| a[i - 1].is_positive())
        .map(|a| {
            let mut e = a.entries().to_vec();
            e[i - 1] -= 1;
            IntVec::new(e).expect("non-empty")
        })
        .collect();
    if quotient.is_empty() {
        return Err(Error::VariableAbsent(i));
    }
    check_polymatroid_bases(f.n, &quotient)
        .map_err(|e| Error::IntegrityError(format!("dividing by x_{i} left a non-polymatroidal set: {e}")))
}

/// Maximum modulus among `g` and the members attaining it, in input order.
pub fn top_degree_subset(g: &[IntVec]) -> Result<(BigInt, Vec<IntVec>)> {
    let d = g.iter().map(IntVec::modulus).max().ok_or(Error::EmptyInput)?;
    let top = g.iter().filter(|u| u.modulus() == d).cloned().collect();
    Ok((d, top))
}

/// Triple violating the symmetric exchange; coordinates are 1-indexed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricExchangeViolation {
    pub a: IntVec,
    pub c: IntVec,
    pub coordinate: usize,
}

/// Checks that for all `a, c` and `i` with `a_i > c_i` some `j` with `a_j < c_j`
/// puts both `a - e_i + e_j` and `c + e_i - e_j` in the set. Returns the first
/// violation, if any.
pub fn symmetric_exchange_violation(f: &PolymatroidBases) -> Option<SymmetricExchangeViolation> {
    // smallest coordinate first, then lexicographic (a, c)
    for i in 0..f.n {
        for a in &f.vectors {
            for c in f.vectors.iter().filter(|c| a[i] > c[i]) {
                let ok =
                    (0..f.n).any(|j| a[j] < c[j] && f.contains(&shifted(a, i, j)) && f.contains(&shifted(c, j, i)));
                if !ok {
                    return Some(SymmetricExchangeViolation { a: a.clone(), c: c.clone(), coordinate: i + 1 });
                }
            }
        }
    }
    None
}

/// Basis indicator vectors of a matroid, as polymatroid bases.
pub fn from_matroid(m: &Matroid) -> PolymatroidBases {
    let ideal = crate::matroid::basis_monomial_ideal(m);
    check_polymatroid_bases(m.ground_set_size(), ideal.exponents()).expect("matroid basis indicators are polymatroidal")
}

/// All vectors of modulus `d` in `N^n`.
pub fn veronese(n: usize, d: u32) -> Result<PolymatroidBases> {
    if n == 0 {
        return Err(Error::InvalidInput("ambient dimension must be positive".into()));
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fill_compositions(&mut cur, 0, i64::from(d), &mut out);
    check_polymatroid_bases(n, &out)
}

fn fill_compositions(cur: &mut Vec<i64>, pos: usize, left: i64, out: &mut Vec<IntVec>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(IntVec::from_i64s(cur));
        return;
    }
    for x in 0..=left {
        cur[pos] = x;
        fill_compositions(cur, pos + 1, left - x, out);
    }
}

/// Sumset `{a + c : a in F, c in G}`; products of polymatroidal ideals are polymatroidal.
pub fn product(f: &PolymatroidBases, g: &PolymatroidBases) -> Result<PolymatroidBases> {
    if f.n != g.n {
        return Err(Error::DimensionMismatch { expected: f.n, found: g.n });
    }
    let sums: Vec<IntVec> = f.vectors.iter().cartesian_product(&g.vectors).map(|(a, c)| a + c).collect();
    check_polymatroid_bases(f.n, &sums)
}

/// Exponents of the squarefree-variable ideal `(x_i : i in support)`, as a rank-1 polymatroid.
pub fn variable_set(n: usize, support: &[usize]) -> Result<PolymatroidBases> {
    let vs: Vec<IntVec> = support
        .iter()
        .map(|&i| {
            if i == 0 || i > n {
                return Err(Error::InvalidInput(format!("variable {i} outside 1..={n}")));
            }
            Ok(IntVec::unit(n, i - 1))
        })
        .collect::<Result<_>>()?;
    check_polymatroid_bases(n, &vs)
}

/// Every polymatroid of modulus `d` on `n` coordinates, found by filtering
/// all nonempty families of modulus-`d` vectors. Capped at 16 candidate vectors.
pub fn enumerate_polymatroids(n: usize, d: u32) -> Result<Vec<PolymatroidBases>> {
    let all = veronese(n, d)?.vectors;
    let k = all.len();
    if k > 16 {
        return Err(Error::CapExceeded { what: "polymatroid candidate vectors", needed: k as u128, limit: 16 });
    }
    let mut out = Vec::new();
    for family in 1u32..1 << k {
        let vs: Vec<IntVec> = (0..k).filter(|&i| family >> i & 1 == 1).map(|i| all[i].clone()).collect();
        if let Ok(p) = check_polymatroid_bases(n, &vs) {
            out.push(p);
        }
    }
    out.sort_by(|a, b| a.vectors.cmp(&b.vectors));
    Ok(out)
}

/// Variables (1-indexed) that occur in at least one member.
pub fn usable_variables(f: &PolymatroidBases) -> Vec<usize> {
    (1..=f.n).filter(|&i| f.vectors.iter().any(|a| !a[i - 1].is_zero())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{enumerate_all_matroids, uniform_matroid};

    fn vs(rows: &[&[i64]]) -> Vec<IntVec> {
        rows.iter().map(|r| IntVec::from_i64s(r)).collect()
    }

    #[test]
    fn check_examples() {
        let f = check_polymatroid_bases(2, &vs(&[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        assert_eq!(f.modulus(), &BigInt::from(2));

        let err = check_polymatroid_bases(2, &vs(&[&[2, 0], &[0, 2]])).unwrap_err();
        assert_eq!(
            err,
            Error::PolymatroidExchangeFailure(PolymatroidViolation {
                a: IntVec::from_i64s(&[2, 0]),
                c: IntVec::from_i64s(&[0, 2]),
                coordinate: 1,
            })
        );

        assert_eq!(check_polymatroid_bases(2, &[]), Err(Error::EmptyInput));
        assert!(matches!(check_polymatroid_bases(2, &vs(&[&[1, 0], &[1, 1]])), Err(Error::UnequalModuli { .. })));
    }

    #[test]
    fn matroid_indicators_are_polymatroidal() {
        for m in enumerate_all_matroids(4).unwrap() {
            let ideal = crate::matroid::basis_monomial_ideal(&m);
            check_polymatroid_bases(m.ground_set_size(), ideal.exponents()).unwrap();
        }
    }

    #[test]
    fn divide_examples() {
        let f = check_polymatroid_bases(2, &vs(&[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        assert_eq!(divide_by_variable(&f, 1).unwrap().vectors(), &vs(&[&[0, 1], &[1, 0]])[..]);

        let u23 = from_matroid(&uniform_matroid(3, 2).unwrap());
        assert_eq!(divide_by_variable(&u23, 1).unwrap().vectors(), &vs(&[&[0, 0, 1], &[0, 1, 0]])[..]);

        let single = check_polymatroid_bases(2, &vs(&[&[0, 2]])).unwrap();
        assert_eq!(divide_by_variable(&single, 1), Err(Error::VariableAbsent(1)));
    }

    #[test]
    fn top_degree_examples() {
        let (d, f) = top_degree_subset(&vs(&[&[1, 0], &[1, 1], &[0, 2]])).unwrap();
        assert_eq!(d, BigInt::from(2));
        assert_eq!(f, vs(&[&[1, 1], &[0, 2]]));
        let (d, f) = top_degree_subset(&vs(&[&[1, 1]])).unwrap();
        assert_eq!((d, f), (BigInt::from(2), vs(&[&[1, 1]])));
        let (d, f) = top_degree_subset(&vs(&[&[3, 0], &[0, 3], &[1, 1]])).unwrap();
        assert_eq!((d, f), (BigInt::from(3), vs(&[&[3, 0], &[0, 3]])));
        assert_eq!(top_degree_subset(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn corpus_closure_and_symmetric_exchange() {
        let mut corpus = Vec::new();
        for (n, d) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
            corpus.extend(enumerate_polymatroids(n, d).unwrap());
        }
        assert!(corpus.len() > 20);
        for f in &corpus {
            assert_eq!(symmetric_exchange_violation(f), None, "{:?}", f.vectors());
            for i in usable_variables(f) {
                divide_by_variable(f, i).unwrap();
            }
        }
    }

    #[test]
    fn products_and_veronese() {
        let v = veronese(3, 2).unwrap();
        assert_eq!(v.vectors().len(), 6);
        let t = product(&variable_set(3, &[1, 2]).unwrap(), &variable_set(3, &[2, 3]).unwrap()).unwrap();
        assert_eq!(t.vectors().len(), 4);
    }
}
