//! Exact integer vectors and matrices.
//!
//! Everything here is arbitrary precision. Elimination is fraction-free
//! (Bareiss) where only ranks or determinants are needed, and goes through
//! `BigRational` where an explicit inverse or kernel basis is wanted.

use std::fmt;
use std::ops::{Add, Index, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer vector of positive dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec(Vec<BigInt>);

impl IntVec {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(IntVec(entries))
    }

    /// Panics on an empty slice.
    pub fn from_i64s(entries: &[i64]) -> Self {
        assert!(!entries.is_empty(), "IntVec needs at least one entry");
        IntVec(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "IntVec needs at least one entry");
        IntVec(vec![BigInt::zero(); dim])
    }

    /// The unit vector with a one at 0-based position `i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigInt> {
        self.0.iter()
    }

    pub fn last(&self) -> &BigInt {
        self.0.last().expect("non-empty")
    }

    /// The vector with the last coordinate dropped. Panics when `dim() == 1`.
    pub fn head(&self) -> IntVec {
        IntVec::new(self.0[..self.0.len() - 1].to_vec()).expect("dim >= 2")
    }

    /// `(self, t)`.
    pub fn lift(&self, t: BigInt) -> IntVec {
        let mut e = self.0.clone();
        e.push(t);
        IntVec(e)
    }

    pub fn dot(&self, other: &IntVec) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, c: &BigInt) -> IntVec {
        IntVec(self.0.iter().map(|x| x * c).collect())
    }

    pub fn neg(&self) -> IntVec {
        IntVec(self.0.iter().map(|x| -x).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    /// Coordinate sum `|a|`.
    pub fn modulus(&self) -> BigInt {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &IntVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    /// gcd of the nonzero entries, `None` for the zero vector.
    pub fn content(&self) -> Option<BigInt> {
        let g = self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            None
        } else {
            Some(g)
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_some_and(|g| g.is_one())
    }
}

impl Index<usize> for IntVec {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl Add for &IntVec {
    type Output = IntVec;
    fn add(self, rhs: &IntVec) -> IntVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVec {
    type Output = IntVec;
    fn sub(self, rhs: &IntVec) -> IntVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// Divides `v` by the gcd of its nonzero entries, keeping the sign.
pub fn primitive(v: &IntVec) -> Result<IntVec> {
    let g = v.content().ok_or(Error::ZeroVector)?;
    Ok(IntVec(v.0.iter().map(|x| x / &g).collect()))
}

/// Row-major integer matrix. All rows share one dimension; zero rows allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    rows: Vec<IntVec>,
    cols: usize,
}

impl IntMat {
    pub fn new(rows: Vec<IntVec>) -> Result<Self> {
        let cols = rows.first().map_or(0, IntVec::dim);
        if let Some(bad) = rows.iter().find(|r| r.dim() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: bad.dim() });
        }
        Ok(IntMat { rows, cols })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| IntVec::from_i64s(r)).collect())
    }

    pub fn identity(n: usize) -> Self {
        IntMat { rows: (0..n).map(|i| IntVec::unit(n, i)).collect(), cols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[IntVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> IntMat {
        if self.rows.is_empty() {
            return IntMat { rows: Vec::new(), cols: 0 };
        }
        let rows = (0..self.cols).map(|j| IntVec(self.rows.iter().map(|r| r[j].clone()).collect())).collect();
        IntMat { rows, cols: self.rows.len() }
    }

    /// Submatrix on the given (0-based) row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMat {
        let sel = rows.iter().map(|&i| IntVec(cols.iter().map(|&j| self.rows[i][j].clone()).collect())).collect();
        IntMat { rows: sel, cols: cols.len() }
    }

    pub fn permute_rows(&self, perm: &[usize]) -> IntMat {
        IntMat { rows: perm.iter().map(|&i| self.rows[i].clone()).collect(), cols: self.cols }
    }

    pub fn permute_cols(&self, perm: &[usize]) -> IntMat {
        self.select(&(0..self.nrows()).collect::<Vec<_>>(), perm)
    }

    fn to_grid(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.0.clone()).collect()
    }
}

/// Rank over the rationals via fraction-free elimination.
pub fn rank(m: &IntMat) -> usize {
    bareiss(m.to_grid(), m.ncols()).0
}

/// Determinant of a square matrix (Bareiss). The empty matrix has determinant 1.
pub fn determinant(m: &IntMat) -> BigInt {
    assert_eq!(m.nrows(), m.ncols(), "determinant of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return BigInt::one();
    }
    let (r, det) = bareiss(m.to_grid(), n);
    if r < n {
        BigInt::zero()
    } else {
        det
    }
}

// Returns the rank and, for a full-rank square input, the signed determinant.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut sign = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = if sign < 0 { -prev } else { prev };
    (r, det)
}

fn rational_grid(m: &IntMat) -> Vec<Vec<BigRational>> {
    m.rows.iter().map(|r| r.0.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Reduced row echelon form over the rationals; returns the pivot columns.
fn rref(a: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Pivot columns of the row echelon form, i.e. a coordinate set on which
/// projection is injective for the row space.
pub fn pivot_columns(m: &IntMat) -> Vec<usize> {
    rref(&mut rational_grid(m), m.ncols())
}

/// Primitive integer basis of `{x : m x = 0}`.
pub fn nullspace(m: &IntMat) -> Vec<IntVec> {
    let cols = m.ncols();
    let mut grid = rational_grid(m);
    let pivots = rref(&mut grid, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -grid[row][f].clone();
            }
            let den = x.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            let ints = x.iter().map(|q| (q * &den).to_integer()).collect();
            primitive(&IntVec(ints)).expect("kernel vector is nonzero")
        })
        .collect()
}

/// For a nonsingular square `m`, returns `(adj, det)` with `m * adj = det * I`.
pub fn adjugate(m: &IntMat) -> Option<(IntMat, BigInt)> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "adjugate of a non-square matrix");
    let det = determinant(m);
    if det.is_zero() {
        return None;
    }
    let mut aug: Vec<Vec<BigRational>> = rational_grid(m)
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    rref(&mut aug, 2 * n);
    let detq = BigRational::from_integer(det.clone());
    let rows = aug
        .iter()
        .map(|row| {
            IntVec(
                row[n..]
                    .iter()
                    .map(|q| {
                        let v = q * &detq;
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect(),
            )
        })
        .collect();
    Some((IntMat { rows, cols: n }, det))
}

/// Every square minor is 0 or ±1. Exhaustive, with early exit.
pub fn is_totally_unimodular(m: &IntMat) -> bool {
    let unit = |x: &BigInt| x.is_zero() || x.abs().is_one();
    if !m.rows.iter().all(|r| r.iter().all(unit)) {
        return false;
    }
    let (r, c) = (m.nrows(), m.ncols());
    for k in 2..=r.min(c) {
        for rows in (0..r).combinations(k) {
            for cols in (0..c).combinations(k) {
                if !unit(&determinant(&m.select(&rows, &cols))) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: &[i64]) -> IntVec {
        IntVec::from_i64s(x)
    }

    fn laplace_det(m: &[Vec<i64>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] as i128 * laplace_det(&minor)
            })
            .sum()
    }

    // rank = largest k with a nonzero k x k minor
    fn minor_rank(m: &[Vec<i64>]) -> usize {
        let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
        (1..=r.min(c))
            .rev()
            .find(|&k| {
                (0..r).combinations(k).any(|rows| {
                    (0..c).combinations(k).any(|cols| {
                        let sub: Vec<Vec<i64>> =
                            rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                        laplace_det(&sub) != 0
                    })
                })
            })
            .unwrap_or(0)
    }

    fn mat(rows: &[Vec<i64>]) -> IntMat {
        IntMat::new(rows.iter().map(|r| v(r)).collect()).unwrap()
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&v(&[2, 4, -6])).unwrap(), v(&[1, 2, -3]));
        assert_eq!(primitive(&v(&[1, 0, 1])).unwrap(), v(&[1, 0, 1]));
        assert_eq!(primitive(&v(&[0, 0, 5])).unwrap(), v(&[0, 0, 1]));
        assert_eq!(primitive(&v(&[-4, -2])).unwrap(), v(&[-2, -1]));
        assert_eq!(primitive(&v(&[0, 0])), Err(Error::ZeroVector));
        assert_eq!(IntVec::new(vec![]), Err(Error::EmptyVector));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&mat(&[vec![1, 0], vec![0, 1]])), 2);
        assert_eq!(rank(&mat(&[vec![1, 1], vec![2, 2]])), 1);
        assert_eq!(rank(&mat(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]])), 2);
        assert_eq!(rank(&IntMat::new(vec![]).unwrap()), 0);
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = IntMat::new(vec![v(&[1, 2]), v(&[1])]).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 1 });
    }

    #[test]
    fn tu_examples() {
        assert!(is_totally_unimodular(&IntMat::identity(3)));
        assert!(!is_totally_unimodular(&mat(&[vec![2]])));
        // columns e1, e2, e1+e3, e2+e3
        let cols = mat(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]);
        assert!(is_totally_unimodular(&cols.transpose()));
        // odd cycle incidence matrix has determinant 2
        let c3 = mat(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert!(!is_totally_unimodular(&c3));
    }

    #[test]
    fn adjugate_and_nullspace() {
        let m = mat(&[vec![2, 1], vec![1, 1]]);
        let (adj, det) = adjugate(&m).unwrap();
        assert_eq!(det, BigInt::from(1));
        assert_eq!(adj, mat(&[vec![1, -1], vec![-1, 2]]));
        assert!(adjugate(&mat(&[vec![1, 2], vec![2, 4]])).is_none());

        let k = nullspace(&mat(&[vec![1, 1, 1]]));
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(x.dot(&v(&[1, 1, 1])).is_zero());
        }
        assert_eq!(pivot_columns(&mat(&[vec![0, 2, 4], vec![0, 1, 2]])), vec![1]);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=6, 1usize..=6)
            .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r))
    }

    proptest! {
        #[test]
        fn primitive_is_idempotent(x in proptest::collection::vec(-50i64..=50, 1..6)) {
            let x = v(&x);
            prop_assume!(!x.is_zero());
            let p = primitive(&x).unwrap();
            prop_assert!(p.is_primitive());
            prop_assert_eq!(primitive(&p).unwrap(), p);
        }

        #[test]
        fn primitive_ignores_positive_scaling(x in proptest::collection::vec(-50i64..=50, 1..6), c in 1i64..20) {
            let x = v(&x);
            prop_assume!(!x.is_zero());
            prop_assert_eq!(primitive(&x.scale(&BigInt::from(c))).unwrap(), primitive(&x).unwrap());
        }

        #[test]
        fn rank_matches_minor_expansion(m in small_matrix()) {
            prop_assert_eq!(rank(&mat(&m)), minor_rank(&m));
        }

        #[test]
        fn determinant_matches_laplace(m in (1usize..=5).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(-4i64..=4, n), n))) {
            prop_assert_eq!(determinant(&mat(&m)), BigInt::from(laplace_det(&m)));
        }

        #[test]
        fn tu_invariant_under_permutation_and_transpose(
            m in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-1i64..=1, c), r)),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let m = mat(&m);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut rp: Vec<usize> = (0..m.nrows()).collect();
            let mut cp: Vec<usize> = (0..m.ncols()).collect();
            rp.shuffle(&mut rng);
            cp.shuffle(&mut rng);
            let tu = is_totally_unimodular(&m);
            prop_assert_eq!(tu, is_totally_unimodular(&m.permute_rows(&rp).permute_cols(&cp)));
            prop_assert_eq!(tu, is_totally_unimodular(&m.transpose()));
        }
    }
}
