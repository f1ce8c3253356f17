//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Matrices act on
//! row vectors: a lattice is the set of integer combinations of the rows of its
//! basis, and `solve_integral` looks for `x` with `x · a = b`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::json;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error("lattice does not contain {0}·Z^n")]
    MissingScaledIdentity(BigInt),
}

/// A dense integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Malformed(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Malformed(format!(
                    "row {} has length {}, expected {}",
                    i,
                    r.len(),
                    cols
                )));
            }
            entries.extend(r);
        }
        Ok(IntMatrix { rows: n, cols, entries })
    }

    /// Convenience constructor for small literal matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(cols, rows).expect("ragged literal matrix")
    }

    pub fn diagonal(values: &[BigInt]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if x.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                x.len(),
                self.rows
            )));
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += xi * &self[(i, j)];
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        Ok(sign * &m[n - 1][n - 1])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * f;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * f;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Replaces rows (i, k) by (x·ri + y·rk, -q·ri + p·rk), a unimodular 2x2 step.
    fn combine_rows(&mut self, i: usize, k: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt) {
        for j in 0..self.cols {
            let a = self[(i, j)].clone();
            let b = self[(k, j)].clone();
            self[(i, j)] = x * &a + y * &b;
            self[(k, j)] = p * &b - q * &a;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            self.row_vecs().into_iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "IntMatrix{:?}", rows)
    }
}

#[derive(Serialize, Deserialize)]
struct IntMatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<json::Int>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        IntMatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .row_vecs()
                .into_iter()
                .map(|r| r.into_iter().map(json::Int::string).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = IntMatrixRepr::deserialize(d)?;
        if r.entries.len() != r.rows {
            return Err(serde::de::Error::custom(format!(
                "declared {} rows but {} given",
                r.rows,
                r.entries.len()
            )));
        }
        let rows = r.entries.into_iter().map(|row| row.into_iter().map(|x| x.0).collect()).collect();
        IntMatrix::from_rows(r.cols, rows).map_err(serde::de::Error::custom)
    }
}

/// Extended gcd: returns (g, x, y) with x·a + y·b = g ≥ 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(h, u)` with `u` unimodular and `u · a = h`. Nonzero rows of `h`
/// come first, pivot columns strictly increase, pivots are positive and every
/// entry above a pivot lies in `[0, pivot)`.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        for i in r + 1..a.rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            let (g, x, y) = ext_gcd(&h[(r, c)], &h[(i, c)]);
            let p = &h[(r, c)] / &g;
            let q = &h[(i, c)] / &g;
            h.combine_rows(r, i, &x, &y, &p, &q);
            u.combine_rows(r, i, &x, &y, &p, &q);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let f = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &f);
            u.add_row_multiple(i, r, &f);
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form: `(d, u, v)` with `u · a · v = d`, `u` and `v` unimodular,
/// `d` diagonal with nonnegative entries and `d₁ | d₂ | …`.
pub fn snf(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let e = &d[(i, j)];
                    if e.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| e.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (d, u, v);
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..m {
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (d, u, v)
}

/// Inverse of a unimodular matrix, or `None` when `|det| ≠ 1`.
pub fn unimodular_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    if a.rows != a.cols {
        return None;
    }
    let (h, u) = hnf(a);
    (h == IntMatrix::identity(a.rows)).then_some(u)
}

/// Finds an integer row vector `x` with `x · a = b`, if one exists.
pub fn solve_integral(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if b.len() != a.cols {
        return Err(LinalgError::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} columns",
            b.len(),
            a.cols
        )));
    }
    let (h, u) = hnf(a);
    let mut rest = b.to_vec();
    let mut y = vec![BigInt::zero(); a.rows];
    let mut c = 0;
    for (r, yr) in y.iter_mut().enumerate() {
        while c < a.cols && h[(r, c)].is_zero() {
            if !rest[c].is_zero() {
                return Ok(None);
            }
            c += 1;
        }
        if c == a.cols {
            break;
        }
        let (q, rem) = rest[c].div_rem(&h[(r, c)]);
        if !rem.is_zero() {
            return Ok(None);
        }
        for (j, slot) in rest.iter_mut().enumerate().skip(c) {
            *slot -= &q * &h[(r, j)];
        }
        *yr = q;
        c += 1;
    }
    if rest.iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    Ok(Some(u.left_mul_vec(&y)?))
}

/// A sublattice of Z^n, stored as the nonzero rows of its row HNF.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct Lattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl TryFrom<LatticeRepr> for Lattice {
    type Error = LinalgError;
    fn try_from(r: LatticeRepr) -> Result<Self, LinalgError> {
        Lattice::from_generators(r.ambient_rank, &r.basis)
    }
}

impl From<Lattice> for LatticeRepr {
    fn from(l: Lattice) -> Self {
        LatticeRepr { ambient_rank: l.ambient_rank, basis: l.basis }
    }
}

impl Lattice {
    /// The lattice generated by the rows of `gens`.
    pub fn from_generators(ambient_rank: usize, gens: &IntMatrix) -> Result<Self, LinalgError> {
        if gens.cols != ambient_rank {
            return Err(LinalgError::DimensionMismatch(format!(
                "generators have {} columns, ambient rank is {}",
                gens.cols, ambient_rank
            )));
        }
        let (h, _) = hnf(gens);
        let rows: Vec<Vec<BigInt>> =
            h.row_vecs().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let basis = IntMatrix::from_rows(ambient_rank, rows)?;
        Ok(Lattice { ambient_rank, basis })
    }

    pub fn from_vectors(ambient_rank: usize, gens: &[Vec<BigInt>]) -> Result<Self, LinalgError> {
        let m = IntMatrix::from_rows(ambient_rank, gens.to_vec())?;
        Self::from_generators(ambient_rank, &m)
    }

    pub fn full(n: usize) -> Self {
        Lattice { ambient_rank: n, basis: IntMatrix::identity(n) }
    }

    pub fn zero(n: usize) -> Self {
        Lattice { ambient_rank: n, basis: IntMatrix::zeros(0, n) }
    }

    /// `m · Z^n`
    pub fn scaled_full(n: usize, m: &BigInt) -> Self {
        if m.is_zero() {
            return Self::zero(n);
        }
        Lattice { ambient_rank: n, basis: IntMatrix::diagonal(&vec![m.abs(); n]) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.ambient_rank && matches!(solve_integral(&self.basis, v), Ok(Some(_)))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.ambient_rank == self.ambient_rank
            && (0..other.rank()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice, LinalgError> {
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Self::from_vectors(self.ambient_rank, &rows)
    }

    /// Index in Z^n, or `None` when the lattice is not of full rank.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() != self.ambient_rank {
            return None;
        }
        Some((0..self.rank()).map(|i| self.basis[(i, i)].clone()).product())
    }

    pub fn is_full(&self) -> bool {
        self.index().is_some_and(|d| d.is_one())
    }

    /// `{v : n·v ∈ self for some n ≥ 1}`.
    pub fn saturate(&self) -> Lattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let (d, _, v) = snf(&self.basis);
        let rank = (0..d.rows.min(d.cols)).filter(|&i| !d[(i, i)].is_zero()).count();
        let vinv = unimodular_inverse(&v).expect("snf column transform is unimodular");
        let rows: Vec<Vec<BigInt>> = vinv.row_vecs().into_iter().take(rank).collect();
        Self::from_vectors(self.ambient_rank, &rows).expect("dimensions agree")
    }

    /// Generators of `{k : k·v ≡ 0 (mod m) for all v in self}`.
    ///
    /// Requires `m·Z^n ⊆ self`, which makes the result an integer lattice
    /// containing `m·Z^n` as well.
    pub fn dual_mod(&self, m: &BigInt) -> Result<Lattice, LinalgError> {
        let n = self.ambient_rank;
        if m.is_zero() || !self.contains_lattice(&Lattice::scaled_full(n, m)) {
            return Err(LinalgError::MissingScaledIdentity(m.clone()));
        }
        // self has full rank, so its HNF basis B is upper triangular and
        // invertible; the answer is spanned by the columns of m·B⁻¹.
        let b: Vec<Vec<BigRational>> = self
            .basis
            .row_vecs()
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        let inv = rational::inverse(&b).expect("full-rank basis");
        let mut rows = Vec::with_capacity(n);
        for j in 0..n {
            let mut col = Vec::with_capacity(n);
            for row in inv.iter() {
                let e = &row[j] * BigRational::from_integer(m.clone());
                if !e.is_integer() {
                    return Err(LinalgError::MissingScaledIdentity(m.clone()));
                }
                col.push(e.to_integer());
            }
            rows.push(col);
        }
        Self::from_vectors(n, &rows)
    }
}

/// An exact rational vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RatVector(pub Vec<BigRational>);

impl RatVector {
    pub fn from_integers(v: &[BigInt]) -> Self {
        RatVector(v.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|q| q.is_integer())
    }

    /// Least common multiple of the denominators (1 for the empty vector).
    pub fn common_denominator(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }

    /// Multiplies through by the common denominator.
    pub fn scale_to_integers(&self) -> (BigInt, Vec<BigInt>) {
        let d = self.common_denominator();
        let v = self.0.iter().map(|q| (q * BigRational::from_integer(d.clone())).to_integer()).collect();
        (d, v)
    }
}

/// Gaussian elimination over the rationals.
pub mod rational {
    use super::*;

    /// Reduced row echelon form of the row space.
    ///
    /// Returns the nonzero rows and the pivot column of each.
    pub fn rref(rows: &[Vec<BigRational>], cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
        let mut m: Vec<Vec<BigRational>> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let lead = m[r][c].clone();
            for x in m[r].iter_mut() {
                *x = &*x / &lead;
            }
            for i in 0..m.len() {
                if i == r || m[i][c].is_zero() {
                    continue;
                }
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        (m, pivots)
    }

    pub fn rank(rows: &[Vec<BigRational>], cols: usize) -> usize {
        rref(rows, cols).1.len()
    }

    /// Solves `x · rows = target` when the rows are linearly independent.
    pub fn solve_independent(
        rows: &[Vec<BigRational>],
        target: &[BigRational],
    ) -> Option<Vec<BigRational>> {
        let k = rows.len();
        let cols = target.len();
        // eliminate on the augmented transpose [rows^T | target]
        let aug: Vec<Vec<BigRational>> = (0..cols)
            .map(|j| {
                let mut r: Vec<BigRational> = rows.iter().map(|row| row[j].clone()).collect();
                r.push(target[j].clone());
                r
            })
            .collect();
        let (red, pivots) = rref(&aug, k + 1);
        if pivots.len() != k || pivots.contains(&k) {
            return None;
        }
        Some(red.iter().map(|r| r[k].clone()).collect())
    }

    pub fn inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
        let n = m.len();
        let aug: Vec<Vec<BigRational>> = m
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        let (red, pivots) = rref(&aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn vecb(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| bi(x)).collect()
    }

    #[test]
    fn hnf_small_example() {
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(u.mul(&a).unwrap(), h);
        assert_eq!(u.det().unwrap().abs(), bi(1));
    }

    #[test]
    fn hnf_identity_and_zero() {
        let i = IntMatrix::identity(3);
        let (h, u) = hnf(&i);
        assert_eq!(h, i);
        assert_eq!(u, i);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(hnf(&z).0, z);
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let a = IntMatrix::from_i64(&[&[1, 7, 3], &[0, 5, -9], &[0, 0, 4]]);
        let (h, _) = hnf(&a);
        for (r, c) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let piv = &h[(c, c)];
            assert!(!h[(r, c)].is_negative() && &h[(r, c)] < piv, "{:?}", h);
        }
    }

    #[test]
    fn snf_examples() {
        let (d, u, v) = snf(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(d, IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(u.mul(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]])).unwrap().mul(&v).unwrap(), d);

        let (d, _, _) = snf(&IntMatrix::from_i64(&[&[6, 0], &[0, 10]]));
        assert_eq!(d, IntMatrix::from_i64(&[&[2, 0], &[0, 30]]));

        let (d, _, _) = snf(&IntMatrix::from_i64(&[&[0]]));
        assert_eq!(d, IntMatrix::from_i64(&[&[0]]));
    }

    #[test]
    fn solve_integral_examples() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve_integral(&a, &vecb(&[4, 9])).unwrap(), Some(vecb(&[2, 3])));
        assert_eq!(solve_integral(&IntMatrix::from_i64(&[&[2]]), &vecb(&[3])).unwrap(), None);
        let a = IntMatrix::from_i64(&[&[1, 3], &[0, 4]]);
        assert_eq!(solve_integral(&a, &vecb(&[1, 7])).unwrap(), Some(vecb(&[1, 1])));
        assert!(matches!(
            solve_integral(&a, &vecb(&[1])),
            Err(LinalgError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn saturate_examples() {
        let l = Lattice::from_vectors(2, &[vecb(&[2, 0]), vecb(&[0, 3])]).unwrap();
        assert_eq!(l.saturate(), Lattice::full(2));
        assert_eq!(Lattice::full(3).saturate(), Lattice::full(3));
        let l = Lattice::from_vectors(2, &[vecb(&[2, 4])]).unwrap();
        assert_eq!(l.saturate(), Lattice::from_vectors(2, &[vecb(&[1, 2])]).unwrap());
    }

    #[test]
    fn dual_mod_examples() {
        // 2Z inside Z, modulus 4
        let l = Lattice::from_vectors(1, &[vecb(&[2]), vecb(&[4])]).unwrap();
        assert_eq!(l.dual_mod(&bi(4)).unwrap(), Lattice::from_vectors(1, &[vecb(&[2])]).unwrap());
        // diagonal of (Z/6)^2
        let l = Lattice::from_vectors(2, &[vecb(&[1, 1]), vecb(&[6, 0]), vecb(&[0, 6])]).unwrap();
        let dual = l.dual_mod(&bi(6)).unwrap();
        assert!(dual.contains(&vecb(&[1, -1])));
        assert_eq!(dual.index(), Some(bi(6)));
        // missing scaled identity
        let l = Lattice::from_vectors(2, &[vecb(&[1, 1])]).unwrap();
        assert!(l.dual_mod(&bi(6)).is_err());
    }

    #[test]
    fn det_and_inverse() {
        let a = IntMatrix::from_i64(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, -1]]);
        assert_eq!(a.det().unwrap(), bi(-1));
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(inv.mul(&a).unwrap(), IntMatrix::identity(3));
        assert!(unimodular_inverse(&IntMatrix::from_i64(&[&[2]])).is_none());
    }

    #[test]
    fn matrix_json_uses_decimal_strings() {
        let a = IntMatrix::from_i64(&[&[-12, 3]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"entries":[["-12","3"]]}"#);
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<IntMatrix>(r#"{"rows":2,"cols":1,"entries":[["1"]]}"#).is_err());
    }
}
