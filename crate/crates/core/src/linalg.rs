//! Exact linear algebra over the rationals.
//!
//! Everything downstream (cochain spaces, coboundaries, homotopies, window
//! checks) reduces to four questions about rational matrices: rank, kernel,
//! image and solvability. They are answered here with deterministic pivoting
//! so that every basis the crate reports is reproducible bit for bit.
//!
//! Pivot rule: columns are scanned left to right and the pivot of a column is
//! the first remaining row (in row order) with a nonzero entry. No magnitude
//! heuristics are used.
//!
//! Matrices are stored row-sparse. Elimination switches to a dense working
//! copy when both dimensions are below [`DENSE_CUTOFF`]; the two paths share
//! the pivot rule and produce identical echelon forms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::LinalgError;

/// Exact rational number, always reduced with a positive denominator.
pub type Rational = BigRational;

/// Dense vector of rationals.
pub type RationalVector = Vec<Rational>;

/// Matrices with both dimensions below this are eliminated densely.
pub const DENSE_CUTOFF: usize = 64;

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let s = s.trim();
    let bad = || LinalgError::Parse(s.to_string());
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
        Some((p, q)) => {
            let n: BigInt = p.trim().parse().map_err(|_| bad())?;
            let d: BigInt = q.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Zero vector of length `n`.
pub fn zero_vector(n: usize) -> RationalVector {
    vec![Rational::zero(); n]
}

/// Standard basis vector `e_i` of length `n`.
pub fn unit_vector(n: usize, i: usize) -> RationalVector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `a + s * b`, in place on `a`.
pub fn axpy(a: &mut [Rational], s: &Rational, b: &[Rational]) {
    debug_assert_eq!(a.len(), b.len());
    if s.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += s * y;
        }
    }
}

pub fn scale_vector(s: &Rational, v: &[Rational]) -> RationalVector {
    v.iter().map(|x| s * x).collect()
}

pub fn add_vectors(a: &[Rational], b: &[Rational]) -> RationalVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Rational], b: &[Rational]) -> RationalVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Sparse rational matrix. No stored entry is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Rational>>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format_rational(&self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from dense rows. All rows must have length `cols`.
    pub fn from_rows(rows: Vec<RationalVector>, cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "row {r} has wrong length");
            for (c, x) in row.into_iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    /// Convenience constructor from small integers, used heavily in tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(), cols)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[RationalVector], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(r, c, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        self.data[r].get(&c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rational) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        if x.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, x);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, x: &Rational) {
        if x.is_zero() {
            return;
        }
        let v = self.get(r, c) + x;
        self.set(r, c, v);
    }

    /// Nonzero entries of row `r`, in column order.
    pub fn row_entries(&self, r: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.data[r].iter().map(|(c, x)| (*c, x))
    }

    /// All nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, x)| (r, *c, x)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn row(&self, r: usize) -> RationalVector {
        let mut v = zero_vector(self.cols);
        for (c, x) in &self.data[r] {
            v[*c] = x.clone();
        }
        v
    }

    pub fn column(&self, c: usize) -> RationalVector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_dense(&self) -> Vec<RationalVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, x) in self.entries() {
            t.data[c].insert(r, x.clone());
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in &self.data[r] {
                for (c, b) in &other.data[*k] {
                    *acc.entry(*c).or_insert_with(Rational::zero) += a * b;
                }
            }
            acc.retain(|_, x| !x.is_zero());
            out.data[r] = acc;
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> RationalVector {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        self.data
            .iter()
            .map(|row| {
                let mut s = Rational::zero();
                for (c, x) in row {
                    if !v[*c].is_zero() {
                        s += x * &v[*c];
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (r, c, x) in other.entries() {
            out.add_to(r, c, x);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for row in &mut out.data {
            for x in row.values_mut() {
                *x *= s;
            }
        }
        out
    }

    /// `[self other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for (r, c, x) in self.entries() {
            out.set(r, c, x.clone());
        }
        for (r, c, x) in other.entries() {
            out.set(r, self.cols + c, x.clone());
        }
        out
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut out = self.clone();
        out.rows += other.rows;
        out.data.extend(other.data.iter().cloned());
        out
    }

    /// Sub-matrix made of the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                if let Some(x) = self.data[r].get(&c) {
                    out.data[r].insert(j, x.clone());
                }
            }
        }
        out
    }

    /// Swaps two rows; used by the change-of-basis helpers in tests.
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    /// Reduced row echelon form under the crate pivot rule.
    pub fn echelon(&self) -> Echelon {
        if self.rows < DENSE_CUTOFF && self.cols < DENSE_CUTOFF {
            echelon_dense(self)
        } else {
            echelon_sparse(self)
        }
    }

    /// Forces the sparse elimination path regardless of size.
    pub fn echelon_sparse(&self) -> Echelon {
        echelon_sparse(self)
    }

    /// Forces the dense elimination path regardless of size.
    pub fn echelon_dense(&self) -> Echelon {
        echelon_dense(self)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let ech = self.hstack(&Self::identity(n)).echelon();
        if ech.pivots.len() < n || ech.pivots[..n].iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for (c, x) in ech.rref.row_entries(r) {
                if c >= n {
                    inv.set(r, c - n, x.clone());
                }
            }
        }
        Some(inv)
    }

    pub fn trace(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i)).fold(Rational::zero(), |a, b| a + b)
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Only the first `pivots.len()` rows are nonzero.
    pub rref: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn echelon_dense(m: &RationalMatrix) -> Echelon {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.to_dense();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        if pr >= rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(found, pr);
        let inv = a[pr][col].recip();
        for x in a[pr].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = a[pr].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == pr || row[col].is_zero() {
                continue;
            }
            let f = -row[col].clone();
            axpy(row, &f, &pivot_row);
        }
        pivots.push(col);
        pr += 1;
    }
    Echelon { rref: RationalMatrix::from_rows(a, cols), pivots }
}

fn echelon_sparse(m: &RationalMatrix) -> Echelon {
    let rows = m.rows;
    let mut a = m.data.clone();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..m.cols {
        if pr >= rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| a[r].contains_key(&col)) else {
            continue;
        };
        a.swap(found, pr);
        let inv = a[pr][&col].recip();
        for x in a[pr].values_mut() {
            *x *= &inv;
        }
        let pivot_row = a[pr].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == pr {
                continue;
            }
            let Some(f) = row.get(&col).cloned() else { continue };
            for (c, x) in &pivot_row {
                let e = row.entry(*c).or_insert_with(Rational::zero);
                *e -= &f * x;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
        pivots.push(col);
        pr += 1;
    }
    Echelon { rref: RationalMatrix { rows, cols: m.cols, data: a }, pivots }
}

/// Exact rank by fraction-free elimination over the integers.
///
/// Each row is first cleared of denominators; elimination then uses only
/// integer cross-multiplication followed by division by the row content, so
/// no rational arithmetic happens inside the loop. This route is independent
/// of [`RationalMatrix::echelon`] and the two are cross-checked in tests.
pub fn rank(m: &RationalMatrix) -> usize {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = (0..m.rows)
        .map(|r| {
            let lcm = m.data[r].values().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            m.data[r].iter().map(|(c, x)| (*c, x.numer() * (&lcm / x.denom()))).collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        if rank >= rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&r| rows[r].contains_key(&col)) else {
            continue;
        };
        rows.swap(found, rank);
        let pivot_row = rows[rank].clone();
        let p = pivot_row[&col].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let Some(a) = row.get(&col).cloned() else { continue };
            // row <- p * row - a * pivot_row, then divide out the content.
            let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (c, x) in row.iter() {
                next.insert(*c, &p * x);
            }
            for (c, y) in &pivot_row {
                let e = next.entry(*c).or_insert_with(BigInt::zero);
                *e -= &a * y;
            }
            next.retain(|_, x| !x.is_zero());
            let g = next.values().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in next.values_mut() {
                    *x /= &g;
                }
            }
            *row = next;
        }
        rank += 1;
    }
    rank
}

/// Basis of `ker(M)`; one vector per free column, in increasing column order.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<RationalVector> {
    let ech = m.echelon();
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = zero_vector(n);
            v[free] = Rational::one();
            for (i, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.rref.get(i, free);
            }
            v
        })
        .collect()
}

/// Basis of the column space: the pivot columns of `M` itself.
pub fn image_basis(m: &RationalMatrix) -> Vec<RationalVector> {
    m.echelon().pivots.iter().map(|&c| m.column(c)).collect()
}

/// Some `x` with `M x = b`, free variables set to zero; `None` if inconsistent.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Option<RationalVector> {
    assert_eq!(b.len(), m.rows, "right-hand side has wrong length");
    let aug = m.hstack(&RationalMatrix::from_columns(&[b.to_vec()], m.rows));
    let ech = aug.echelon();
    if ech.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = zero_vector(m.cols);
    for (i, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.rref.get(i, m.cols);
    }
    Some(x)
}

/// A linearly independent family of vectors in `Q^n`.
///
/// Construction verifies independence. A reduced echelon form of the basis and
/// the transform producing it are cached so that membership tests and
/// coordinate extraction need no further elimination.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<RationalVector>,
    /// Rows: reduced echelon form of the basis vectors.
    reduced: Vec<RationalVector>,
    pivots: Vec<usize>,
    /// `reduced = transform * basis`.
    transform: RationalMatrix,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis == other.basis
    }
}

impl Subspace {
    pub fn new(ambient_dim: usize, basis: Vec<RationalVector>) -> Result<Self, LinalgError> {
        for v in &basis {
            if v.len() != ambient_dim {
                return Err(LinalgError::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
        }
        let k = basis.len();
        let stacked = RationalMatrix::from_rows(basis.clone(), ambient_dim).hstack(&RationalMatrix::identity(k));
        let ech = stacked.echelon();
        let pivots: Vec<usize> = ech.pivots.iter().copied().filter(|&p| p < ambient_dim).collect();
        if pivots.len() < k {
            return Err(LinalgError::Dependent);
        }
        let mut reduced = Vec::with_capacity(k);
        let mut transform = RationalMatrix::zeros(k, k);
        for r in 0..k {
            let row = ech.rref.row(r);
            reduced.push(row[..ambient_dim].to_vec());
            for (c, x) in row[ambient_dim..].iter().enumerate() {
                transform.set(r, c, x.clone());
            }
        }
        Ok(Subspace { ambient_dim, basis, reduced, pivots, transform })
    }

    /// The zero subspace of `Q^n`.
    pub fn zero(ambient_dim: usize) -> Self {
        Self::new(ambient_dim, Vec::new()).expect("empty family is independent")
    }

    /// The whole of `Q^n` with its standard basis.
    pub fn full(ambient_dim: usize) -> Self {
        Self::new(ambient_dim, (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)).collect())
            .expect("standard basis is independent")
    }

    /// Span of an arbitrary family; dependent vectors are dropped greedily in order.
    pub fn span(ambient_dim: usize, vectors: &[RationalVector]) -> Self {
        let mut kept: Vec<RationalVector> = Vec::new();
        for v in vectors {
            let mut trial = kept.clone();
            trial.push(v.clone());
            if rank(&RationalMatrix::from_rows(trial.clone(), ambient_dim)) == trial.len() {
                kept = trial;
            }
        }
        Self::new(ambient_dim, kept).expect("greedy selection is independent")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RationalVector] {
        &self.basis
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<RationalVector> {
        assert_eq!(v.len(), self.ambient_dim);
        let c_reduced: RationalVector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in c_reduced.iter().zip(&self.reduced) {
            axpy(&mut residual, &-c.clone(), row);
        }
        if !is_zero_vector(&residual) {
            return None;
        }
        // v = c_reduced . reduced = c_reduced . transform . basis
        Some(self.transform.transpose().mul_vec(&c_reduced))
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Linear combination of the basis with the given coordinates.
    pub fn combine(&self, coords: &[Rational]) -> RationalVector {
        assert_eq!(coords.len(), self.dim());
        let mut v = zero_vector(self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut v, c, b);
        }
        v
    }

    /// Reduces `v` modulo this subspace to its normal form: the entries at the
    /// pivot positions of the echelon basis are cleared.
    pub fn reduce(&self, v: &[Rational]) -> RationalVector {
        let mut out = v.to_vec();
        for (row, &p) in self.reduced.iter().zip(&self.pivots) {
            let f = -out[p].clone();
            axpy(&mut out, &f, row);
        }
        out
    }

    /// Standard basis vectors completing this subspace to the ambient space,
    /// chosen greedily in increasing index order.
    pub fn complement_basis(&self) -> Vec<RationalVector> {
        self.complement_indices().into_iter().map(|i| unit_vector(self.ambient_dim, i)).collect()
    }

    /// Indices of the standard vectors returned by [`Subspace::complement_basis`].
    pub fn complement_indices(&self) -> Vec<usize> {
        // e_i lies in S + span(e_0..e_{i-1}) exactly when some vector of S has
        // its last nonzero entry at i. Those positions are the pivots of the
        // echelon form taken with the column order reversed.
        let n = self.ambient_dim;
        let reversed: Vec<RationalVector> =
            self.basis.iter().map(|b| b.iter().rev().cloned().collect()).collect();
        let mut trailing = vec![false; n];
        for p in RationalMatrix::from_rows(reversed, n).echelon().pivots {
            trailing[n - 1 - p] = true;
        }
        (0..n).filter(|&i| !trailing[i]).collect()
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &all)
    }

    /// Intersection, computed from the kernel of `[A | -B]`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let a = RationalMatrix::from_columns(&self.basis, self.ambient_dim);
        let b = RationalMatrix::from_columns(&other.basis, self.ambient_dim);
        let k = kernel_basis(&a.hstack(&b.scale(&-Rational::one())));
        let vecs: Vec<RationalVector> = k.iter().map(|c| self.combine(&c[..self.dim()])).collect();
        Subspace::span(self.ambient_dim, &vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> RationalVector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank(&RationalMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&RationalMatrix::zeros(4, 7)), 0);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&RationalMatrix::zeros(2, 3));
        assert_eq!(k, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let k = kernel_basis(&RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(k, vec![v(&[-2, 1])]);
        assert!(kernel_basis(&RationalMatrix::identity(2)).is_empty());
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_basis(&RationalMatrix::identity(3)).len(), 3);
        assert!(image_basis(&RationalMatrix::zeros(3, 3)).is_empty());
        assert_eq!(image_basis(&RationalMatrix::from_i64(&[&[1], &[2]])), vec![v(&[1, 2])]);
    }

    #[test]
    fn complement_examples() {
        let s = Subspace::new(3, vec![v(&[1, 0, 0])]).unwrap();
        assert_eq!(s.complement_basis(), vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let s = Subspace::new(2, vec![v(&[1, 1])]).unwrap();
        assert_eq!(s.complement_basis(), vec![v(&[1, 0])]);
        assert!(Subspace::full(4).complement_basis().is_empty());
    }

    #[test]
    fn complement_is_greedy_for_non_coordinate_subspaces() {
        // span{e2 + e3} in Q^3: the greedy scan accepts e1, e2 and rejects e3.
        let s = Subspace::new(3, vec![v(&[0, 1, 1])]).unwrap();
        // brute-force greedy
        let mut chosen: Vec<RationalVector> = s.basis().to_vec();
        let mut picks = vec![];
        for i in 0..3 {
            let mut trial = chosen.clone();
            trial.push(unit_vector(3, i));
            if rank(&RationalMatrix::from_rows(trial.clone(), 3)) == trial.len() {
                chosen = trial;
                picks.push(i);
            }
        }
        assert_eq!(picks, vec![0, 1]);
        assert_eq!(s.complement_indices(), picks);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&RationalMatrix::identity(2), &v(&[3, 5])), Some(v(&[3, 5])));
        assert_eq!(solve(&RationalMatrix::zeros(2, 2), &v(&[1, 0])), None);
        assert_eq!(solve(&RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]), &v(&[1, 2])), Some(v(&[1, 0])));
    }

    #[test]
    fn dependent_family_rejected() {
        assert!(matches!(Subspace::new(2, vec![v(&[1, 2]), v(&[2, 4])]), Err(LinalgError::Dependent)));
    }

    #[test]
    fn coordinates_roundtrip() {
        let s = Subspace::new(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let x = s.combine(&[int(3), rat(-1, 2)]);
        assert_eq!(s.coordinates(&x), Some(vec![int(3), rat(-1, 2)]));
        assert_eq!(s.coordinates(&v(&[1, 0, 0])), None);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(parse_rational(" -3/2 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("4/2").unwrap(), int(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn inverse_and_intersection() {
        let m = RationalMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.mul(&m.inverse().unwrap()), RationalMatrix::identity(2));
        assert!(RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let a = Subspace::new(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::new(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0, 1, 0])));
    }
}
