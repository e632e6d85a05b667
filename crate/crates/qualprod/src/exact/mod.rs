//! Exact linear algebra over arbitrary-precision rationals.
//!
//! Everything here is deterministic and exact: determinants and ranks go
//! through fraction-free (Bareiss) elimination on integer matrices obtained
//! by clearing denominators, characteristic polynomials through the
//! Faddeev-LeVerrier trace recursion (with a polynomial-ring elimination
//! fallback for large orders), and spectrum questions through Sturm chains.
//! Floating point appears only in the sampling/diagnostic paths of other
//! modules, never here.

pub mod poly;
pub mod rational;
pub mod sturm;

use std::ops::Bound;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use poly::ExactPolynomial;
pub use rational::{format_rational, parse_rational, rat, rat_int, Rational};
pub use sturm::{count_all_real_roots, isolate_one_root, sturm_real_roots};

/// Principal-minor enumeration refuses to run above this order unless the
/// caller raises the cap explicitly (2^n subsets grow fast). The CLI maps
/// `QUALPROD_MINOR_CAP` onto the override.
pub const DEFAULT_MINOR_CAP: usize = 14;

/// Faddeev-LeVerrier is used up to this order; beyond it the characteristic
/// polynomial comes from fraction-free elimination over the polynomial ring.
const FADDEEV_LEVERRIER_LIMIT: usize = 12;

// ---- Matrices ----

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rational::one();
        }
        m
    }

    /// Test/readability helper: build from integer rows.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.iter().flat_map(|row| row.iter().map(|&v| rat_int(v))).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Submatrix on the given (not necessarily contiguous) row/col indices.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<Self> {
        for &i in row_idx {
            if i >= self.rows {
                return Err(Error::Index(format!("row {i} in a {}-row matrix", self.rows)));
            }
        }
        for &j in col_idx {
            if j >= self.cols {
                return Err(Error::Index(format!("col {j} in a {}-col matrix", self.cols)));
            }
        }
        let entries = row_idx
            .iter()
            .flat_map(|&i| col_idx.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        ExactMatrix::new(row_idx.len(), col_idx.len(), entries)
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| rational::rational_to_f64(self.get(i, j))).collect())
            .collect()
    }
}

impl std::fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| format_rational(self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ExactMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let grid: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| format_rational(self.get(i, j))).collect())
            .collect();
        st.serialize_field("entries", &grid)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<String>>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.entries.len() != raw.rows || raw.entries.iter().any(|r| r.len() != raw.cols) {
            return Err(serde::de::Error::custom("entry grid does not match rows x cols"));
        }
        let entries = raw
            .entries
            .iter()
            .flatten()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ExactMatrix::new(raw.rows, raw.cols, entries).map_err(serde::de::Error::custom)
    }
}

// ---- Minor indexing ----

/// A set of row indices and column indices selecting a square submatrix.
/// Both lists are strictly increasing and of equal, positive length.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MinorIndex {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorIndex {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.is_empty() || rows.len() != cols.len() {
            return Err(Error::Index(
                "minor index sets must be nonempty and of equal size".into(),
            ));
        }
        for list in [&rows, &cols] {
            if !list.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Index(
                    "minor index sets must be strictly increasing".into(),
                ));
            }
        }
        Ok(MinorIndex { rows, cols })
    }

    /// Principal minor index: same rows and columns.
    pub fn principal(idx: Vec<usize>) -> Result<Self> {
        Self::new(idx.clone(), idx)
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }
}

// ---- Determinant, rank, minors ----

/// Clear denominators row by row; returns the integer matrix and the product
/// of the row scales.
fn to_integer_rows(m: &ExactMatrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let mut out = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut lcm = BigInt::one();
        for j in 0..m.cols {
            lcm = lcm.lcm(m.get(i, j).denom());
        }
        out.push(
            (0..m.cols)
                .map(|j| {
                    let e = m.get(i, j);
                    e.numer() * (&lcm / e.denom())
                })
                .collect(),
        );
        scale *= lcm;
    }
    (out, scale)
}

/// Bareiss fraction-free determinant of an integer matrix. Every division is
/// exact by the Sylvester identity, so no fractions ever appear.
fn bareiss_int_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(pivot_row) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if pivot_row != k {
            m.swap(pivot_row, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Exact determinant of a square matrix.
pub fn determinant(m: &ExactMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let (int_rows, scale) = to_integer_rows(m);
    Ok(Rational::new(bareiss_int_det(int_rows), scale))
}

/// The minor `det(m[rows | cols])`.
pub fn minor(m: &ExactMatrix, idx: &MinorIndex) -> Result<Rational> {
    determinant(&m.submatrix(idx.rows(), idx.cols())?)
}

/// Rank by fraction-free elimination with row and column pivoting.
pub fn exact_rank(m: &ExactMatrix) -> usize {
    let (mut a, _) = to_integer_rows(m);
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut col = 0;
    while rank < rows && col < cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            col += 1;
            continue;
        };
        a.swap(pivot_row, rank);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = &a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j];
                a[i][j] = num / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        col += 1;
    }
    rank
}

// ---- P0 test ----

/// Outcome of the all-principal-minors test.
#[derive(Clone, Debug)]
pub struct P0Outcome {
    pub is_p0: bool,
    /// First violating principal minor (smallest order, then lexicographic).
    pub violation: Option<(MinorIndex, Rational)>,
}

/// Is every principal minor nonnegative? Enumerates index sets by increasing
/// cardinality and stops at the first violation. Refuses orders above `cap`.
pub fn is_p0_with_cap(m: &ExactMatrix, cap: usize) -> Result<P0Outcome> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "P0 test on a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n > cap {
        return Err(Error::Resource(format!(
            "P0 test on order {n} exceeds the principal-minor cap of {cap} \
             (override with QUALPROD_MINOR_CAP or is_p0_with_cap)"
        )));
    }
    for k in 1..=n {
        for idx in (0..n).combinations(k) {
            let mi = MinorIndex::principal(idx)?;
            let value = minor(m, &mi)?;
            if value.is_negative() {
                return Ok(P0Outcome { is_p0: false, violation: Some((mi, value)) });
            }
        }
    }
    Ok(P0Outcome { is_p0: true, violation: None })
}

pub fn is_p0(m: &ExactMatrix) -> Result<P0Outcome> {
    is_p0_with_cap(m, DEFAULT_MINOR_CAP)
}

// ---- Characteristic polynomial ----

/// Monic characteristic polynomial `det(xI - m)`, exactly.
pub fn char_poly(m: &ExactMatrix) -> Result<ExactPolynomial> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "characteristic polynomial of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    if m.rows <= FADDEEV_LEVERRIER_LIMIT {
        char_poly_faddeev_leverrier(m)
    } else {
        char_poly_poly_elimination(m)
    }
}

fn trace(m: &ExactMatrix) -> Rational {
    (0..m.rows).map(|i| m.get(i, i).clone()).sum()
}

fn char_poly_faddeev_leverrier(m: &ExactMatrix) -> Result<ExactPolynomial> {
    let n = m.rows;
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut acc = ExactMatrix::identity(n);
    for k in 1..=n {
        acc = m.mul(&acc)?;
        let c = -trace(&acc) / rat_int(k as i64);
        for i in 0..n {
            *acc.get_mut(i, i) += &c;
        }
        coeffs[n - k] = c;
    }
    Ok(ExactPolynomial::from_coeffs(coeffs))
}

/// Fallback for large orders: Bareiss elimination over the polynomial ring
/// applied to `xI - m`. Divisions are exact in `Q[x]` for the same Sylvester
/// reason as in the integer case.
fn char_poly_poly_elimination(m: &ExactMatrix) -> Result<ExactPolynomial> {
    let n = m.rows;
    let mut a: Vec<Vec<ExactPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let diag = if i == j {
                        ExactPolynomial::monomial(Rational::one(), 1)
                    } else {
                        ExactPolynomial::zero()
                    };
                    diag.sub(&ExactPolynomial::constant(m.get(i, j).clone()))
                })
                .collect()
        })
        .collect();
    let mut sign = 1i8;
    let mut prev = ExactPolynomial::one();
    for k in 0..n {
        let Some(pivot_row) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(ExactPolynomial::zero());
        };
        if pivot_row != k {
            a.swap(pivot_row, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = ExactPolynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign < 0 { det.neg() } else { det })
}

// ---- PS test ----

/// Why a matrix failed (or how it passed) the nonnegative-real-spectrum test.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PsDiagnostic {
    /// All eigenvalues real and nonnegative.
    RealNonnegative { zero_multiplicity: usize, positive_distinct: usize },
    /// Fewer distinct real roots than the square-free degree: a conjugate
    /// pair of nonreal eigenvalues exists.
    RealRootDeficit { squarefree_degree: usize, real_count: usize },
    /// A negative real eigenvalue, isolated to the given closed interval.
    NegativeRealRoot {
        #[serde(with = "rational::serde_rational")]
        lo: Rational,
        #[serde(with = "rational::serde_rational")]
        hi: Rational,
    },
}

#[derive(Clone, Debug)]
pub struct PsOutcome {
    pub is_ps: bool,
    pub diagnostic: PsDiagnostic,
}

/// Does `m` have an entirely real, nonnegative spectrum?
///
/// Exact: factor the characteristic polynomial as `x^z q(x)`, take the
/// square-free part of `q`, and require its count of distinct real roots in
/// `(0, B]` (with `B` the Cauchy bound) to equal its degree, with no roots
/// in `(-inf, 0)`.
pub fn is_ps(m: &ExactMatrix) -> Result<PsOutcome> {
    let p = char_poly(m)?;
    ps_from_char_poly(&p)
}

/// The PS test given an already-computed characteristic polynomial.
pub fn ps_from_char_poly(p: &ExactPolynomial) -> Result<PsOutcome> {
    let (zeros, q) = p.factor_zero_roots()?;
    if q.degree() == Some(0) {
        return Ok(PsOutcome {
            is_ps: true,
            diagnostic: PsDiagnostic::RealNonnegative {
                zero_multiplicity: zeros,
                positive_distinct: 0,
            },
        });
    }
    let sf = q.squarefree_part()?;
    let deg = sf.degree().unwrap();
    let bound = sf.cauchy_root_bound()?;
    let zero = Rational::zero();
    let positive =
        sturm_real_roots(&sf, Bound::Excluded(&zero), Bound::Included(&bound))?;
    let negative = sturm_real_roots(&sf, Bound::Unbounded, Bound::Excluded(&zero))?;
    if positive == deg {
        debug_assert_eq!(negative, 0);
        return Ok(PsOutcome {
            is_ps: true,
            diagnostic: PsDiagnostic::RealNonnegative {
                zero_multiplicity: zeros,
                positive_distinct: positive,
            },
        });
    }
    let diagnostic = if negative > 0 {
        let (lo, hi) = isolate_one_root(&sf, -bound, zero)?;
        PsDiagnostic::NegativeRealRoot { lo, hi }
    } else {
        PsDiagnostic::RealRootDeficit { squarefree_degree: deg, real_count: positive }
    };
    Ok(PsOutcome { is_ps: false, diagnostic })
}

// ---- Compound matrices and Cauchy-Binet ----

/// The k-th compound: all k-by-k minors, index sets in lexicographic order.
pub fn compound_matrix(m: &ExactMatrix, k: usize) -> Result<ExactMatrix> {
    if k == 0 || k > m.rows.min(m.cols) {
        return Err(Error::Dimension(format!(
            "compound order {k} outside 1..={} for a {}x{} matrix",
            m.rows.min(m.cols),
            m.rows,
            m.cols
        )));
    }
    let row_sets: Vec<Vec<usize>> = (0..m.rows).combinations(k).collect();
    let col_sets: Vec<Vec<usize>> = (0..m.cols).combinations(k).collect();
    let mut entries = Vec::with_capacity(row_sets.len() * col_sets.len());
    for rs in &row_sets {
        for cs in &col_sets {
            entries.push(determinant(&m.submatrix(rs, cs)?)?);
        }
    }
    ExactMatrix::new(row_sets.len(), col_sets.len(), entries)
}

/// Check the product-minor expansion: `det((AB)[rows|cols])` must equal the
/// sum over all size-k column sets `g` of `det(A[rows|g]) * det(B[g|cols])`.
/// Both sides are computed independently; returns their equality.
pub fn cauchy_binet_check(a: &ExactMatrix, b: &ExactMatrix, idx: &MinorIndex) -> Result<bool> {
    if a.cols != b.rows {
        return Err(Error::Dimension(format!(
            "inner dimensions {} and {} do not match",
            a.cols, b.rows
        )));
    }
    let product = a.mul(b)?;
    let lhs = minor(&product, idx)?;
    let k = idx.order();
    if k > a.cols {
        return Err(Error::Index(format!(
            "minor order {k} exceeds the inner dimension {}",
            a.cols
        )));
    }
    let mut rhs = Rational::zero();
    for mid in (0..a.cols).combinations(k) {
        let left = determinant(&a.submatrix(idx.rows(), &mid)?)?;
        if left.is_zero() {
            continue;
        }
        let right = determinant(&b.submatrix(&mid, idx.cols())?)?;
        rhs += left * right;
    }
    Ok(lhs == rhs)
}
