//! Exact integer linear algebra over `Z^n`.
//!
//! Everything here is arbitrary precision: integer vectors and matrices use
//! [`BigInt`], coefficient vectors use [`BigRational`]. The central quantity
//! is the saturation index of a column lattice, i.e. the order of
//! `(span_R(columns) ∩ Z^n) / span_Z(columns)`, computed from the Smith
//! normal form.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer vector in `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        IntVector(vec![BigInt::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigInt> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Gcd of the entries, zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Largest absolute entry.
    pub fn sup_norm(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn scaled(&self, factor: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|x| x * factor).collect())
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;

    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(crate::io::JsonInt))
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<crate::io::JsonIntOwned> = Vec::deserialize(d)?;
        Ok(IntVector(raw.into_iter().map(|x| x.0).collect()))
    }
}

/// Exact rational coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<BigRational>);

impl RationalVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        RationalVector(entries)
    }

    /// Builds from `(numerator, denominator)` pairs.
    pub fn from_fractions(entries: &[(i64, i64)]) -> Self {
        RationalVector(
            entries
                .iter()
                .map(|&(p, q)| BigRational::new(p.into(), q.into()))
                .collect(),
        )
    }

    pub fn zeros(len: usize) -> Self {
        RationalVector(vec![BigRational::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn sum(&self) -> BigRational {
        self.0.iter().sum()
    }
}

impl Index<usize> for RationalVector {
    type Output = BigRational;

    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|x| x.to_string()))
    }
}

impl<'de> Deserialize<'de> for RationalVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| crate::io::parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(RationalVector)
            .map_err(serde::de::Error::custom)
    }
}

/// Dense integer matrix, stored row-major. When used as a face matrix,
/// column `j` is the `j`-th characteristic vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds an `n × k` matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[IntVector]) -> Result<Self> {
        let rows = columns.first().map_or(0, IntVector::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch(
                "columns have different lengths".into(),
            ));
        }
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                m[(i, j)] = c[i].clone();
            }
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for l in 0..self.cols {
                    acc += &self[(i, l)] * &other[(l, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// `M · c` for a rational coefficient vector `c`.
    pub fn apply_rational(&self, c: &RationalVector) -> Vec<BigRational> {
        assert_eq!(self.cols, c.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| BigRational::from_integer(self[(i, j)].clone()) * &c[j])
                    .sum()
            })
            .collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        if let Some(d) = self.determinant_small() {
            return d.into();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    /// Bareiss in `i128`; `None` when an entry or intermediate overflows.
    fn determinant_small(&self) -> Option<i128> {
        let n = self.rows;
        let mut a: Vec<i128> = self
            .data
            .iter()
            .map(|x| i64::try_from(x).ok().map(i128::from))
            .collect::<Option<_>>()?;
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k * n + k] == 0 {
                let i = (k + 1..n).find(|&i| a[i * n + k] != 0);
                match i {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(i * n + j, k * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Some(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let lhs = a[i * n + j].checked_mul(a[k * n + k])?;
                    let rhs = a[i * n + k].checked_mul(a[k * n + j])?;
                    a[i * n + j] = lhs.checked_sub(rhs)? / prev;
                }
            }
            prev = a[k * n + k];
        }
        sign.checked_mul(a[n * n - 1])
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = q * &self[(src, j)];
            self[(dst, j)] -= v;
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = q * &self[(i, src)];
            self[(i, dst)] -= v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of [`smith_normal_form`]: `u · m · v = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivoting is fixed: the nonzero entry of smallest absolute value in the
/// remaining block, ties broken by row then column index.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_pivot(&d, t) else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if !d[(i, t)].is_zero() {
                    let q = d[(i, t)].div_floor(&pivot);
                    d.sub_row_multiple(i, t, &q);
                    u.sub_row_multiple(i, t, &q);
                    dirty |= !d[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !d[(t, j)].is_zero() {
                    let q = d[(t, j)].div_floor(&pivot);
                    d.sub_col_multiple(j, t, &q);
                    v.sub_col_multiple(j, t, &q);
                    dirty |= !d[(t, j)].is_zero();
                }
            }
            if dirty {
                continue;
            }
            // Enforce d_t | every entry of the trailing block.
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    d.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

fn smallest_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let a = d[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| &a < b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Splits a nonzero vector as `d · p` with `d > 0` and `p` primitive.
pub fn primitive_decompose(v: &IntVector) -> Result<(BigInt, IntVector)> {
    let d = v.content();
    if d.is_zero() {
        return Err(Error::ZeroVector);
    }
    let p = IntVector(v.iter().map(|x| x / &d).collect());
    Ok((d, p))
}

fn full_rank_smith(m: &IntMatrix) -> Result<SmithForm> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    if rank < m.cols || m.cols == 0 {
        return Err(Error::RankDeficient {
            rank,
            cols: m.cols,
        });
    }
    Ok(snf)
}

/// Index of the column lattice of `m` inside its saturation.
///
/// Equals the product of the invariant factors, and the gcd of the maximal
/// minors; it is 1 exactly when the columns span a direct summand of `Z^n`.
pub fn saturation_index(m: &IntMatrix) -> Result<BigInt> {
    let snf = full_rank_smith(m)?;
    Ok(snf.invariant_factors().iter().product())
}

/// Coefficient vectors `c ∈ [0,1)^k` with `m · c` integral, one per element
/// of the quotient group, sorted lexicographically (zero first).
pub fn coset_representatives(m: &IntMatrix) -> Result<Vec<RationalVector>> {
    let snf = full_rank_smith(m)?;
    let factors = snf.invariant_factors();
    let k = m.cols;

    // With U·M·V = D, m·c is integral iff D·(V⁻¹c) is, i.e. iff the i-th
    // coordinate of y = V⁻¹c lies in (1/d_i)Z. Enumerate y mod Z^k.
    let mut reps = Vec::new();
    let mut counter = vec![BigInt::zero(); k];
    loop {
        let y: Vec<BigRational> = counter
            .iter()
            .zip(&factors)
            .map(|(t, d)| BigRational::new(t.clone(), d.clone()))
            .collect();
        let c: Vec<BigRational> = (0..k)
            .map(|i| {
                let s: BigRational = (0..k)
                    .map(|j| BigRational::from_integer(snf.v[(i, j)].clone()) * &y[j])
                    .sum();
                &s - s.floor()
            })
            .collect();
        reps.push(RationalVector(c));

        // odometer over Π [0, d_i)
        let mut pos = 0;
        loop {
            if pos == k {
                reps.sort();
                return Ok(reps);
            }
            counter[pos] += 1;
            if counter[pos] < factors[pos] {
                break;
            }
            counter[pos] = BigInt::zero();
            pos += 1;
        }
    }
}

/// Nonzero coset representatives with every coordinate strictly positive.
pub fn interior_representatives(m: &IntMatrix) -> Result<Vec<RationalVector>> {
    Ok(coset_representatives(m)?
        .into_iter()
        .filter(|c| c.entries().iter().all(Signed::is_positive))
        .collect())
}

/// Primitive integer normal to the column span of an `(n+1) × n` matrix of
/// rank `n`, signed so that its first nonzero entry is positive.
pub fn integer_kernel_normal(m: &IntMatrix) -> Result<IntVector> {
    if m.rows != m.cols + 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected an (n+1) x n matrix, got {} x {}",
            m.rows, m.cols
        )));
    }
    let snf = full_rank_smith(m)?;
    // a^T M = 0  <=>  (a^T U^{-1}) D = 0, so a^T is the last row of U.
    let normal = snf.u.row(m.rows - 1);
    Ok(sign_normalized(normal))
}

pub(crate) fn sign_normalized(v: IntVector) -> IntVector {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => IntVector(v.iter().map(|x| -x).collect()),
        _ => v,
    }
}
