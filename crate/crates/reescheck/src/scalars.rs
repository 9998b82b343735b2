//! Exact scalars and dense linear algebra over the rationals and GF(p).
//!
//! The two supported fields share one scalar type so that matrices and
//! forms can carry their field at runtime. Rationals are arbitrary
//! precision and always reduced; prime-field elements are canonical
//! representatives in `[0, p)` and products go through `u128`, so any
//! prime below `2^63` is safe.
//!
//! Elimination comes in two flavours. Over GF(p) and for row-reduced
//! echelon forms everything uses ordinary Gaussian elimination. Rank and
//! determinant over the rationals instead use fraction-free Bareiss
//! elimination on an integer-scaled copy, which keeps intermediate
//! entries to single divisions of exact products. The naive rational
//! route stays available as [`DenseMatrix::naive_rank`] and
//! [`DenseMatrix::naive_determinant`] so the two can be checked against
//! each other.
//!
//! Pivoting is deterministic everywhere: columns are scanned left to
//! right and the first nonzero entry from the top is the pivot. Echelon
//! bases produced by [`Subspace`] are therefore canonical (they are the
//! reduced row echelon form of the spanned subspace), which keeps every
//! downstream report reproducible.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use rand::Rng;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Deterministic Miller-Rabin primality test, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in SMALL {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`, `a` nonzero mod `p`.
fn inv_mod(a: u64, p: u64) -> u64 {
    // Extended Euclid on signed 128-bit, safe for p < 2^63.
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of a multiple of p requested");
    t0.rem_euclid(p as i128) as u64
}

/// The coefficient field of a computation: `Q` or `GF(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// The field `GF(p)`; rejects composite moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Characteristic of the field, `0` for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(v))),
            FieldSpec::Prime(p) => {
                let r = (v as i128).rem_euclid(*p as i128) as u64;
                Scalar::Fp(r)
            }
        }
    }

    /// True when the scalar belongs to this field's representation.
    pub fn owns(&self, s: &Scalar) -> bool {
        matches!(
            (self, s),
            (FieldSpec::Rationals, Scalar::Rat(_)) | (FieldSpec::Prime(_), Scalar::Fp(_))
        )
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((x + y) % p) as u64)
            }
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp((x + (p - y)) % p)
            }
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(mul_mod(*x, *y, *p))
            }
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar from a different field"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(x.recip()))
                }
            }
            (FieldSpec::Prime(p), Scalar::Fp(x)) => {
                if *x == 0 {
                    None
                } else {
                    Some(Scalar::Fp(inv_mod(*x, *p)))
                }
            }
            _ => panic!("scalar from a different field"),
        }
    }

    /// Uniform random element; `None` over the rationals.
    pub fn random<R: Rng>(&self, rng: &mut R) -> Option<Scalar> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(Scalar::Fp(rng.gen_range(0..*p))),
        }
    }

    /// Uniform random nonzero element; `None` over the rationals.
    pub fn random_nonzero<R: Rng>(&self, rng: &mut R) -> Option<Scalar> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(Scalar::Fp(rng.gen_range(1..*p))),
        }
    }

    /// Parse a coefficient string: an integer, or `a/b` over the
    /// rationals only.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            FieldSpec::Rationals => {
                let (num_str, den_str) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n = BigInt::from_str(num_str)
                    .map_err(|_| Error::InvalidInput(format!("bad rational: {s:?}")))?;
                let d = BigInt::from_str(den_str)
                    .map_err(|_| Error::InvalidInput(format!("bad rational: {s:?}")))?;
                if d.is_zero() {
                    return Err(Error::InvalidInput(format!("zero denominator: {s:?}")));
                }
                Ok(Scalar::Rat(BigRational::new(n, d)))
            }
            FieldSpec::Prime(_) => {
                if s.contains('/') {
                    return Err(Error::InvalidInput(format!(
                        "fractions are not accepted over {self}: {s:?}"
                    )));
                }
                let v = i64::from_str(s)
                    .map_err(|_| Error::InvalidInput(format!("bad integer: {s:?}")))?;
                Ok(self.from_i64(v))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "gfp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "rational" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = s.strip_prefix("gfp:") {
            let p = u64::from_str(p)
                .map_err(|_| Error::InvalidInput(format!("bad field spec: {s:?}")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::InvalidInput(format!(
            "field must be \"rational\" or \"gfp:<prime>\", got {s:?}"
        )))
    }
}

/// One exact field element. The variant must match the ambient
/// [`FieldSpec`]; public constructors validate this.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Fp(x) => *x == 0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Fp(x) => write!(f, "{x}"),
        }
    }
}

/// Dense matrix with entries in one runtime-chosen field, row major.
///
/// Zero-row and zero-column shapes are legal: the rank is 0, the kernel
/// of a `0 x n` matrix is all of `k^n`, and the empty determinant is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl DenseMatrix {
    /// Zero matrix of the given shape.
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    /// Build from a row-major entry function.
    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                if !field.owns(&s) {
                    return Err(Error::FieldMismatch(format!("entry ({i},{j})")));
                }
                entries.push(s);
            }
        }
        Ok(DenseMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    /// Build from columns, each of length `height`.
    pub fn from_columns(field: FieldSpec, height: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        for (j, c) in columns.iter().enumerate() {
            if c.len() != height {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {height}",
                    c.len()
                )));
            }
            if let Some(s) = c.iter().find(|s| !field.owns(s)) {
                return Err(Error::FieldMismatch(format!("column {j} entry {s}")));
            }
        }
        let cols = columns.len();
        let mut entries = vec![field.zero(); height * cols];
        for (j, c) in columns.iter().enumerate() {
            for (i, s) in c.iter().enumerate() {
                entries[i * cols + j] = s.clone();
            }
        }
        Ok(DenseMatrix {
            field,
            rows: height,
            cols,
            entries,
        })
    }

    /// Build from rows of equal length.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<Scalar>]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != width {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {width}",
                    r.len()
                )));
            }
            if let Some(s) = r.iter().find(|s| !field.owns(s)) {
                return Err(Error::FieldMismatch(format!("row {i} entry {s}")));
            }
        }
        let mut entries = Vec::with_capacity(height * width);
        for r in rows {
            entries.extend(r.iter().cloned());
        }
        Ok(DenseMatrix {
            field,
            rows: height,
            cols: width,
            entries,
        })
    }

    /// Integer convenience constructor, mostly for tests.
    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let data: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        DenseMatrix::from_rows(field, &data).expect("uniform integer rows")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        assert!(self.field.owns(&s), "scalar from a different field");
        self.entries[i * self.cols + j] = s;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Stack `other` below `self`; the column counts must agree.
    pub fn vstack(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("vstack".into()));
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of widths {} and {}",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(DenseMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Matrix-vector product.
    pub fn mat_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "mat_vec: {} columns, vector of length {}",
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = self.field.zero();
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() && !v[j].is_zero() {
                    acc = self.field.add(&acc, &self.field.mul(e, &v[j]));
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Exact rank. Over GF(p) this is Gaussian elimination; over the
    /// rationals it is fraction-free Bareiss elimination on an
    /// integer-scaled copy.
    pub fn rank(&self) -> usize {
        match self.field {
            FieldSpec::Prime(_) => {
                let mut data = self.entries.clone();
                rref_in_place(self.field, self.rows, self.cols, &mut data).len()
            }
            FieldSpec::Rationals => {
                let (mut m, _) = self.to_scaled_bigint();
                bareiss_forward(&mut m).0
            }
        }
    }

    /// Rank by naive elimination with field division, for cross-checks.
    pub fn naive_rank(&self) -> usize {
        let mut data = self.entries.clone();
        rref_in_place(self.field, self.rows, self.cols, &mut data).len()
    }

    /// Exact determinant of a square matrix; the empty matrix has
    /// determinant 1. Over the rationals this runs Bareiss elimination.
    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        match self.field {
            FieldSpec::Prime(_) => Ok(self.naive_determinant_inner()),
            FieldSpec::Rationals => {
                let n = self.rows;
                let (mut m, scale) = self.to_scaled_bigint();
                let (rank, last_pivot, sign) = bareiss_forward(&mut m);
                if rank < n {
                    return Ok(self.field.zero());
                }
                let mut det = BigRational::from(last_pivot);
                if sign < 0 {
                    det = -det;
                }
                Ok(Scalar::Rat(det / BigRational::from(scale)))
            }
        }
    }

    /// Determinant by naive elimination with field division, for
    /// cross-checks against the fraction-free route.
    pub fn naive_determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.naive_determinant_inner())
    }

    fn naive_determinant_inner(&self) -> Scalar {
        let n = self.rows;
        let f = self.field;
        let mut m = self.entries.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(pivot_row) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
                return f.zero();
            };
            if pivot_row != c {
                for j in 0..n {
                    m.swap(c * n + j, pivot_row * n + j);
                }
                det = f.neg(&det);
            }
            let pivot = m[c * n + c].clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("nonzero pivot");
            for r in (c + 1)..n {
                if m[r * n + c].is_zero() {
                    continue;
                }
                let factor = f.mul(&m[r * n + c], &inv);
                for j in c..n {
                    let t = f.mul(&factor, &m[c * n + j]);
                    m[r * n + j] = f.sub(&m[r * n + j], &t);
                }
            }
        }
        det
    }

    /// One exact solution of `self * x = rhs`, or `None` when the system
    /// is inconsistent. Free variables are set to zero, so the answer is
    /// deterministic. Any returned solution is re-multiplied and checked.
    pub fn solve_any(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve_any: {} rows, rhs of length {}",
                self.rows,
                rhs.len()
            )));
        }
        if let Some(s) = rhs.iter().find(|s| !self.field.owns(s)) {
            return Err(Error::FieldMismatch(format!("rhs entry {s}")));
        }
        let f = self.field;
        let width = self.cols + 1;
        let mut aug = Vec::with_capacity(self.rows * width);
        for i in 0..self.rows {
            aug.extend(self.entries[i * self.cols..(i + 1) * self.cols].iter().cloned());
            aug.push(rhs[i].clone());
        }
        let pivots = rref_in_place(f, self.rows, width, &mut aug);
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (k, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[k * width + self.cols].clone();
        }
        let check = self.mat_vec(&x)?;
        assert_eq!(check, rhs, "solver produced a non-solution");
        Ok(Some(x))
    }

    /// Canonical basis of the right kernel `{v : self * v = 0}`.
    ///
    /// One basis vector per free column of the reduced echelon form,
    /// ordered by free column index; for a `0 x n` matrix this is the
    /// standard basis of `k^n`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let mut data = self.entries.clone();
        let pivots = rref_in_place(f, self.rows, self.cols, &mut data);
        let mut basis = Vec::new();
        let mut next_pivot = 0usize;
        for col in 0..self.cols {
            if next_pivot < pivots.len() && pivots[next_pivot] == col {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[col] = f.one();
            for (k, &pc) in pivots.iter().enumerate() {
                let e = &data[k * self.cols + col];
                if !e.is_zero() {
                    v[pc] = f.neg(e);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Scale every row by the lcm of its denominators and return the
    /// integer matrix plus the product of all scale factors.
    fn to_scaled_bigint(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale_product = BigInt::one();
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut lcm = BigInt::one();
            for j in 0..self.cols {
                let Scalar::Rat(x) = self.get(i, j) else {
                    unreachable!("rational matrix expected");
                };
                lcm = num::integer::lcm(lcm, x.denom().clone());
            }
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                let Scalar::Rat(x) = self.get(i, j) else {
                    unreachable!("rational matrix expected");
                };
                let scaled = x * BigRational::from(lcm.clone());
                debug_assert!(scaled.denom().is_one());
                row.push(scaled.numer().clone());
            }
            scale_product *= &lcm;
            out.push(row);
        }
        (out, scale_product)
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
/// Deterministic: first nonzero entry scanning each column top-down.
fn rref_in_place(f: FieldSpec, rows: usize, cols: usize, data: &mut [Scalar]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut piv_row = 0usize;
    for col in 0..cols {
        if piv_row == rows {
            break;
        }
        let Some(found) = (piv_row..rows).find(|&r| !data[r * cols + col].is_zero()) else {
            continue;
        };
        if found != piv_row {
            for j in 0..cols {
                data.swap(piv_row * cols + j, found * cols + j);
            }
        }
        let inv = f.inv(&data[piv_row * cols + col]).expect("nonzero pivot");
        for j in col..cols {
            data[piv_row * cols + j] = f.mul(&data[piv_row * cols + j], &inv);
        }
        for r in 0..rows {
            if r == piv_row || data[r * cols + col].is_zero() {
                continue;
            }
            let factor = data[r * cols + col].clone();
            for j in col..cols {
                let t = f.mul(&factor, &data[piv_row * cols + j]);
                data[r * cols + j] = f.sub(&data[r * cols + j], &t);
            }
        }
        pivots.push(col);
        piv_row += 1;
    }
    pivots
}

/// Fraction-free Bareiss forward elimination on an integer matrix.
/// Returns the rank, the last pivot, and the sign of the row swaps; for
/// a square full-rank matrix the determinant is `sign * last_pivot`.
fn bareiss_forward(m: &mut [Vec<BigInt>]) -> (usize, BigInt, i32) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    let mut piv_row = 0usize;
    let mut last_pivot = BigInt::one();
    for col in 0..cols {
        if piv_row == rows {
            break;
        }
        let Some(found) = (piv_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        if found != piv_row {
            m.swap(found, piv_row);
            sign = -sign;
        }
        let pivot = m[piv_row][col].clone();
        for r in (piv_row + 1)..rows {
            for j in (col + 1)..cols {
                let num = &pivot * &m[r][j] - &m[r][col] * &m[piv_row][j];
                let (q, rem) = num::integer::div_rem(num, prev.clone());
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[r][j] = q;
            }
            m[r][col] = BigInt::zero();
        }
        prev = pivot.clone();
        last_pivot = pivot;
        piv_row += 1;
    }
    (piv_row, last_pivot, sign)
}

/// A linear subspace of `k^n` held in canonical reduced row echelon
/// form. Inserting vectors in any order yields the same basis, because
/// the reduced echelon form of a subspace is unique.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Span of the columns of `m`.
    pub fn from_matrix_columns(m: &DenseMatrix) -> Self {
        let mut s = Subspace::new(m.field(), m.rows());
        for j in 0..m.cols() {
            s.insert(m.column(j));
        }
        s
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// The canonical echelon basis, rows ordered by pivot column.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Residual of `v` after reduction against the basis; zero exactly
    /// when `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let f = self.field;
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let factor = r[p].clone();
            for j in p..self.ambient {
                if row[j].is_zero() {
                    continue;
                }
                let t = f.mul(&factor, &row[j]);
                r[j] = f.sub(&r[j], &t);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Add `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let f = self.field;
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = f.inv(&r[p]).expect("nonzero leading entry");
        for s in r.iter_mut() {
            if !s.is_zero() {
                *s = f.mul(s, &inv);
            }
        }
        // Back-reduce existing rows so the basis stays fully reduced.
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for j in p..self.ambient {
                if r[j].is_zero() {
                    continue;
                }
                let t = f.mul(&factor, &r[j]);
                row[j] = f.sub(&row[j], &t);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    const P: u64 = 2147483647;

    fn qq() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn fp() -> FieldSpec {
        FieldSpec::prime(P).unwrap()
    }

    #[test]
    fn primality_known_values() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(2147483647));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(!is_prime(2147483649));
        assert!(!is_prime(1_000_000_007u64 * 3));
    }

    #[test]
    fn field_spec_rejects_composite() {
        assert!(FieldSpec::prime(91).is_err());
        assert!(FieldSpec::prime(2147483647).is_ok());
    }

    #[test]
    fn field_spec_round_trips_through_strings() {
        for s in ["rational", "gfp:2147483647", "gfp:101"] {
            let f: FieldSpec = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("gfp:91".parse::<FieldSpec>().is_err());
        assert!("float".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime(101).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, Scalar::Fp(100));
        let inv = f.inv(&f.from_i64(7)).unwrap();
        assert_eq!(f.mul(&f.from_i64(7), &inv), f.one());
        assert!(f.inv(&f.zero()).is_none());
        assert_eq!(f.sub(&f.zero(), &f.one()), f.from_i64(100));
    }

    #[test]
    fn rational_parse_and_reduce() {
        let f = qq();
        let x = f.parse("6/4").unwrap();
        assert_eq!(x.to_string(), "3/2");
        let y = f.parse("-3").unwrap();
        assert_eq!(y.to_string(), "-3");
        assert!(f.parse("1/0").is_err());
        let g = fp();
        assert!(g.parse("1/2").is_err());
        assert_eq!(g.parse("-1").unwrap(), Scalar::Fp(P - 1));
    }

    #[test]
    fn rank_of_proportional_rows_is_one() {
        for f in [qq(), fp()] {
            let m = DenseMatrix::from_i64_rows(f, &[vec![1, 2], vec![2, 4]]);
            assert_eq!(m.rank(), 1);
            assert_eq!(m.naive_rank(), 1);
        }
    }

    #[test]
    fn empty_shapes_are_legal() {
        for f in [qq(), fp()] {
            let zero_by_three = DenseMatrix::zeros(f, 0, 3);
            assert_eq!(zero_by_three.rank(), 0);
            let k = zero_by_three.kernel_basis();
            assert_eq!(k.len(), 3);
            for (i, v) in k.iter().enumerate() {
                for (j, s) in v.iter().enumerate() {
                    assert_eq!(s.is_zero(), i != j);
                }
            }
            let three_by_zero = DenseMatrix::zeros(f, 3, 0);
            assert_eq!(three_by_zero.rank(), 0);
            assert!(three_by_zero.kernel_basis().is_empty());
            let empty = DenseMatrix::zeros(f, 0, 0);
            assert_eq!(empty.determinant().unwrap(), f.one());
        }
    }

    #[test]
    fn determinant_small_cases() {
        for f in [qq(), fp()] {
            let id = DenseMatrix::from_i64_rows(f, &[vec![1, 0], vec![0, 1]]);
            assert_eq!(id.determinant().unwrap(), f.one());
            let swap = DenseMatrix::from_i64_rows(f, &[vec![0, 1], vec![1, 0]]);
            assert_eq!(swap.determinant().unwrap(), f.from_i64(-1));
            let sing = DenseMatrix::from_i64_rows(f, &[vec![1, 2], vec![2, 4]]);
            assert!(sing.determinant().unwrap().is_zero());
            let rect = DenseMatrix::zeros(f, 2, 3);
            assert!(rect.determinant().is_err());
        }
    }

    #[test]
    fn determinant_rational_entries() {
        let f = qq();
        let half = f.parse("1/2").unwrap();
        let third = f.parse("1/3").unwrap();
        let m = DenseMatrix::from_rows(
            f,
            &[vec![half, f.one()], vec![third, f.one()]],
        )
        .unwrap();
        let d = m.determinant().unwrap();
        assert_eq!(d, f.parse("1/6").unwrap());
        assert_eq!(m.naive_determinant().unwrap(), d);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        for f in [qq(), fp()] {
            let m = DenseMatrix::from_i64_rows(f, &[vec![1, 1], vec![2, 2]]);
            let sol = m
                .solve_any(&[f.from_i64(3), f.from_i64(6)])
                .unwrap()
                .unwrap();
            assert_eq!(m.mat_vec(&sol).unwrap(), vec![f.from_i64(3), f.from_i64(6)]);
            let none = m.solve_any(&[f.from_i64(3), f.from_i64(7)]).unwrap();
            assert!(none.is_none());
            assert!(m.solve_any(&[f.one()]).is_err());
        }
    }

    #[test]
    fn kernel_matches_rank_defect() {
        for f in [qq(), fp()] {
            let m = DenseMatrix::from_i64_rows(
                f,
                &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]],
            );
            let rank = m.rank();
            let kernel = m.kernel_basis();
            assert_eq!(rank + kernel.len(), 3);
            for v in &kernel {
                let image = m.mat_vec(v).unwrap();
                assert!(image.iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn bareiss_agrees_with_naive_on_seeded_matrices() {
        let f = qq();
        let mut rng = ChaCha20Rng::seed_from_u64(42);
        for _ in 0..20 {
            let rows: Vec<Vec<i64>> = (0..6)
                .map(|_| (0..6).map(|_| rand::Rng::gen_range(&mut rng, -9..=9)).collect())
                .collect();
            let m = DenseMatrix::from_i64_rows(f, &rows);
            assert_eq!(m.rank(), m.naive_rank());
            assert_eq!(m.determinant().unwrap(), m.naive_determinant().unwrap());
        }
    }

    #[test]
    fn subspace_basis_is_insertion_order_independent() {
        for f in [qq(), fp()] {
            let vecs: Vec<Vec<Scalar>> = [
                vec![1, 2, 3, 4],
                vec![0, 1, 1, 0],
                vec![1, 3, 4, 4],
                vec![2, 0, 1, 5],
            ]
            .iter()
            .map(|v| v.iter().map(|&x| f.from_i64(x)).collect())
            .collect();
            let mut fwd = Subspace::new(f, 4);
            for v in &vecs {
                fwd.insert(v.clone());
            }
            let mut rev = Subspace::new(f, 4);
            for v in vecs.iter().rev() {
                rev.insert(v.clone());
            }
            assert_eq!(fwd.basis(), rev.basis());
            assert_eq!(fwd.dim(), 3);
            assert!(fwd.contains(&vecs[2]));
        }
    }

    #[test]
    fn subspace_agrees_with_matrix_rank() {
        let f = fp();
        let m = DenseMatrix::from_i64_rows(
            f,
            &[vec![1, 0, 2], vec![0, 1, 2], vec![1, 1, 4], vec![5, 0, 10]],
        )
        .transpose();
        let s = Subspace::from_matrix_columns(&m);
        assert_eq!(s.dim(), m.rank());
    }

    proptest! {
        #[test]
        fn prime_field_inverses(v in 1u64..101) {
            let f = FieldSpec::prime(101).unwrap();
            let s = Scalar::Fp(v % 101);
            if !s.is_zero() {
                let inv = f.inv(&s).unwrap();
                prop_assert_eq!(f.mul(&s, &inv), f.one());
            }
        }

        #[test]
        fn solve_returns_actual_solutions(
            entries in proptest::collection::vec(-20i64..=20, 12),
            rhs in proptest::collection::vec(-20i64..=20, 3),
        ) {
            for f in [FieldSpec::Rationals, FieldSpec::prime(101).unwrap()] {
                let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
                let m = DenseMatrix::from_i64_rows(f, &rows);
                let b: Vec<Scalar> = rhs.iter().map(|&v| f.from_i64(v)).collect();
                if let Some(x) = m.solve_any(&b).unwrap() {
                    prop_assert_eq!(m.mat_vec(&x).unwrap(), b);
                }
            }
        }

        #[test]
        fn rank_routes_agree(entries in proptest::collection::vec(-9i64..=9, 25)) {
            let rows: Vec<Vec<i64>> = entries.chunks(5).map(|c| c.to_vec()).collect();
            let m = DenseMatrix::from_i64_rows(FieldSpec::Rationals, &rows);
            prop_assert_eq!(m.rank(), m.naive_rank());
        }
    }
}
