//! Dense linear algebra over prime fields `F_p` with `p <= 2^16`.
//!
//! Vectors are rows and matrices act on the right: `v -> v * M`.
//! Subspaces are always compared through their reduced row echelon basis.

mod echelon;
pub mod gf2;

pub use echelon::EchelonBasis;

use std::fmt;

use thiserror::Error;

/// Largest modulus accepted by the crate.
pub const MAX_MODULUS: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("modulus {0} is not a prime")]
    NotPrime(u32),
    #[error("modulus {0} exceeds 2^16")]
    ModulusTooLarge(u32),
    #[error("entry {value} out of range for modulus {p}")]
    EntryOutOfRange { value: u32, p: u32 },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

pub type Result<T> = std::result::Result<T, LinalgError>;

/// Deterministic primality test for 32-bit inputs.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut k = 3u32;
    while (k as u64) * (k as u64) <= p as u64 {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

/// Validates a modulus for use with this module.
pub fn check_modulus(p: u32) -> Result<()> {
    if p > MAX_MODULUS {
        return Err(LinalgError::ModulusTooLarge(p));
    }
    if !is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    Ok(())
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse; `a` must be nonzero modulo the prime `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow_mod(a, (p - 2) as u64, p)
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let phi = p - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            factors.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (phi / q) as u64, p) != 1))
        .expect("prime modulus has a primitive root")
}

/// Multiplicative order of a nonzero residue.
pub fn mult_order(a: u32, p: u32) -> u32 {
    let mut x = a % p;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, p);
        k += 1;
    }
    k
}

/// An element of `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    p: u32,
}

impl FpScalar {
    pub fn new(value: u64, p: u32) -> Result<Self> {
        check_modulus(p)?;
        Ok(Self { value: (value % p as u64) as u32, p })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| Self { value: inv_mod(self.value, self.p), p: self.p })
    }
}

impl std::ops::Add for FpScalar {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        Self { value: add_mod(self.value, o.value, self.p), p: self.p }
    }
}

impl std::ops::Mul for FpScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        Self { value: mul_mod(self.value, o.value, self.p), p: self.p }
    }
}

impl std::ops::Neg for FpScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self { value: neg_mod(self.value, self.p), p: self.p }
    }
}

/// A row vector over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVector {
    p: u32,
    entries: Vec<u32>,
}

impl FpVector {
    pub fn new(p: u32, entries: Vec<u32>) -> Result<Self> {
        check_modulus(p)?;
        if let Some(&value) = entries.iter().find(|&&x| x >= p) {
            return Err(LinalgError::EntryOutOfRange { value, p });
        }
        Ok(Self { p, entries })
    }

    /// Builds a vector from arbitrary integers, reducing them modulo `p`.
    pub fn from_i64(p: u32, entries: &[i64]) -> Result<Self> {
        check_modulus(p)?;
        let entries = entries.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect();
        Ok(Self { p, entries })
    }

    pub(crate) fn from_raw(p: u32, entries: Vec<u32>) -> Self {
        debug_assert!(entries.iter().all(|&x| x < p));
        Self { p, entries }
    }

    pub fn zero(p: u32, d: usize) -> Self {
        Self { p, entries: vec![0; d] }
    }

    pub fn unit(p: u32, d: usize, i: usize) -> Self {
        let mut v = Self::zero(p, d);
        v.entries[i] = 1 % p;
        v
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    pub fn get(&self, i: usize) -> FpScalar {
        FpScalar { value: self.entries[i], p: self.p }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.len(), o.len(), "vector length mismatch");
        let p = self.p;
        let entries = self.entries.iter().zip(&o.entries).map(|(&a, &b)| add_mod(a, b, p)).collect();
        Self { p, entries }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.len(), o.len(), "vector length mismatch");
        let p = self.p;
        let entries = self.entries.iter().zip(&o.entries).map(|(&a, &b)| sub_mod(a, b, p)).collect();
        Self { p, entries }
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p;
        Self { p, entries: self.entries.iter().map(|&a| mul_mod(a, c, p)).collect() }
    }

    pub fn dot(&self, o: &Self) -> u32 {
        assert_eq!(self.len(), o.len(), "vector length mismatch");
        let s: u64 = self.entries.iter().zip(&o.entries).map(|(&a, &b)| a as u64 * b as u64 % self.p as u64).sum();
        (s % self.p as u64) as u32
    }

    /// Row vector times matrix.
    pub fn mul_mat(&self, m: &FpMatrix) -> Self {
        Self { p: self.p, entries: m.vec_mul(&self.entries) }
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn new(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        check_modulus(p)?;
        if data.len() != rows * cols {
            return Err(LinalgError::LengthMismatch { expected: rows * cols, found: data.len() });
        }
        if let Some(&value) = data.iter().find(|&&x| x >= p) {
            return Err(LinalgError::EntryOutOfRange { value, p });
        }
        Ok(Self { p, rows, cols, data })
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::LengthMismatch { expected: cols, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Self::new(p, rows.len(), cols, data)
    }

    /// Builds a matrix from signed integers, reducing modulo `p`.
    pub fn from_i64(p: u32, rows: &[&[i64]]) -> Result<Self> {
        let reduced: Vec<Vec<u32>> =
            rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect()).collect();
        Self::from_rows(p, &reduced)
    }

    pub fn from_vectors(p: u32, cols: usize, vs: &[FpVector]) -> Result<Self> {
        let mut data = Vec::with_capacity(vs.len() * cols);
        for v in vs {
            if v.len() != cols {
                return Err(LinalgError::LengthMismatch { expected: cols, found: v.len() });
            }
            if v.p != p {
                return Err(LinalgError::ModulusMismatch(p, v.p));
            }
            data.extend_from_slice(&v.entries);
        }
        Ok(Self { p, rows: vs.len(), cols, data })
    }

    pub(crate) fn from_raw(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { p, rows, cols, data }
    }

    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, d: usize) -> Self {
        Self::scalar(p, d, 1)
    }

    pub fn scalar(p: u32, d: usize, lambda: u32) -> Self {
        let mut m = Self::zero(p, d, d);
        for i in 0..d {
            m.data[i * d + i] = lambda % p;
        }
        m
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.p;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> FpVector {
        FpVector { p: self.p, entries: self.row(i).to_vec() }
    }

    pub fn row_vectors(&self) -> Vec<FpVector> {
        (0..self.rows).map(|i| self.row_vector(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.p != o.p {
            return Err(LinalgError::ModulusMismatch(self.p, o.p));
        }
        if self.cols != o.rows {
            return Err(LinalgError::LengthMismatch { expected: self.cols, found: o.rows });
        }
        if self.p == 2 {
            return Ok(gf2::BitMatrix::from_fp(self).mul(&gf2::BitMatrix::from_fp(o)).to_fp());
        }
        Ok(self.mul_unpacked(o))
    }

    pub(crate) fn mul_unpacked(&self, o: &Self) -> Self {
        let p = self.p as u64;
        let mut out = Vec::with_capacity(self.rows * o.cols);
        let mut acc = vec![0u64; o.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                for (x, &b) in acc.iter_mut().zip(o.row(k)) {
                    *x += a * b as u64;
                }
            }
            out.extend(acc.iter().map(|&x| (x % p) as u32));
        }
        Self { p: self.p, rows: self.rows, cols: o.cols, data: out }
    }

    /// Row vector (as a slice) times this matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let p = self.p as u64;
        let mut acc = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (x, &b) in acc.iter_mut().zip(self.row(k)) {
                *x += a as u64 * b as u64;
            }
        }
        acc.into_iter().map(|x| (x % p) as u32).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let p = self.p;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| add_mod(a, b, p)).collect();
        Self { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let p = self.p;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| sub_mod(a, b, p)).collect();
        Self { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p;
        Self { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| mul_mod(a, c, p)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(self.p - 1)
    }

    /// `self - lambda * I`.
    pub fn minus_scalar(&self, lambda: u32) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let x = m.get(i, i);
            m.data[i * self.cols + i] = sub_mod(x, lambda % self.p, self.p);
        }
        m
    }

    pub fn trace(&self) -> u32 {
        (0..self.rows.min(self.cols)).fold(0, |t, i| add_mod(t, self.get(i, i), self.p))
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value() == Some(1)
    }

    /// If the matrix is `lambda * I`, returns `lambda`.
    pub fn scalar_value(&self) -> Option<u32> {
        if !self.is_square() {
            return None;
        }
        let d = self.rows;
        let lambda = if d == 0 { 1 } else { self.get(0, 0) };
        for i in 0..d {
            for j in 0..d {
                let want = if i == j { lambda } else { 0 };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(lambda)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut r = Self::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).expect("square");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("square");
            }
        }
        r
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        if self.p == 2 {
            let mut b = gf2::BitMatrix::from_fp(self);
            let piv = b.rref();
            return (b.to_fp(), piv);
        }
        self.rref_unpacked()
    }

    pub fn rref_unpacked(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let piv = rref_in_place(self.p, self.rows, self.cols, &mut m.data);
        (m, piv)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let d = self.rows;
        let mut aug = Vec::with_capacity(d * 2 * d);
        for i in 0..d {
            aug.extend_from_slice(self.row(i));
            aug.extend((0..d).map(|j| u32::from(i == j)));
        }
        let piv = rref_in_place(self.p, d, 2 * d, &mut aug);
        if piv.len() < d || piv[d - 1] >= d {
            return Err(LinalgError::Singular);
        }
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            data.extend_from_slice(&aug[i * 2 * d + d..(i + 1) * 2 * d]);
        }
        Ok(Self { p: self.p, rows: d, cols: d, data })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && rank(self) == self.rows
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            data.extend(cols.iter().map(|&j| self.get(i, j)));
        }
        Self { p: self.p, rows: rows.len(), cols: cols.len(), data }
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// In-place reduced row echelon form of a row-major buffer; returns pivot columns.
pub(crate) fn rref_in_place(p: u32, rows: usize, cols: usize, a: &mut [u32]) -> Vec<usize> {
    let pp = p as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else { continue };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p) as u64;
        for j in c..cols {
            a[r * cols + j] = (a[r * cols + j] as u64 * inv % pp) as u32;
        }
        let (head, tail) = a.split_at_mut(r * cols);
        let (prow, rest) = tail.split_at_mut(cols);
        let eliminate = |row: &mut [u32]| {
            let f = row[c];
            if f != 0 {
                let f = (pp - f as u64) % pp;
                for j in c..cols {
                    row[j] = ((row[j] as u64 + f * prow[j] as u64) % pp) as u32;
                }
            }
        };
        for row in head.chunks_mut(cols) {
            eliminate(row);
        }
        for row in rest.chunks_mut(cols).take(rows - r - 1) {
            eliminate(row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &FpMatrix) -> usize {
    if m.p == 2 {
        return gf2::BitMatrix::from_fp(m).rank();
    }
    rank_unpacked(m)
}

/// Rank through the generic (non bit-packed) path, for any prime.
pub fn rank_unpacked(m: &FpMatrix) -> usize {
    m.rref_unpacked().1.len()
}

/// Right null space `{x : m x = 0}` as a canonical (reduced echelon) basis.
pub fn kernel(m: &FpMatrix) -> Vec<FpVector> {
    if m.p == 2 {
        return gf2::BitMatrix::from_fp(m).kernel().to_fp().row_vectors();
    }
    kernel_unpacked(m)
}

/// Null space through the generic path, for any prime.
pub fn kernel_unpacked(m: &FpMatrix) -> Vec<FpVector> {
    let (r, piv) = m.rref_unpacked();
    let basis = kernel_from_rref(&r, &piv);
    canonical_basis(m.p, m.cols, &basis)
}

fn kernel_from_rref(r: &FpMatrix, piv: &[usize]) -> Vec<Vec<u32>> {
    let p = r.p;
    let mut is_pivot = vec![false; r.cols];
    for &c in piv {
        is_pivot[c] = true;
    }
    (0..r.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![0u32; r.cols];
            x[f] = 1;
            for (i, &c) in piv.iter().enumerate() {
                x[c] = neg_mod(r.get(i, f), p);
            }
            x
        })
        .collect()
}

fn canonical_basis(p: u32, cols: usize, rows: &[Vec<u32>]) -> Vec<FpVector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let data: Vec<u32> = rows.iter().flatten().copied().collect();
    let m = FpMatrix { p, rows: rows.len(), cols, data };
    let (r, piv) = m.rref_unpacked();
    (0..piv.len()).map(|i| r.row_vector(i)).collect()
}

/// Left null space `{x : x m = 0}` as a canonical basis.
pub fn left_kernel(m: &FpMatrix) -> Vec<FpVector> {
    kernel(&m.transpose())
}

/// Canonical basis of the row space of `m`.
pub fn row_space(m: &FpMatrix) -> Vec<FpVector> {
    let (r, piv) = m.rref();
    (0..piv.len()).map(|i| r.row_vector(i)).collect()
}

/// Canonical basis of the span of `vs` (vectors of length `d`).
pub fn span_basis(p: u32, d: usize, vs: &[FpVector]) -> Vec<FpVector> {
    if vs.is_empty() {
        return Vec::new();
    }
    row_space(&FpMatrix::from_vectors(p, d, vs).expect("consistent lengths"))
}

/// Coefficients `c` with `sum c_i basis_i = v`, if `v` lies in the span.
pub fn solve_in_span(basis: &[FpVector], v: &FpVector) -> Result<Option<Vec<FpScalar>>> {
    let d = v.len();
    let p = v.p;
    for b in basis {
        if b.len() != d {
            return Err(LinalgError::LengthMismatch { expected: d, found: b.len() });
        }
        if b.p != p {
            return Err(LinalgError::ModulusMismatch(p, b.p));
        }
    }
    let k = basis.len();
    let cols = k + 1;
    let mut aug = vec![0u32; d * cols];
    for i in 0..d {
        for (j, b) in basis.iter().enumerate() {
            aug[i * cols + j] = b.entries[i];
        }
        aug[i * cols + k] = v.entries[i];
    }
    let piv = rref_in_place(p, d, cols, &mut aug);
    if piv.last() == Some(&k) {
        return Ok(None);
    }
    let mut coeffs = vec![FpScalar { value: 0, p }; k];
    for (i, &c) in piv.iter().enumerate() {
        coeffs[c] = FpScalar { value: aug[i * cols + k], p };
    }
    Ok(Some(coeffs))
}
