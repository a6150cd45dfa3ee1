//! Dense matrices and subspaces over `F_q`.
//!
//! A [`Subspace`] is stored by its reduced row-echelon basis, so two
//! subspaces are equal exactly when their bases are equal entry-wise.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use thiserror::Error;

use crate::field::{Elem, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("matrix data has {found} entries, expected {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("fields differ")]
    FieldMismatch,
    #[error("linear system has no solution")]
    Inconsistent,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl core::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    /// Row-equivalent RREF, same shape as the input; zero rows at the bottom.
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Matrix with the given rows; every row must have length `cols`.
    pub fn from_rows<R: AsRef<[Elem]>>(field: &Field, cols: usize, rows: &[R]) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(LinalgError::ShapeMismatch { expected: cols, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        // chunks_exact panics on zero-size chunks
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Keep the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            let row = self.row(r);
            data.extend(cols.iter().map(|&c| row[c]));
        }
        Matrix { field: self.field.clone(), rows: self.rows, cols: cols.len(), data }
    }

    /// Keep the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, data }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::AmbientMismatch(self.cols, other.cols));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::AmbientMismatch(self.cols, other.rows));
        }
        let ot = other.transpose();
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                out.data[r * other.cols + c] = self.field.dot(self.row(r), ot.row(c));
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, `x · M`.
    pub fn vec_mul(&self, x: &[Elem]) -> Result<Vec<Elem>, LinalgError> {
        if x.len() != self.rows {
            return Err(LinalgError::AmbientMismatch(x.len(), self.rows));
        }
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (r, &c) in x.iter().enumerate() {
            if c != 0 {
                axpy(f, &mut out, c, self.row(r));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector, `M · x`.
    pub fn mul_vec(&self, x: &[Elem]) -> Result<Vec<Elem>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::AmbientMismatch(x.len(), self.cols));
        }
        Ok(self.row_iter().map(|r| self.field.dot(r, x)).collect())
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m);
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut acc = RankAccumulator::new(&self.field, self.cols);
        for r in self.row_iter() {
            acc.push(r);
        }
        acc.rank()
    }

    /// Right kernel `{x : M xᵀ = 0}`.
    pub fn kernel(&self) -> Subspace {
        let Rref { matrix, pivots, .. } = self.rref();
        kernel_of_rref(&matrix, &pivots)
    }

    /// Row space.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_matrix(self)
    }

    /// Some solution `x` of `x · M = b`, if one exists.
    pub fn solve_left(&self, b: &[Elem]) -> Result<Vec<Elem>, LinalgError> {
        if b.len() != self.cols {
            return Err(LinalgError::AmbientMismatch(b.len(), self.cols));
        }
        // Solve Mᵀ xᵀ = bᵀ via the augmented matrix [Mᵀ | bᵀ].
        let t = self.transpose();
        let mut aug = Matrix::zeros(&self.field, t.rows, t.cols + 1);
        for r in 0..t.rows {
            aug.row_mut(r)[..t.cols].copy_from_slice(t.row(r));
            aug.data[r * (t.cols + 1) + t.cols] = b[r];
        }
        let pivots = rref_in_place(&mut aug);
        if pivots.last() == Some(&t.cols) {
            return Err(LinalgError::Inconsistent);
        }
        let mut x = vec![0; t.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, t.cols);
        }
        Ok(x)
    }
}

/// `y += c · x`.
#[inline]
pub fn axpy(f: &Field, y: &mut [Elem], c: Elem, x: &[Elem]) {
    if f.is_prime_field() {
        let p = f.p() as u64;
        let c = c as u64;
        for (a, &b) in y.iter_mut().zip(x) {
            *a = ((*a as u64 + c * b as u64) % p) as Elem;
        }
    } else {
        for (a, &b) in y.iter_mut().zip(x) {
            *a = f.add(*a, f.mul(c, b));
        }
    }
}

/// `x *= c`.
pub fn scale(f: &Field, x: &mut [Elem], c: Elem) {
    for a in x.iter_mut() {
        *a = f.mul(*a, c);
    }
}

fn rref_in_place(m: &mut Matrix) -> Vec<usize> {
    let f = m.field.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m.get(i, c) != 0) else { continue };
        if pr != r {
            for j in 0..cols {
                m.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
        scale(&f, m.row_mut(r), inv);
        let pivot_row: Vec<Elem> = m.row(r).to_vec();
        for i in 0..rows {
            if i != r {
                let x = m.get(i, c);
                if x != 0 {
                    axpy(&f, m.row_mut(i), f.neg(x), &pivot_row);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn kernel_of_rref(m: &Matrix, pivots: &[usize]) -> Subspace {
    let f = &m.field;
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut x = vec![0; n];
        x[free] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = f.neg(m.get(i, free));
        }
        basis.push(x);
    }
    let gens = Matrix::from_rows(f, n, &basis).expect("rows have length n");
    Subspace::from_matrix(&gens)
}

/// Uniform random matrix.
pub fn random_matrix<R: Rng + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let data = (0..rows * cols).map(|_| field.random(rng)).collect();
    Matrix { field: field.clone(), rows, cols, data }
}

/// Rejection-sampled uniform invertible `k × k` matrix and the number of
/// rejected draws.
pub fn random_invertible_counted<R: Rng + ?Sized>(field: &Field, k: usize, rng: &mut R) -> (Matrix, u32) {
    let mut rejected = 0;
    loop {
        let m = random_matrix(field, k, k, rng);
        if m.rank() == k {
            return (m, rejected);
        }
        rejected += 1;
    }
}

/// Uniform invertible `k × k` matrix, deterministic in `seed`.
pub fn random_invertible(field: &Field, k: usize, seed: u64) -> Matrix {
    let mut rng = crate::rng::stream(seed, b"random_invertible", 0);
    random_invertible_counted(field, k, &mut rng).0
}

/// A subspace of `F_q^n`, stored by its RREF basis without zero rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, n: usize) -> Self {
        Subspace { basis: Matrix::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: &Field, n: usize) -> Self {
        Subspace { basis: Matrix::identity(field, n), pivots: (0..n).collect() }
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let Rref { matrix, rank, pivots } = m.rref();
        let keep: Vec<usize> = (0..rank).collect();
        Subspace { basis: matrix.select_rows(&keep), pivots }
    }

    pub fn from_rows<R: AsRef<[Elem]>>(field: &Field, n: usize, rows: &[R]) -> Result<Self, LinalgError> {
        Ok(Self::from_matrix(&Matrix::from_rows(field, n, rows)?))
    }

    pub fn field(&self) -> &Field {
        &self.basis.field
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, n: usize) -> Result<(), LinalgError> {
        if self.ambient() != n {
            return Err(LinalgError::AmbientMismatch(self.ambient(), n));
        }
        Ok(())
    }

    /// `x` minus its projection along the pivots; zero iff `x` is in the space.
    pub fn residual(&self, x: &[Elem]) -> Result<Vec<Elem>, LinalgError> {
        self.check(x.len())?;
        let f = self.field();
        let mut y = x.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = y[p];
            if c != 0 {
                axpy(f, &mut y, f.neg(c), self.basis.row(i));
            }
        }
        Ok(y)
    }

    pub fn contains(&self, x: &[Elem]) -> Result<bool, LinalgError> {
        Ok(self.residual(x)?.iter().all(|&c| c == 0))
    }

    /// Coordinates of `x` in the RREF basis, if `x` lies in the space.
    pub fn coordinates(&self, x: &[Elem]) -> Result<Option<Vec<Elem>>, LinalgError> {
        if !self.contains(x)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| x[p]).collect()))
    }

    pub fn contains_space(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check(other.ambient())?;
        for r in other.basis.row_iter() {
            if !self.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other.ambient())?;
        Ok(Subspace::from_matrix(&self.basis.stack(&other.basis)?))
    }

    /// Orthogonal complement for the standard bilinear form.
    pub fn orthogonal(&self) -> Subspace {
        kernel_of_rref(&self.basis, &self.pivots)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other.ambient())?;
        Ok(self.orthogonal().sum(&other.orthogonal())?.orthogonal())
    }

    /// Uniform element of the space.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Elem> {
        let f = self.field();
        let coeffs: Vec<Elem> = (0..self.dim()).map(|_| f.random(rng)).collect();
        self.basis.vec_mul(&coeffs).expect("coefficient count equals dimension")
    }
}

/// Incremental rank of a growing list of vectors.
///
/// Rows are kept in insertion order, each with pivot entry 1 and zeros at the
/// pivots of earlier rows, so a new vector is reduced by a single forward
/// sweep. Over prime fields the sweep accumulates in `u64` and reduces only
/// the entry about to be used as a multiplier.
#[derive(Clone, Debug)]
pub struct RankAccumulator {
    field: Field,
    n: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
    wide: Vec<u64>,
}

impl RankAccumulator {
    pub fn new(field: &Field, n: usize) -> Self {
        RankAccumulator { field: field.clone(), n, rows: Vec::new(), pivots: Vec::new(), wide: vec![0; n] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn clear(&mut self) {
        self.rows.clear();
        self.pivots.clear();
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn push(&mut self, v: &[Elem]) -> bool {
        debug_assert_eq!(v.len(), self.n);
        if self.rows.len() == self.n {
            return false;
        }
        let reduced = if self.field.is_prime_field() { self.reduce_prime(v) } else { self.reduce_generic(v) };
        match reduced {
            Some((pivot, row)) => {
                self.rows.push(row);
                self.pivots.push(pivot);
                true
            }
            None => false,
        }
    }

    fn reduce_prime(&mut self, v: &[Elem]) -> Option<(usize, Vec<Elem>)> {
        let p = self.field.p() as u64;
        let w = &mut self.wide;
        for (a, &b) in w.iter_mut().zip(v) {
            *a = b as u64;
        }
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc] % p;
            if c == 0 {
                w[pc] = 0;
                continue;
            }
            let m = p - c;
            for j in pc..self.n {
                w[j] += m * row[j] as u64;
            }
            w[pc] = 0;
        }
        let pivot = (0..self.n).find(|&j| !w[j].is_multiple_of(p))?;
        let inv = self.field.inv((w[pivot] % p) as Elem).expect("nonzero") as u64;
        let mut row = vec![0; self.n];
        for j in pivot..self.n {
            row[j] = ((w[j] % p) * inv % p) as Elem;
        }
        Some((pivot, row))
    }

    fn reduce_generic(&self, v: &[Elem]) -> Option<(usize, Vec<Elem>)> {
        let f = &self.field;
        let mut y = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = y[pc];
            if c != 0 {
                let m = f.neg(c);
                for j in pc..self.n {
                    if row[j] != 0 {
                        y[j] = f.add(y[j], f.mul(m, row[j]));
                    }
                }
            }
        }
        let pivot = y.iter().position(|&x| x != 0)?;
        let inv = f.inv(y[pivot]).expect("nonzero");
        scale(f, &mut y[pivot..], inv);
        Some((pivot, y))
    }
}
