//! Linear codes: duals, shortenings and Schur products.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use thiserror::Error;

use crate::field::{Elem, Field};
use crate::linalg::{LinalgError, Matrix, RankAccumulator, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("dimension {k} exceeds length {n}")]
    DimensionTooLarge { n: usize, k: usize },
    #[error("coordinate {0} out of range")]
    IndexOutOfRange(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A linear code given by its canonical RREF generator. The zero code
/// (`k = 0`) is allowed and stands for the empty code.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCode {
    gen: Subspace,
}

impl LinearCode {
    /// Row space of `g`.
    pub fn from_generator(g: &Matrix) -> Self {
        LinearCode { gen: Subspace::from_matrix(g) }
    }

    pub fn from_rows<R: AsRef<[Elem]>>(field: &Field, n: usize, rows: &[R]) -> Result<Self, CodeError> {
        Ok(LinearCode { gen: Subspace::from_rows(field, n, rows)? })
    }

    pub fn from_subspace(gen: Subspace) -> Self {
        LinearCode { gen }
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        LinearCode { gen: Subspace::zero(field, n) }
    }

    pub fn full(field: &Field, n: usize) -> Self {
        LinearCode { gen: Subspace::full(field, n) }
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn n(&self) -> usize {
        self.gen.ambient()
    }

    pub fn k(&self) -> usize {
        self.gen.dim()
    }

    /// Canonical (RREF) generator matrix.
    pub fn generator(&self) -> &Matrix {
        self.gen.basis()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.gen
    }

    pub fn contains(&self, word: &[Elem]) -> Result<bool, CodeError> {
        Ok(self.gen.contains(word)?)
    }

    pub fn contains_code(&self, other: &LinearCode) -> Result<bool, CodeError> {
        Ok(self.gen.contains_space(&other.gen)?)
    }

    pub fn encode(&self, msg: &[Elem]) -> Result<Vec<Elem>, CodeError> {
        Ok(self.generator().vec_mul(msg)?)
    }

    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Elem> {
        self.gen.random_element(rng)
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode { gen: self.gen.orthogonal() }
    }

    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode, CodeError> {
        Ok(LinearCode { gen: self.gen.sum(&other.gen)? })
    }

    pub fn intersect(&self, other: &LinearCode) -> Result<LinearCode, CodeError> {
        Ok(LinearCode { gen: self.gen.intersect(&other.gen)? })
    }

    fn check_indices(&self, indices: &[usize]) -> Result<Vec<bool>, CodeError> {
        let mut mask = vec![false; self.n()];
        for &i in indices {
            *mask.get_mut(i).ok_or(CodeError::IndexOutOfRange(i))? = true;
        }
        Ok(mask)
    }

    /// Words vanishing on `indices`. With `lifted` the zero coordinates are
    /// kept, otherwise they are deleted.
    pub fn shorten(&self, indices: &[usize], lifted: bool) -> Result<LinearCode, CodeError> {
        let mask = self.check_indices(indices)?;
        let inside: Vec<usize> = (0..self.n()).filter(|&i| mask[i]).collect();
        let outside: Vec<usize> = (0..self.n()).filter(|&i| !mask[i]).collect();
        let order: Vec<usize> = inside.iter().chain(&outside).copied().collect();
        let r = self.generator().select_columns(&order).rref();
        let keep: Vec<usize> = (0..r.rank).filter(|&i| r.pivots[i] >= inside.len()).collect();
        let rows = r.matrix.select_rows(&keep);
        let field = self.field();
        if lifted {
            let mut out = Matrix::zeros(field, rows.rows(), self.n());
            for row in 0..rows.rows() {
                for (j, &c) in order.iter().enumerate() {
                    out.set(row, c, rows.get(row, j));
                }
            }
            Ok(LinearCode::from_generator(&out))
        } else {
            let tail: Vec<usize> = (inside.len()..self.n()).collect();
            Ok(LinearCode::from_generator(&rows.select_columns(&tail)))
        }
    }

    /// Delete the coordinates in `indices`.
    pub fn puncture(&self, indices: &[usize]) -> Result<LinearCode, CodeError> {
        let mask = self.check_indices(indices)?;
        let keep: Vec<usize> = (0..self.n()).filter(|&i| !mask[i]).collect();
        Ok(LinearCode::from_generator(&self.generator().select_columns(&keep)))
    }

    /// `C ⋆ C`.
    pub fn square(&self) -> LinearCode {
        schur_product(self, self).expect("same length")
    }
}

/// Componentwise product.
pub fn star(field: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.mul(x, y)).collect()
}

/// `⟨a ⋆ b : a ∈ A, b ∈ B⟩`.
pub fn schur_product(a: &LinearCode, b: &LinearCode) -> Result<LinearCode, CodeError> {
    if a.n() != b.n() {
        return Err(CodeError::LengthMismatch(a.n(), b.n()));
    }
    let (field, n) = (a.field(), a.n());
    let same = a == b;
    let mut acc = RankAccumulator::new(field, n);
    let mut kept = Vec::new();
    'outer: for i in 0..a.k() {
        let start = if same { i } else { 0 };
        for j in start..b.k() {
            let w = star(field, a.generator().row(i), b.generator().row(j));
            if acc.push(&w) {
                kept.push(w);
                if acc.rank() == n {
                    break 'outer;
                }
            }
        }
    }
    LinearCode::from_rows(field, n, &kept)
}

/// Dimension of `⟨b_i ⋆ c : c ∈ C⟩` over the given vectors `b_i`.
///
/// With `cap = Some(m)` the computation stops as soon as the dimension
/// exceeds `m` and reports `m + 1`.
pub fn span_products(bs: &[&[Elem]], c: &LinearCode, cap: Option<usize>) -> Result<usize, CodeError> {
    let mut acc = RankAccumulator::new(c.field(), c.n());
    span_products_with(&mut acc, bs, c, cap)
}

/// [`span_products`] reusing a caller-owned accumulator (cleared first).
pub fn span_products_with(
    acc: &mut RankAccumulator,
    bs: &[&[Elem]],
    c: &LinearCode,
    cap: Option<usize>,
) -> Result<usize, CodeError> {
    let (field, n) = (c.field(), c.n());
    if let Some(b) = bs.iter().find(|b| b.len() != n) {
        return Err(CodeError::LengthMismatch(b.len(), n));
    }
    acc.clear();
    let mut w = vec![0; n];
    for b in bs {
        for row in c.generator().row_iter() {
            for ((o, &x), &y) in w.iter_mut().zip(*b).zip(row) {
                *o = field.mul(x, y);
            }
            acc.push(&w);
            if let Some(m) = cap {
                if acc.rank() > m {
                    return Ok(m + 1);
                }
            }
        }
    }
    Ok(acc.rank())
}

/// Code with generator `[I_k | R]`, `R` uniform, deterministic in `seed`.
pub fn random_code(field: &Field, n: usize, k: usize, seed: u64) -> Result<LinearCode, CodeError> {
    let mut rng = crate::rng::stream(seed, b"random_code", 0);
    random_code_with(field, n, k, &mut rng)
}

pub fn random_code_with<R: Rng + ?Sized>(field: &Field, n: usize, k: usize, rng: &mut R) -> Result<LinearCode, CodeError> {
    if k > n {
        return Err(CodeError::DimensionTooLarge { n, k });
    }
    let mut g = Matrix::zeros(field, k, n);
    for i in 0..k {
        g.set(i, i, 1);
        for j in k..n {
            g.set(i, j, field.random(rng));
        }
    }
    Ok(LinearCode::from_generator(&g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn dual_of_full_space_is_empty() {
        let f5 = f(5);
        let full = LinearCode::full(&f5, 4);
        assert_eq!(full.dual().k(), 0);
        assert_eq!(full.dual().dual(), full);
    }

    #[test]
    fn shorten_trivial_and_lifted() {
        let f11 = f(11);
        let c = random_code(&f11, 10, 4, 1).unwrap();
        assert_eq!(c.shorten(&[], false).unwrap(), c);
        let s = c.shorten(&[0, 3], false).unwrap();
        let l = c.shorten(&[0, 3], true).unwrap();
        assert_eq!(s.n(), 8);
        assert_eq!(l.n(), 10);
        assert_eq!(s.k(), l.k());
        assert!(c.contains_code(&l).unwrap());
        assert_eq!(l.puncture(&[0, 3]).unwrap(), s);
        assert_eq!(c.shorten(&[10], false), Err(CodeError::IndexOutOfRange(10)));
    }

    #[test]
    fn product_with_all_ones() {
        let f7 = f(7);
        let ones = LinearCode::from_rows(&f7, 6, &[[1; 6]]).unwrap();
        let b = random_code(&f7, 6, 3, 9).unwrap();
        assert_eq!(schur_product(&ones, &b).unwrap(), b);
        let other = random_code(&f7, 5, 3, 9).unwrap();
        assert_eq!(schur_product(&ones, &other), Err(CodeError::LengthMismatch(6, 5)));
    }

    #[test]
    fn span_products_zero_vectors() {
        let f7 = f(7);
        let c = random_code(&f7, 8, 3, 2).unwrap();
        let z = [0; 8];
        assert_eq!(span_products(&[&z, &z, &z], &c, None).unwrap(), 0);
    }

    #[test]
    fn random_code_is_seeded() {
        let f7 = f(7);
        assert_eq!(random_code(&f7, 9, 4, 5).unwrap(), random_code(&f7, 9, 4, 5).unwrap());
        assert_eq!(random_code(&f7, 5, 5, 5).unwrap(), LinearCode::full(&f7, 5));
    }
}
