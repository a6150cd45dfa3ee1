//! Univariate polynomials over `F_q` and spaces of them.
//!
//! [`PolySpace`] keeps an echelon-by-degree basis: distinct degrees in
//! increasing order, monic, and with zero coefficient at every other basis
//! member's degree. That basis is unique, so spaces compare by equality.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::Rng;
use thiserror::Error;

use crate::field::{Elem, Field};
use crate::linalg::{Matrix, RankAccumulator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("support has a repeated element at positions {0} and {1}")]
    RepeatedAlpha(usize, usize),
    #[error("multiplier at position {0} is zero")]
    ZeroMultiplier(usize),
    #[error("vector lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

/// Polynomial with coefficients low degree first and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, 1)
    }

    /// `c · x^d`.
    pub fn monomial(field: &Field, c: Elem, d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = c;
        Self::new(field, coeffs)
    }

    /// `∏ (x − r)` over the given roots.
    pub fn from_roots(field: &Field, roots: &[Elem]) -> Self {
        let mut p = Self::one(field);
        for &r in roots {
            p = p.mul(&Self::new(field, vec![field.neg(r), 1]));
        }
        p
    }

    /// Uniform polynomial of degree below `bound`.
    pub fn random<R: Rng + ?Sized>(field: &Field, bound: usize, rng: &mut R) -> Self {
        Self::new(field, (0..bound).map(|_| field.random(rng)).collect())
    }

    /// Uniform polynomial of degree exactly `d`.
    pub fn random_of_degree<R: Rng + ?Sized>(field: &Field, d: usize, rng: &mut R) -> Self {
        let mut coeffs: Vec<Elem> = (0..d).map(|_| field.random(rng)).collect();
        coeffs.push(field.random_nonzero(rng));
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Coefficients padded or truncated to exactly `len` entries.
    pub fn coeffs_padded(&self, len: usize) -> Vec<Elem> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != 0 {
                for (j, &b) in other.coeffs.iter().enumerate() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Poly::new(f, out)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), PolyError> {
        let f = &self.field;
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dd = d.coeffs.len() - 1;
        let inv_lead = f.inv(d.leading()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut q = vec![0; r.len() - dd];
        for shift in (0..q.len()).rev() {
            let c = f.mul(r[shift + dd], inv_lead);
            q[shift] = c;
            if c != 0 {
                for (i, &b) in d.coeffs.iter().enumerate() {
                    r[shift + i] = f.sub(r[shift + i], f.mul(c, b));
                }
            }
        }
        r.truncate(dd);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    /// Monic multiple (zero stays zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()).expect("nonzero"))
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }
}

/// Monic gcd by Euclid's algorithm.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly, PolyError> {
    if a.is_zero() && b.is_zero() {
        return Err(PolyError::BothZero);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.div_rem(&y)?.1;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

/// Checks that `alpha` is repetition-free and `v` has no zero entry.
pub fn check_support(field: &Field, alpha: &[Elem], v: &[Elem]) -> Result<(), PolyError> {
    if alpha.len() != v.len() {
        return Err(PolyError::LengthMismatch(alpha.len(), v.len()));
    }
    let mut seen = vec![usize::MAX; field.q() as usize];
    for (i, &a) in alpha.iter().enumerate() {
        let slot = &mut seen[a as usize];
        if *slot != usize::MAX {
            return Err(PolyError::RepeatedAlpha(*slot, i));
        }
        *slot = i;
    }
    if let Some(i) = v.iter().position(|&x| x == 0) {
        return Err(PolyError::ZeroMultiplier(i));
    }
    Ok(())
}

/// `(v_i f(α_i))_i`.
pub fn ev(alpha: &[Elem], v: &[Elem], f: &Poly) -> Result<Vec<Elem>, PolyError> {
    check_support(f.field(), alpha, v)?;
    Ok(ev_unchecked(alpha, v, f))
}

pub(crate) fn ev_unchecked(alpha: &[Elem], v: &[Elem], f: &Poly) -> Vec<Elem> {
    let fld = f.field();
    alpha.iter().zip(v).map(|(&a, &w)| fld.mul(w, f.eval(a))).collect()
}

/// The unique `f` with `deg f < n` and `ev(α, v, f) = c`.
pub fn interpolate(field: &Field, alpha: &[Elem], v: &[Elem], c: &[Elem]) -> Result<Poly, PolyError> {
    check_support(field, alpha, v)?;
    if c.len() != alpha.len() {
        return Err(PolyError::LengthMismatch(c.len(), alpha.len()));
    }
    let full = Poly::from_roots(field, alpha);
    let mut acc = Poly::zero(field);
    for (i, (&a, &w)) in alpha.iter().zip(v).enumerate() {
        if c[i] == 0 {
            continue;
        }
        // ℓ_i = ∏_{j≠i} (x − α_j) / ∏_{j≠i} (α_i − α_j)
        let (li, _) = full.div_rem(&Poly::new(field, vec![field.neg(a), 1]))?;
        let denom = li.eval(a);
        let y = field.div(c[i], field.mul(w, denom)).expect("distinct support");
        acc = acc.add(&li.scale(y));
    }
    Ok(acc)
}

/// Subspace of polynomials of degree `< bound`, in echelon-by-degree form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolySpace {
    field: Field,
    bound: usize,
    basis: Vec<Poly>,
}

impl PolySpace {
    /// Span of `polys`, all of degree `< bound`.
    pub fn span(field: &Field, bound: usize, polys: &[Poly]) -> PolySpace {
        // Column j carries the coefficient of x^{bound-1-j}, so RREF pivots
        // are leading terms.
        let rows: Vec<Vec<Elem>> = polys
            .iter()
            .map(|p| {
                assert!(p.coeffs.len() <= bound, "polynomial exceeds the degree bound");
                (0..bound).map(|j| p.coeff(bound - 1 - j)).collect()
            })
            .collect();
        let m = Matrix::from_rows(field, bound, &rows).expect("rows have length bound");
        let r = m.rref();
        let mut basis: Vec<Poly> = (0..r.rank)
            .map(|i| {
                let row = r.matrix.row(i);
                Poly::new(field, (0..bound).map(|d| row[bound - 1 - d]).collect())
            })
            .collect();
        basis.reverse();
        PolySpace { field: field.clone(), bound, basis }
    }

    /// `F_q[x]_{<k}` inside degree bound `bound`.
    pub fn all_below(field: &Field, k: usize, bound: usize) -> PolySpace {
        assert!(k <= bound);
        let basis = (0..k).map(|i| Poly::monomial(field, 1, i)).collect();
        PolySpace { field: field.clone(), bound, basis }
    }

    /// Span of `x^i` for `i < k` with the listed exponents removed.
    pub fn monomials_without(field: &Field, k: usize, removed: &[usize], bound: usize) -> PolySpace {
        assert!(k <= bound);
        let basis = (0..k).filter(|i| !removed.contains(i)).map(|i| Poly::monomial(field, 1, i)).collect();
        PolySpace { field: field.clone(), bound, basis }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.basis.iter().map(|p| p.coeffs.len() - 1).collect()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        let mut r = f.clone();
        for b in self.basis.iter().rev() {
            let d = b.coeffs.len() - 1;
            let c = r.coeff(d);
            if c != 0 {
                r = r.sub(&b.scale(c));
            }
        }
        r.is_zero()
    }

    /// Same space, viewed with a different degree bound.
    pub fn with_bound(&self, bound: usize) -> PolySpace {
        assert!(self.basis.iter().all(|p| p.coeffs.len() <= bound));
        PolySpace { field: self.field.clone(), bound, basis: self.basis.clone() }
    }

    /// Uniform element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for b in &self.basis {
            acc = acc.add(&b.scale(self.field.random(rng)));
        }
        acc
    }

    /// Generator matrix of `ev_{α,v}` applied to the basis.
    pub fn ev_matrix(&self, alpha: &[Elem], v: &[Elem]) -> Result<Matrix, PolyError> {
        check_support(&self.field, alpha, v)?;
        let rows: Vec<Vec<Elem>> = self.basis.iter().map(|p| ev_unchecked(alpha, v, p)).collect();
        Ok(Matrix::from_rows(&self.field, alpha.len(), &rows).expect("rows have length n"))
    }
}

/// `⟨fg : f ∈ P, g ∈ R⟩`.
pub fn space_product(p: &PolySpace, r: &PolySpace) -> PolySpace {
    let bound = (p.bound + r.bound).saturating_sub(1).max(1);
    let mut products = Vec::with_capacity(p.dim() * r.dim());
    for a in &p.basis {
        for b in &r.basis {
            products.push(a.mul(b));
        }
    }
    PolySpace::span(&p.field, bound, &products)
}

/// Dimension of `⟨f_1, …, f_s⟩ · R` with early exit once it exceeds `cap`.
///
/// Returns `cap + 1` whenever the true dimension is larger than `cap`.
pub fn product_dim_capped(fs: &[Poly], r: &PolySpace, cap: usize) -> usize {
    let bound = fs.iter().map(|f| f.coeffs.len()).max().unwrap_or(0) + r.bound;
    let mut acc = RankAccumulator::new(&r.field, bound.max(1));
    for f in fs {
        for b in &r.basis {
            acc.push(&f.mul(b).coeffs_padded(bound.max(1)));
            if acc.rank() > cap {
                return cap + 1;
            }
        }
    }
    acc.rank()
}

/// `P ∩ (p_I)` with `p_I = ∏_{i∈I} (x − α_i)`.
pub fn shorten_space(p: &PolySpace, alpha: &[Elem], indices: &[usize]) -> PolySpace {
    if indices.is_empty() {
        return p.clone();
    }
    let f = &p.field;
    // Rows: basis members evaluated at α_I; left kernel = combinations
    // vanishing on α_I.
    let rows: Vec<Vec<Elem>> = p.basis.iter().map(|b| indices.iter().map(|&i| b.eval(alpha[i])).collect()).collect();
    let e = Matrix::from_rows(f, indices.len(), &rows).expect("uniform rows");
    let kernel = e.transpose().kernel();
    let combos: Vec<Poly> = kernel
        .basis()
        .row_iter()
        .map(|coef| {
            let mut acc = Poly::zero(f);
            for (c, b) in coef.iter().zip(&p.basis) {
                if *c != 0 {
                    acc = acc.add(&b.scale(*c));
                }
            }
            acc
        })
        .collect();
    PolySpace::span(f, p.bound, &combos)
}
