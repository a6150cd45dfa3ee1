//! GRS and twisted GRS codes, their quasi-GRS decomposition, and decoders.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::codes::{CodeError, LinearCode};
use crate::field::{Elem, Field};
use crate::linalg::{LinalgError, Matrix};
use crate::poly::{check_support, ev_unchecked, Poly, PolyError, PolySpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrsError {
    #[error("need 1 <= k < n <= q, got n={n} k={k} q={q}")]
    BadDimensions { n: usize, k: usize, q: u32 },
    #[error("{l} twists exceed dimension {k}")]
    TooManyTwists { l: usize, k: usize },
    #[error("t, h and eta must all have length l")]
    TwistLengthMismatch,
    #[error("twist {t} outside 1..={max}")]
    TwistOutOfRange { t: usize, max: usize },
    #[error("twist {0} is repeated")]
    RepeatedTwist(usize),
    #[error("hook {h} outside 0..{k}")]
    HookOutOfRange { h: usize, k: usize },
    #[error("hook {0} is repeated")]
    RepeatedHook(usize),
    #[error("twist coefficient {0} is zero")]
    ZeroEta(usize),
    #[error("word has length {found}, expected {expected}")]
    WordLength { expected: usize, found: usize },
    #[error("code has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no codeword within the decoding radius")]
    DecodeFailure,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

impl From<LinalgError> for GrsError {
    fn from(e: LinalgError) -> Self {
        GrsError::Code(CodeError::Linalg(e))
    }
}

/// Support, multipliers and dimension of `GRS_k(α, v)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrsParams {
    field: Field,
    alpha: Vec<Elem>,
    v: Vec<Elem>,
    k: usize,
}

impl GrsParams {
    pub fn new(field: &Field, alpha: Vec<Elem>, v: Vec<Elem>, k: usize) -> Result<Self, GrsError> {
        check_support(field, &alpha, &v)?;
        let n = alpha.len();
        if k == 0 || k >= n || n > field.q() as usize {
            return Err(GrsError::BadDimensions { n, k, q: field.q() });
        }
        Ok(GrsParams { field: field.clone(), alpha, v, k })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alpha(&self) -> &[Elem] {
        &self.alpha
    }

    pub fn v(&self) -> &[Elem] {
        &self.v
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Same support and multipliers, another dimension.
    pub fn with_k(&self, k: usize) -> Result<Self, GrsError> {
        Self::new(&self.field, self.alpha.clone(), self.v.clone(), k)
    }

    pub fn ev(&self, f: &Poly) -> Vec<Elem> {
        ev_unchecked(&self.alpha, &self.v, f)
    }

    /// Parameters of the dual code `GRS_{n−k}(α, u)`.
    pub fn dual(&self) -> Result<GrsParams, GrsError> {
        let f = &self.field;
        let u = dual_multipliers(f, &self.alpha)
            .iter()
            .zip(&self.v)
            .map(|(&a, &b)| f.div(a, b).expect("nonzero multiplier"))
            .collect();
        Self::new(f, self.alpha.clone(), u, self.n() - self.k)
    }
}

/// `u_i = ∏_{j≠i} (α_i − α_j)^{-1}`: `GRS_k(α, 1)^⊥ = GRS_{n−k}(α, u)`.
pub fn dual_multipliers(field: &Field, alpha: &[Elem]) -> Vec<Elem> {
    alpha
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let prod = alpha
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(1, |acc, (_, &b)| field.mul(acc, field.sub(a, b)));
            field.inv(prod).expect("distinct support")
        })
        .collect()
}

pub fn grs_code(p: &GrsParams) -> LinearCode {
    let space = PolySpace::all_below(&p.field, p.k, p.k);
    LinearCode::from_generator(&space.ev_matrix(&p.alpha, &p.v).expect("validated support"))
}

/// Secret TGRS parameters: `GRS_k(α, v)` with the monomials `x^{h_j}` replaced
/// by `x^{h_j} + η_j x^{k−1+t_j}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TgrsKey {
    grs: GrsParams,
    t: Vec<usize>,
    h: Vec<usize>,
    eta: Vec<Elem>,
}

impl TgrsKey {
    pub fn new(grs: GrsParams, t: Vec<usize>, h: Vec<usize>, eta: Vec<Elem>) -> Result<Self, GrsError> {
        let (n, k, l) = (grs.n(), grs.k(), t.len());
        if h.len() != l || eta.len() != l {
            return Err(GrsError::TwistLengthMismatch);
        }
        if l > k {
            return Err(GrsError::TooManyTwists { l, k });
        }
        for (j, &tj) in t.iter().enumerate() {
            if tj == 0 || tj > n - k {
                return Err(GrsError::TwistOutOfRange { t: tj, max: n - k });
            }
            if t[..j].contains(&tj) {
                return Err(GrsError::RepeatedTwist(tj));
            }
        }
        for (j, &hj) in h.iter().enumerate() {
            if hj >= k {
                return Err(GrsError::HookOutOfRange { h: hj, k });
            }
            if h[..j].contains(&hj) {
                return Err(GrsError::RepeatedHook(hj));
            }
        }
        if let Some(j) = eta.iter().position(|&e| e == 0) {
            return Err(GrsError::ZeroEta(j));
        }
        Ok(TgrsKey { grs, t, h, eta })
    }

    pub fn grs(&self) -> &GrsParams {
        &self.grs
    }

    pub fn field(&self) -> &Field {
        &self.grs.field
    }

    pub fn n(&self) -> usize {
        self.grs.n()
    }

    pub fn k(&self) -> usize {
        self.grs.k
    }

    /// Number of twists `ℓ`.
    pub fn l(&self) -> usize {
        self.t.len()
    }

    pub fn t(&self) -> &[usize] {
        &self.t
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    pub fn eta(&self) -> &[Elem] {
        &self.eta
    }

    /// `d_ℓ = k − 1 + max t`; `k − 1` without twists.
    pub fn d_l(&self) -> usize {
        self.k() - 1 + self.t.iter().copied().max().unwrap_or(0)
    }

    fn twisted_generator(&self, j: usize) -> Poly {
        let f = self.field();
        Poly::monomial(f, 1, self.h[j]).add(&Poly::monomial(f, self.eta[j], self.k() - 1 + self.t[j]))
    }

    /// Polynomial space of the code, with degree bound `n`.
    pub fn poly_space(&self) -> PolySpace {
        let (f, k, n) = (self.field(), self.k(), self.n());
        let mut gens: Vec<Poly> = (0..k).filter(|i| !self.h.contains(i)).map(|i| Poly::monomial(f, 1, i)).collect();
        gens.extend((0..self.l()).map(|j| self.twisted_generator(j)));
        PolySpace::span(f, n, &gens)
    }

    /// Polynomial encoding message coefficients `m_0..m_{k−1}`.
    pub fn message_poly(&self, msg: &[Elem]) -> Poly {
        let f = self.field();
        let mut p = Poly::new(f, msg.to_vec());
        for j in 0..self.l() {
            let c = f.mul(self.eta[j], msg[self.h[j]]);
            p = p.add(&Poly::monomial(f, c, self.k() - 1 + self.t[j]));
        }
        p
    }
}

pub fn tgrs_code(key: &TgrsKey) -> LinearCode {
    let m = key.poly_space().ev_matrix(key.grs.alpha(), key.grs.v()).expect("validated support");
    LinearCode::from_generator(&m)
}

/// `(C_0, C_1)` with `C_0 = ev(Mon(k, ĥ))` and `C_1` spanned by the twisted
/// generators.
pub fn qgrs_decompose(key: &TgrsKey) -> (LinearCode, LinearCode) {
    let (f, k, n) = (key.field(), key.k(), key.n());
    let g = &key.grs;
    let mon = PolySpace::monomials_without(f, k, &key.h, n);
    let c0 = LinearCode::from_generator(&mon.ev_matrix(g.alpha(), g.v()).expect("validated support"));
    let rows: Vec<Vec<Elem>> = (0..key.l()).map(|j| g.ev(&key.twisted_generator(j))).collect();
    let c1 = LinearCode::from_rows(f, n, &rows).expect("rows have length n");
    (c0, c1)
}

/// `dim(C ∩ GRS_k(α, v)) ≥ k − ℓ`.
pub fn is_qgrs_witnessed(c: &LinearCode, p: &GrsParams, l: usize) -> Result<bool, GrsError> {
    if c.k() != p.k {
        return Err(GrsError::DimensionMismatch { expected: p.k, found: c.k() });
    }
    let common = c.intersect(&grs_code(p))?;
    Ok(common.k() + l >= p.k)
}

pub fn hamming_distance(a: &[Elem], b: &[Elem]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Unique-decoding result.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decoded {
    /// Message polynomial.
    pub f: Poly,
    /// Positions where the received word differs from `ev(f)`.
    pub errors: Vec<usize>,
}

/// Berlekamp–Welch decoding up to `⌊(n−k)/2⌋` errors.
pub fn bw_decode(p: &GrsParams, y: &[Elem]) -> Result<Decoded, GrsError> {
    let (f, n, k) = (&p.field, p.n(), p.k);
    if y.len() != n {
        return Err(GrsError::WordLength { expected: n, found: y.len() });
    }
    let e = (n - k) / 2;
    // Unknowns: E_0..E_{e−1} (E monic of degree e) then Q_0..Q_{e+k−1}.
    // Equation i: Q(α_i) − w_i E_{<e}(α_i) = w_i α_i^e, with w_i = y_i / v_i.
    let unknowns = 2 * e + k;
    let mut m = Matrix::zeros(f, unknowns, n);
    let mut rhs = vec![0; n];
    for i in 0..n {
        let a = p.alpha[i];
        let w = f.div(y[i], p.v[i]).expect("nonzero multiplier");
        let mut pw = 1;
        for j in 0..e + k {
            if j < e {
                m.set(j, i, f.neg(f.mul(w, pw)));
            }
            m.set(e + j, i, pw);
            pw = f.mul(pw, a);
        }
        rhs[i] = f.mul(w, f.pow(a, e as u64));
    }
    let sol = m.solve_left(&rhs).map_err(|_| GrsError::DecodeFailure)?;
    let mut ec = sol[..e].to_vec();
    ec.push(1);
    let big_e = Poly::new(f, ec);
    let big_q = Poly::new(f, sol[e..].to_vec());
    let (quot, rem) = big_q.div_rem(&big_e)?;
    if !rem.is_zero() || quot.coeffs().len() > k {
        return Err(GrsError::DecodeFailure);
    }
    let c = p.ev(&quot);
    let errors: Vec<usize> = (0..n).filter(|&i| c[i] != y[i]).collect();
    if errors.len() > e {
        return Err(GrsError::DecodeFailure);
    }
    Ok(Decoded { f: quot, errors })
}

/// Decoding radius shared by the GRS and brute-force TGRS decoders.
pub fn decoding_radius(n: usize, k: usize) -> usize {
    (n - k) / 2
}

/// Every `k` columns of the generator are independent, i.e. the minimum
/// distance is `n − k + 1`. Exhaustive over `C(n, k)` column sets.
pub fn is_mds(c: &LinearCode) -> bool {
    let (n, k) = (c.n(), c.k());
    if k == 0 || k == n {
        return true;
    }
    let g = c.generator();
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        if g.select_columns(&cols).rank() < k {
            return false;
        }
        // next k-subset in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| cols[i] < n - k + i) else { return true };
        cols[i] += 1;
        for j in i + 1..k {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

/// Brute-force TGRS decoding: try every guess `g ∈ F_q^ℓ` for the hook
/// coefficients in lexicographic code order, GRS-decode the corrected word,
/// and accept the first re-encoding within the radius.
///
/// Returns the full code polynomial (message coefficients are its first `k`).
pub fn tgrs_decode(key: &TgrsKey, y: &[Elem]) -> Result<Poly, GrsError> {
    let (f, n, k, l) = (key.field(), key.n(), key.k(), key.l());
    if y.len() != n {
        return Err(GrsError::WordLength { expected: n, found: y.len() });
    }
    let radius = decoding_radius(n, k);
    let q = f.q() as u64;
    let total = q.checked_pow(l as u32).expect("guess space fits in u64");
    let twist_words: Vec<Vec<Elem>> = (0..l)
        .map(|j| key.grs.ev(&Poly::monomial(f, key.eta[j], k - 1 + key.t[j])))
        .collect();
    let mut shifted = vec![0; n];
    for idx in 0..total {
        shifted.copy_from_slice(y);
        let mut rest = idx;
        for j in (0..l).rev() {
            let g = (rest % q) as Elem;
            rest /= q;
            if g != 0 {
                for (s, &w) in shifted.iter_mut().zip(&twist_words[j]) {
                    *s = f.sub(*s, f.mul(g, w));
                }
            }
        }
        let Ok(dec) = bw_decode(&key.grs, &shifted) else { continue };
        let full = key.message_poly(&dec.f.coeffs_padded(k));
        if hamming_distance(&key.grs.ev(&full), y) <= radius {
            return Ok(full);
        }
    }
    Err(GrsError::DecodeFailure)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_key() -> TgrsKey {
        let f13 = Field::prime(13).unwrap();
        let g = GrsParams::new(&f13, (0..6).collect(), vec![1; 6], 3).unwrap();
        TgrsKey::new(g, vec![2], vec![1], vec![1]).unwrap()
    }

    #[test]
    fn rs_generator_is_vandermonde_rref() {
        let f7 = Field::prime(7).unwrap();
        let g = GrsParams::new(&f7, (0..7).collect(), vec![1; 7], 3).unwrap();
        let rows: Vec<Vec<Elem>> = (0..3).map(|j| (0..7).map(|a| f7.pow(a, j)).collect()).collect();
        assert_eq!(grs_code(&g), LinearCode::from_rows(&f7, 7, &rows).unwrap());
    }

    #[test]
    fn grs_codes_are_mds() {
        let f = Field::prime(13).unwrap();
        for k in 1..12 {
            let v = (1..=12).collect();
            let g = GrsParams::new(&f, (0..12).collect(), v, k).unwrap();
            assert!(is_mds(&grs_code(&g)), "k = {k}");
        }
        let c = LinearCode::from_rows(&f, 3, &[[1, 0, 0], [0, 1, 0]]).unwrap();
        assert!(!is_mds(&c));
    }

    #[test]
    fn twisted_row_and_decomposition() {
        let key = example_key();
        let f = key.field().clone();
        let c = tgrs_code(&key);
        assert!(c.contains(&[0, 2, 5, 6, 0, 6]).unwrap());
        let (c0, c1) = qgrs_decompose(&key);
        let alpha: Vec<Elem> = (0..6).collect();
        let e0 = |d| crate::poly::ev(&alpha, &[1; 6], &Poly::monomial(&f, 1, d)).unwrap();
        assert_eq!(c0, LinearCode::from_rows(&f, 6, &[e0(0), e0(2)]).unwrap());
        assert_eq!(c1, LinearCode::from_rows(&f, 6, &[[0, 2, 5, 6, 0, 6]]).unwrap());
        assert_eq!(c0.sum(&c1).unwrap(), c);
        assert!(is_qgrs_witnessed(&c, key.grs(), 1).unwrap());
    }

    #[test]
    fn key_validation() {
        let key = example_key();
        let g = key.grs().clone();
        assert_eq!(TgrsKey::new(g.clone(), vec![2], vec![1], vec![0]), Err(GrsError::ZeroEta(0)));
        assert_eq!(TgrsKey::new(g.clone(), vec![4], vec![1], vec![1]), Err(GrsError::TwistOutOfRange { t: 4, max: 3 }));
        assert_eq!(TgrsKey::new(g.clone(), vec![1, 2], vec![1, 1], vec![1, 1]), Err(GrsError::RepeatedHook(1)));
        assert_eq!(TgrsKey::new(g.clone(), vec![2, 2], vec![0, 1], vec![1, 1]), Err(GrsError::RepeatedTwist(2)));
        assert_eq!(TgrsKey::new(g, vec![1], vec![3], vec![1]), Err(GrsError::HookOutOfRange { h: 3, k: 3 }));
        let no_twist = TgrsKey::new(key.grs().clone(), vec![], vec![], vec![]).unwrap();
        let (c0, c1) = qgrs_decompose(&no_twist);
        assert_eq!(c0, grs_code(key.grs()));
        assert_eq!(c1.k(), 0);
    }

    #[test]
    fn bw_single_error() {
        let f7 = Field::prime(7).unwrap();
        let g = GrsParams::new(&f7, (0..6).collect(), vec![1; 6], 2).unwrap();
        let fx = Poly::new(&f7, vec![1, 1]);
        let mut y = g.ev(&fx);
        y[4] = f7.add(y[4], 3);
        let d = bw_decode(&g, &y).unwrap();
        assert_eq!(d.f, fx);
        assert_eq!(d.errors, vec![4]);
    }

    #[test]
    fn tgrs_decode_error_free() {
        let key = example_key();
        let msg = [3, 7, 11];
        let full = key.message_poly(&msg);
        let y = key.grs().ev(&full);
        assert!(tgrs_code(&key).contains(&y).unwrap());
        assert_eq!(tgrs_decode(&key, &y).unwrap(), full);
    }
}
