//! Exhaustive and Monte-Carlo checks of the polynomial counting facts behind
//! the triple search: product-space dimensions, gcd-degree counts, the gcd
//! condition and the partition of random triples by product dimension.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use rand::Rng;
use thiserror::Error;

use crate::exec::Executor;
use crate::field::{Elem, Field};
use crate::linalg::RankAccumulator;
use crate::poly::{gcd, product_dim_capped, Degree, Poly, PolySpace};
use crate::rng::stream;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("degree {deg} is not below k = {k}")]
    DegreeTooLarge { deg: usize, k: usize },
    #[error("enumeration of {size} pairs exceeds the limit of {limit}")]
    TooLarge { size: u128, limit: u64 },
    #[error("sample count must be positive")]
    NoSamples,
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
}

fn finite_degree(f: &Poly) -> Result<usize, LemmaError> {
    f.degree().finite().ok_or(LemmaError::ZeroPolynomial)
}

fn gcd_degree(f: &Poly, g: &Poly) -> usize {
    gcd(f, g).expect("nonzero inputs").degree().finite().expect("gcd of nonzero polynomials")
}

/// `(measured, predicted)` for `dim(f F_q[x]_{<k} + g F_q[x]_{<k})`, the
/// prediction being `k + max(deg f, deg g) − deg gcd(f, g)`.
pub fn dim_sum_check(f: &Poly, g: &Poly, k: usize) -> Result<(usize, usize), LemmaError> {
    let (s, u) = (finite_degree(f)?, finite_degree(g)?);
    for deg in [s, u] {
        if deg >= k {
            return Err(LemmaError::DegreeTooLarge { deg, k });
        }
    }
    let width = 2 * k - 1;
    let mut acc = RankAccumulator::new(f.field(), width);
    for p in [f, g] {
        for j in 0..k {
            // x^j p is a coefficient shift
            let mut row = vec![0; width];
            row[j..j + p.coeffs().len()].copy_from_slice(p.coeffs());
            acc.push(&row);
        }
    }
    Ok((acc.rank(), k + s.max(u) - gcd_degree(f, g)))
}

/// Seeded instances `(f, g, k)` with `1 ≤ k ≤ k_max` and `f, g` uniform
/// nonzero polynomials of degree `< k`.
pub fn dim_sum_instances(field: &Field, k_max: usize, count: usize, seed: u64) -> Vec<(Poly, Poly, usize)> {
    (0..count as u64)
        .map(|i| {
            let mut rng = stream(seed, b"dim_sum", i);
            let k = rng.gen_range(1..=k_max);
            let mut nonzero = || loop {
                let f = Poly::random(field, k, &mut rng);
                if !f.is_zero() {
                    return f;
                }
            };
            let f = nonzero();
            (f, nonzero(), k)
        })
        .collect()
}

/// Largest pair count [`gcd_census`] enumerates.
pub const CENSUS_LIMIT: u64 = 10_000_000;

/// Pairs `(f, g)` with `deg f = s`, `deg g = u`, counted by `deg gcd(f, g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdCensus {
    pub q: u64,
    pub s: usize,
    pub u: usize,
    /// `counts[i] = |B(s, u, i)|` for `i ≤ min(s, u)`.
    pub counts: Vec<u64>,
    /// `|A(s, u)|`.
    pub total: u64,
}

impl GcdCensus {
    /// `(q − 1)² q^{s+u}`.
    pub fn predicted_total(&self) -> u64 {
        (self.q - 1).pow(2) * self.q.pow((self.s + self.u) as u32)
    }

    /// `(q − 1)³ q^{s+u−i−1}` as printed for every `i ≤ min(s, u)`; rational
    /// because the exponent is `−1` at `s = u = i = 0`.
    pub fn predicted(&self, i: usize) -> Ratio<u64> {
        let num = (self.q - 1).pow(3) * self.q.pow((self.s + self.u - i) as u32);
        Ratio::new(num, self.q)
    }

    /// `|B_j(s, u)| / |A(s, u)|`.
    pub fn density_below(&self, j: usize) -> Ratio<u64> {
        let below: u64 = self.counts.iter().take(j + 1).sum();
        Ratio::new(below, self.total)
    }
}

fn polys_of_degree(field: &Field, d: usize) -> Vec<Poly> {
    let q = field.q() as u64;
    let count = (q - 1) * q.pow(d as u32);
    (0..count)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push((idx % q) as Elem);
                idx /= q;
            }
            c.push((idx + 1) as Elem);
            Poly::new(field, c)
        })
        .collect()
}

/// Exhaustive census of all pairs of exact degrees `(s, u)`.
pub fn gcd_census<E: Executor>(field: &Field, s: usize, u: usize, exec: &E) -> Result<GcdCensus, LemmaError> {
    let q = field.q() as u64;
    let size = (q as u128 - 1).pow(2) * (q as u128).pow((s + u) as u32);
    if size > CENSUS_LIMIT as u128 {
        return Err(LemmaError::TooLarge { size, limit: CENSUS_LIMIT });
    }
    let fs = polys_of_degree(field, s);
    let gs = polys_of_degree(field, u);
    let m = s.min(u);
    let rows = exec.map(0..fs.len() as u64, |a| {
        let mut counts = vec![0u64; m + 1];
        for g in &gs {
            counts[gcd_degree(&fs[a as usize], g)] += 1;
        }
        counts
    });
    let mut counts = vec![0u64; m + 1];
    for row in rows {
        for (c, r) in counts.iter_mut().zip(row) {
            *c += r;
        }
    }
    Ok(GcdCensus { q, s, u, counts, total: size as u64 })
}

/// Exact `|B_j(s, u)| / |A(s, u)|` by enumeration.
pub fn density_below<E: Executor>(field: &Field, s: usize, u: usize, j: usize, exec: &E) -> Result<Ratio<u64>, LemmaError> {
    if j > s.min(u) {
        return Err(LemmaError::InvalidParams("need j <= min(s, u)"));
    }
    Ok(gcd_census(field, s, u, exec)?.density_below(j))
}

/// `1 − q^{−(j+1)}`.
pub fn predicted_density_below(q: u64, j: usize) -> Ratio<u64> {
    let d = q.pow(j as u32 + 1);
    Ratio::new(d - 1, d)
}

/// Strict upper bound on `deg gcd(f, g)` in the gcd condition for degrees
/// `s, u`: `max(s, u) − 5` when `t > k`, else `max(s, u) − (k − t) − 5`.
pub fn gcd_condition_bound(s: usize, u: usize, k: usize, t: usize) -> i64 {
    let m = s.max(u) as i64;
    if t > k {
        m - 5
    } else {
        m - (k - t) as i64 - 5
    }
}

pub fn gcd_condition(f: &Poly, g: &Poly, k: usize, t: usize) -> Result<bool, LemmaError> {
    let (s, u) = (finite_degree(f)?, finite_degree(g)?);
    for deg in [s, u] {
        if deg >= k {
            return Err(LemmaError::DegreeTooLarge { deg, k });
        }
    }
    Ok((gcd_degree(f, g) as i64) < gcd_condition_bound(s, u, k, t))
}

/// A Bernoulli frequency estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub hits: u64,
    pub samples: u64,
    pub seed: u64,
}

impl Estimate {
    pub fn frequency(&self) -> f64 {
        self.hits as f64 / self.samples as f64
    }

    /// Binomial standard error `sqrt(p (1 − p) / N)` at a reference
    /// probability `p`.
    pub fn sigma_at(&self, p: f64) -> f64 {
        libm::sqrt(p * (1.0 - p) / self.samples as f64)
    }

    /// Binomial standard error at the observed frequency.
    pub fn sigma(&self) -> f64 {
        self.sigma_at(self.frequency())
    }
}

const CHUNK: u64 = 1 << 14;

/// Fraction of uniform pairs in `F_q[x]_{<k}²` satisfying the gcd condition;
/// pairs containing the zero polynomial count as failures.
pub fn g_density_mc<E: Executor>(
    field: &Field,
    k: usize,
    t: usize,
    samples: u64,
    seed: u64,
    exec: &E,
) -> Result<Estimate, LemmaError> {
    if samples == 0 {
        return Err(LemmaError::NoSamples);
    }
    let chunks = samples.div_ceil(CHUNK);
    let hits = exec.map(0..chunks, |c| {
        let mut rng = stream(seed, b"gdensity", c);
        let n = CHUNK.min(samples - c * CHUNK);
        (0..n)
            .filter(|_| {
                let f = Poly::random(field, k, &mut rng);
                let g = Poly::random(field, k, &mut rng);
                gcd_condition(&f, &g, k, t).unwrap_or(false)
            })
            .count() as u64
    });
    Ok(Estimate { hits: hits.into_iter().sum(), samples, seed })
}

/// The implication of the density transfer from `F_q[x]_{<k}²` to a
/// codimension-one subspace: density `≥ 1 − q^{−w}` on the full space
/// forces `≥ 1 − q^{−(w−2)}` on the subspace.
pub fn density_transfer_implication(q: u64, w: i32, density_full: f64, density_sub: f64) -> bool {
    let q = q as f64;
    let premise = density_full >= 1.0 - libm::pow(q, -(w as f64));
    !premise || density_sub >= 1.0 - libm::pow(q, -((w - 2) as f64))
}

/// `R = E' ⊕ ⟨c⟩` with `E'` of codimension one in `F_q[x]_{<k}` and
/// `deg c = k − 1 + t`, `t ≥ 1`.
#[derive(Debug, Clone)]
pub struct TripleSetup {
    k: usize,
    t: usize,
    e_prime: PolySpace,
    c: Poly,
    r: PolySpace,
    // #{e ∈ basis(E') : deg c + deg e ≥ 2k − 1}
    large: usize,
}

/// Bucket of a triple in the partition `R³ = E'³ ⊔ Γ ⊔ Ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleClass {
    /// All three members lie in `E'`.
    Inside,
    /// Not all in `E'`, product dimension `≤ 2k + 2`.
    Gamma,
    /// Product dimension `> 2k + 2`.
    Psi,
}

impl TripleSetup {
    pub fn new(e_prime: &PolySpace, c: &Poly) -> Result<Self, LemmaError> {
        let k = e_prime.dim() + 1;
        if e_prime.degrees().iter().any(|&d| d >= k) {
            return Err(LemmaError::InvalidParams("E' must lie in F_q[x]_{<k}"));
        }
        let dc = finite_degree(c)?;
        if dc < k {
            return Err(LemmaError::InvalidParams("deg c must be at least k"));
        }
        let f = e_prime.field();
        let mut gens = e_prime.basis().to_vec();
        gens.push(c.clone());
        let r = PolySpace::span(f, dc + 1, &gens);
        let large = e_prime.degrees().iter().filter(|&&d| dc + d + 1 >= 2 * k).count();
        Ok(TripleSetup { k, t: dc + 1 - k, e_prime: e_prime.with_bound(dc + 1), c: c.clone(), r, large })
    }

    /// `E' = ⟨x^i : i < k, i ≠ h⟩` and `c = x^h + η x^{k−1+t}`.
    pub fn twisted(field: &Field, k: usize, t: usize, h: usize, eta: Elem) -> Result<Self, LemmaError> {
        if h >= k || t == 0 || eta == 0 {
            return Err(LemmaError::InvalidParams("need h < k, t >= 1, eta != 0"));
        }
        let c = Poly::monomial(field, 1, h).add(&Poly::monomial(field, eta, k - 1 + t));
        TripleSetup::new(&PolySpace::monomials_without(field, k, &[h], k), &c)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn c(&self) -> &Poly {
        &self.c
    }

    pub fn e_prime(&self) -> &PolySpace {
        &self.e_prime
    }

    /// `R` with degree bound `k + t`.
    pub fn r(&self) -> &PolySpace {
        &self.r
    }

    /// Uniform element of `R`.
    pub fn random_element<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> Poly {
        self.r.random_element(rng)
    }

    /// `dim ⟨f_1, f_2, f_3⟩ · R`, capped at `2k + 3`.
    pub fn product_dim(&self, fs: &[Poly; 3]) -> usize {
        product_dim_capped(fs, &self.r, 2 * self.k + 2)
    }

    /// Classifies a triple of elements of `R`.
    ///
    /// Triples outside `E'³` are first rewritten so that two members lie in
    /// `E'`; when those two satisfy `k + max deg − deg gcd − 2 + large > 2k + 2`
    /// the triple is certified in `Ψ` without elimination, since the
    /// high-degree part of `f_1 E'` is independent of `f_2 E' + f_3 E'`.
    pub fn classify(&self, fs: &[Poly; 3]) -> TripleClass {
        let f = self.e_prime.field();
        let top = self.k - 1 + self.t;
        let lead = self.c.leading();
        let lambda: Vec<Elem> = fs.iter().map(|p| f.div(p.coeff(top), lead).expect("nonzero")).collect();
        let Some(p) = lambda.iter().position(|&l| l != 0) else { return TripleClass::Inside };
        let reduced: Vec<Poly> = (0..3)
            .filter(|&j| j != p)
            .map(|j| fs[j].sub(&fs[p].scale(f.div(lambda[j], lambda[p]).expect("nonzero"))))
            .collect();
        let sum_dim = match (reduced[0].degree(), reduced[1].degree()) {
            (Degree::Finite(s), Degree::Finite(u)) => self.k + s.max(u) - gcd_degree(&reduced[0], &reduced[1]),
            (Degree::NegInfinity, Degree::NegInfinity) => 0,
            _ => self.k,
        };
        if (sum_dim + self.large).saturating_sub(2) > 2 * self.k + 2 {
            return TripleClass::Psi;
        }
        if self.product_dim(fs) > 2 * self.k + 2 {
            TripleClass::Psi
        } else {
            TripleClass::Gamma
        }
    }

    /// Classification by elimination only, without the certified shortcut.
    pub fn classify_exact(&self, fs: &[Poly; 3]) -> TripleClass {
        let top = self.k - 1 + self.t;
        if fs.iter().all(|p| p.coeff(top) == 0) {
            TripleClass::Inside
        } else if self.product_dim(fs) > 2 * self.k + 2 {
            TripleClass::Psi
        } else {
            TripleClass::Gamma
        }
    }
}

/// When [`triple_census`] stops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusStop {
    /// After exactly this many triples.
    Samples(u64),
    /// Once this many triples land in `E'³ ∪ Γ`, or after `max_samples`.
    Accepted { target: u64, max_samples: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleCensus {
    pub inside: u64,
    pub gamma: u64,
    pub psi: u64,
    pub samples: u64,
    pub seed: u64,
}

impl TripleCensus {
    /// Triples with product dimension `≤ 2k + 2`.
    pub fn accepted(&self) -> u64 {
        self.inside + self.gamma
    }

    /// Fraction of accepted triples not inside `E'³`, as an estimate.
    pub fn outside_fraction(&self) -> Estimate {
        Estimate { hits: self.gamma, samples: self.accepted(), seed: self.seed }
    }
}

/// Classifies uniform triples from `R³`, triple `i` drawn from its own
/// counter stream; the census is identical for every executor.
pub fn triple_census<E: Executor>(
    setup: &TripleSetup,
    stop: CensusStop,
    seed: u64,
    exec: &E,
) -> Result<TripleCensus, LemmaError> {
    let (limit, target) = match stop {
        CensusStop::Samples(n) => (n, u64::MAX),
        CensusStop::Accepted { target, max_samples } => (max_samples, target),
    };
    if limit == 0 || target == 0 {
        return Err(LemmaError::NoSamples);
    }
    let mut census = TripleCensus { inside: 0, gamma: 0, psi: 0, samples: 0, seed };
    const BATCH: u64 = 16;
    let mut next_chunk = 0u64;
    while census.samples < limit {
        let chunks = BATCH.min((limit - next_chunk * CHUNK).div_ceil(CHUNK));
        let classes = exec.map(next_chunk..next_chunk + chunks, |c| {
            let mut rng = stream(seed, b"triples", c);
            let n = CHUNK.min(limit - c * CHUNK);
            (0..n)
                .map(|_| {
                    let fs: [Poly; 3] = core::array::from_fn(|_| setup.random_element(&mut rng));
                    setup.classify(&fs)
                })
                .collect::<Vec<_>>()
        });
        next_chunk += chunks;
        for class in classes.into_iter().flatten() {
            census.samples += 1;
            match class {
                TripleClass::Inside => census.inside += 1,
                TripleClass::Gamma => census.gamma += 1,
                TripleClass::Psi => census.psi += 1,
            }
            if census.accepted() >= target {
                return Ok(census);
            }
        }
    }
    Ok(census)
}
