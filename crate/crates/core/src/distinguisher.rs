//! Dimension bounds for squares of (shortened) quasi-GRS codes and the
//! square-code distinguisher built on them.

use alloc::vec::Vec;

use rand::seq::index::sample;
use thiserror::Error;

use crate::codes::{CodeError, LinearCode};
use crate::exec::Executor;
use crate::rng::{derive_seed, stream};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistinguisherError {
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
    #[error("k = {k} exceeds n/2 = {half}; distinguish the dual instead")]
    RateTooHigh { k: usize, half: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// `min{(ℓ+2)k − 1 − ℓ(ℓ−1)/2, k + d + ℓ(ℓ+1)/2, 2d + 1}`.
pub fn qgrs_sq_bound(l: usize, k: usize, d: usize) -> Result<usize, DistinguisherError> {
    if l == 0 || l > k || k > d + 1 {
        return Err(DistinguisherError::InvalidParams("need 1 <= l <= k <= d + 1"));
    }
    Ok(bound_terms(l as i64, k as i64, d as i64).max(0) as usize)
}

fn bound_terms(l: i64, k: i64, d: i64) -> i64 {
    let a = (l + 2) * k - 1 - l * (l - 1) / 2;
    let b = k + d + l * (l + 1) / 2;
    let c = 2 * d + 1;
    a.min(b).min(c)
}

/// The square bound after shortening `a` positions: `k ← k − a`, `d ← d − a`.
pub fn shortened_bound(l: usize, k: usize, d: usize, a: usize) -> Result<usize, DistinguisherError> {
    if l == 0 || a >= k || k > d + 1 {
        return Err(DistinguisherError::InvalidParams("need l >= 1, a < k <= d + 1"));
    }
    Ok(bound_terms(l as i64, (k - a) as i64, (d - a) as i64).max(0) as usize)
}

/// First term of the bound alone, usable when the degree `d` is unknown.
pub fn shortened_bound_without_degree(l: usize, k: usize, a: usize) -> usize {
    let (l, k) = (l as i64, (k - a) as i64);
    ((l + 2) * k - 1 - l * (l - 1) / 2).max(0) as usize
}

/// `min(n, k(k+1)/2)`, the square dimension of a random `[n, k]` code.
pub fn random_square_dim(n: usize, k: usize) -> usize {
    n.min(k * (k + 1) / 2)
}

/// Admissible shortening sizes `(a_min, a_max)`, or `None` when empty.
///
/// For one twist: `a ∈ [max(0, ⌈(3k−n)/2⌉), k − 5]`. For `ℓ ≥ 2`:
/// `a ≥ ⌈((ℓ+2)k − ℓ(ℓ−1)/2 − n)/(ℓ+1)⌉` and `a ≤ k − 2(ℓ+2)`.
pub fn shortening_window(l: usize, n: usize, k: usize) -> Option<(usize, usize)> {
    let (li, ni, ki) = (l as i64, n as i64, k as i64);
    let (lo, hi) = if l <= 1 {
        (div_ceil(3 * ki - ni, 2), ki - 5)
    } else {
        (div_ceil((li + 2) * ki - li * (li - 1) / 2 - ni, li + 1), ki - 2 * (li + 2))
    };
    let lo = lo.max(0);
    (lo <= hi).then_some((lo as usize, hi as usize))
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Smallest `n − k` for which the distinguisher provably works:
/// `⌈3ℓ²/2 + 5ℓ/2 + 4⌉`.
pub fn distinguish_threshold(l: usize) -> usize {
    (3 * l * l + 5 * l + 8).div_ceil(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Structured,
    Inconclusive,
}

/// One shortened-square measurement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub a: usize,
    /// Seed from which the shortening set was drawn.
    pub i_seed: u64,
    pub indices: Vec<usize>,
    /// `dim C_I`; generically `k − a`.
    pub shortened_dim: usize,
    pub predicted_max: usize,
    /// `min(n − a, C(dim C_I + 1, 2))`.
    pub random_expected: usize,
    pub observed: usize,
    pub structured: bool,
}

impl BoundReport {
    pub fn degenerate(&self, k: usize) -> bool {
        self.shortened_dim != k - self.a
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distinguished {
    pub verdict: Verdict,
    pub reports: Vec<BoundReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistinguishConfig {
    pub l_hint: usize,
    /// Degree `d_ℓ` if known; otherwise the degree-free bound is reported.
    pub d_hint: Option<usize>,
    pub trials_per_a: usize,
    pub seed: u64,
}

impl Default for DistinguishConfig {
    fn default() -> Self {
        DistinguishConfig { l_hint: 1, d_hint: None, trials_per_a: 3, seed: 0 }
    }
}

/// Shortened square of `c` at `a` random positions drawn from `i_seed`.
pub fn measure(c: &LinearCode, a: usize, i_seed: u64) -> (Vec<usize>, LinearCode) {
    let mut rng = stream(i_seed, b"shortening_set", 0);
    let mut indices = sample(&mut rng, c.n(), a).into_vec();
    indices.sort_unstable();
    let short = c.shorten(&indices, false).expect("indices in range");
    (indices, short)
}

/// Compares shortened-square dimensions against the random baseline over the
/// shortening window of `cfg.l_hint`.
pub fn distinguish<E: Executor>(
    c: &LinearCode,
    cfg: &DistinguishConfig,
    exec: &E,
) -> Result<Distinguished, DistinguisherError> {
    let (n, k) = (c.n(), c.k());
    if 2 * k > n {
        return Err(DistinguisherError::RateTooHigh { k, half: n / 2 });
    }
    if cfg.l_hint == 0 || cfg.trials_per_a == 0 {
        return Err(DistinguisherError::InvalidParams("need l_hint >= 1 and trials_per_a >= 1"));
    }
    let Some((lo, hi)) = shortening_window(cfg.l_hint, n, k) else {
        return Ok(Distinguished { verdict: Verdict::Inconclusive, reports: Vec::new() });
    };
    let per = cfg.trials_per_a as u64;
    let total = (hi - lo + 1) as u64 * per;
    let reports = exec.map(0..total, |idx| {
        let a = lo + (idx / per) as usize;
        let i_seed = derive_seed(cfg.seed, b"distinguish", idx);
        let (indices, short) = measure(c, a, i_seed);
        let observed = short.square().k();
        let shortened_dim = short.k();
        let random_expected = random_square_dim(n - a, shortened_dim);
        let predicted_max = match cfg.d_hint {
            Some(d) => shortened_bound(cfg.l_hint, k, d, a).unwrap_or(0),
            None => shortened_bound_without_degree(cfg.l_hint, k, a),
        };
        let structured = shortened_dim != k - a || observed < random_expected;
        BoundReport { a, i_seed, indices, shortened_dim, predicted_max, random_expected, observed, structured }
    });
    let verdict = if reports.iter().any(|r| r.structured) { Verdict::Structured } else { Verdict::Inconclusive };
    Ok(Distinguished { verdict, reports })
}
