//! Step 1: recovery of the codimension-one GRS subcode, directly or from
//! shortenings.

use alloc::vec::Vec;

use rand::seq::index::sample;

use super::{AttackConfig, AttackError};
use crate::codes::{span_products_with, LinearCode};
use crate::exec::Executor;
use crate::field::Elem;
use crate::linalg::{Matrix, RankAccumulator};
use crate::rng::{derive_seed, stream};

/// Outcome of one search, with the number of random draws consumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recovered {
    pub code: LinearCode,
    pub trials: u64,
}

fn accepts(c: &LinearCode, cap: usize, words: [&[Elem]; 3]) -> bool {
    let mut acc = RankAccumulator::new(c.field(), c.n());
    span_products_with(&mut acc, &words, c, Some(cap)).expect("word length n") <= cap
}

/// The triple search followed by one-vector extensions: every accepted
/// vector `b_s` satisfies `dim ⟨b_1, b_2, b_s⟩ ⋆ C ≤ 2k + 2`.
///
/// Random draws come from counter streams under `seed`; the triple found is
/// the one with the smallest accepted counter.
pub fn recover_monomial_subcode<E: Executor>(
    c: &LinearCode,
    cfg: &AttackConfig,
    seed: u64,
    exec: &E,
) -> Result<Recovered, AttackError> {
    let k = c.k();
    if k < 4 {
        return Err(AttackError::Unsupported("dimension below 4"));
    }
    let q = c.field().q() as u64;
    let cap = 2 * k + 2;
    let triple_budget = cfg.budget_factor.saturating_mul(q * q * q);
    let found = exec.find_first(0..triple_budget, |i| {
        let mut rng = stream(seed, b"triple", i);
        let b: [Vec<Elem>; 3] = core::array::from_fn(|_| c.random_word(&mut rng));
        if !accepts(c, cap, [&b[0], &b[1], &b[2]]) {
            return None;
        }
        let m = Matrix::from_rows(c.field(), c.n(), &b).expect("rows of length n");
        (m.rank() == 3).then_some(b)
    });
    let Some((idx, triple)) = found else {
        return Err(AttackError::TrialBudgetExhausted { trials: triple_budget });
    };
    let mut trials = idx + 1;
    let [b1, b2, b3] = triple;
    let mut basis: Vec<Vec<Elem>> = alloc::vec![b1.clone(), b2.clone(), b3];

    let slot_budget = cfg.budget_factor.saturating_mul(q);
    for s in basis.len()..k - 1 {
        let span = crate::linalg::Subspace::from_rows(c.field(), c.n(), &basis).expect("rows of length n");
        let slot_seed = derive_seed(seed, b"slot", s as u64);
        let found = exec.find_first(0..slot_budget, |j| {
            let mut rng = stream(slot_seed, b"candidate", j);
            let bs = c.random_word(&mut rng);
            if span.contains(&bs).expect("length n") {
                return None;
            }
            accepts(c, cap, [&b1, &b2, &bs]).then_some(bs)
        });
        let Some((j, bs)) = found else {
            return Err(AttackError::TrialBudgetExhausted { trials: trials + slot_budget });
        };
        trials += j + 1;
        basis.push(bs);
    }
    let code = LinearCode::from_rows(c.field(), c.n(), &basis).expect("rows of length n");
    Ok(Recovered { code, trials })
}

/// Inserts zero coordinates at `indices` (sorted) into the words of a code
/// of length `n − |indices|`.
pub fn lift(code: &LinearCode, n: usize, indices: &[usize]) -> LinearCode {
    let mut mask = alloc::vec![false; n];
    for &i in indices {
        mask[i] = true;
    }
    let outside: Vec<usize> = (0..n).filter(|&i| !mask[i]).collect();
    let rows: Vec<Vec<Elem>> = code
        .generator()
        .row_iter()
        .map(|r| {
            let mut w = alloc::vec![0; n];
            for (&pos, &x) in outside.iter().zip(r) {
                w[pos] = x;
            }
            w
        })
        .collect();
    LinearCode::from_rows(code.field(), n, &rows).expect("rows of length n")
}

/// Sums lifted subcodes recovered from `C_{I_j}` over the given shortening
/// sets until the sum reaches dimension `k − 1`.
pub fn recover_via_shortenings<E, I>(
    c: &LinearCode,
    sets: I,
    cfg: &AttackConfig,
    seed: u64,
    exec: &E,
) -> Result<Recovered, AttackError>
where
    E: Executor,
    I: IntoIterator<Item = Vec<usize>>,
{
    let (n, k) = (c.n(), c.k());
    let mut sum = LinearCode::zero(c.field(), n);
    let mut trials = 0;
    for (j, set) in sets.into_iter().enumerate() {
        let short = c.shorten(&set, false)?;
        if short.k() + set.len() != k {
            // degenerate shortening; the subcode dimension would be off
            continue;
        }
        let sub_seed = derive_seed(seed, b"shortening", j as u64);
        let rec = match recover_monomial_subcode(&short, cfg, sub_seed, exec) {
            Ok(r) => r,
            Err(AttackError::TrialBudgetExhausted { trials: t }) => {
                return Err(AttackError::TrialBudgetExhausted { trials: trials + t })
            }
            Err(e) => return Err(e),
        };
        trials += rec.trials;
        let next = sum.sum(&lift(&rec.code, n, &set))?;
        if next.k() == sum.k() {
            return Err(AttackError::ReassemblyStalled { dim: sum.k() });
        }
        if next.k() >= k {
            return Err(AttackError::WrongSubcode);
        }
        sum = next;
        if sum.k() == k - 1 {
            return Ok(Recovered { code: sum, trials });
        }
    }
    Err(AttackError::ReassemblyStalled { dim: sum.k() })
}

/// Shortening sets of size `a`, each avoiding earlier sets while enough
/// fresh positions remain, so that their common intersection is empty.
pub fn disjoint_sets(n: usize, a: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut used = alloc::vec![false; n];
    (0..count)
        .map(|j| {
            let mut rng = stream(seed, b"shortening_sets", j as u64);
            let fresh: Vec<usize> = (0..n).filter(|&i| !used[i]).collect();
            let mut set: Vec<usize> = if fresh.len() >= a {
                sample(&mut rng, fresh.len(), a).into_iter().map(|i| fresh[i]).collect()
            } else {
                sample(&mut rng, n, a).into_vec()
            };
            set.sort_unstable();
            for &i in &set {
                used[i] = true;
            }
            set
        })
        .collect()
}
