//! Key recovery for one-twist TGRS McEliece keys.
//!
//! Step 1 finds the codimension-one subcode `M = C ∩ GRS_k(α, v)` by a
//! random search for triples whose span multiplies into a small space,
//! directly on `C` when its square is degenerate and through shortenings
//! otherwise. Step 2 reads a support and multipliers of the GRS code off
//! `M²`. Steps 3 and 4 fix the projective frame, the hook and the twist, and
//! the candidate key is checked against the public code.

mod monomial;
mod support;
mod twist;

use alloc::vec::Vec;

use thiserror::Error;

pub use monomial::{disjoint_sets, lift, recover_monomial_subcode, recover_via_shortenings, Recovered};
pub use support::{recover_multipliers, ss_recover_support};
pub use twist::{recover_hook, recover_twist_coeff, search_frames};

use crate::codes::{CodeError, LinearCode};
use crate::distinguisher::{random_square_dim, shortening_window};
use crate::exec::Executor;
use crate::field::Elem;
use crate::grs::{grs_code, tgrs_code, GrsError, GrsParams, TgrsKey};
use crate::mceliece::{decrypt, encrypt, PublicKey};
use crate::rng::{derive_seed, stream};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AttackError {
    #[error("code is not a GRS code")]
    NotGrs,
    #[error("no nonzero multiplier vector fits the subcode")]
    NoValidMultiplier,
    #[error("trial budget exhausted after {trials} draws")]
    TrialBudgetExhausted { trials: u64 },
    #[error("reassembly stalled at dimension {dim}")]
    ReassemblyStalled { dim: usize },
    #[error("recovered subcode is not the GRS part")]
    WrongSubcode,
    #[error("expected exactly one missing monomial, found {missing}")]
    HookCountMismatch { missing: usize },
    #[error("no word of the code exposes the twist")]
    DegenerateWord,
    #[error("twist degree offset {t} out of range")]
    TwistOutOfRange { t: usize },
    #[error("no projective frame reproduces the public code")]
    FrameNotFound,
    #[error("unsupported parameters: {0}")]
    Unsupported(&'static str),
    #[error("invalid attack configuration: {0}")]
    InvalidConfig(&'static str),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Grs(#[from] GrsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AttackConfig {
    /// Triple budget is `budget_factor · q³` draws, extension budget
    /// `budget_factor · q` per slot.
    pub budget_factor: u64,
    pub seed: u64,
    /// Independent restarts of the direct search before falling back to
    /// shortenings.
    pub direct_attempts: usize,
    /// Restarts per shortening size.
    pub shortening_attempts: usize,
}

impl Default for AttackConfig {
    fn default() -> Self {
        AttackConfig { budget_factor: 20, seed: 0, direct_attempts: 2, shortening_attempts: 2 }
    }
}

/// How `M` was found: directly on the code, or by reassembling shortenings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttackCase {
    Direct,
    Shortened { a: usize },
}

impl AttackCase {
    pub fn number(&self) -> u8 {
        match self {
            AttackCase::Direct => 1,
            AttackCase::Shortened { .. } => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackReport {
    pub recovered: TgrsKey,
    pub trials_used: u64,
    pub case: AttackCase,
    /// Whether the attack ran on the dual code (`k > n/2`).
    pub dual: bool,
    pub verified: bool,
    pub seed: u64,
}

/// Recovers a one-twist key equivalent to the secret behind `pk`.
pub fn full_attack<E: Executor>(pk: &PublicKey, cfg: &AttackConfig, exec: &E) -> Result<AttackReport, AttackError> {
    if cfg.budget_factor == 0 {
        return Err(AttackError::InvalidConfig("budget_factor must be at least 1"));
    }
    let c = LinearCode::from_generator(pk.g_pub());
    let (n, k) = (c.n(), c.k());
    let mut trials = 0u64;
    let dual = 2 * k > n;
    let (key, case) = if !dual {
        if 2 * k + 1 > n {
            return Err(AttackError::Unsupported("n = 2k has no room on either side"));
        }
        let (m, case) = recover_subcode(&c, cfg, exec, &mut trials)?;
        let (beta, _) = ss_recover_support(&m.square())?;
        let v_beta = recover_multipliers(&m, &beta, k)?;
        (search_frames(&c, &m, &beta, &v_beta)?, case)
    } else {
        let d = c.dual();
        let kd = d.k();
        if 2 * kd + 1 > n {
            return Err(AttackError::Unsupported("n = 2k has no room on either side"));
        }
        let (md, case) = recover_subcode(&d, cfg, exec, &mut trials)?;
        let (beta, _) = ss_recover_support(&md.square())?;
        let u_beta = recover_multipliers(&md, &beta, kd)?;
        let v_beta = GrsParams::new(c.field(), beta.clone(), u_beta, kd)?.dual()?.v().to_vec();
        let m = c.intersect(&grs_code(&GrsParams::new(c.field(), beta.clone(), v_beta.clone(), k)?))?;
        if m.k() + 1 != k {
            return Err(AttackError::WrongSubcode);
        }
        (search_frames(&c, &m, &beta, &v_beta)?, case)
    };
    let verified = verify_key(pk, &key);
    Ok(AttackReport { recovered: key, trials_used: trials, case, dual, verified, seed: cfg.seed })
}

// Accepts `m` as the GRS part of `code` when its square has the GRS
// dimension `2 dim M + 1`.
fn check_subcode(code: &LinearCode, m: &LinearCode) -> Result<bool, AttackError> {
    let km = code.k() - 1;
    if m.k() != km || !code.contains_code(m)? {
        return Ok(false);
    }
    let sq = m.square().k();
    if sq == 2 * km || sq + 1 == 2 * km {
        // M is monomial with a hook at 0, 1, k − 2 or k − 1; its square does
        // not determine a GRS_{2k−1}
        return Err(AttackError::Unsupported("hook at a boundary position"));
    }
    Ok(sq == 2 * km + 1)
}

fn recover_subcode<E: Executor>(
    code: &LinearCode,
    cfg: &AttackConfig,
    exec: &E,
    trials: &mut u64,
) -> Result<(LinearCode, AttackCase), AttackError> {
    let (n, k) = (code.n(), code.k());
    if 2 * k + 1 > n {
        return Err(AttackError::Unsupported("support recovery needs 2k + 1 <= n"));
    }
    let mut last = AttackError::Unsupported("no shortening size in the admissible window");
    let mut run = 0u64;
    // the triple test only separates when a generic triple exceeds 2k + 2
    let sq = code.square().k();
    if sq < random_square_dim(n, k) && sq > 2 * k + 2 {
        for _ in 0..cfg.direct_attempts {
            let seed = derive_seed(cfg.seed, b"direct", run);
            run += 1;
            match recover_monomial_subcode(code, cfg, seed, exec) {
                Ok(rec) => {
                    *trials += rec.trials;
                    if check_subcode(code, &rec.code)? {
                        return Ok((rec.code, AttackCase::Direct));
                    }
                    last = AttackError::WrongSubcode;
                }
                Err(AttackError::TrialBudgetExhausted { trials: t }) => {
                    *trials += t;
                    last = AttackError::TrialBudgetExhausted { trials: *trials };
                }
                Err(e) => return Err(e),
            }
        }
    }
    let Some((lo, hi)) = shortening_window(1, n, k) else { return Err(last) };
    for a in lo.max(1)..=hi {
        for _ in 0..cfg.shortening_attempts {
            let seed = derive_seed(cfg.seed, b"shortened", run);
            run += 1;
            let sets = disjoint_sets(n, a, 4 * k, seed);
            match recover_via_shortenings(code, sets, cfg, seed, exec) {
                Ok(rec) => {
                    *trials += rec.trials;
                    if check_subcode(code, &rec.code)? {
                        return Ok((rec.code, AttackCase::Shortened { a }));
                    }
                    last = AttackError::WrongSubcode;
                }
                Err(AttackError::TrialBudgetExhausted { trials: t }) => {
                    *trials += t;
                    last = AttackError::TrialBudgetExhausted { trials: *trials };
                }
                Err(e @ (AttackError::ReassemblyStalled { .. } | AttackError::WrongSubcode)) => last = e,
                Err(e) => return Err(e),
            }
        }
    }
    Err(last)
}

/// Number of seeded encryptions decrypted by [`verify_key`].
pub const VERIFY_SAMPLES: u64 = 20;

/// Code equality plus decryption of seeded random ciphertexts.
pub fn verify_key(pk: &PublicKey, key: &TgrsKey) -> bool {
    if key.n() != pk.n() || key.k() != pk.k() || tgrs_code(key) != LinearCode::from_generator(pk.g_pub()) {
        return false;
    }
    let f = pk.field();
    (0..VERIFY_SAMPLES).all(|i| {
        let mut rng = stream(i, b"verify", 0);
        let msg: Vec<Elem> = (0..pk.k()).map(|_| f.random(&mut rng)).collect();
        let Ok(ct) = encrypt(pk, &msg, derive_seed(i, b"verify", 1)) else { return false };
        decrypt(key, pk, &ct).is_ok_and(|m| m == msg)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Serial;
    use crate::field::Field;
    use crate::mceliece::{keygen, TwistParams};

    fn attack(q: u32, n: usize, k: usize, t: usize, h: usize, seed: u64) -> Result<AttackReport, AttackError> {
        let f = Field::prime(q).unwrap();
        let (_, pk) = keygen(&f, n, k, &TwistParams { t: alloc::vec![t], h: alloc::vec![h], eta: None }, seed).unwrap();
        full_attack(&pk, &AttackConfig { seed, ..AttackConfig::default() }, &Serial)
    }

    #[test]
    fn direct_case() {
        let r = attack(31, 30, 8, 5, 3, 1).unwrap();
        assert!(r.verified);
        assert_eq!(r.case, AttackCase::Direct);
        assert!(!r.dual);
    }

    #[test]
    fn dual_case() {
        let r = attack(31, 30, 22, 5, 3, 2).unwrap();
        assert!(r.verified);
        assert!(r.dual);
    }

    #[test]
    fn boundary_hooks_fail_loudly() {
        for h in [1, 6] {
            let r = attack(31, 30, 8, 5, h, 3);
            assert!(matches!(r, Err(AttackError::Unsupported(_))), "h = {h}: {r:?}");
        }
        // M is itself a GRS_{k−1} here; the search does not single it out
        for h in [0, 7] {
            assert!(attack(31, 30, 8, 5, h, 3).is_err(), "h = {h}");
        }
    }

    #[test]
    fn zero_budget_is_rejected() {
        let f = Field::prime(13).unwrap();
        let (_, pk) = keygen(&f, 13, 5, &TwistParams { t: alloc::vec![1], h: alloc::vec![2], eta: None }, 0).unwrap();
        let cfg = AttackConfig { budget_factor: 0, ..AttackConfig::default() };
        assert!(matches!(full_attack(&pk, &cfg, &Serial), Err(AttackError::InvalidConfig(_))));
    }
}
