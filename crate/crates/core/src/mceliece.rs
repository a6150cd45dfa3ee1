//! McEliece encryption over TGRS codes.
//!
//! The public generator is `S · G` for a random invertible `S` and the
//! canonical generator `G`; no column permutation is applied.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use thiserror::Error;

use crate::field::{Elem, Field};
use crate::grs::{decoding_radius, tgrs_code, tgrs_decode, GrsError, GrsParams, TgrsKey};
use crate::linalg::{random_invertible_counted, LinalgError, Matrix};
use crate::rng::stream;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McElieceError {
    #[error("vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("public generator has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("need n <= q and 1 <= k < n, got n={n} k={k}")]
    BadDimensions { n: usize, k: usize },
    #[error("decoded word is not in the public code")]
    KeyMismatch,
    #[error(transparent)]
    Grs(#[from] GrsError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PublicKey {
    g_pub: Matrix,
    w_err: usize,
}

impl PublicKey {
    /// Wraps a full-rank `k × n` generator; `w_err = ⌊(n−k)/2⌋`.
    pub fn new(g_pub: Matrix) -> Result<Self, McElieceError> {
        let (k, n) = (g_pub.rows(), g_pub.cols());
        if k == 0 || k >= n {
            return Err(McElieceError::BadDimensions { n, k });
        }
        let rank = g_pub.rank();
        if rank != k {
            return Err(McElieceError::RankDeficient { rank, k });
        }
        Ok(PublicKey { g_pub, w_err: decoding_radius(n, k) })
    }

    pub fn g_pub(&self) -> &Matrix {
        &self.g_pub
    }

    pub fn w_err(&self) -> usize {
        self.w_err
    }

    pub fn n(&self) -> usize {
        self.g_pub.cols()
    }

    pub fn k(&self) -> usize {
        self.g_pub.rows()
    }

    pub fn field(&self) -> &Field {
        self.g_pub.field()
    }
}

/// Twist shape for key generation; `eta = None` draws uniform nonzero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TwistParams {
    pub t: Vec<usize>,
    pub h: Vec<usize>,
    pub eta: Option<Vec<Elem>>,
}

pub fn keygen(
    field: &Field,
    n: usize,
    k: usize,
    twist: &TwistParams,
    seed: u64,
) -> Result<(TgrsKey, PublicKey), McElieceError> {
    if n > field.q() as usize || k == 0 || k >= n {
        return Err(McElieceError::BadDimensions { n, k });
    }
    let mut rng = stream(seed, b"keygen", 0);
    let mut pool: Vec<Elem> = field.elements().collect();
    let (alpha, _) = pool.partial_shuffle(&mut rng, n);
    let alpha = alpha.to_vec();
    let v: Vec<Elem> = (0..n).map(|_| field.random_nonzero(&mut rng)).collect();
    let eta = match &twist.eta {
        Some(e) => e.clone(),
        None => (0..twist.t.len()).map(|_| field.random_nonzero(&mut rng)).collect(),
    };
    let key = TgrsKey::new(GrsParams::new(field, alpha, v, k)?, twist.t.clone(), twist.h.clone(), eta)?;
    let (s, _) = random_invertible_counted(field, k, &mut rng);
    let g_pub = s.mul(tgrs_code(&key).generator())?;
    Ok((key, PublicKey::new(g_pub)?))
}

/// `m · G_pub + e` with `wt(e) = w_err`, deterministic in `seed`.
pub fn encrypt(pk: &PublicKey, msg: &[Elem], seed: u64) -> Result<Vec<Elem>, McElieceError> {
    if msg.len() != pk.k() {
        return Err(McElieceError::LengthMismatch { expected: pk.k(), found: msg.len() });
    }
    let f = pk.field();
    let mut c = pk.g_pub.vec_mul(msg)?;
    let mut rng = stream(seed, b"encrypt", 0);
    let mut positions: Vec<usize> = (0..pk.n()).collect();
    let (chosen, _) = positions.partial_shuffle(&mut rng, pk.w_err);
    for &i in chosen.iter() {
        c[i] = f.add(c[i], f.random_nonzero(&mut rng));
    }
    Ok(c)
}

pub fn decrypt(sk: &TgrsKey, pk: &PublicKey, c: &[Elem]) -> Result<Vec<Elem>, McElieceError> {
    if c.len() != pk.n() {
        return Err(McElieceError::LengthMismatch { expected: pk.n(), found: c.len() });
    }
    let f = tgrs_decode(sk, c)?;
    let word = sk.grs().ev(&f);
    pk.g_pub.solve_left(&word).map_err(|_| McElieceError::KeyMismatch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::LinearCode;

    fn setup(seed: u64) -> (TgrsKey, PublicKey) {
        let f = Field::prime(13).unwrap();
        keygen(&f, 12, 5, &TwistParams { t: vec![3], h: vec![2], eta: None }, seed).unwrap()
    }

    #[test]
    fn keygen_is_seeded_and_hides_only_the_basis() {
        let (sk, pk) = setup(4);
        assert_eq!(setup(4), (sk.clone(), pk.clone()));
        assert_eq!(LinearCode::from_generator(pk.g_pub()), tgrs_code(&sk));
        assert_eq!(pk.w_err(), 3);
    }

    #[test]
    fn zero_message_round_trip() {
        let (sk, pk) = setup(1);
        let c = encrypt(&pk, &[0; 5], 2).unwrap();
        assert_eq!(c.iter().filter(|&&x| x != 0).count(), 3);
        assert_eq!(decrypt(&sk, &pk, &c).unwrap(), vec![0; 5]);
        assert_eq!(decrypt(&sk, &pk, &[0; 12]).unwrap(), vec![0; 5]);
    }

    #[test]
    fn zero_weight_edge() {
        let f = Field::prime(7).unwrap();
        let (sk, pk) = keygen(&f, 6, 5, &TwistParams { t: vec![1], h: vec![0], eta: None }, 3).unwrap();
        assert_eq!(pk.w_err(), 0);
        let m = [1, 2, 3, 4, 5];
        let c = encrypt(&pk, &m, 0).unwrap();
        assert_eq!(c, pk.g_pub().vec_mul(&m).unwrap());
        assert_eq!(decrypt(&sk, &pk, &c).unwrap(), m);
    }
}
