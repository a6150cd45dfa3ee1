//! Steps 3 and 4: the hook, the twist and the coordinate frame in which the
//! recovered GRS subcode is monomial.

use alloc::vec::Vec;

use super::AttackError;
use crate::codes::LinearCode;
use crate::field::{Elem, Field};
use crate::grs::{tgrs_code, GrsParams, TgrsKey};
use crate::poly::{interpolate, Degree};

fn monomial_word(f: &Field, alpha: &[Elem], v: &[Elem], d: usize) -> Vec<Elem> {
    alpha.iter().zip(v).map(|(&a, &w)| f.mul(w, f.pow(a, d as u64))).collect()
}

fn missing_monomials(code: &LinearCode, alpha: &[Elem], v: &[Elem], k: usize) -> Vec<usize> {
    let f = code.field();
    (0..k)
        .filter(|&i| !code.contains(&monomial_word(f, alpha, v, i)).expect("length n"))
        .collect()
}

/// The unique `h < k` with `ev(x^h) ∉ c` under `(α, v)`.
pub fn recover_hook(c: &LinearCode, alpha: &[Elem], v: &[Elem], k: usize) -> Result<usize, AttackError> {
    match missing_monomials(c, alpha, v, k).as_slice() {
        [h] => Ok(*h),
        other => Err(AttackError::HookCountMismatch { missing: other.len() }),
    }
}

/// `(t, η)` read off the interpolant of a word of `c` outside `m_code`:
/// `t = deg f − (k − 1)` and `η = f_{deg f} / f_h`.
pub fn recover_twist_coeff(
    c: &LinearCode,
    m_code: &LinearCode,
    alpha: &[Elem],
    v: &[Elem],
    h: usize,
    k: usize,
) -> Result<(usize, Elem), AttackError> {
    let f = c.field();
    let word = c
        .generator()
        .row_iter()
        .find(|r| !m_code.contains(r).expect("length n"))
        .ok_or(AttackError::DegenerateWord)?;
    let poly = interpolate(f, alpha, v, word).map_err(|_| AttackError::DegenerateWord)?;
    let Degree::Finite(d) = poly.degree() else { return Err(AttackError::DegenerateWord) };
    let n = c.n();
    if d < k {
        return Err(AttackError::DegenerateWord);
    }
    let t = d + 1 - k;
    if t > n - k {
        return Err(AttackError::TwistOutOfRange { t });
    }
    let fh = poly.coeff(h);
    if fh == 0 {
        return Err(AttackError::DegenerateWord);
    }
    Ok((t, f.div(poly.leading(), fh).expect("nonzero")))
}

/// Möbius map `y ↦ (a y + b) / (c y + d)` sending `p_inf` to ∞ and `p0` to 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Frame {
    a: Elem,
    b: Elem,
    c: Elem,
    d: Elem,
}

impl Frame {
    fn new(f: &Field, p_inf: Option<Elem>, p0: Option<Elem>) -> Frame {
        match (p_inf, p0) {
            (None, Some(z)) => Frame { a: 1, b: f.neg(z), c: 0, d: 1 },
            (Some(p), None) => Frame { a: 0, b: 1, c: 1, d: f.neg(p) },
            (Some(p), Some(z)) => Frame { a: 1, b: f.neg(z), c: 1, d: f.neg(p) },
            (None, None) => unreachable!("p0 differs from p_inf"),
        }
    }
}

/// Enumerates normalizations of `β` until one makes `m_code` monomial inside
/// `GRS_k(β'', v'')` with a single missing hook and yields a key for `c`.
///
/// `m_code ⊆ GRS_k(β, v_β)` must hold. Frames are tried in a fixed order and
/// the first whose key reproduces `c` is returned.
pub fn search_frames(c: &LinearCode, m_code: &LinearCode, beta: &[Elem], v_beta: &[Elem]) -> Result<TgrsKey, AttackError> {
    let (f, k) = (c.field().clone(), c.k());
    let q = f.q();
    let mut used = alloc::vec![false; q as usize];
    for &b in beta {
        used[b as usize] = true;
    }
    let infinities = core::iter::once(None).chain((0..q).filter(|&x| !used[x as usize]).map(Some));
    for p_inf in infinities {
        let zeros = core::iter::once(None).chain((0..q).map(Some)).filter(|&z| z != p_inf);
        for p0 in zeros {
            let fr = Frame::new(&f, p_inf, p0);
            let mut alpha = Vec::with_capacity(beta.len());
            let mut v = Vec::with_capacity(beta.len());
            for (&b, &w) in beta.iter().zip(v_beta) {
                let den = f.add(f.mul(fr.c, b), fr.d);
                let num = f.add(f.mul(fr.a, b), fr.b);
                alpha.push(f.div(num, den).expect("p_inf is outside the support"));
                v.push(f.mul(w, f.pow(den, (k - 1) as u64)));
            }
            let Ok(h) = recover_hook(m_code, &alpha, &v, k) else { continue };
            let Ok((t, eta)) = recover_twist_coeff(c, m_code, &alpha, &v, h, k) else { continue };
            let Ok(grs) = GrsParams::new(&f, alpha, v, k) else { continue };
            let Ok(key) = TgrsKey::new(grs, alloc::vec![t], alloc::vec![h], alloc::vec![eta]) else { continue };
            if tgrs_code(&key) == *c {
                return Ok(key);
            }
        }
    }
    Err(AttackError::FrameNotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grs::qgrs_decompose;
    use crate::mceliece::{keygen, TwistParams};

    #[test]
    fn hook_and_twist_in_the_secret_frame() {
        let f = Field::prime(31).unwrap();
        let (sk, pk) = keygen(&f, 30, 8, &TwistParams { t: alloc::vec![5], h: alloc::vec![3], eta: None }, 11).unwrap();
        let c = LinearCode::from_generator(pk.g_pub());
        let (m, _) = qgrs_decompose(&sk);
        let (alpha, v) = (sk.grs().alpha(), sk.grs().v());
        assert_eq!(recover_hook(&c, alpha, v, 8), Ok(3));
        assert_eq!(recover_twist_coeff(&c, &m, alpha, v, 3, 8), Ok((5, sk.eta()[0])));
    }

    #[test]
    fn frames_recover_an_equivalent_key_from_a_moved_support() {
        let f = Field::prime(31).unwrap();
        let (sk, pk) = keygen(&f, 30, 8, &TwistParams { t: alloc::vec![4], h: alloc::vec![2], eta: None }, 5).unwrap();
        let c = LinearCode::from_generator(pk.g_pub());
        let (m, _) = qgrs_decompose(&sk);
        // β = 1/(α − 7) hides the frame; v_β absorbs (α − 7)^{k−1}
        let (alpha, v) = (sk.grs().alpha(), sk.grs().v());
        let mut beta = Vec::new();
        let mut vb = Vec::new();
        for (&a, &w) in alpha.iter().zip(v) {
            let s = f.sub(a, 7);
            if s == 0 {
                return; // 7 is in the support for this seed; nothing to test
            }
            beta.push(f.inv(s).unwrap());
            vb.push(f.div(w, f.pow(beta[beta.len() - 1], 7)).unwrap());
        }
        let key = search_frames(&c, &m, &beta, &vb).unwrap();
        assert_eq!(tgrs_code(&key), c);
        assert_eq!((key.t(), key.h()), (sk.t(), sk.h()));
    }
}
