//! Support and multiplier recovery for GRS codes.

use alloc::vec;
use alloc::vec::Vec;

use super::AttackError;
use crate::codes::LinearCode;
use crate::field::{Elem, Field};
use crate::grs::{grs_code, GrsParams};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::rng::stream;

// Projective line point: `None` is ∞.
type Point = Option<Elem>;

/// `(α', w')` with `GRS_m(α', w') = g`, normalized so that `α'_0 = 0` and
/// `α'_1 = 1`.
pub fn ss_recover_support(g: &LinearCode) -> Result<(Vec<Elem>, Vec<Elem>), AttackError> {
    let (f, n, m) = (g.field().clone(), g.n(), g.k());
    if m < 2 || n < m + 2 || n > f.q() as usize {
        return Err(AttackError::NotGrs);
    }
    let r = g.generator();
    if g.subspace().pivots() != (0..m).collect::<Vec<_>>().as_slice() {
        return Err(AttackError::NotGrs);
    }
    if (0..m).any(|i| (m..n).any(|l| r.get(i, l) == 0)) {
        return Err(AttackError::NotGrs);
    }
    let div = |a: Elem, b: Elem| f.div(a, b).expect("nonzero by the MDS check");

    // Projective frame: position 0 -> 0, position 1 -> ∞, position m -> 1.
    let mut proj: Vec<Point> = vec![None; n];
    proj[0] = Some(0);
    proj[1] = None;
    for l in m..n {
        // cross-ratio (α_l; α_0, α_1, α_m) = 1/α_l in this frame
        let x = div(f.mul(r.get(0, l), r.get(1, m)), f.mul(r.get(1, l), r.get(0, m)));
        proj[l] = Some(f.inv(x).expect("nonzero"));
    }
    let (l1, l2) = (m, m + 1);
    let (a1, a2) = (proj[l1].unwrap(), proj[l2].unwrap());
    for j in 2..m {
        let x = div(f.mul(r.get(0, l1), r.get(j, l2)), f.mul(r.get(j, l1), r.get(0, l2)));
        let ratio = div(f.mul(x, a1), a2);
        if ratio == 1 {
            return Err(AttackError::NotGrs);
        }
        proj[j] = Some(div(f.sub(f.mul(ratio, a2), a1), f.sub(ratio, 1)));
    }
    let finite: Vec<Elem> = proj.iter().flatten().copied().collect();
    let mut seen = vec![false; f.q() as usize];
    for &a in &finite {
        if core::mem::replace(&mut seen[a as usize], true) {
            return Err(AttackError::NotGrs);
        }
    }
    // x -> x / (x − P) sends 0 -> 0, ∞ -> 1 and the unused P to ∞.
    let p = (0..f.q()).find(|&c| !seen[c as usize]).ok_or(AttackError::NotGrs)?;
    let alpha: Vec<Elem> = proj
        .iter()
        .map(|pt| match pt {
            None => 1,
            Some(a) => div(*a, f.sub(*a, p)),
        })
        .collect();

    let w = multipliers_from_systematic(&f, r, &alpha, m);
    let params = GrsParams::new(&f, alpha.clone(), w.clone(), m).map_err(|_| AttackError::NotGrs)?;
    if grs_code(&params) != *g {
        return Err(AttackError::NotGrs);
    }
    Ok((alpha, w))
}

// Row i of the systematic generator of GRS_m(α, w) is
// w_l L_i(α_l) / (w_i L_i(α_i)) with L_i = ∏_{j<m, j≠i} (x − α_j).
fn multipliers_from_systematic(f: &Field, r: &Matrix, alpha: &[Elem], m: usize) -> Vec<Elem> {
    let n = alpha.len();
    let info_poly = |i: usize| {
        let roots: Vec<Elem> = (0..m).filter(|&j| j != i).map(|j| alpha[j]).collect();
        Poly::from_roots(f, &roots)
    };
    let l0 = info_poly(0);
    let mut w = vec![0; n];
    for l in m..n {
        w[l] = f.div(r.get(0, l), l0.eval(alpha[l])).unwrap_or(0);
    }
    for j in 0..m {
        let lj = info_poly(j);
        let num = f.mul(w[m], lj.eval(alpha[m]));
        let den = f.mul(r.get(j, m), lj.eval(alpha[j]));
        w[j] = f.div(num, den).unwrap_or(0);
    }
    w
}

/// Multipliers `v` with `m_code ⊆ GRS_k(α, v)`, found through the dual:
/// `GRS_{n−k}(α, u) ⊆ m_code^⊥` is linear in `u`.
pub fn recover_multipliers(m_code: &LinearCode, alpha: &[Elem], k: usize) -> Result<Vec<Elem>, AttackError> {
    let (f, n) = (m_code.field().clone(), m_code.n());
    if k >= n || alpha.len() != n {
        return Err(AttackError::NoValidMultiplier);
    }
    // Unknown u_i; one equation per (basis row b, j < n − k):
    // Σ_i b_i α_i^j u_i = 0.
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for b in m_code.generator().row_iter() {
        let mut pw: Vec<Elem> = b.to_vec();
        for _ in 0..n - k {
            rows.push(pw.clone());
            for (x, &a) in pw.iter_mut().zip(alpha) {
                *x = f.mul(*x, a);
            }
        }
    }
    let system = Matrix::from_rows(&f, n, &rows).expect("uniform rows");
    let kernel = system.kernel();
    if kernel.dim() == 0 {
        return Err(AttackError::NoValidMultiplier);
    }
    let basis = kernel.basis();
    let mut candidates: Vec<Vec<Elem>> = basis.row_iter().map(|r| r.to_vec()).collect();
    if kernel.dim() > 1 {
        let mut rng = stream(0, b"recover_multipliers", 0);
        candidates.extend((0..32).map(|_| kernel.random_element(&mut rng)));
    }
    let dual_u = crate::grs::dual_multipliers(&f, alpha);
    for u in candidates {
        if u.contains(&0) {
            continue;
        }
        // v_i = 1 / (u_i ∏_{j≠i}(α_i − α_j)) = dual_u_i / u_i
        let v: Vec<Elem> = u.iter().zip(&dual_u).map(|(&ui, &di)| f.div(di, ui).expect("nonzero")).collect();
        let Ok(params) = GrsParams::new(&f, alpha.to_vec(), v.clone(), k) else { continue };
        if grs_code(&params).contains_code(m_code).unwrap_or(false) {
            return Ok(v);
        }
    }
    Err(AttackError::NoValidMultiplier)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::random_code;
    use rand::seq::SliceRandom;

    fn random_params(f: &Field, n: usize, k: usize, seed: u64) -> GrsParams {
        let mut rng = stream(seed, b"test", 0);
        let mut pool: Vec<Elem> = f.elements().collect();
        pool.shuffle(&mut rng);
        let v = (0..n).map(|_| f.random_nonzero(&mut rng)).collect();
        GrsParams::new(f, pool[..n].to_vec(), v, k).unwrap()
    }

    #[test]
    fn support_round_trip() {
        let f13 = Field::prime(13).unwrap();
        for seed in 0..20 {
            let p = random_params(&f13, 12, 5, seed);
            let c = grs_code(&p);
            let (alpha, w) = ss_recover_support(&c).unwrap();
            assert_eq!((alpha[0], alpha[1]), (0, 1));
            assert_eq!(grs_code(&GrsParams::new(&f13, alpha, w, 5).unwrap()), c);
        }
    }

    #[test]
    fn support_round_trip_extension_field() {
        let f16 = Field::new(2, 4, Some(&[1, 1, 0, 0, 1])).unwrap();
        for seed in 0..10 {
            let p = random_params(&f16, 15, 6, seed);
            let c = grs_code(&p);
            let (alpha, w) = ss_recover_support(&c).unwrap();
            assert_eq!(grs_code(&GrsParams::new(&f16, alpha, w, 6).unwrap()), c);
        }
    }

    #[test]
    fn random_code_is_not_grs() {
        let f13 = Field::prime(13).unwrap();
        let c = random_code(&f13, 12, 5, 3).unwrap();
        assert_eq!(ss_recover_support(&c), Err(AttackError::NotGrs));
    }

    #[test]
    fn multipliers_of_a_codimension_one_subcode() {
        let f31 = Field::prime(31).unwrap();
        let p = random_params(&f31, 20, 6, 7);
        let full = grs_code(&p);
        let rows: Vec<Vec<Elem>> = full.generator().row_iter().take(5).map(|r| r.to_vec()).collect();
        let sub = LinearCode::from_rows(&f31, 20, &rows).unwrap();
        let v = recover_multipliers(&sub, p.alpha(), 6).unwrap();
        let rec = grs_code(&GrsParams::new(&f31, p.alpha().to_vec(), v, 6).unwrap());
        assert!(rec.contains_code(&sub).unwrap());
    }
}
