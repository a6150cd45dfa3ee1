//! Structural invariants as property tests. Objects are built from a
//! proptest-chosen seed so failures shrink to a reproducible seed.

use num_rational::Ratio;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use tgrs_core::codes::{random_code, schur_product};
use tgrs_core::distinguisher::{distinguish, DistinguishConfig, Verdict};
use tgrs_core::exec::Serial;
use tgrs_core::grs::{grs_code, is_mds, tgrs_code};
use tgrs_core::lemmas::{dim_sum_check, gcd_census};
use tgrs_core::linalg::random_matrix;
use tgrs_core::mceliece::{decrypt, encrypt, keygen, TwistParams};
use tgrs_core::poly::{ev, interpolate, space_product};
use tgrs_core::rng::{stream, Stream};
use tgrs_core::{Elem, Field, GrsParams, LinearCode, Poly, PolySpace, Subspace, TgrsKey};

const ORDERS: [u32; 8] = [2, 3, 4, 7, 8, 9, 16, 25];

fn field(i: usize) -> Field {
    Field::from_order(ORDERS[i % ORDERS.len()]).unwrap()
}

fn support(f: &Field, n: usize, rng: &mut Stream) -> (Vec<Elem>, Vec<Elem>) {
    let mut alpha: Vec<Elem> = f.elements().collect();
    alpha.shuffle(rng);
    alpha.truncate(n);
    let v = (0..n).map(|_| f.random_nonzero(rng)).collect();
    (alpha, v)
}

/// One-twist key over F_q with n ≤ q and 1 ≤ k < n.
fn random_key(q: u32, seed: u64) -> TgrsKey {
    let f = Field::from_order(q).unwrap();
    let mut rng = stream(seed, b"prop-key", 0);
    let n = rng.gen_range(4..=q as usize);
    let k = rng.gen_range(2..n);
    let twist = TwistParams { t: vec![rng.gen_range(1..=n - k)], h: vec![rng.gen_range(0..k)], eta: None };
    keygen(&f, n, k, &twist, seed).unwrap().0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverse_and_order(fi in 0usize..8, a in any::<u32>()) {
        let f = field(fi);
        let a = 1 + a % (f.q() - 1);
        prop_assert_eq!(f.inv(f.inv(a).unwrap()).unwrap(), a);
        prop_assert_eq!(f.pow(a, f.q() as u64 - 1), 1);
    }

    #[test]
    fn rref_idempotent_and_rank_of_transpose(fi in 0usize..8, rows in 1usize..8, cols in 1usize..8, seed in any::<u64>()) {
        let f = field(fi);
        let m = random_matrix(&f, rows, cols, &mut stream(seed, b"m", 0));
        let r = m.rref();
        prop_assert_eq!(r.matrix.rref(), r.clone());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(r.rank, m.rank());
    }

    #[test]
    fn grassmann_identity(fi in 0usize..8, n in 2usize..9, da in 0usize..9, db in 0usize..9, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = stream(seed, b"grassmann", 0);
        let a = Subspace::from_matrix(&random_matrix(&f, da.min(n), n, &mut rng));
        let b = Subspace::from_matrix(&random_matrix(&f, db.min(n), n, &mut rng));
        let (s, i) = (a.sum(&b).unwrap(), a.intersect(&b).unwrap());
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
    }

    #[test]
    fn ev_is_multiplicative_and_interpolation_inverts(fi in 0usize..8, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = stream(seed, b"ev", 0);
        let n = rng.gen_range(1..=f.q() as usize);
        let (alpha, v) = support(&f, n, &mut rng);
        let ones = vec![1; n];
        let (a, b) = (Poly::random(&f, n, &mut rng), Poly::random(&f, n, &mut rng));
        let prod: Vec<Elem> = ev(&alpha, &ones, &a).unwrap().iter().zip(ev(&alpha, &ones, &b).unwrap()).map(|(&x, y)| f.mul(x, y)).collect();
        prop_assert_eq!(ev(&alpha, &ones, &a.mul(&b)).unwrap(), prod);
        prop_assert_eq!(interpolate(&f, &alpha, &v, &ev(&alpha, &v, &a).unwrap()).unwrap(), a);
    }

    #[test]
    fn poly_space_square_bound(fi in 0usize..8, bound in 1usize..10, dim in 1usize..6, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = stream(seed, b"space", 0);
        let gens: Vec<Poly> = (0..dim).map(|_| Poly::random(&f, bound, &mut rng)).collect();
        let p = PolySpace::span(&f, bound, &gens);
        let d = p.dim();
        prop_assert!(space_product(&p, &p).dim() <= d * (d + 1) / 2);
    }

    #[test]
    fn code_square_bound_and_shorten_dual(fi in 0usize..8, n in 2usize..12, k in 1usize..12, seed in any::<u64>()) {
        let f = field(fi);
        let k = k.min(n);
        let c = random_code(&f, n, k, seed).unwrap();
        prop_assert!(c.square().k() <= k * (k + 1) / 2);
        let mut rng = stream(seed, b"indices", 0);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut rng);
        idx.truncate(rng.gen_range(0..n));
        prop_assert_eq!(c.shorten(&idx, false).unwrap().dual(), c.dual().puncture(&idx).unwrap());
    }

    #[test]
    fn grs_product_law(fi in 0usize..8, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = stream(seed, b"law", 0);
        let n = rng.gen_range(2..=f.q() as usize);
        let k = rng.gen_range(1..n);
        let l = rng.gen_range(1..=n - k);
        let (alpha, v) = support(&f, n, &mut rng);
        let (_, w) = support(&f, n, &mut rng);
        let a = GrsParams::new(&f, alpha.clone(), v.clone(), k).unwrap();
        let b = GrsParams::new(&f, alpha.clone(), w.clone(), l).unwrap();
        let vw = v.iter().zip(&w).map(|(&x, &y)| f.mul(x, y)).collect();
        let expect = GrsParams::new(&f, alpha, vw, k + l - 1).unwrap();
        prop_assert_eq!(schur_product(&grs_code(&a), &grs_code(&b)).unwrap(), grs_code(&expect));
    }

    #[test]
    fn tgrs_dual_is_one_twist_qgrs(qi in 0usize..3, seed in any::<u64>()) {
        let key = random_key([13, 16, 17][qi], seed);
        let (n, k) = (key.n(), key.k());
        let c = tgrs_code(&key);
        let dual_grs = grs_code(&key.grs().dual().unwrap());
        prop_assert_eq!(c.dual().intersect(&dual_grs).unwrap().k(), n - k - 1);
    }

    #[test]
    fn tgrs_shortening_keeps_structure(qi in 0usize..3, seed in any::<u64>()) {
        let key = random_key([13, 16, 17][qi], seed);
        let (n, k) = (key.n(), key.k());
        let mut rng = stream(seed, b"short", 0);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut rng);
        idx.truncate(rng.gen_range(0..=k - 1));
        let short = tgrs_code(&key).shorten(&idx, false).unwrap();
        prop_assume!(short.k() == k - idx.len());
        let grs_short = grs_code(key.grs()).shorten(&idx, false).unwrap();
        prop_assert!(short.intersect(&grs_short).unwrap().k() + idx.len() + 1 >= k);
    }

    #[test]
    fn one_twist_square_bound(qi in 0usize..3, seed in any::<u64>()) {
        let key = random_key([13, 16, 17][qi], seed);
        let (k, t) = (key.k(), key.t()[0]);
        let bound = if t >= k { 3 * k - 1 } else { 2 * k + t };
        prop_assert!(tgrs_code(&key).square().k() <= bound);
    }

    #[test]
    fn public_key_spans_the_code_and_decrypts(qi in 0usize..3, seed in any::<u64>()) {
        // unique decoding needs minimum distance n − k + 1; q ≥ n² makes
        // MDS keys common
        let f = Field::from_order([101, 121, 128][qi]).unwrap();
        let mut rng = stream(seed, b"mceliece", 0);
        let n = rng.gen_range(6..=10);
        let k = rng.gen_range(2..=n - 3);
        let twist = TwistParams { t: vec![rng.gen_range(1..=n - k)], h: vec![rng.gen_range(0..k)], eta: None };
        let (sk, pk) = keygen(&f, n, k, &twist, seed).unwrap();
        prop_assert_eq!(LinearCode::from_generator(pk.g_pub()), tgrs_code(&sk));
        if !is_mds(&tgrs_code(&sk)) {
            return Ok(());
        }
        let m: Vec<Elem> = (0..k).map(|_| f.random(&mut rng)).collect();
        let ct = encrypt(&pk, &m, seed).unwrap();
        prop_assert_eq!(decrypt(&sk, &pk, &ct).unwrap(), m);
    }

    #[test]
    fn baseline_dimensions_are_never_structured(n in 24usize..40, seed in any::<u64>()) {
        let f = Field::prime(41).unwrap();
        let c = random_code(&f, n, n / 2 - 1, seed).unwrap();
        let res = distinguish(&c, &DistinguishConfig { seed, ..Default::default() }, &Serial).unwrap();
        let baseline = res.reports.iter().all(|r| !r.degenerate(c.k()) && r.observed == r.random_expected);
        prop_assert!(!baseline || res.verdict == Verdict::Inconclusive);
    }

    #[test]
    fn dim_sum_is_exact(fi in 0usize..8, k in 1usize..9, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = stream(seed, b"sum", 0);
        let (a, b) = (Poly::random(&f, k, &mut rng), Poly::random(&f, k, &mut rng));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (measured, predicted) = dim_sum_check(&a, &b, k).unwrap();
        prop_assert_eq!(measured, predicted);
    }
}

#[test]
fn field_tables_are_a_commutative_ring_for_small_orders() {
    for q in [2, 3, 4, 5, 7, 8, 9, 25, 27, 49] {
        let f = Field::from_order(q).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements().step_by(if q > 9 { 5 } else { 1 }) {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn census_totals_and_densities() {
    for q in [2, 3, 4] {
        let f = Field::from_order(q).unwrap();
        for s in 0..=3 {
            for u in 0..=3 {
                let c = gcd_census(&f, s, u, &Serial).unwrap();
                assert_eq!(c.total, c.predicted_total());
                for j in 0..s.min(u) {
                    let expect = Ratio::from_integer(1) - Ratio::new(1, (q as u64).pow(j as u32 + 1));
                    assert_eq!(c.density_below(j), expect, "q={q} s={s} u={u} j={j}");
                }
            }
        }
    }
}
