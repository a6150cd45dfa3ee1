use rand::Rng;
use tgrs_core::codes::random_code;
use tgrs_core::distinguisher::{distinguish, measure, DistinguishConfig, Verdict};
use tgrs_core::exec::Serial;
use tgrs_core::grs::{grs_code, tgrs_code};
use tgrs_core::mceliece::{keygen, TwistParams};
use tgrs_core::rng::stream;
use tgrs_core::{Field, GrsParams, LinearCode, TgrsKey};

fn f31_key(k: usize, t: usize, h: usize) -> TgrsKey {
    let f = Field::prime(31).unwrap();
    let grs = GrsParams::new(&f, (0..30).collect(), vec![1; 30], k).unwrap();
    TgrsKey::new(grs, vec![t], vec![h], vec![1]).unwrap()
}

#[test]
fn twisted_code_is_structured_without_shortening() {
    let c = tgrs_code(&f31_key(8, 4, 3));
    let (_, short) = measure(&c, 0, 0);
    let observed = short.square().k();
    assert!(observed <= 20, "observed {observed}");
    let res = distinguish(&c, &DistinguishConfig::default(), &Serial).unwrap();
    assert_eq!(res.verdict, Verdict::Structured);
    assert!(res.reports.iter().all(|r| r.observed <= r.random_expected));
}

#[test]
fn grs_square_has_dimension_2k_minus_1() {
    let f = Field::prime(31).unwrap();
    let c = grs_code(&GrsParams::new(&f, (0..30).collect(), (1..=30).collect(), 8).unwrap());
    assert_eq!(measure(&c, 0, 0).1.square().k(), 15);
    let res = distinguish(&c, &DistinguishConfig::default(), &Serial).unwrap();
    assert_eq!(res.verdict, Verdict::Structured);
}

#[test]
fn random_code_is_inconclusive() {
    let f = Field::prime(31).unwrap();
    let inconclusive = (0..10)
        .filter(|&s| {
            let c = random_code(&f, 30, 8, s).unwrap();
            let cfg = DistinguishConfig { seed: s, ..Default::default() };
            distinguish(&c, &cfg, &Serial).unwrap().verdict == Verdict::Inconclusive
        })
        .count();
    assert!(inconclusive >= 9, "{inconclusive}/10");
}

#[test]
fn shortened_squares_respect_the_bound_over_f64() {
    let f = Field::from_order(64).unwrap();
    for i in 0..40u64 {
        let mut rng = stream(i, b"f64", 0);
        let n = rng.gen_range(20..=50);
        let k = rng.gen_range(5..=(n / 2).min(n - 10));
        let twist = TwistParams { t: vec![rng.gen_range(1..=n - k)], h: vec![rng.gen_range(0..k)], eta: None };
        let (sk, pk) = keygen(&f, n, k, &twist, i).unwrap();
        let c = LinearCode::from_generator(pk.g_pub());
        let cfg = DistinguishConfig { d_hint: Some(sk.d_l()), seed: i, ..Default::default() };
        let res = distinguish(&c, &cfg, &Serial).unwrap();
        assert_eq!(res.verdict, Verdict::Structured);
        for r in res.reports.iter().filter(|r| !r.degenerate(k)) {
            assert!(r.observed <= r.predicted_max, "instance {i}: {r:?}");
        }
    }
}

#[test]
fn high_rate_codes_are_rejected() {
    let c = tgrs_code(&f31_key(20, 4, 3));
    assert!(distinguish(&c, &DistinguishConfig::default(), &Serial).is_err());
}
