use num_rational::Ratio;
use tgrs_core::exec::Serial;
use tgrs_core::lemmas::{
    density_below, g_density_mc, gcd_census, density_transfer_implication, triple_census, CensusStop, TripleClass, TripleSetup,
};
use tgrs_core::rng::stream;
use tgrs_core::{Field, Poly};

#[test]
fn census_at_q3_s2_u2() {
    let f = Field::prime(3).unwrap();
    let c = gcd_census(&f, 2, 2, &Serial).unwrap();
    assert_eq!(c.counts, vec![216, 72, 36]);
    assert_eq!(c.total, 324);
    assert_eq!(c.predicted(0), Ratio::from_integer(216));
    assert_eq!(c.predicted(1), Ratio::from_integer(72));
    // the closed form undercounts the boundary cell i = s = u
    assert_eq!(c.predicted(2), Ratio::from_integer(24));
}

#[test]
fn densities_at_q3_s2_u2() {
    let f = Field::prime(3).unwrap();
    assert_eq!(density_below(&f, 2, 2, 0, &Serial).unwrap(), Ratio::new(2, 3));
    assert_eq!(density_below(&f, 2, 2, 1, &Serial).unwrap(), Ratio::new(288, 324));
    assert_eq!(density_below(&f, 2, 2, 2, &Serial).unwrap(), Ratio::from_integer(1));
}

#[test]
fn gcd_condition_density_at_q31() {
    let f = Field::prime(31).unwrap();
    let est = g_density_mc(&f, 17, 17, 200_000, 3, &Serial).unwrap();
    let p0 = 1.0 - 1e-7;
    assert!(est.frequency() >= p0 - 3.0 * est.sigma_at(p0), "{est:?}");
}

#[test]
fn density_transfer_truth_table() {
    assert!(density_transfer_implication(11, 7, 1.0, 1.0 - 1e-6));
    assert!(!density_transfer_implication(11, 7, 1.0, 0.9));
    // a false premise makes the implication hold vacuously
    assert!(density_transfer_implication(11, 7, 0.5, 0.0));
}

#[test]
fn triples_from_the_subspace_are_inside() {
    let f = Field::prime(17).unwrap();
    let setup = TripleSetup::twisted(&f, 8, 9, 3, 2).unwrap();
    let mut rng = stream(1, b"inside", 0);
    for _ in 0..200 {
        let fs: [Poly; 3] = core::array::from_fn(|_| setup.e_prime().random_element(&mut rng));
        assert_eq!(setup.classify(&fs), TripleClass::Inside);
        assert!(setup.product_dim(&fs) <= 2 * setup.k() + 2);
    }
}

#[test]
fn triples_through_the_twist_polynomial_are_psi() {
    let f = Field::prime(17).unwrap();
    let setup = TripleSetup::twisted(&f, 17, 17, 4, 1).unwrap();
    let mut rng = stream(2, b"psi", 0);
    let psi = (0..300)
        .filter(|_| {
            let fs = [setup.c().clone(), setup.e_prime().random_element(&mut rng), setup.e_prime().random_element(&mut rng)];
            setup.classify(&fs) == TripleClass::Psi
        })
        .count();
    assert!(psi >= 299, "{psi}/300");
}

#[test]
fn census_counts_sum_to_samples() {
    let f = Field::prime(17).unwrap();
    let setup = TripleSetup::twisted(&f, 6, 7, 2, 5).unwrap();
    let c = triple_census(&setup, CensusStop::Samples(3000), 9, &Serial).unwrap();
    assert_eq!(c.inside + c.gamma + c.psi, c.samples);
    assert_eq!(c.samples, 3000);
}
