mod common;

use num_rational::BigRational;
use proptest::prelude::*;

use weilcensus::sieve::{
    exception_bound, omega, omega_table, p_a_y, p_of_y, variance_lhs_point_major, variance_lhs_prime_major,
    variance_report, OmegaValue, SieveConfig,
};
use weilcensus::weilpoly::{enumerate_box, WeilCoefficients};
use weilcensus::Error;

use common::trial_division;

/// Counts residue vectors whose `q`-symmetric polynomial mod `prime` is
/// squarefree with factor degrees `{1^{2g-ell}, ell}`.
fn brute_omega(g: usize, q: u64, ell: usize, prime: u64) -> u64 {
    let mut expected = vec![1; 2 * g - ell];
    expected.push(ell);
    expected.sort();
    let total = prime.pow(g as u32);
    (0..total)
        .filter(|&idx| {
            let a: Vec<u64> = (0..g).map(|i| idx / prime.pow(i as u32) % prime).collect();
            let mut c = vec![0u64; 2 * g + 1];
            c[2 * g] = 1;
            c[0] = common::pow_mod(q, g as u64, prime);
            for i in 1..=g {
                c[2 * g - i] = a[i - 1];
                c[i] = a[i - 1] * common::pow_mod(q, (g - i) as u64, prime) % prime;
            }
            let (degrees, squarefree) = trial_division(&c, prime);
            squarefree && degrees == expected
        })
        .count() as u64
}

#[test]
fn omega_matches_brute_force() {
    for (g, q, ell) in [(1usize, 5u64, 2usize), (2, 3, 2), (2, 3, 4), (2, 5, 4), (3, 2, 6), (3, 3, 2)] {
        let (p, k) = weilcensus::primes::prime_power(q).unwrap();
        let cfg = SieveConfig::new(g, p, k, ell, 13).unwrap();
        for prime in cfg.primes() {
            if prime.pow(g as u32) > 3000 {
                continue;
            }
            assert_eq!(
                omega(prime, &cfg).unwrap(),
                OmegaValue::Exact(brute_omega(g, q, ell, prime)),
                "g = {g}, q = {q}, ell = {ell}, p' = {prime}"
            );
        }
    }
}

#[test]
fn omega_table_example() {
    let cfg = SieveConfig::new(2, 3, 1, 4, 13).unwrap();
    let table = omega_table(&cfg).unwrap();
    let values: Vec<Option<u64>> = table.entries.iter().map(|e| e.omega.exact()).collect();
    assert_eq!(values, vec![Some(1), Some(6), Some(12), Some(30), Some(42)]);
    assert!(table.is_exact());
}

#[test]
fn genus_one_q5_values() {
    let cfg = SieveConfig::new(1, 5, 1, 2, 5).unwrap();
    assert_eq!(omega(3, &cfg).unwrap(), OmegaValue::Exact(2));
    assert_eq!(p_of_y(&cfg).unwrap(), BigRational::new(7.into(), 6.into()));
    let report = variance_report(&cfg).unwrap();
    assert_eq!(report.lhs, "35/12");
    assert_eq!(report.box_count, 9);
}

#[test]
fn sampling_is_seeded_and_refuses_exact_use() {
    let cfg = SieveConfig::new(2, 3, 1, 4, 50).unwrap().with_sampling(100, 20_000, 7);
    let a = omega(47, &cfg).unwrap();
    let b = omega(47, &cfg).unwrap();
    assert_eq!(a, b);
    let OmegaValue::Sampled { hits, samples, .. } = a else {
        panic!("expected sampling");
    };
    let exact = omega(47, &cfg.clone().with_sampling(u128::MAX, 0, 0)).unwrap().exact().unwrap();
    let p_hat = hits as f64 / samples as f64;
    let p_true = exact as f64 / 47f64.powi(2);
    let sigma = (p_true * (1.0 - p_true) / samples as f64).sqrt();
    assert!((p_hat - p_true).abs() < 5.0 * sigma, "{p_hat} vs {p_true}");
    assert!(matches!(p_of_y(&cfg), Err(Error::SampledOmega(_))));
}

#[test]
fn config_validation() {
    assert!(SieveConfig::new(2, 3, 1, 3, 10).is_err());
    assert!(SieveConfig::new(2, 3, 1, 6, 10).is_err());
    assert!(SieveConfig::new(5, 3, 1, 6, 10).is_err());
    assert!(SieveConfig::new(5, 3, 1, 8, 10).is_ok());
    assert!(SieveConfig::new(2, 4, 1, 2, 10).is_err());
    assert!(omega(4, &SieveConfig::new(2, 3, 1, 2, 10).unwrap()).is_err());
    assert!(omega(3, &SieveConfig::new(2, 3, 1, 2, 10).unwrap()).is_err());
}

#[test]
fn exception_bound_values() {
    assert!(exception_bound(2, 9).is_err());
    let b = exception_bound(2, 81).unwrap();
    assert_eq!(b.y_used, 3);
    let expected = 81f64.powf(1.25) * 81f64.ln();
    assert!((b.bound - expected).abs() < 1e-9 * expected);
    assert_eq!(exception_bound(1, 79).unwrap().y_used, 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn variance_orders_agree(g in 1usize..=2, p in prop::sample::select(vec![2u64, 3, 5]), y in 2u64..12, big in any::<bool>()) {
        let ell = if big { 2 * g } else { 2 };
        let cfg = SieveConfig::new(g, p, 1, ell, y).unwrap();
        prop_assert_eq!(variance_lhs_point_major(&cfg).unwrap(), variance_lhs_prime_major(&cfg).unwrap());
    }

    #[test]
    fn p_a_y_is_bounded_and_checked(p in prop::sample::select(vec![3u64, 5, 7]), y in 3u64..20) {
        let cfg = SieveConfig::new(1, p, 1, 2, y).unwrap();
        let n = cfg.primes().len() as u64;
        for w in enumerate_box(1, p, 1, u128::MAX).unwrap().iter() {
            prop_assert!(p_a_y(&w, &cfg).unwrap() <= n);
        }
        let bad = WeilCoefficients::new(p, 1, vec![0]).unwrap();
        prop_assert!(p_a_y(&bad, &SieveConfig::new(2, p, 1, 2, y).unwrap()).is_err());
    }
}
