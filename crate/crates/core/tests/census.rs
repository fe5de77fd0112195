use proptest::prelude::*;

use weilcensus::census::{
    census_slabs, classify, default_sieve_y, estimate_vg, least_squares_slope, ratio_string, run_census,
    run_census_with, trend, Counts,
};
use weilcensus::report::{census_csv_string, from_json, read_census_csv, to_json, CensusRow, Envelope, RunManifest};
use weilcensus::weilgroup::Prop2Verdict;
use weilcensus::weilpoly::{box_bounds, enumerate_box, WeilCoefficients, WeilStatus};

fn small_field() -> impl Strategy<Value = (usize, u64, u32)> {
    prop::sample::select(vec![(1usize, 2u64, 1u32), (1, 7, 2), (2, 2, 1), (2, 3, 1), (2, 5, 1), (2, 2, 2), (3, 2, 1)])
}

/// Counts assembled from per-point classifications.
fn counts_by_classification(g: usize, p: u64, k: u32, y: u64) -> Counts {
    let mut c = Counts::default();
    for w in enumerate_box(g, p, k, u128::MAX).unwrap().iter() {
        let cl = classify(&w, y);
        c.box_count += 1;
        if cl.weil_status == WeilStatus::NotWeil {
            continue;
        }
        c.weil_count += 1;
        c.real_root_count += u64::from(cl.weil_status == WeilStatus::WeilWithRealRoot);
        c.ordinary_count += u64::from(cl.ordinary);
        c.certified_w2g_count += u64::from(cl.galois.is_certified());
        c.both_count += u64::from(matches!(cl.prop2, Prop2Verdict::ConjugatesOnly { .. }));
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn census_matches_pointwise_classification((g, p, k) in small_field()) {
        let r = run_census(g, p, k, 50).unwrap();
        prop_assert_eq!(r.counts, counts_by_classification(g, p, k, 50));
    }

    #[test]
    fn slabs_add_up((g, p, k) in small_field()) {
        let slabs = census_slabs(g, p, k, 50).unwrap();
        let a1: Vec<i64> = slabs.iter().map(|s| s.0).collect();
        let b = box_bounds(g, p, k).unwrap()[0];
        prop_assert_eq!(a1, (-b..=b).collect::<Vec<_>>());
        let total = run_census(g, p, k, 50).unwrap().counts;
        prop_assert_eq!(slabs.iter().map(|s| s.1.box_count).sum::<u64>(), total.box_count);
        prop_assert_eq!(slabs.iter().map(|s| s.1.weil_count).sum::<u64>(), total.weil_count);
        prop_assert_eq!(slabs.iter().map(|s| s.1.both_count).sum::<u64>(), total.both_count);
    }

    #[test]
    fn count_invariants((g, p, k) in small_field()) {
        let c = run_census(g, p, k, 50).unwrap().counts;
        let expected_box: u64 = box_bounds(g, p, k).unwrap().iter().map(|&b| 2 * b as u64 + 1).product();
        prop_assert_eq!(c.box_count, expected_box);
        prop_assert!(c.weil_count <= c.box_count);
        prop_assert!(c.real_root_count <= c.weil_count);
        prop_assert!(c.ordinary_count <= c.weil_count);
        prop_assert!(c.certified_w2g_count <= c.weil_count);
        prop_assert!(c.both_count <= c.ordinary_count.min(c.certified_w2g_count).min(c.interior_count()));
    }

    #[test]
    fn csv_and_json_round_trip((g, p, k) in small_field(), ts in 0u64..2_000_000_000, extra in "[a-z]{1,8}") {
        let r = run_census(g, p, k, 50).unwrap();
        let m = RunManifest::new("census").with_timestamp(ts).param("g", g).param("note", &extra).with_seed(3);
        let csv = census_csv_string(&m, std::slice::from_ref(&r)).unwrap();
        let (m2, rows) = read_census_csv(csv.as_bytes()).unwrap();
        prop_assert_eq!(&m2, &m);
        prop_assert_eq!(rows, vec![CensusRow::from(&r)]);
        let json = to_json(&m, &r).unwrap();
        let back: Envelope<weilcensus::census::CensusRecord> = from_json(&json).unwrap();
        prop_assert_eq!(&back.manifest, &m);
        prop_assert_eq!(back.data.counts, r.counts);
        prop_assert_eq!(to_json(&back.manifest, &back.data).unwrap(), json);
    }
}

#[test]
fn known_counts() {
    let r = run_census(2, 3, 1, 200).unwrap();
    assert_eq!(
        (r.counts.box_count, r.counts.weil_count, r.counts.real_root_count),
        (481, 63, 1)
    );
    assert_eq!(r.ratio_interior, "7/31");
    let r = run_census(1, 5, 1, 50).unwrap();
    assert_eq!((r.counts.weil_count, r.counts.ordinary_count), (9, 8));
}

#[test]
fn thread_count_does_not_matter() {
    let one = run_census_with(2, 3, 2, 50, 1).unwrap();
    let three = run_census_with(2, 3, 2, 50, 3).unwrap();
    assert_eq!(one.counts, three.counts);
    let m = RunManifest::new("census").with_timestamp(0);
    assert_eq!(census_csv_string(&m, &[one]).unwrap(), census_csv_string(&m, &[three]).unwrap());
}

#[test]
fn trend_is_monotone_and_fitted() {
    let s = trend(2, 2, 1, 3, Some(50)).unwrap();
    let weil: Vec<u64> = s.records.iter().map(|r| r.counts.weil_count).collect();
    assert!(weil.windows(2).all(|w| w[0] < w[1]));
    let xs: Vec<f64> = s.records.iter().map(|r| (r.q as f64).ln()).collect();
    let ys: Vec<f64> = weil.iter().map(|&w| (w as f64).ln()).collect();
    assert_eq!(s.growth_exponent, least_squares_slope(&xs, &ys));
    let vg = estimate_vg(&s).unwrap();
    assert_eq!(vg.weil_based.len(), 3);
    assert!(vg.ordinary_based.iter().zip(&vg.weil_based).all(|(o, w)| o <= w));
    let single = trend(2, 2, 1, 1, Some(50)).unwrap();
    assert!(single.growth_exponent.is_none());
    assert!(estimate_vg(&single).is_err());
}

#[test]
fn helpers() {
    assert_eq!(ratio_string(4, 6), "2/3");
    assert_eq!(ratio_string(0, 0), "0/0");
    assert_eq!(default_sieve_y(81), 50);
    assert_eq!(default_sieve_y(50u64.pow(4)), 50);
    assert_eq!(default_sieve_y(50u64.pow(4) + 1), 51);
    assert_eq!(least_squares_slope(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]), Some(2.0));
}

#[test]
fn classify_example() {
    let w = WeilCoefficients::new(5, 1, vec![1, 3]).unwrap();
    let c = classify(&w, 50);
    assert_eq!(c.frobenius, "X^4 + X^3 + 3*X^2 + 5*X + 25");
    assert_eq!(c.weil_status, WeilStatus::WeilInterior);
    assert!(c.prop2.is_conjugates_only());
    let json = serde_json::to_string(&c).unwrap();
    assert!(json.contains("\"ordinary\":true"));
}
