use std::collections::HashMap;

use rotbell::separability::{
    count_partitions, enumerate_partitions, sample_k_separable_profile, sample_partition,
    stirling2, verify_antidiagonal_bound,
};
use rotbell::states::{make_ghz, rng_from_seed, sample_product_state, PartitionSpec, State};

#[test]
fn enumeration_counts_match_stirling_sums() {
    for n in 1..=8 {
        for k_min in 1..=n {
            let got = enumerate_partitions(n, k_min).unwrap().count() as u128;
            assert_eq!(got, count_partitions(n, k_min), "n={n} k_min={k_min}");
        }
    }
}

#[test]
fn enumeration_has_no_duplicates() {
    let all: Vec<_> = enumerate_partitions(6, 1).unwrap().map(|p| p.canonical()).collect();
    let mut dedup = all.clone();
    dedup.sort_by_key(|p| p.to_string());
    dedup.dedup();
    assert_eq!(all.len(), dedup.len());
}

#[test]
fn sampling_is_roughly_uniform() {
    // S(4, 2) = 7 partitions, each expected 1/7 of the draws
    let mut rng = rng_from_seed(12);
    let draws = 14_000;
    let mut counts: HashMap<String, usize> = HashMap::new();
    for _ in 0..draws {
        let p = sample_partition(4, 2, &mut rng).unwrap().canonical();
        *counts.entry(p.to_string()).or_default() += 1;
    }
    assert_eq!(counts.len() as u128, stirling2(4, 2));
    for (p, c) in counts {
        let frac = c as f64 / draws as f64;
        assert!((frac - 1.0 / 7.0).abs() < 0.02, "{p}: {frac}");
    }
}

#[test]
fn ghz_breaks_every_product_claim() {
    let ghz: State = make_ghz(3).unwrap().into();
    for p in enumerate_partitions(3, 2).unwrap() {
        let check = verify_antidiagonal_bound(&ghz, &p);
        assert!(!check.satisfied, "{p}");
    }
    let trivial = PartitionSpec::new(vec![vec![1, 2, 3]]).unwrap();
    assert!(verify_antidiagonal_bound(&ghz, &trivial).satisfied);
}

#[test]
fn products_respect_their_own_bound() {
    let mut rng = rng_from_seed(13);
    for n in 2..=6 {
        for k in 1..=n {
            let (psi, p) = sample_product_state(n, k, &mut rng).unwrap();
            assert!(p.k() >= k);
            assert!(verify_antidiagonal_bound(&psi.into(), &p).satisfied);
        }
    }
}

#[test]
fn profile_sampler_scales_past_dense_limit() {
    let p = sample_k_separable_profile(18, 3, 2, 1).unwrap();
    assert_eq!(p.values().len(), 1 << 17);
    assert!(p.max_modulus() <= 0.125 + 1e-12);
}
