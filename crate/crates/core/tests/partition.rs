use ppl_core::partition::{
    build_legendre_partition, build_modular_partition, build_valuation_parity_partition,
    PartitionHandle,
};
use proptest::prelude::*;

fn handles() -> Vec<PartitionHandle> {
    vec![
        build_modular_partition(3, &[2, 3]).unwrap(),
        build_modular_partition(5, &[3, 2, 7, 5]).unwrap(),
        build_valuation_parity_partition(3, &[5]).unwrap(),
        build_valuation_parity_partition(7, &[2, 3]).unwrap(),
        build_legendre_partition(6, &[2, 3]).unwrap(),
        build_legendre_partition(3, &[3]).unwrap(),
        build_legendre_partition(8, &[3, 5, 7]).unwrap(),
    ]
}

#[test]
fn json_round_trip_preserves_classification() {
    for h in handles() {
        let json = h.to_json();
        let back = PartitionHandle::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
        for n in 1..=20_000 {
            assert_eq!(
                back.classify(n),
                h.classify(n),
                "{} n={n}",
                h.metadata().description
            );
        }
    }
}

#[test]
fn every_part_is_inhabited() {
    for h in handles() {
        let mut seen = vec![false; h.k()];
        for n in 1..=20_000 {
            seen[h.classify(n).unwrap() - 1] = true;
        }
        assert!(seen.iter().all(|&s| s), "{}", h.metadata().description);
    }
}

fn table_period(h: &PartitionHandle) -> u64 {
    let doc = h.to_document();
    let exps = doc.exponents.unwrap();
    doc.primes
        .iter()
        .zip(exps)
        .map(|(&p, e)| p.pow(e))
        .product()
}

proptest! {
    #[test]
    fn modular_parts_are_periodic(k in 2usize..6, n in 1u64..1_000_000) {
        let primes = [2u64, 3, 5, 7, 11];
        let h = build_modular_partition(k, &primes[..k - 1]).unwrap();
        prop_assert_eq!(h.classify(n), h.classify(n + table_period(&h)));
    }
}
