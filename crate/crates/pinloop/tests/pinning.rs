mod common;

use common::{all_subsets, named, named_sets, sorted};
use pinloop::pinning::{
    enumerate_minimal_pinning_sets, forced_regions, is_pinning, minimal_pinning_from, pinning_number_exact,
    pinning_report, semilattice,
};
use pinloop::{fixtures, Multiloop, RegionSet};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimal pinning sets by testing every subset.
fn brute_force_minimal(m: &Multiloop) -> Vec<RegionSet> {
    let pinning: Vec<RegionSet> = all_subsets(m.n_regions()).filter(|p| is_pinning(m, p).unwrap()).collect();
    let minimal = pinning.iter().filter(|p| !pinning.iter().any(|q| q != *p && q.is_subset(p))).cloned().collect();
    sorted(minimal)
}

#[test]
fn worked_multiloop_pin_checks() {
    let m = fixtures::worked16();
    assert!(!is_pinning(&m, &named(&m, &["r", "p1", "p2"])).unwrap());
    assert!(is_pinning(&m, &m.all_regions()).unwrap());
}

#[test]
fn minimal_sets_agree_with_exhaustive_search() {
    for (name, m) in fixtures::all() {
        let expected = brute_force_minimal(&m);
        assert_eq!(sorted(enumerate_minimal_pinning_sets(&m, None).unwrap()), expected, "{name}");
        let smallest = expected.iter().map(RegionSet::len).min().unwrap();
        assert_eq!(pinning_number_exact(&m, None).unwrap().pinning_number, smallest, "{name}");
        let common = expected.iter().fold(m.all_regions(), |acc, s| acc.intersection(s));
        assert_eq!(forced_regions(&m, None).unwrap(), common, "{name}");
    }
}

#[test]
fn nine_one_five_pinning_counts() {
    let m = fixtures::fixture("9_1_5").unwrap();
    let report = pinning_report(&m, None).unwrap();
    assert_eq!(report.pinning_number, 4);
    assert_eq!(report.optimal_sets.len(), 2);
    assert_eq!(report.minimal_sets.len(), 5);
    assert!(named(&m, &["1", "4"]).is_subset(&report.forced_regions));
}

#[test]
fn eleven_one_ninety_seven_pinning_counts() {
    let m = fixtures::fixture("11_1_97").unwrap();
    let report = pinning_report(&m, None).unwrap();
    assert_eq!(report.minimal_sets.len(), 13);
    assert_eq!(report.pinning_number, 4);
    assert!(report.optimal_sets.contains(&named(&m, &["2", "4", "7", "8"])));
}

#[test]
fn figure_eight_needs_both_lobes() {
    let m = fixtures::figure_eight();
    let report = pinning_report(&m, None).unwrap();
    assert_eq!(report.minimal_sets, named_sets(&m, &[&["lobe1", "lobe2"]]));
}

#[test]
fn greedy_minimality_on_random_orders() {
    let catalog = fixtures::all();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let (name, m) = &catalog[rng.gen_range(0..catalog.len())];
        let mut order: Vec<usize> = (0..m.n_regions()).collect();
        order.shuffle(&mut rng);
        let out = minimal_pinning_from(m, &m.all_regions(), &order).unwrap();
        assert!(is_pinning(m, &out).unwrap(), "{name} {order:?}");
        for r in out.iter() {
            assert!(!is_pinning(m, &out.without(r)).unwrap(), "{name} {order:?} drop {r}");
        }
    }
}

#[test]
fn greedy_minimization_rejects_a_non_pinning_start() {
    let m = fixtures::worked16();
    assert!(minimal_pinning_from(&m, &named(&m, &["r"]), &[]).is_err());
}

#[test]
fn semilattice_contains_every_minimal_set_and_the_full_set() {
    let m = fixtures::fixture("9_1_5").unwrap();
    let lattice = semilattice(&m, None).unwrap();
    let minimal = enumerate_minimal_pinning_sets(&m, None).unwrap();
    for s in &minimal {
        assert!(lattice.nodes.contains(s));
    }
    assert!(lattice.nodes.contains(&m.all_regions()));
    for &(a, b) in &lattice.edges {
        assert!(lattice.nodes[a].is_subset(&lattice.nodes[b]) && lattice.nodes[a] != lattice.nodes[b]);
    }
    let dot = lattice.to_dot(|r| m.map().region_name(r));
    assert!(dot.starts_with("digraph"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn pinning_sets_form_an_up_set(fixture in 0usize..8, bits in any::<u64>(), extra in any::<u64>()) {
        let (_, m) = &fixtures::all()[fixture];
        let n = m.n_regions();
        let p = RegionSet::from_iter(n, (0..n).filter(|i| bits >> i & 1 == 1));
        let bigger = p.union(&RegionSet::from_iter(n, (0..n).filter(|i| extra >> i & 1 == 1)));
        if is_pinning(m, &p).unwrap() {
            prop_assert!(is_pinning(m, &bigger).unwrap());
        }
    }
}
