mod common;

use common::{
    all_subsets, named, named_sets, random_plane_loop, sorted, ELEVEN_ONE_NINETY_SEVEN_FORMULA, LOOP_FIXTURES,
    NINE_ONE_FIVE_FORMULA,
};
use pinloop::mobidisc::{
    bounds_immersed_disc, linking_obstruction, minimal_hitting_sets, minimum_hitting_set, mobidisc_formula,
    mobidisc_of, mobidisc_set, singular_monorbigons, solve_hitting, strand_bounds_immersed_disc, HittingMode,
    MobidiscFormula, MonorbigonKind,
};
use pinloop::pinning::is_pinning;
use pinloop::{fixtures, Multiloop, RegionSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn region(m: &Multiloop, name: &str) -> usize {
    m.map().region_by_name(name).unwrap()
}

/// Hitting sets of a positive CNF by testing every subset.
fn brute_force_minimal_hitting(f: &MobidiscFormula) -> Vec<RegionSet> {
    let hits: Vec<RegionSet> = all_subsets(f.variables).filter(|s| f.is_satisfied_by(s)).collect();
    sorted(hits.iter().filter(|s| !hits.iter().any(|t| t != *s && t.is_subset(s))).cloned().collect())
}

/// Every subset pins the loop exactly when it meets every proper mobidisc.
fn assert_oracle_equivalence(label: &str, m: &Multiloop) {
    let f = mobidisc_formula(m).unwrap();
    let discs = mobidisc_set(m).unwrap();
    for p in all_subsets(m.n_regions()) {
        let pins = is_pinning(m, &p).unwrap();
        assert_eq!(pins, f.is_satisfied_by(&p), "{label}: {:?}", p.to_vec());
        assert_eq!(pins, discs.iter().all(|d| d.intersects(&p)), "{label}: {:?}", p.to_vec());
    }
}

#[test]
fn nine_one_five_formula_and_solutions() {
    let m = fixtures::fixture("9_1_5").unwrap();
    let f = mobidisc_formula(&m).unwrap();
    assert_eq!(sorted(f.clauses.clone()), named_sets(&m, NINE_ONE_FIVE_FORMULA));
    assert_eq!(minimum_hitting_set(&f).len(), 4);
    let report = solve_hitting(&f, HittingMode::AllMinimal);
    assert_eq!(report.optimal_sets, named_sets(&m, &[&["1", "2", "4", "8"], &["1", "3", "4", "6"]]));
    assert_eq!(
        report.minimal_sets,
        named_sets(
            &m,
            &[
                &["1", "2", "4", "8"],
                &["1", "3", "4", "6"],
                &["1", "2", "3", "4", "5"],
                &["1", "3", "4", "5", "7"],
                &["1", "3", "4", "7", "8"],
            ]
        )
    );
}

#[test]
fn eleven_one_ninety_seven_formula_and_solutions() {
    let m = fixtures::fixture("11_1_97").unwrap();
    let f = mobidisc_formula(&m).unwrap();
    assert_eq!(sorted(f.clauses.clone()), named_sets(&m, ELEVEN_ONE_NINETY_SEVEN_FORMULA));
    let report = solve_hitting(&f, HittingMode::AllMinimal);
    assert_eq!(report.minimal_sets.len(), 13);
    assert_eq!(report.optimal_sets.len(), 2);
    assert!(report.optimal_sets.contains(&named(&m, &["2", "4", "7", "8"])));
    assert_eq!(minimum_hitting_set(&f).len(), 4);
}

#[test]
fn eleven_one_ninety_seven_has_the_two_shaded_bigon_clauses() {
    let m = fixtures::fixture("11_1_97").unwrap();
    let mut bigon_discs = Vec::new();
    for b in singular_monorbigons(&m).unwrap().iter().filter(|b| b.kind == MonorbigonKind::Bigon) {
        for inf in 0..m.n_regions() {
            if bounds_immersed_disc(&m, b, inf).unwrap() {
                bigon_discs.push(mobidisc_of(&m, b, inf).unwrap());
            }
        }
    }
    assert!(bigon_discs.contains(&named(&m, &["2", "10"])));
    assert!(bigon_discs.contains(&named(&m, &["8", "9", "10", "11"])));
}

#[test]
fn pinning_matches_the_formula_on_every_loop_fixture() {
    for name in LOOP_FIXTURES {
        let m = fixtures::fixture(name).unwrap();
        assert!(m.n_regions() <= 12);
        assert_oracle_equivalence(name, &m);
    }
}

#[test]
fn pinning_matches_the_formula_on_random_plane_loops() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tested = 0;
    while tested < 40 {
        let corners = rng.gen_range(5..8);
        let m = random_plane_loop(&mut rng, corners);
        if m.n_regions() > 11 {
            continue;
        }
        assert_oracle_equivalence(&format!("random loop {tested}"), &m);
        tested += 1;
    }
}

#[test]
fn mobidiscs_are_proper_and_do_not_depend_on_the_point_at_infinity() {
    let mut loops: Vec<Multiloop> = LOOP_FIXTURES.iter().map(|n| fixtures::fixture(n).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    loops.extend((0..15).map(|_| random_plane_loop(&mut rng, 6)));
    for m in &loops {
        for d in mobidisc_set(m).unwrap() {
            assert!(!d.is_empty() && d != m.all_regions());
        }
        for b in singular_monorbigons(m).unwrap() {
            let discs: Vec<Option<RegionSet>> = (0..m.n_regions())
                .map(|inf| bounds_immersed_disc(m, &b, inf).unwrap().then(|| mobidisc_of(m, &b, inf).unwrap()))
                .collect();
            for d in discs.iter().flatten() {
                for (inf, seen) in discs.iter().enumerate() {
                    if !d.contains(inf) {
                        assert_eq!(seen.as_ref(), Some(d), "{b:?} seen from {inf}");
                    }
                }
            }
        }
    }
}

#[test]
fn pruning_keeps_the_solutions() {
    for name in LOOP_FIXTURES {
        let m = fixtures::fixture(name).unwrap();
        let discs = mobidisc_set(&m).unwrap();
        let f = mobidisc_formula(&m).unwrap();
        for (i, c) in f.clauses.iter().enumerate() {
            for (j, d) in f.clauses.iter().enumerate() {
                assert!(i == j || !c.is_subset(d), "{name}: clause contains another");
            }
        }
        for s in all_subsets(m.n_regions()) {
            assert_eq!(f.is_satisfied_by(&s), discs.iter().all(|d| d.intersects(&s)), "{name}");
        }
    }
}

#[test]
fn dimacs_text_solves_like_the_formula() {
    for name in LOOP_FIXTURES {
        let m = fixtures::fixture(name).unwrap();
        let f = mobidisc_formula(&m).unwrap();
        let back = MobidiscFormula::from_dimacs(&f.to_dimacs(|r| m.map().region_name(r))).unwrap();
        assert_eq!(back, f, "{name}");
        assert_eq!(minimal_hitting_sets(&back), minimal_hitting_sets(&f), "{name}");
        assert_eq!(minimum_hitting_set(&back), minimum_hitting_set(&f), "{name}");
    }
}

#[test]
fn lobe_bounds_but_the_whole_figure_eight_does_not() {
    let m = fixtures::figure_eight();
    let outer = region(&m, "outer");
    let monogons = singular_monorbigons(&m).unwrap();
    assert_eq!(monogons.len(), 2);
    for b in &monogons {
        assert!(bounds_immersed_disc(&m, b, outer).unwrap());
        let d = mobidisc_of(&m, b, outer).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d == named(&m, &["lobe1"]) || d == named(&m, &["lobe2"]));
    }
    assert_eq!(mobidisc_set(&m).unwrap(), named_sets(&m, &[&["lobe1"], &["lobe2"]]));
    for inf in 0..m.n_regions() {
        assert_eq!(strand_bounds_immersed_disc(&m, 0, inf).unwrap(), 0);
    }
}

#[test]
fn milnor_doodle_bounds_in_two_ways() {
    let m = fixtures::fixture("milnor-doodle").unwrap();
    assert_eq!(strand_bounds_immersed_disc(&m, 0, region(&m, "outer")).unwrap(), 2);
}

#[test]
fn weak_bigon_loop_has_an_embedded_bigon() {
    let m = fixtures::fixture("weak-bigon").unwrap();
    let outer = region(&m, "outer");
    let middle = named(&m, &["bigon"]);
    assert!(singular_monorbigons(&m).unwrap().iter().any(|b| {
        b.kind == MonorbigonKind::Bigon
            && bounds_immersed_disc(&m, b, outer).unwrap()
            && mobidisc_of(&m, b, outer).unwrap() == middle
    }));
}

#[test]
fn trefoil_pinned_at_its_petals() {
    let m = fixtures::fixture("trefoil").unwrap();
    let petals = named(&m, &["petal1", "petal2", "petal3"]);
    assert!(is_pinning(&m, &petals).unwrap());
    assert_eq!(linking_obstruction(&m, &petals).unwrap(), None);
    assert_eq!(strand_bounds_immersed_disc(&m, 0, region(&m, "outer")).unwrap(), 0);
}

#[test]
fn figure_eight_linking_certificates() {
    let m = fixtures::figure_eight();
    assert!(linking_obstruction(&m, &named(&m, &["outer"])).unwrap().is_some());
    assert_eq!(linking_obstruction(&m, &named(&m, &["lobe1", "lobe2"])).unwrap(), None);
}

#[test]
fn multiloops_have_no_formula() {
    assert!(mobidisc_formula(&fixtures::worked16()).is_err());
}

fn random_formula() -> impl Strategy<Value = MobidiscFormula> {
    (1usize..10).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::btree_set(0..n, 1..=n.min(4)), 0..8).prop_map(move |cs| {
            let clauses: Vec<RegionSet> = cs.into_iter().map(|c| RegionSet::from_iter(n, c)).collect();
            MobidiscFormula::pruned(n, &clauses)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hitting_set_solvers_agree_with_exhaustive_search(f in random_formula()) {
        let expected = brute_force_minimal_hitting(&f);
        prop_assert_eq!(sorted(minimal_hitting_sets(&f)), expected.clone());
        let best = minimum_hitting_set(&f);
        prop_assert!(f.is_satisfied_by(&best));
        prop_assert_eq!(best.len(), expected.iter().map(RegionSet::len).min().unwrap());
        let report = solve_hitting(&f, HittingMode::Minimum);
        prop_assert_eq!(report.pinning_number, best.len());
    }

    #[test]
    fn dimacs_round_trip_preserves_solutions(f in random_formula()) {
        let back = MobidiscFormula::from_dimacs(&f.to_dimacs(|r| format!("x{r}"))).unwrap();
        prop_assert_eq!(sorted(minimal_hitting_sets(&back)), sorted(minimal_hitting_sets(&f)));
        prop_assert_eq!(&back, &f);
    }
}
