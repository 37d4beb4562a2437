#![allow(dead_code)]

use pinloop::freewords::{cyclic_reduce, letter, primitive_root, Letter};
use pinloop::geometry::{Arrangement, Point};
use pinloop::pinning::sort_sets;
use pinloop::{CombinatorialMap, HalfEdge, Multiloop, RegionSet};
use rand::seq::SliceRandom;
use rand::Rng;

/// The region set with the given names.
pub fn named(m: &Multiloop, names: &[&str]) -> RegionSet {
    let mut s = RegionSet::empty(m.n_regions());
    for n in names {
        s.insert(m.map().region_by_name(n).unwrap_or_else(|| panic!("no region {n}")));
    }
    s
}

/// Clauses given by region names, in canonical order.
pub fn named_sets(m: &Multiloop, sets: &[&[&str]]) -> Vec<RegionSet> {
    let mut out: Vec<RegionSet> = sets.iter().map(|s| named(m, s)).collect();
    sort_sets(&mut out);
    out
}

pub fn sorted(mut sets: Vec<RegionSet>) -> Vec<RegionSet> {
    sort_sets(&mut sets);
    sets
}

pub const NINE_ONE_FIVE_FORMULA: &[&[&str]] =
    &[&["1"], &["4"], &["2", "3"], &["3", "8"], &["2", "6", "7"], &["5", "6", "8"]];

pub const ELEVEN_ONE_NINETY_SEVEN_FORMULA: &[&[&str]] = &[
    &["1", "2"],
    &["2", "3"],
    &["2", "10"],
    &["4", "6"],
    &["6", "7"],
    &["6", "8"],
    &["1", "4", "5"],
    &["1", "8", "9"],
    &["3", "5", "7"],
    &["3", "8", "11"],
    &["4", "10", "11"],
    &["7", "9", "10"],
    &["1", "5", "7", "9"],
    &["3", "4", "5", "11"],
    &["8", "9", "10", "11"],
];

/// The single-strand fixtures, all drawn on the sphere.
pub const LOOP_FIXTURES: &[&str] = &["figure-eight", "9_1_5", "11_1_97", "milnor-doodle", "weak-bigon", "trefoil"];

/// A uniformly random 4-valent rotation system on `vertices` vertices,
/// resampled until connected; its genus is arbitrary.
pub fn random_four_valent_map(rng: &mut impl Rng, vertices: usize) -> CombinatorialMap {
    loop {
        let mut ids: Vec<HalfEdge> = (1..=2 * vertices as i32).flat_map(|h| [h, -h]).collect();
        ids.shuffle(rng);
        let cycles: Vec<Vec<HalfEdge>> = ids.chunks(4).map(<[HalfEdge]>::to_vec).collect();
        let map = CombinatorialMap::from_cycles(&cycles).expect("every id used once");
        if map.is_connected() {
            return map;
        }
    }
}

/// A random closed polygon with `corners` integer corners, resampled until
/// its self-crossings are transverse double points (at least one).
pub fn random_plane_loop(rng: &mut impl Rng, corners: usize) -> Multiloop {
    loop {
        let curve: Vec<Point> =
            (0..corners).map(|_| Point::int(rng.gen_range(0..1000), rng.gen_range(0..1000))).collect();
        if let Ok(m) = Arrangement::new(&[curve]).and_then(|a| a.multiloop()) {
            return m;
        }
    }
}

/// Every subset of `0..n`.
pub fn all_subsets(n: usize) -> impl Iterator<Item = RegionSet> {
    (0u64..1 << n).map(move |bits| RegionSet::from_iter(n, (0..n).filter(|i| bits >> i & 1 == 1)))
}

/// A random nonempty cyclically reduced primitive word of rank 2.
pub fn primitive_word(rng: &mut impl Rng) -> Vec<Letter> {
    loop {
        let len = rng.gen_range(1..9);
        let raw: Vec<Letter> = (0..len).map(|_| letter(rng.gen_range(0..2), rng.gen_bool(0.5))).collect();
        let (c, _) = cyclic_reduce(&raw);
        if c.is_empty() {
            continue;
        }
        let (_, k) = primitive_root(&c).unwrap();
        if k == 1 {
            return c.letters().to_vec();
        }
    }
}
