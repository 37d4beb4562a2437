//! Named multiloops used throughout the tests, examples and the CLI.

use crate::combmap::Multiloop;
use crate::error::{Error, Result};
use crate::io::MapFile;

/// A catalogued multiloop with the invariants it is expected to have.
#[derive(Clone, Copy, Debug)]
pub struct FixtureEntry {
    pub name: &'static str,
    pub json: &'static str,
    pub regions: usize,
    pub double_points: usize,
    pub strands: usize,
}

const fn entry(
    name: &'static str,
    json: &'static str,
    regions: usize,
    double_points: usize,
    strands: usize,
) -> FixtureEntry {
    FixtureEntry { name, json, regions, double_points, strands }
}

/// Every catalogued multiloop.
pub const CATALOG: &[FixtureEntry] = &[
    entry("worked16", include_str!("../../../fixtures/worked16.json"), 10, 8, 2),
    entry("figure-eight", include_str!("../../../fixtures/figure-eight.json"), 3, 1, 1),
    entry("10_2_16", include_str!("../../../fixtures/worked16.json"), 10, 8, 2),
    entry("9_1_5", include_str!("../../../fixtures/9_1_5.json"), 9, 7, 1),
    entry("11_1_97", include_str!("../../../fixtures/11_1_97.json"), 11, 9, 1),
    entry("milnor-doodle", include_str!("../../../fixtures/milnor-doodle.json"), 8, 6, 1),
    entry("weak-bigon", include_str!("../../../fixtures/weak-bigon.json"), 4, 2, 1),
    entry("trefoil", include_str!("../../../fixtures/trefoil.json"), 5, 3, 1),
];

/// Looks a fixture up by name.
pub fn fixture(name: &str) -> Result<Multiloop> {
    let e =
        CATALOG.iter().find(|e| e.name == name).ok_or_else(|| Error::Parse(format!("no fixture named {name:?}")))?;
    MapFile::parse(e.json)?.to_multiloop()
}

/// Every fixture, in catalog order.
pub fn all() -> Vec<(&'static str, Multiloop)> {
    CATALOG.iter().map(|e| (e.name, fixture(e.name).expect("catalogued fixtures are valid"))).collect()
}

/// The 16-edge two-strand multiloop used as the running example.
pub fn worked16() -> Multiloop {
    fixture("worked16").unwrap()
}

/// One strand with a single crossing on the sphere.
pub fn figure_eight() -> Multiloop {
    fixture("figure-eight").unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{map_isomorphisms, Arrangement, Point};
    use crate::regionset::RegionSet;

    fn polyline(pts: &[(&str, &str)]) -> Vec<Point> {
        pts.iter().map(|(x, y)| Point::decimal(x, y).unwrap()).collect()
    }

    /// The running example drawn as two rectilinear curves; the named points
    /// sit inside the regions carrying those labels.
    #[test]
    fn worked16_labels_match_the_drawing() {
        let red = polyline(&[
            ("5.8738", "7.964"),
            ("9.7543", "7.964"),
            ("9.7543", "0.2117"),
            ("3.9335", "0.2117"),
            ("3.9335", "7.964"),
            ("0.0529", "7.964"),
            ("0.0529", "2.1497"),
            ("5.8738", "2.1497"),
        ]);
        let blue = polyline(&[
            ("1.9932", "4.0878"),
            ("1.9932", "6.0259"),
            ("7.814", "6.0259"),
            ("7.814", "2.1497"),
            ("11.6946", "2.1497"),
            ("11.6946", "4.0878"),
        ]);
        let drawing = Arrangement::new(&[red, blue]).unwrap();
        let w = worked16();
        let isos = map_isomorphisms(&drawing.map, w.map());
        assert_eq!(isos.len(), 1);
        let named = [
            ("r", "10.7244", "3.1188"),
            ("p1", "2.9633", "5.0568"),
            ("p2", "8.7842", "5.0568"),
            ("inf", "10.7244", "5.0568"),
        ];
        for (name, x, y) in named {
            let r = isos[0][drawing.locate(&Point::decimal(x, y).unwrap())];
            assert_eq!(w.map().region_by_name(name), Some(r), "{name}");
        }
        assert_eq!(isos[0][drawing.outer_region()], w.map().region_by_name("inf").unwrap());
    }

    #[test]
    fn catalog_is_valid_and_satisfies_the_degree_identity() {
        for (name, m) in all() {
            assert!(m.degree_identity_check(), "{name}");
        }
    }

    #[test]
    fn catalog_entries_have_their_stated_invariants() {
        for e in CATALOG {
            let m = fixture(e.name).unwrap();
            assert_eq!(m.n_regions(), e.regions, "{}", e.name);
            assert_eq!(m.n_double_points(), e.double_points, "{}", e.name);
            assert_eq!(m.n_strands(), e.strands, "{}", e.name);
            assert_eq!(m.map().genus().unwrap(), 0, "{}", e.name);
        }
    }

    fn integer_curve(pts: &[(i64, i64)]) -> Vec<Point> {
        pts.iter().map(|&(x, y)| Point::int(x, y)).collect()
    }

    /// A generic ten-gon whose arrangement has the eleven-region loop's map.
    #[test]
    fn eleven_one_ninety_seven_has_a_straight_line_drawing() {
        let curve = integer_curve(&[
            (175, 241),
            (545, 954),
            (591, 364),
            (45, 6),
            (257, 610),
            (458, 443),
            (515, 8),
            (916, 639),
            (219, 208),
            (671, 337),
        ]);
        let drawing = Arrangement::new(&[curve]).unwrap();
        let m = fixture("11_1_97").unwrap();
        assert!(!map_isomorphisms(&drawing.map, m.map()).is_empty());
    }

    /// A half-turn symmetric rectilinear drawing: two interlocked hooks.
    #[test]
    fn milnor_doodle_matches_its_drawing() {
        let curve = integer_curve(&[
            (-20, -19),
            (14, -19),
            (14, 12),
            (-4, 12),
            (-4, -10),
            (-8, -10),
            (-8, -7),
            (20, -7),
            (20, 19),
            (-14, 19),
            (-14, -12),
            (4, -12),
            (4, 10),
            (8, 10),
            (8, 7),
            (-20, 7),
        ]);
        let drawing = Arrangement::new(&[curve]).unwrap();
        let m = fixture("milnor-doodle").unwrap();
        let isos = map_isomorphisms(&drawing.map, m.map());
        assert!(!isos.is_empty());
        assert!(isos.iter().any(|iso| m.map().region_name(iso[drawing.outer_region()]) == "outer"));
    }

    /// Three lobes in a row; the middle one is bounded by two arcs.
    #[test]
    fn weak_bigon_labels_match_the_drawing() {
        let curve = integer_curve(&[(5, 5), (0, 0), (5, -5), (15, 5), (25, -5), (30, 0), (25, 5), (15, -5)]);
        let drawing = Arrangement::new(&[curve]).unwrap();
        let m = fixture("weak-bigon").unwrap();
        let isos = map_isomorphisms(&drawing.map, m.map());
        assert!(!isos.is_empty());
        let iso =
            isos.iter().find(|iso| m.map().region_name(iso[drawing.locate(&Point::int(4, 0))]) == "lobe1").unwrap();
        for (name, x, y) in [("bigon", 15, 0), ("lobe2", 26, 0)] {
            assert_eq!(m.map().region_name(iso[drawing.locate(&Point::int(x, y))]), name);
        }
        assert_eq!(m.map().region_name(iso[drawing.outer_region()]), "outer");
    }

    /// The curve (sin t + 2 sin 2t, cos t − 2 cos 2t) sampled at thirty points.
    #[test]
    fn trefoil_labels_match_the_drawing() {
        let pts: Vec<(i64, i64)> = (0..30)
            .map(|i| {
                let t = i as f64 * std::f64::consts::TAU / 30.0;
                (
                    (1000.0 * (t.sin() + 2.0 * (2.0 * t).sin())).round() as i64,
                    (1000.0 * (t.cos() - 2.0 * (2.0 * t).cos())).round() as i64,
                )
            })
            .collect();
        let drawing = Arrangement::new(&[integer_curve(&pts)]).unwrap();
        let m = fixture("trefoil").unwrap();
        let isos = map_isomorphisms(&drawing.map, m.map());
        let named = [("center", 0, 0), ("petal3", 0, -2800), ("petal1", 2400, 1400), ("petal2", -2400, 1400)];
        assert!(isos.iter().any(|iso| {
            m.map().region_name(iso[drawing.outer_region()]) == "outer"
                && named.iter().all(|&(n, x, y)| m.map().region_name(iso[drawing.locate(&Point::int(x, y))]) == n)
        }));
    }

    /// The same two curves drawn again, with every minimal pinning set marked
    /// by a letter in each of its regions: `A` is the optimal one.
    #[test]
    fn ten_two_sixteen_minimal_sets_match_the_drawing() {
        let red = polyline(&[
            ("6.6146", "8.296"),
            ("10.4951", "8.296"),
            ("10.4951", "0.5437"),
            ("4.6743", "0.5437"),
            ("4.6743", "8.296"),
            ("0.7938", "8.296"),
            ("0.7938", "2.4818"),
            ("6.6146", "2.4818"),
        ]);
        let blue = polyline(&[
            ("2.734", "4.4199"),
            ("2.734", "6.3579"),
            ("8.5549", "6.3579"),
            ("8.5549", "2.4818"),
            ("12.4354", "2.4818"),
            ("12.4354", "4.4199"),
        ]);
        let drawing = Arrangement::new(&[red, blue]).unwrap();
        let m = fixture("10_2_16").unwrap();
        let isos = map_isomorphisms(&drawing.map, m.map());
        assert_eq!(isos.len(), 1);
        // Letters sit just above their anchor point.
        let marks = [
            ("A", "6.8822", "7.9375"),
            ("a", "7.1868", "7.9375"),
            ("d", "7.4913", "7.9375"),
            ("a", "4.9419", "2.1167"),
            ("A", "10.7628", "4.0481"),
            ("a", "11.0673", "4.0481"),
            ("b", "11.3719", "4.0481"),
            ("c", "11.6764", "4.0481"),
            ("d", "11.981", "4.0481"),
            ("b", "8.8225", "4.0481"),
            ("c", "9.1271", "4.0481"),
            ("d", "9.4316", "4.0481"),
            ("a", "1.0614", "7.9375"),
            ("b", "1.3659", "7.9375"),
            ("d", "1.6705", "7.9375"),
            ("A", "3.0017", "5.9796"),
            ("a", "3.3062", "5.9796"),
            ("b", "3.6108", "5.9796"),
            ("c", "3.9153", "5.9796"),
            ("d", "4.2199", "5.9796"),
            ("d", "4.9419", "5.9796"),
            ("A", "4.9419", "4.0481"),
            ("c", "5.2465", "4.0481"),
            ("b", "6.8822", "5.9796"),
            ("c", "7.1868", "5.9796"),
        ];
        let mut sets: std::collections::BTreeMap<&str, RegionSet> = Default::default();
        for (letter, x, y) in marks {
            let p = Point::decimal(x, y).unwrap();
            let p = Point::new(p.x, p.y + crate::geometry::decimal("0.1").unwrap());
            let r = isos[0][drawing.locate(&p)];
            sets.entry(letter).or_insert_with(|| RegionSet::empty(m.n_regions())).insert(r);
        }
        let report = crate::pinning::pinning_report(&m, None).unwrap();
        let mut expected: Vec<RegionSet> = sets.values().cloned().collect();
        crate::pinning::sort_sets(&mut expected);
        assert_eq!(report.minimal_sets, expected);
        assert_eq!(report.optimal_sets, vec![sets["A"].clone()]);
        assert_eq!(report.pinning_number, 4);
    }

    /// The single-strand rectilinear drawing with its regions numbered.
    #[test]
    fn nine_one_five_labels_match_the_drawing() {
        let curve = polyline(&[
            ("3.0113", "5.1559"),
            ("3.0113", "0.3586"),
            ("5.4099", "0.3586"),
            ("5.4099", "12.352"),
            ("12.606", "12.352"),
            ("12.606", "7.5546"),
            ("0.6126", "7.5546"),
            ("0.6126", "2.7573"),
            ("7.8086", "2.7573"),
            ("7.8086", "9.9533"),
            ("10.2073", "9.9533"),
            ("10.2073", "5.1559"),
        ]);
        let drawing = Arrangement::new(&[curve]).unwrap();
        let m = fixture("9_1_5").unwrap();
        let isos = map_isomorphisms(&drawing.map, m.map());
        assert!(!isos.is_empty());
        let numbers = [
            ("1", "3.7092", "2.0579"),
            ("2", "6.1451", "4.4263"),
            ("3", "3.7409", "4.4279"),
            ("4", "8.4449", "9.2281"),
            ("5", "8.5325", "6.8271"),
            ("6", "6.1416", "6.8339"),
            ("7", "6.1312", "11.6298"),
            ("8", "1.3429", "6.8259"),
            ("9", "6.1398", "2.0286"),
        ];
        for iso in &isos {
            for (name, x, y) in numbers {
                let r = iso[drawing.locate(&Point::decimal(x, y).unwrap())];
                assert_eq!(m.map().region_name(r), name);
            }
        }
        assert_eq!(m.n_regions(), 9);
        assert_eq!(m.n_strands(), 1);
    }
}
