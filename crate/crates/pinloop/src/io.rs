//! JSON encodings of maps, pin sets and graphs.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::combmap::{CombinatorialMap, HalfEdge, Multiloop};
use crate::error::{Error, Result};
use crate::regionset::RegionSet;

/// The external map format: `σ` as disjoint cycles of signed half-edge ids,
/// an optional half-edge per strand fixing its direction, and optional
/// region names keyed by region index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub sigma: Vec<Vec<HalfEdge>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<HalfEdge>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
}

impl MapFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    fn label_table(&self) -> Result<BTreeMap<usize, String>> {
        self.labels
            .iter()
            .map(|(k, v)| {
                k.parse::<usize>()
                    .map(|i| (i, v.clone()))
                    .map_err(|_| Error::Parse(format!("label key {k:?} is not a region index")))
            })
            .collect()
    }

    /// Validates the rotation only.
    pub fn to_map(&self) -> Result<CombinatorialMap> {
        CombinatorialMap::from_cycles(&self.sigma)?.with_labels(self.label_table()?)
    }

    /// Validates the rotation as a multiloop.
    pub fn to_multiloop(&self) -> Result<Multiloop> {
        Multiloop::new(self.to_map()?, self.orientation.as_deref())
    }

    pub fn from_multiloop(m: &Multiloop) -> Self {
        MapFile {
            sigma: m.map().sigma_cycles(),
            orientation: Some(m.orientation()),
            labels: m.map().labels().iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }
}

/// A region entry of the canonical output.
#[derive(Clone, Debug, Serialize)]
pub struct RegionEntry {
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub orbit: Vec<HalfEdge>,
    pub degree: usize,
}

/// The input plus derived tables.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalMap {
    #[serde(flatten)]
    pub input: MapFile,
    pub vertices: usize,
    pub edges: usize,
    pub regions: Vec<RegionEntry>,
    pub strands: Vec<Vec<HalfEdge>>,
    pub chi: i64,
    pub genus: usize,
}

impl CanonicalMap {
    pub fn of(m: &Multiloop) -> Result<Self> {
        let map = m.map();
        Ok(CanonicalMap {
            input: MapFile::from_multiloop(m),
            vertices: map.n_vertices(),
            edges: map.n_edges(),
            regions: region_entries(map),
            strands: m.strands().to_vec(),
            chi: map.euler_characteristic(),
            genus: map.genus()?,
        })
    }
}

pub fn region_entries(map: &CombinatorialMap) -> Vec<RegionEntry> {
    map.regions()
        .iter()
        .map(|r| RegionEntry {
            index: r.index,
            label: map.labels().get(&r.index).cloned(),
            orbit: r.orbit.clone(),
            degree: r.degree,
        })
        .collect()
}

/// Parses a pin list such as `r,p1,p2` or `0,3,7`: each item is a region
/// label or a region index. An empty string is the empty set.
pub fn parse_pins(map: &CombinatorialMap, text: &str) -> Result<RegionSet> {
    let n = map.n_regions();
    let mut set = RegionSet::empty(n);
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let r = match map.region_by_name(item) {
            Some(r) => r,
            None => match item.parse::<usize>() {
                Ok(i) if i < n => i,
                Ok(i) => return Err(Error::RegionOutOfRange(i, n)),
                Err(_) => return Err(Error::UnknownRegion(item.to_string())),
            },
        };
        set.insert(r);
    }
    Ok(set)
}

/// A graph file: vertices as exact coordinate pairs (`"p/q"` strings) or,
/// for small graphs to be drawn automatically, a bare vertex count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: GraphVertices,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphVertices {
    Count(usize),
    Points(Vec<[String; 2]>),
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Parses `"p/q"`, an integer or a decimal literal exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    if t.contains('.') {
        return crate::geometry::decimal(t);
    }
    let r: BigRational = t.parse().map_err(|_| Error::Parse(format!("not a rational number: {text:?}")))?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_file_round_trip() {
        let text = r#"{"sigma": [[1, -1, 2, -2]], "labels": {"0": "outer"}}"#;
        let file = MapFile::parse(text).unwrap();
        let m = file.to_multiloop().unwrap();
        assert_eq!(m.map().region_by_name("outer"), Some(0));
        let again = MapFile::from_multiloop(&m).to_multiloop().unwrap();
        assert_eq!(again.map().sigma_cycles(), m.map().sigma_cycles());
        assert_eq!(again.strands(), m.strands());
    }

    #[test]
    fn pins_accept_labels_and_indices() {
        let file = MapFile::parse(r#"{"sigma": [[1, -1, 2, -2]], "labels": {"2": "x"}}"#).unwrap();
        let map = file.to_map().unwrap();
        assert_eq!(parse_pins(&map, "x,0").unwrap().to_vec(), vec![0, 2]);
        assert!(matches!(parse_pins(&map, "y"), Err(Error::UnknownRegion(_))));
        assert!(matches!(parse_pins(&map, "9"), Err(Error::RegionOutOfRange(9, 3))));
        assert!(parse_pins(&map, "").unwrap().is_empty());
    }

    #[test]
    fn graph_file_reads_exact_coordinates() {
        let g = GraphFile::parse(r#"{"vertices": [["0", "1/3"], ["-2/4", "1.25"]], "edges": [[0, 1]]}"#).unwrap();
        let GraphVertices::Points(ps) = &g.vertices else { panic!("expected points") };
        assert_eq!(parse_rational(&ps[0][1]).unwrap(), BigRational::new(1.into(), 3.into()));
        assert_eq!(parse_rational(&ps[1][0]).unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational(&ps[1][1]).unwrap(), BigRational::new(5.into(), 4.into()));
        assert!(parse_rational("1/0").is_err() || parse_rational("x").is_err());
        assert!(matches!(
            GraphFile::parse(r#"{"vertices": 3, "edges": []}"#).unwrap().vertices,
            GraphVertices::Count(3)
        ));
    }
}
