//! Multiloops encoded as combinatorial maps.
//!
//! A map with `n` edges lives on the signed half-edges `±1, …, ±n`. The edge
//! involution is negation, so only the vertex rotation `σ` is stored. Half-edge
//! `+k` is the head of edge `k` and `-k` its tail. Two permutations are derived
//! from `σ`:
//!
//! * `φ(h) = σ⁻¹(-h)`, whose orbits are the regions;
//! * `δ(h) = -σ²(h)`, whose orbits are the oriented strands (for 4-regular maps).
//!
//! Regions are indexed by the smallest absolute half-edge id they contain, in
//! ascending order, so the indexing is stable across runs and platforms.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::regionset::RegionSet;

/// A signed half-edge identifier. Never zero.
pub type HalfEdge = i32;

#[inline]
fn slot(h: HalfEdge) -> usize {
    debug_assert!(h != 0);
    if h > 0 {
        2 * (h as usize - 1)
    } else {
        2 * ((-h) as usize - 1) + 1
    }
}

#[inline]
fn unslot(i: usize) -> HalfEdge {
    let e = (i / 2 + 1) as HalfEdge;
    if i.is_multiple_of(2) {
        e
    } else {
        -e
    }
}

/// One region of a map: its index, its `φ`-orbit and its degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub index: usize,
    pub orbit: Vec<HalfEdge>,
    pub degree: usize,
}

/// A validated combinatorial map: a rotation `σ` on `{±1,…,±n}` together with
/// its derived vertex, region and strand tables.
#[derive(Clone, PartialEq, Eq)]
pub struct CombinatorialMap {
    n_edges: usize,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    vertices: Vec<Vec<HalfEdge>>,
    vertex_of: Vec<usize>,
    regions: Vec<Region>,
    region_of: Vec<usize>,
    labels: BTreeMap<usize, String>,
}

impl fmt::Debug for CombinatorialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CombinatorialMap").field("n_edges", &self.n_edges).field("sigma", &self.vertices).finish()
    }
}

impl CombinatorialMap {
    /// Builds a map from the disjoint cycles of `σ`.
    ///
    /// Every id in `±1..=±n` must occur exactly once, where `n` is the largest
    /// absolute id present.
    pub fn from_cycles(cycles: &[Vec<HalfEdge>]) -> Result<Self> {
        let mut problems = Vec::new();
        let n = cycles.iter().flatten().map(|h| h.unsigned_abs() as usize).max().unwrap_or(0);
        if n == 0 {
            return Err(Error::MalformedPermutation(vec!["empty rotation".into()]));
        }
        let mut sigma = vec![usize::MAX; 2 * n];
        for cycle in cycles {
            if cycle.is_empty() {
                problems.push("empty cycle".to_string());
                continue;
            }
            for (i, &h) in cycle.iter().enumerate() {
                if h == 0 {
                    problems.push("half-edge id 0".to_string());
                    continue;
                }
                let next = cycle[(i + 1) % cycle.len()];
                if next == 0 {
                    continue;
                }
                let s = slot(h);
                if sigma[s] != usize::MAX {
                    problems.push(format!("half-edge {h} appears twice"));
                }
                sigma[s] = slot(next);
            }
        }
        for (i, &s) in sigma.iter().enumerate() {
            if s == usize::MAX {
                problems.push(format!("half-edge {} is missing", unslot(i)));
            }
        }
        if !problems.is_empty() {
            return Err(Error::MalformedPermutation(problems));
        }
        let mut sigma_inv = vec![usize::MAX; 2 * n];
        for (i, &s) in sigma.iter().enumerate() {
            if sigma_inv[s] != usize::MAX {
                return Err(Error::MalformedPermutation(vec![format!("half-edge {} has two preimages", unslot(s))]));
            }
            sigma_inv[s] = i;
        }
        Ok(Self::assemble(n, sigma, sigma_inv))
    }

    fn assemble(n: usize, sigma: Vec<usize>, sigma_inv: Vec<usize>) -> Self {
        let (vertices, vertex_of) = orbits(2 * n, |i| sigma[i]);
        let phi = |i: usize| sigma_inv[i ^ 1];
        let (raw_regions, _) = orbits(2 * n, phi);
        let mut raw_regions: Vec<Vec<HalfEdge>> = raw_regions;
        raw_regions.sort_by_key(|orbit| orbit.iter().map(|h| (h.abs(), *h < 0)).min());
        let mut region_of = vec![0; 2 * n];
        let regions = raw_regions
            .into_iter()
            .enumerate()
            .map(|(index, orbit)| {
                for &h in &orbit {
                    region_of[slot(h)] = index;
                }
                Region { index, degree: orbit.len(), orbit }
            })
            .collect();
        CombinatorialMap {
            n_edges: n,
            sigma,
            sigma_inv,
            vertices,
            vertex_of,
            regions,
            region_of,
            labels: BTreeMap::new(),
        }
    }

    /// Attaches display names to regions. Unknown indices are rejected.
    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self> {
        if let Some(&bad) = labels.keys().find(|&&r| r >= self.regions.len()) {
            return Err(Error::RegionOutOfRange(bad, self.regions.len()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_regions(&self) -> usize {
        self.regions.len()
    }

    /// All half-edges in slot order `1, -1, 2, -2, …`.
    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> + '_ {
        (0..2 * self.n_edges).map(unslot)
    }

    pub fn contains(&self, h: HalfEdge) -> bool {
        h != 0 && (h.unsigned_abs() as usize) <= self.n_edges
    }

    pub fn sigma(&self, h: HalfEdge) -> HalfEdge {
        unslot(self.sigma[slot(h)])
    }

    pub fn sigma_inv(&self, h: HalfEdge) -> HalfEdge {
        unslot(self.sigma_inv[slot(h)])
    }

    /// `φ(h) = σ⁻¹(-h)`.
    pub fn phi(&self, h: HalfEdge) -> HalfEdge {
        self.sigma_inv(-h)
    }

    /// `δ(h) = -σ²(h)`.
    pub fn delta(&self, h: HalfEdge) -> HalfEdge {
        -self.sigma(self.sigma(h))
    }

    /// The `σ`-orbits, each starting at its first half-edge in slot order.
    pub fn vertices(&self) -> &[Vec<HalfEdge>] {
        &self.vertices
    }

    pub fn vertex_of(&self, h: HalfEdge) -> usize {
        self.vertex_of[slot(h)]
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region_of(&self, h: HalfEdge) -> usize {
        self.region_of[slot(h)]
    }

    /// The region occupying the corner between `h` and `σ(h)` at their vertex.
    pub fn corner_region(&self, h: HalfEdge) -> usize {
        self.region_of(h)
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    /// The display name of a region: its label if any, else its index.
    pub fn region_name(&self, r: usize) -> String {
        self.labels.get(&r).cloned().unwrap_or_else(|| r.to_string())
    }

    /// Looks a region up by label first, then by numeric index.
    pub fn region_by_name(&self, name: &str) -> Option<usize> {
        if let Some((&r, _)) = self.labels.iter().find(|(_, l)| l.as_str() == name) {
            return Some(r);
        }
        name.parse::<usize>().ok().filter(|&r| r < self.n_regions())
    }

    /// The `σ` cycles in a canonical form (each rotated to start at its
    /// smallest slot, cycles sorted), suitable for serialisation.
    pub fn sigma_cycles(&self) -> Vec<Vec<HalfEdge>> {
        self.vertices.clone()
    }

    /// `χ = V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices() as i64 - self.n_edges as i64 + self.n_regions() as i64
    }

    /// The genus of the closed orientable surface carrying the map.
    pub fn genus(&self) -> Result<usize> {
        let chi = self.euler_characteristic();
        if chi % 2 != 0 || chi > 2 {
            return Err(Error::OddEulerCharacteristic(chi));
        }
        Ok(((2 - chi) / 2) as usize)
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.n_vertices());
        for e in 1..=self.n_edges as HalfEdge {
            uf.union(self.vertex_of(e), self.vertex_of(-e));
        }
        uf.count() == 1
    }

    /// The oriented strands (`δ`-orbits) of a 4-regular map, each starting at
    /// its first half-edge in slot order.
    pub fn delta_orbits(&self) -> Vec<Vec<HalfEdge>> {
        let n = 2 * self.n_edges;
        let (orbits, _) = orbits(n, |i| slot(self.delta(unslot(i))));
        orbits
    }
}

/// Orbits of a permutation of `0..n` given by `next`, returned as half-edge
/// lists in discovery order together with the orbit index of every slot.
fn orbits(n: usize, next: impl Fn(usize) -> usize) -> (Vec<Vec<HalfEdge>>, Vec<usize>) {
    let mut seen = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = Vec::new();
        let mut i = start;
        while seen[i] == usize::MAX {
            seen[i] = id;
            orbit.push(unslot(i));
            i = next(i);
        }
        out.push(orbit);
    }
    (out, seen)
}

/// A 4-regular map with one chosen orientation per strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiloop {
    map: CombinatorialMap,
    strands: Vec<Vec<HalfEdge>>,
}

/// Topological type of one connected piece of a union of closed regions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentProfile {
    pub regions: Vec<usize>,
    pub genus: usize,
    pub boundary_components: usize,
}

impl Multiloop {
    /// Validates a map as a multiloop. `orientation` optionally names one
    /// half-edge per strand; its `δ`-orbit is used as that strand's direction.
    pub fn new(map: CombinatorialMap, orientation: Option<&[HalfEdge]>) -> Result<Self> {
        let bad: Vec<usize> = map.vertices.iter().enumerate().filter(|(_, v)| v.len() != 4).map(|(i, _)| i).collect();
        if !bad.is_empty() {
            return Err(Error::NotFourRegular(bad));
        }
        map.genus()?;
        if !map.is_connected() {
            return Err(Error::Disconnected);
        }
        let orbits = map.delta_orbits();
        let mut orbit_of = vec![usize::MAX; 2 * map.n_edges];
        for (i, o) in orbits.iter().enumerate() {
            for &h in o {
                orbit_of[slot(h)] = i;
            }
        }
        let mut chosen = vec![false; orbits.len()];
        let mut paired = vec![false; orbits.len()];
        let mut strands = Vec::new();
        if let Some(reps) = orientation {
            for &h in reps {
                if !map.contains(h) {
                    return Err(Error::InvalidOrientation(h));
                }
                let o = orbit_of[slot(h)];
                let partner = orbit_of[slot(-h)];
                if o == partner || paired[o] {
                    return Err(Error::InvalidOrientation(h));
                }
                chosen[o] = true;
                paired[o] = true;
                paired[partner] = true;
                strands.push(rotate_to(&orbits[o], h));
            }
        }
        for (i, o) in orbits.iter().enumerate() {
            if paired[i] {
                continue;
            }
            let partner = orbit_of[slot(-o[0])];
            if partner == i {
                return Err(Error::InvalidOrientation(o[0]));
            }
            // Default orientation: the orbit holding the positive copy of its
            // smallest edge.
            let e = o.iter().map(|h| h.abs()).min().unwrap();
            let pick = if o.contains(&e) { i } else { partner };
            chosen[pick] = true;
            paired[i] = true;
            paired[partner] = true;
            strands.push(rotate_to(&orbits[pick], e));
        }
        if orientation.is_none() {
            strands.sort_by_key(|s| s.iter().map(|h| h.abs()).min());
        }
        Ok(Multiloop { map, strands })
    }

    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    /// Number of double points `#γ`.
    pub fn n_double_points(&self) -> usize {
        self.map.n_vertices()
    }

    pub fn n_regions(&self) -> usize {
        self.map.n_regions()
    }

    pub fn n_strands(&self) -> usize {
        self.strands.len()
    }

    /// The chosen oriented strands. Each lists, in travel order, the
    /// half-edge at which every traversed edge is entered into its endpoint.
    pub fn strands(&self) -> &[Vec<HalfEdge>] {
        &self.strands
    }

    /// One representative half-edge per strand, suitable for `orientation`.
    pub fn orientation(&self) -> Vec<HalfEdge> {
        self.strands.iter().map(|s| s[0]).collect()
    }

    pub fn all_regions(&self) -> RegionSet {
        RegionSet::full(self.n_regions())
    }

    pub fn region_degrees(&self) -> Vec<usize> {
        self.map.regions.iter().map(|r| r.degree).collect()
    }

    /// `Σ(deg R - 4) = -4χ`.
    pub fn degree_identity_check(&self) -> bool {
        degree_identity_holds(&self.region_degrees(), self.map.euler_characteristic())
    }

    /// Connected components of the union of the closed regions in `s`, glued
    /// along shared edges, with their genus and number of boundary curves.
    pub fn subsurface_profile(&self, s: &RegionSet) -> Vec<ComponentProfile> {
        let m = &self.map;
        let inside = |h: HalfEdge| s.contains(m.region_of(h));
        let shared = |h: HalfEdge| inside(h) && inside(-h);
        let mut regions_uf = UnionFind::new(m.n_regions());
        for h in m.half_edges() {
            if shared(h) {
                regions_uf.union(m.region_of(h), m.region_of(-h));
            }
        }
        // Corners are identified with the half-edge `a` such that the corner
        // sits between `a` and `σ(a)`; neighbouring corners around a vertex are
        // glued when the edge between them is shared.
        let mut corner_uf = UnionFind::new(2 * m.n_edges);
        for a in m.half_edges() {
            if inside(a) && shared(a) {
                corner_uf.union(slot(a), slot(m.sigma_inv(a)));
            }
        }
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for r in s.iter() {
            by_root.entry(regions_uf.find(r)).or_default().push(r);
        }
        let mut out = Vec::new();
        for (_, regions) in by_root {
            let comp: RegionSet = RegionSet::from_iter(m.n_regions(), regions.iter().copied());
            let in_comp = |h: HalfEdge| comp.contains(m.region_of(h));
            let faces = regions.len() as i64;
            let mut shared_edges = 0i64;
            let mut boundary_edges = 0i64;
            let mut corners = std::collections::BTreeSet::new();
            for h in m.half_edges() {
                if !in_comp(h) {
                    continue;
                }
                corners.insert(corner_uf.find(slot(h)));
                if in_comp(-h) {
                    if h > 0 {
                        shared_edges += 1;
                    }
                } else {
                    boundary_edges += 1;
                }
            }
            let chi = corners.len() as i64 - shared_edges - boundary_edges + faces;
            // Walk boundary cycles: from a boundary dart, advance along the
            // face and hop across shared edges until the next boundary dart.
            let mut visited = std::collections::BTreeSet::new();
            let mut cycles = 0;
            for h in m.half_edges() {
                if !in_comp(h) || in_comp(-h) || visited.contains(&h) {
                    continue;
                }
                cycles += 1;
                let mut cur = h;
                loop {
                    visited.insert(cur);
                    let mut next = m.phi(cur);
                    while in_comp(-next) {
                        next = m.phi(-next);
                    }
                    cur = next;
                    if cur == h {
                        break;
                    }
                }
            }
            let genus = ((2 - chi - cycles) / 2).max(0) as usize;
            out.push(ComponentProfile { regions, genus, boundary_components: cycles as usize });
        }
        out
    }

    /// `(is_irreducible, is_indecomposable)` for plane multiloops: no cut
    /// vertex, and no pair of distinct edges whose removal disconnects.
    pub fn connectivity_flags(&self) -> Result<(bool, bool)> {
        let m = &self.map;
        let g = m.genus()?;
        if g != 0 {
            return Err(Error::GenusUnsupported(g));
        }
        let nv = m.n_vertices();
        let mut irreducible = true;
        for v in 0..nv {
            // Split v into one stub per incident half-edge and see whether the
            // stubs stay connected through the rest of the graph.
            let stubs = &m.vertices[v];
            let stub_id = |h: HalfEdge| -> usize {
                if m.vertex_of(h) == v {
                    nv + stubs.iter().position(|&x| x == h).unwrap()
                } else {
                    m.vertex_of(h)
                }
            };
            let mut uf = UnionFind::new(nv + 4);
            for e in 1..=m.n_edges as HalfEdge {
                uf.union(stub_id(e), stub_id(-e));
            }
            let groups: std::collections::BTreeSet<usize> = (0..stubs.len()).map(|i| uf.find(nv + i)).collect();
            if groups.len() > 1 {
                irreducible = false;
                break;
            }
        }
        let mut indecomposable = true;
        'outer: for e1 in 1..=m.n_edges as HalfEdge {
            for e2 in (e1 + 1)..=m.n_edges as HalfEdge {
                let mut uf = UnionFind::new(nv);
                for e in 1..=m.n_edges as HalfEdge {
                    if e != e1 && e != e2 {
                        uf.union(m.vertex_of(e), m.vertex_of(-e));
                    }
                }
                if uf.count() > 1 {
                    indecomposable = false;
                    break 'outer;
                }
            }
        }
        Ok((irreducible, indecomposable))
    }
}

/// `Σ(deg - 4) = -4χ` for an arbitrary degree table.
pub fn degree_identity_holds(degrees: &[usize], chi: i64) -> bool {
    degrees.iter().map(|&d| d as i64 - 4).sum::<i64>() == -4 * chi
}

fn rotate_to(orbit: &[HalfEdge], h: HalfEdge) -> Vec<HalfEdge> {
    let p = orbit.iter().position(|&x| x == h).expect("half-edge in orbit");
    orbit[p..].iter().chain(&orbit[..p]).copied().collect()
}

/// Minimal union-find with path halving.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    count: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), count: n }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.count -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.count
    }
}

pub(crate) fn half_edge_slot(h: HalfEdge) -> usize {
    slot(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked16() -> CombinatorialMap {
        CombinatorialMap::from_cycles(&[
            vec![9, 8, -10, -1],
            vec![5, 2, -6, -3],
            vec![3, 12, -4, -13],
            vec![13, 4, -14, -5],
            vec![14, 7, -15, -8],
            vec![10, 15, -11, -16],
            vec![1, 16, -2, -9],
            vec![6, 11, -7, -12],
        ])
        .unwrap()
    }

    #[test]
    fn phi_and_delta_match_the_reference_values() {
        let m = worked16();
        assert_eq!(m.phi(-1), -9);
        assert_eq!(m.phi(-9), -1);
        assert_eq!(m.delta(1), 2);
        assert_eq!(m.delta(8), 1);
        assert_eq!(m.delta(-1), -8);
    }

    #[test]
    fn regions_are_indexed_by_smallest_absolute_id() {
        let m = worked16();
        let firsts: Vec<i32> = m.regions().iter().map(|r| r.orbit.iter().map(|h| h.abs()).min().unwrap()).collect();
        assert_eq!(firsts, vec![1, 1, 2, 2, 3, 3, 4, 4, 7, 8]);
        assert!(m.regions()[0].orbit.contains(&-1) || m.regions()[0].orbit.contains(&1));
    }

    #[test]
    fn missing_half_edge_is_reported() {
        let err = CombinatorialMap::from_cycles(&[vec![1, -1, 2, 7]]).unwrap_err();
        assert!(matches!(err, Error::MalformedPermutation(_)));
    }

    #[test]
    fn one_edge_maps() {
        // Identity rotation: a single edge between two vertices.
        let m = CombinatorialMap::from_cycles(&[vec![1], vec![-1]]).unwrap();
        assert_eq!(m.n_regions(), 1);
        assert_eq!(m.regions()[0].degree, 2);
        assert_eq!(m.euler_characteristic(), 2);
        // A loop at one vertex splits the sphere in two monogons.
        let m = CombinatorialMap::from_cycles(&[vec![1, -1]]).unwrap();
        assert_eq!(m.n_regions(), 2);
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn region_orbits_match_the_reference_phi() {
        let expected: Vec<Vec<i32>> = vec![
            vec![-1, -9],
            vec![-2, 5, -14, -8, 9],
            vec![-3, -13, -5],
            vec![-4, 13],
            vec![-6, -12, 3],
            vec![-7, 14, 4, 12],
            vec![-10, -16, 1],
            vec![-11, 6, 2, 16],
            vec![-15, 10, 8],
            vec![7, 11, 15],
        ];
        let m = worked16();
        for cycle in expected {
            let r = m.region_of(cycle[0]);
            assert_eq!(rotate_to(&m.regions()[r].orbit, cycle[0]), cycle);
        }
    }

    #[test]
    fn union_find_counts() {
        let mut uf = UnionFind::new(4);
        uf.union(0, 1);
        uf.union(2, 3);
        assert_eq!(uf.count(), 2);
        uf.union(1, 3);
        assert_eq!(uf.count(), 1);
    }
}
