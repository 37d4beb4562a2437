use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A set of region indices of a fixed map, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegionSet {
    universe: usize,
    bits: Vec<u64>,
}

impl RegionSet {
    pub fn empty(universe: usize) -> Self {
        RegionSet { universe, bits: vec![0; universe.div_ceil(64)] }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for r in 0..universe {
            s.insert(r);
        }
        s
    }

    pub fn from_iter(universe: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for r in items {
            s.insert(r);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn contains(&self, r: usize) -> bool {
        r < self.universe && self.bits[r / 64] >> (r % 64) & 1 == 1
    }

    /// Inserts `r`. Panics when `r` is outside the universe.
    pub fn insert(&mut self, r: usize) {
        assert!(r < self.universe, "region {r} outside universe {}", self.universe);
        self.bits[r / 64] |= 1 << (r % 64);
    }

    pub fn remove(&mut self, r: usize) {
        if r < self.universe {
            self.bits[r / 64] &= !(1 << (r % 64));
        }
    }

    pub fn with(&self, r: usize) -> Self {
        let mut s = self.clone();
        s.insert(r);
        s
    }

    pub fn without(&self, r: usize) -> Self {
        let mut s = self.clone();
        s.remove(r);
        s
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&r| self.contains(r))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &RegionSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &RegionSet) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &RegionSet) -> RegionSet {
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        RegionSet { universe: self.universe, bits }
    }

    pub fn intersection(&self, other: &RegionSet) -> RegionSet {
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        RegionSet { universe: self.universe, bits }
    }

    pub fn difference(&self, other: &RegionSet) -> RegionSet {
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & !b).collect();
        RegionSet { universe: self.universe, bits }
    }

    pub fn complement(&self) -> RegionSet {
        RegionSet::full(self.universe).difference(self)
    }
}

impl fmt::Debug for RegionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for RegionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|r| r.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl Serialize for RegionSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RegionSet {
    /// Deserialises a bare index list; the universe is taken to be one past
    /// the largest index. Callers re-home the set with [`RegionSet::from_iter`].
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        let n = v.iter().max().map_or(0, |m| m + 1);
        Ok(RegionSet::from_iter(n, v))
    }
}
