//! Pinning sets: a set of regions pins a multiloop when puncturing them makes
//! it taut, i.e. its self-intersection number in the punctured sphere equals
//! its number of double points.
//!
//! Pinning is monotone (supersets of pinning sets pin), which drives every
//! search here. The searches are written against an arbitrary monotone
//! predicate so that the same code also solves positive CNF hitting problems.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Mutex;

use serde::Serialize;

use crate::combmap::Multiloop;
use crate::error::{Error, Result};
use crate::presentation::self_intersection;
use crate::regionset::RegionSet;

/// Largest region count accepted by the exhaustive searches by default.
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 24;

/// Whether puncturing `pins` makes the multiloop taut.
pub fn is_pinning(m: &Multiloop, pins: &RegionSet) -> Result<bool> {
    Ok(self_intersection(m, pins)? == m.n_double_points() as u64)
}

type SetTest<'a> = Box<dyn Fn(&RegionSet) -> Result<bool> + Sync + 'a>;

/// A memoised monotone predicate on region sets.
pub struct Oracle<'a> {
    universe: usize,
    weights: Vec<usize>,
    test: SetTest<'a>,
    memo: Mutex<HashMap<RegionSet, bool>>,
}

impl<'a> Oracle<'a> {
    /// `weights` only steer branching (heavier elements are tried first).
    pub fn new(universe: usize, weights: Vec<usize>, test: impl Fn(&RegionSet) -> Result<bool> + Sync + 'a) -> Self {
        Oracle { universe, weights, test: Box::new(test), memo: Mutex::new(HashMap::new()) }
    }

    /// The pinning predicate of a multiloop, branching on region degree.
    pub fn pinning(m: &'a Multiloop) -> Self {
        Self::new(m.n_regions(), m.region_degrees(), move |p| is_pinning(m, p))
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn holds(&self, s: &RegionSet) -> Result<bool> {
        if let Some(&v) = self.memo.lock().unwrap().get(s) {
            return Ok(v);
        }
        let v = (self.test)(s)?;
        self.memo.lock().unwrap().insert(s.clone(), v);
        Ok(v)
    }

    /// Whether `s` holds and none of its single-element removals does.
    pub fn is_minimal(&self, s: &RegionSet) -> Result<bool> {
        if !self.holds(s)? {
            return Ok(false);
        }
        for r in s.iter() {
            if self.holds(&s.without(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Elements `r` such that the complement of `{r}` fails: every set
    /// satisfying the predicate contains them.
    pub fn forced(&self) -> Result<RegionSet> {
        let full = RegionSet::full(self.universe);
        let mut forced = RegionSet::empty(self.universe);
        for r in 0..self.universe {
            if !self.holds(&full.without(r))? {
                forced.insert(r);
            }
        }
        Ok(forced)
    }

    /// Heaviest undecided element, ties to the smallest index.
    fn branch_element(&self, undecided: &RegionSet) -> Option<usize> {
        undecided.iter().max_by(|&a, &b| self.weights[a].cmp(&self.weights[b]).then(b.cmp(&a)))
    }

    /// Removes the elements of `start` one at a time in `order`, keeping each
    /// removal that preserves the predicate.
    pub fn greedy_minimal(&self, start: &RegionSet, order: &[usize]) -> Result<RegionSet> {
        if !self.holds(start)? {
            return Err(Error::NotPinning);
        }
        let mut current = start.clone();
        for &r in order {
            if current.contains(r) {
                let smaller = current.without(r);
                if self.holds(&smaller)? {
                    current = smaller;
                }
            }
        }
        Ok(current)
    }

    /// All inclusion-minimal sets satisfying the predicate, sorted by
    /// cardinality then lexicographically.
    pub fn enumerate_minimal(&self) -> Result<Vec<RegionSet>> {
        let forced = self.forced()?;
        let undecided = forced.complement();
        let mut out = self.minimal_below(forced, undecided, 0)?;
        sort_sets(&mut out);
        out.dedup();
        Ok(out)
    }

    fn minimal_below(&self, included: RegionSet, undecided: RegionSet, depth: usize) -> Result<Vec<RegionSet>> {
        if !self.holds(&included.union(&undecided))? {
            return Ok(Vec::new());
        }
        if self.holds(&included)? {
            return Ok(if self.is_minimal(&included)? { vec![included] } else { Vec::new() });
        }
        let Some(u) = self.branch_element(&undecided) else {
            return Ok(Vec::new());
        };
        let rest = undecided.without(u);
        let with = included.with(u);
        let (a, b) = if depth < 6 {
            rayon::join(
                || self.minimal_below(with, rest.clone(), depth + 1),
                || self.minimal_below(included.clone(), rest.clone(), depth + 1),
            )
        } else {
            (
                self.minimal_below(with, rest.clone(), depth + 1),
                self.minimal_below(included.clone(), rest.clone(), depth + 1),
            )
        };
        let mut v = a?;
        v.extend(b?);
        Ok(v)
    }

    /// A smallest set satisfying the predicate, by branch and bound.
    pub fn minimum(&self) -> Result<RegionSet> {
        let forced = self.forced()?;
        let best = Mutex::new(RegionSet::full(self.universe));
        if !self.holds(&best.lock().unwrap())? {
            return Err(Error::NotPinning);
        }
        let undecided = forced.complement();
        self.minimum_below(forced, undecided, &best, 0)?;
        Ok(best.into_inner().unwrap())
    }

    fn minimum_below(
        &self,
        included: RegionSet,
        undecided: RegionSet,
        best: &Mutex<RegionSet>,
        depth: usize,
    ) -> Result<()> {
        let bound = |s: &RegionSet| s.len() >= best.lock().unwrap().len();
        if bound(&included) || !self.holds(&included.union(&undecided))? {
            return Ok(());
        }
        if self.holds(&included)? {
            let mut b = best.lock().unwrap();
            if included.len() < b.len() || (included.len() == b.len() && included.to_vec() < b.to_vec()) {
                *b = included;
            }
            return Ok(());
        }
        // A smaller set needs at least one more element.
        if included.len() + 1 >= best.lock().unwrap().len() {
            return Ok(());
        }
        let Some(u) = self.branch_element(&undecided) else {
            return Ok(());
        };
        let rest = undecided.without(u);
        let with = included.with(u);
        if depth < 6 {
            let (a, b) = rayon::join(
                || self.minimum_below(with, rest.clone(), best, depth + 1),
                || self.minimum_below(included.clone(), rest.clone(), best, depth + 1),
            );
            a?;
            b
        } else {
            self.minimum_below(with, rest.clone(), best, depth + 1)?;
            self.minimum_below(included.clone(), rest, best, depth + 1)
        }
    }
}

/// Sorts sets by cardinality, then by their sorted element lists.
pub fn sort_sets(sets: &mut [RegionSet]) {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.to_vec().cmp(&b.to_vec())));
}

fn check_bound(m: &Multiloop, bound: Option<usize>) -> Result<()> {
    let limit = bound.unwrap_or(DEFAULT_EXHAUSTIVE_BOUND);
    if m.n_regions() > limit {
        return Err(Error::BudgetExceeded(format!("{} regions exceed the exhaustive bound {limit}", m.n_regions())));
    }
    Ok(())
}

/// Greedy minimal pinning subset of `start`, trying the regions in `order`
/// (regions of `start` missing from `order` are tried afterwards in
/// ascending order).
pub fn minimal_pinning_from(m: &Multiloop, start: &RegionSet, order: &[usize]) -> Result<RegionSet> {
    let n = m.n_regions();
    if let Some(&bad) = order.iter().find(|&&r| r >= n) {
        return Err(Error::RegionOutOfRange(bad, n));
    }
    let mut full_order: Vec<usize> = order.to_vec();
    full_order.extend(start.iter().filter(|r| !order.contains(r)));
    Oracle::pinning(m).greedy_minimal(start, &full_order)
}

/// The pinning number with one optimal witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PinningNumber {
    pub pinning_number: usize,
    pub witness: RegionSet,
}

pub fn pinning_number_exact(m: &Multiloop, bound: Option<usize>) -> Result<PinningNumber> {
    check_bound(m, bound)?;
    let witness = Oracle::pinning(m).minimum()?;
    Ok(PinningNumber { pinning_number: witness.len(), witness })
}

pub fn enumerate_minimal_pinning_sets(m: &Multiloop, bound: Option<usize>) -> Result<Vec<RegionSet>> {
    check_bound(m, bound)?;
    Oracle::pinning(m).enumerate_minimal()
}

/// Regions belonging to every pinning set.
pub fn forced_regions(m: &Multiloop, bound: Option<usize>) -> Result<RegionSet> {
    check_bound(m, bound)?;
    Oracle::pinning(m).forced()
}

/// Everything the exhaustive search knows about the pinning ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PinningReport {
    pub pinning_number: usize,
    pub optimal_sets: Vec<RegionSet>,
    pub minimal_sets: Vec<RegionSet>,
    pub forced_regions: RegionSet,
}

impl PinningReport {
    /// Builds the report from the minimal sets of a monotone predicate.
    pub fn from_minimal(universe: usize, minimal_sets: Vec<RegionSet>) -> Self {
        let pinning_number = minimal_sets.iter().map(RegionSet::len).min().unwrap_or(0);
        let optimal_sets = minimal_sets.iter().filter(|s| s.len() == pinning_number).cloned().collect();
        let forced_regions = minimal_sets.iter().fold(RegionSet::full(universe), |acc, s| acc.intersection(s));
        PinningReport { pinning_number, optimal_sets, minimal_sets, forced_regions }
    }
}

pub fn pinning_report(m: &Multiloop, bound: Option<usize>) -> Result<PinningReport> {
    Ok(PinningReport::from_minimal(m.n_regions(), enumerate_minimal_pinning_sets(m, bound)?))
}

/// Unions of minimal pinning sets, together with the set of all regions,
/// ordered by inclusion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiLattice {
    pub nodes: Vec<RegionSet>,
    /// Covering relations `(smaller, larger)` as node indices.
    pub edges: Vec<(usize, usize)>,
    pub optimal: Vec<usize>,
    pub minimal: Vec<usize>,
}

impl SemiLattice {
    pub fn from_minimal(universe: usize, minimal_sets: &[RegionSet]) -> Self {
        let mut closure: BTreeSet<Vec<usize>> = minimal_sets.iter().map(RegionSet::to_vec).collect();
        let mut frontier: Vec<RegionSet> = minimal_sets.to_vec();
        while let Some(s) = frontier.pop() {
            for g in minimal_sets {
                let u = s.union(g);
                if closure.insert(u.to_vec()) {
                    frontier.push(u);
                }
            }
        }
        closure.insert((0..universe).collect());
        let mut nodes: Vec<RegionSet> = closure.into_iter().map(|v| RegionSet::from_iter(universe, v)).collect();
        sort_sets(&mut nodes);
        let mut edges = Vec::new();
        for (i, a) in nodes.iter().enumerate() {
            let mut covers: Vec<usize> = Vec::new();
            for (j, b) in nodes.iter().enumerate().skip(i + 1) {
                if b.len() > a.len() && a.is_subset(b) && !covers.iter().any(|&c| nodes[c].is_subset(b)) {
                    covers.push(j);
                }
            }
            edges.extend(covers.into_iter().map(|j| (i, j)));
        }
        let min_card = minimal_sets.iter().map(RegionSet::len).min().unwrap_or(0);
        let index_of = |s: &RegionSet| nodes.iter().position(|n| n == s).unwrap();
        let optimal = minimal_sets.iter().filter(|s| s.len() == min_card).map(index_of).collect();
        let minimal = minimal_sets.iter().map(index_of).collect();
        SemiLattice { nodes, edges, optimal, minimal }
    }

    /// Graphviz rendering: one node per element labelled by its cardinality,
    /// elements of equal cardinality on the same rank, optimal generators in
    /// red and the other minimal generators in green.
    pub fn to_dot(&self, name: impl Fn(usize) -> String) -> String {
        let mut out = String::from("digraph semilattice {\n  rankdir=BT;\n  node [shape=circle];\n");
        let mut by_size: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (i, s) in self.nodes.iter().enumerate() {
            by_size.entry(s.len()).or_default().push(i);
            let members: Vec<String> = s.iter().map(&name).collect();
            let style = if self.optimal.contains(&i) {
                ", style=filled, fillcolor=red"
            } else if self.minimal.contains(&i) {
                ", style=filled, fillcolor=green"
            } else {
                ""
            };
            let _ = writeln!(out, "  n{i} [label=\"{}\", tooltip=\"{{{}}}\"{style}];", s.len(), members.join(","));
        }
        for (size, ids) in &by_size {
            let names: Vec<String> = ids.iter().map(|i| format!("n{i}")).collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }} // cardinality {size}", names.join("; "));
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

pub fn semilattice(m: &Multiloop, bound: Option<usize>) -> Result<SemiLattice> {
    let minimal = enumerate_minimal_pinning_sets(m, bound)?;
    Ok(SemiLattice::from_minimal(m.n_regions(), &minimal))
}
