//! From a multiloop and a pin set to cyclically reduced words in a free group.
//!
//! A spanning tree of the dual map, rooted at the region playing the role of
//! infinity, cuts the sphere into a disc. Each non-root region `C` gives the
//! generator `τ_C` dual to the tree edge entering it, and a strand's word is
//! its crossing sequence with the tree. Filling a region imposes the relation
//! read by a small loop around it, which rewrites its generator in terms of its
//! children; the surviving generators keep the cyclic order in which the tree
//! edges leave the root.
//!
//! Orientation conventions: `region_of(h)` lies on the right of a strand
//! traversing an edge towards its half-edge `h`, and a region's `φ`-orbit runs
//! around it with the region on the left.

use std::collections::VecDeque;

use serde::Serialize;

use crate::combmap::{CombinatorialMap, HalfEdge, Multiloop};
use crate::error::{Error, Result};
use crate::freewords::{
    cyclic_reduce, free_reduce, intersection_number, inverse, letter, self_intersection_word, CyclicOrder, CyclicWord,
    Letter,
};
use crate::regionset::RegionSet;

/// A spanning tree of the dual map rooted at one region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualSpanningTree {
    root: usize,
    /// For each non-root region `C`, the half-edge `d` with `region(d)` the
    /// parent and `region(-d) = C`: the tree edge crosses map edge `|d|`.
    parent_dart: Vec<Option<HalfEdge>>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    preorder: Vec<usize>,
    pre_index: Vec<usize>,
    subtree_size: Vec<usize>,
    depth: Vec<usize>,
    /// Map edge number → child region of the tree edge crossing it.
    edge_child: Vec<Option<usize>>,
}

impl DualSpanningTree {
    /// Breadth-first tree: regions are discovered through their `φ`-orbits in
    /// order, so the result depends only on the map and the root.
    pub fn bfs(map: &CombinatorialMap, root: usize) -> Result<Self> {
        check_region(map, root)?;
        let n = map.n_regions();
        let mut parent_dart = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(r) = queue.pop_front() {
            for &g in &map.regions()[r].orbit {
                let c = map.region_of(-g);
                if !seen[c] {
                    seen[c] = true;
                    parent_dart[c] = Some(g);
                    queue.push_back(c);
                }
            }
        }
        Self::from_parent_darts(map, root, parent_dart)
    }

    /// Tree grown by always crossing the available dual edge of least
    /// priority; `priority` is indexed by half-edge slot (`1, -1, 2, -2, …`).
    /// Random priorities give random spanning trees.
    pub fn with_priority(map: &CombinatorialMap, root: usize, priority: &[u64]) -> Result<Self> {
        check_region(map, root)?;
        let n = map.n_regions();
        let mut parent_dart = vec![None; n];
        let mut seen = vec![false; n];
        let mut heap = std::collections::BinaryHeap::new();
        let visit = |r: usize, heap: &mut std::collections::BinaryHeap<_>, seen: &mut Vec<bool>| {
            seen[r] = true;
            for &g in &map.regions()[r].orbit {
                let p = priority[crate::combmap::half_edge_slot(g)];
                heap.push(std::cmp::Reverse((p, g)));
            }
        };
        visit(root, &mut heap, &mut seen);
        while let Some(std::cmp::Reverse((_, g))) = heap.pop() {
            let c = map.region_of(-g);
            if !seen[c] {
                parent_dart[c] = Some(g);
                visit(c, &mut heap, &mut seen);
            }
        }
        Self::from_parent_darts(map, root, parent_dart)
    }

    fn from_parent_darts(map: &CombinatorialMap, root: usize, parent_dart: Vec<Option<HalfEdge>>) -> Result<Self> {
        let n = map.n_regions();
        let mut parent = vec![None; n];
        let mut edge_child = vec![None; map.n_edges() + 1];
        for c in 0..n {
            if c == root {
                continue;
            }
            let d = parent_dart[c].ok_or(Error::Disconnected)?;
            parent[c] = Some(map.region_of(d));
            edge_child[d.unsigned_abs() as usize] = Some(c);
        }
        let mut children = vec![Vec::new(); n];
        for p in 0..n {
            let orbit = &map.regions()[p].orbit;
            let start = match parent_dart[p] {
                Some(d) => orbit.iter().position(|&g| g == -d).unwrap() + 1,
                None => 0,
            };
            for k in 0..orbit.len() {
                let g = orbit[(start + k) % orbit.len()];
                let c = map.region_of(-g);
                if c != root && parent_dart[c] == Some(g) {
                    children[p].push(c);
                }
            }
        }
        let mut preorder = Vec::with_capacity(n);
        let mut depth = vec![0; n];
        let mut stack = vec![root];
        while let Some(r) = stack.pop() {
            preorder.push(r);
            for &c in children[r].iter().rev() {
                depth[c] = depth[r] + 1;
                stack.push(c);
            }
        }
        let mut pre_index = vec![0; n];
        for (i, &r) in preorder.iter().enumerate() {
            pre_index[r] = i;
        }
        let mut subtree_size = vec![1; n];
        for &r in preorder.iter().rev() {
            if let Some(p) = parent[r] {
                subtree_size[p] += subtree_size[r];
            }
        }
        Ok(DualSpanningTree {
            root,
            parent_dart,
            parent,
            children,
            preorder,
            pre_index,
            subtree_size,
            depth,
            edge_child,
        })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn n_tree_edges(&self) -> usize {
        self.preorder.len() - 1
    }

    pub fn parent(&self, r: usize) -> Option<usize> {
        self.parent[r]
    }

    pub fn parent_dart(&self, r: usize) -> Option<HalfEdge> {
        self.parent_dart[r]
    }

    /// Children in the rotation order following the parent edge.
    pub fn children(&self, r: usize) -> &[usize] {
        &self.children[r]
    }

    /// Regions in depth-first order from the root.
    pub fn preorder(&self) -> &[usize] {
        &self.preorder
    }

    pub fn pre_index(&self, r: usize) -> usize {
        self.pre_index[r]
    }

    pub fn depth(&self, r: usize) -> usize {
        self.depth[r]
    }

    /// Whether `o` lies in the subtree hanging at `c` (including `c`).
    pub fn in_subtree(&self, o: usize, c: usize) -> bool {
        let (i, j) = (self.pre_index[o], self.pre_index[c]);
        i >= j && i < j + self.subtree_size[c]
    }

    /// The child region of the tree edge crossing map edge `|h|`, if any.
    pub fn edge_child(&self, h: HalfEdge) -> Option<usize> {
        self.edge_child[h.unsigned_abs() as usize]
    }

    /// The signed crossing of a strand traversing an edge towards `h` with
    /// the tree: `Some((c, +1))` when it crosses the edge into `c` along the
    /// co-orientation, `Some((c, -1))` against it.
    pub fn crossing(&self, h: HalfEdge) -> Option<(usize, i32)> {
        let c = self.edge_child(h)?;
        let d = self.parent_dart[c].unwrap();
        Some((c, if d == h { 1 } else { -1 }))
    }
}

fn check_region(map: &CombinatorialMap, r: usize) -> Result<()> {
    if r >= map.n_regions() {
        Err(Error::RegionOutOfRange(r, map.n_regions()))
    } else {
        Ok(())
    }
}

/// The presentation of the fundamental group of the sphere punctured at every
/// region, with the strands' crossing words.
#[derive(Clone, Debug)]
pub struct FullPresentation<'a> {
    multiloop: &'a Multiloop,
    tree: DualSpanningTree,
    generator_of: Vec<Option<usize>>,
    region_of_generator: Vec<usize>,
    order: CyclicOrder,
    strand_words: Vec<Vec<Letter>>,
}

impl<'a> FullPresentation<'a> {
    pub fn new(multiloop: &'a Multiloop, tree: DualSpanningTree) -> Self {
        let map = multiloop.map();
        let n = map.n_regions();
        let mut generator_of = vec![None; n];
        let mut region_of_generator = Vec::new();
        for (r, slot) in generator_of.iter_mut().enumerate() {
            if r != tree.root {
                *slot = Some(region_of_generator.len());
                region_of_generator.push(r);
            }
        }
        let gen = |c: usize, sign: i32| letter(generator_of[c].unwrap(), sign > 0);
        // Walk around the tree with the tree on the left: the side met going
        // down towards `c` exits through `τ_c⁻¹`, the side met coming back up
        // exits through `τ_c`.
        let mut sequence = Vec::with_capacity(2 * (n - 1));
        let mut stack: Vec<(usize, usize)> = vec![(tree.root, 0)];
        while let Some((r, k)) = stack.pop() {
            if k < tree.children[r].len() {
                let c = tree.children[r][k];
                stack.push((r, k + 1));
                sequence.push(gen(c, -1));
                stack.push((c, 0));
            } else if r != tree.root {
                sequence.push(gen(r, 1));
            }
        }
        let order = CyclicOrder::new(sequence).expect("tour visits every side once");
        let strand_words = multiloop
            .strands()
            .iter()
            .map(|strand| {
                let raw: Vec<Letter> =
                    strand.iter().filter_map(|&h| tree.crossing(h).map(|(c, s)| gen(c, s))).collect();
                free_reduce(&raw)
            })
            .collect();
        FullPresentation { multiloop, tree, generator_of, region_of_generator, order, strand_words }
    }

    /// Presentation for the breadth-first tree rooted at `root`.
    pub fn rooted(multiloop: &'a Multiloop, root: usize) -> Result<Self> {
        Ok(Self::new(multiloop, DualSpanningTree::bfs(multiloop.map(), root)?))
    }

    pub fn tree(&self) -> &DualSpanningTree {
        &self.tree
    }

    pub fn rank(&self) -> usize {
        self.region_of_generator.len()
    }

    pub fn order(&self) -> &CyclicOrder {
        &self.order
    }

    pub fn strand_words(&self) -> &[Vec<Letter>] {
        &self.strand_words
    }

    pub fn generator_of(&self, region: usize) -> Option<usize> {
        self.generator_of[region]
    }

    pub fn region_of_generator(&self, g: usize) -> usize {
        self.region_of_generator[g]
    }

    /// The word read by a small loop around region `j`, starting with the
    /// generator of its incoming tree edge. Every generator occurs once.
    pub fn region_relator(&self, j: usize) -> Result<Vec<Letter>> {
        let map = self.multiloop.map();
        check_region(map, j)?;
        let d = self.tree.parent_dart[j].ok_or(Error::RegionOutOfRange(j, map.n_regions()))?;
        let orbit = &map.regions()[j].orbit;
        let start = orbit.iter().position(|&g| g == -d).unwrap();
        Ok((0..orbit.len())
            .filter_map(|k| {
                let g = orbit[(start + k) % orbit.len()];
                // Travelling along the boundary with the region on the left is
                // travelling towards `-g`.
                self.tree.crossing(-g).map(|(c, s)| letter(self.generator_of[c].unwrap(), s > 0))
            })
            .collect())
    }

    /// Fills every region outside `pins` and rewrites the strand words over
    /// the surviving generators. The tree root must belong to `pins`.
    pub fn pin(&self, pins: &RegionSet) -> Result<PinnedPresentation> {
        let n = self.multiloop.n_regions();
        if !pins.contains(self.tree.root) {
            return Err(Error::RegionOutOfRange(self.tree.root, n));
        }
        let surviving: Vec<usize> = (0..n).filter(|&r| r != self.tree.root && pins.contains(r)).collect();
        let mut new_gen = vec![None; n];
        for (i, &r) in surviving.iter().enumerate() {
            new_gen[r] = Some(i);
        }
        // Images of the old generators, computed leaves first.
        let mut image: Vec<Vec<Letter>> = vec![Vec::new(); self.rank()];
        let mut rules = Vec::new();
        for &c in self.tree.preorder.iter().rev() {
            if c == self.tree.root {
                continue;
            }
            let g = self.generator_of[c].unwrap();
            image[g] = match new_gen[c] {
                Some(i) => vec![letter(i, true)],
                None => {
                    let relator = self.region_relator(c)?;
                    let rule = inverse(&relator[1..]);
                    rules.push(RewritingRule { region: c, generator: g, replacement: rule.clone() });
                    let expanded: Vec<Letter> = rule
                        .iter()
                        .flat_map(|&l| {
                            let w = &image[crate::freewords::generator(l)];
                            if l > 0 {
                                w.clone()
                            } else {
                                inverse(w)
                            }
                        })
                        .collect();
                    free_reduce(&expanded)
                }
            };
        }
        rules.reverse();
        let words = self
            .strand_words
            .iter()
            .map(|w| {
                let mapped: Vec<Letter> = w
                    .iter()
                    .flat_map(|&l| {
                        let img = &image[crate::freewords::generator(l)];
                        if l > 0 {
                            img.clone()
                        } else {
                            inverse(img)
                        }
                    })
                    .collect();
                cyclic_reduce(&mapped).0
            })
            .collect();
        let order_map: Vec<Option<usize>> = self.region_of_generator.iter().map(|&r| new_gen[r]).collect();
        let order = self.order.restrict(&order_map);
        let windings = surviving
            .iter()
            .map(|&c| surviving.iter().map(|&o| i64::from(self.tree.in_subtree(o, c))).collect())
            .collect();
        Ok(PinnedPresentation {
            root: self.tree.root,
            surviving,
            rules,
            order,
            words,
            windings: WindingTable { rows: windings },
        })
    }
}

/// `τ_generator ↦ replacement`, obtained by filling `region`. The
/// replacement is written over the generators of the full presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewritingRule {
    pub region: usize,
    pub generator: usize,
    pub replacement: Vec<Letter>,
}

/// Winding numbers of the surviving generators around the surviving
/// punctures, relative to the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindingTable {
    /// `rows[g][i]`: winding of generator `g` around the `i`-th surviving region.
    pub rows: Vec<Vec<i64>>,
}

/// The fundamental group of the sphere punctured at a pin set, with the
/// strands' cyclic words.
#[derive(Clone, Debug, Serialize)]
pub struct PinnedPresentation {
    pub root: usize,
    /// Pinned regions other than the root; generator `i` belongs to `surviving[i]`.
    pub surviving: Vec<usize>,
    /// Rules in depth-first order from the root.
    pub rules: Vec<RewritingRule>,
    pub order: CyclicOrder,
    pub words: Vec<CyclicWord>,
    pub windings: WindingTable,
}

impl PinnedPresentation {
    pub fn rank(&self) -> usize {
        self.surviving.len()
    }

    /// Winding numbers of a word around each surviving region.
    pub fn winding_vector(&self, word: &[Letter]) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for &l in word {
            let row = &self.windings.rows[crate::freewords::generator(l)];
            let s = if l > 0 { 1 } else { -1 };
            for (o, &w) in out.iter_mut().zip(row) {
                *o += s * w;
            }
        }
        out
    }

    /// `Σ si(γ_k) + Σ_{k<l} ti(γ_k, γ_l)`; trivial strands contribute 0.
    pub fn self_intersection(&self) -> u64 {
        let words: Vec<&CyclicWord> = self.words.iter().collect();
        let mut total = 0;
        for (k, w) in words.iter().enumerate() {
            total += self_intersection_word(w.letters(), &self.order);
            for v in &words[k + 1..] {
                if !w.is_empty() && !v.is_empty() {
                    total += intersection_number(w.letters(), v.letters(), &self.order).expect("nontrivial words");
                }
            }
        }
        total
    }
}

/// The self-intersection number `σ_P(γ)` of a multiloop in the sphere
/// punctured at `pins`, using the breadth-first tree rooted at the smallest
/// pinned region.
pub fn self_intersection(multiloop: &Multiloop, pins: &RegionSet) -> Result<u64> {
    let g = multiloop.map().genus()?;
    if g > 0 {
        return Err(if pins.is_empty() { Error::EmptyPinSetUnsupported } else { Error::GenusUnsupported(g) });
    }
    let Some(root) = pins.first() else {
        return Ok(0);
    };
    if pins.len() == 1 {
        return Ok(0);
    }
    Ok(FullPresentation::rooted(multiloop, root)?.pin(pins)?.self_intersection())
}

/// `σ_P(γ)` computed from an explicit spanning tree whose root lies in `pins`.
pub fn self_intersection_with_tree(multiloop: &Multiloop, tree: DualSpanningTree, pins: &RegionSet) -> Result<u64> {
    Ok(FullPresentation::new(multiloop, tree).pin(pins)?.self_intersection())
}
