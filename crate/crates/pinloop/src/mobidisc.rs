//! Mobidiscs of loops on the sphere and the positive CNF they define.
//!
//! A singular monogon is a sub-arc of the loop closing up at a double point;
//! a singular bigon is a pair of disjoint sub-arcs sharing their two endpoint
//! images. Such a subloop, seen in the plane obtained by removing one region
//! `∞`, may bound an immersed disc with convex corners; the regions it covers
//! form a mobidisc. A set of regions pins the loop exactly when it meets every
//! mobidisc, so the mobidiscs are the clauses of a positive CNF.
//!
//! The disc test orients the subloop, checks that every corner turns left and
//! that the smoothed curve has rotation number one, and then looks for a
//! grouping of its Blank word: rays from one point of every bounded face run
//! to `∞` along a spanning tree of the dual map, and the signed sequence of
//! ray crossings met along the subloop must admit a non-crossing matching of
//! each entry letter with a later exit of the same ray, further out.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::combmap::{HalfEdge, Multiloop, UnionFind};
use crate::error::{Error, Result};
use crate::pinning::{sort_sets, PinningReport};
use crate::presentation::DualSpanningTree;
use crate::regionset::RegionSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonorbigonKind {
    Monogon,
    Bigon,
}

/// A singular monogon or bigon of a loop.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monorbigon {
    pub kind: MonorbigonKind,
    /// Arcs as `(start, end)` visit times along the strand, `end` reached
    /// from `start` going forwards (indices modulo the strand length).
    pub arcs: Vec<(usize, usize)>,
    /// The double points at the arc endpoints.
    pub marked_points: Vec<usize>,
    /// The closed subloop as the half-edges it travels towards, in order.
    pub subloop: Vec<HalfEdge>,
}

fn single_strand(m: &Multiloop) -> Result<&[HalfEdge]> {
    if m.n_strands() != 1 {
        return Err(Error::MultiStrand(m.n_strands()));
    }
    if m.map().genus()? != 0 {
        return Err(Error::GenusUnsupported(m.map().genus()?));
    }
    Ok(&m.strands()[0])
}

/// Forward arc `[a, b]` of the cycle `0..len` as the half-edges travelled.
fn arc(strand: &[HalfEdge], a: usize, b: usize) -> Vec<HalfEdge> {
    let len = strand.len();
    let steps = (b + len - a) % len;
    (1..=steps).map(|k| strand[(a + k) % len]).collect()
}

fn in_arc(len: usize, a: usize, b: usize, t: usize) -> bool {
    (t + len - a) % len <= (b + len - a) % len
}

fn reversed(path: &[HalfEdge]) -> Vec<HalfEdge> {
    path.iter().rev().map(|&h| -h).collect()
}

/// All singular monogons and bigons of a loop.
///
/// The strand visits a double point at time `t` when it arrives through
/// half-edge `strand[t]`.
pub fn singular_monorbigons(m: &Multiloop) -> Result<Vec<Monorbigon>> {
    let strand = single_strand(m)?;
    let map = m.map();
    let len = strand.len();
    let mut visits = vec![Vec::new(); map.n_vertices()];
    for (t, &h) in strand.iter().enumerate() {
        visits[map.vertex_of(h)].push(t);
    }
    let mut out = BTreeSet::new();
    for (x, vx) in visits.iter().enumerate() {
        let (t1, t2) = (vx[0], vx[1]);
        for (a, b) in [(t1, t2), (t2, t1)] {
            out.insert(Monorbigon {
                kind: MonorbigonKind::Monogon,
                arcs: vec![(a, b)],
                marked_points: vec![x],
                subloop: arc(strand, a, b),
            });
        }
    }
    for x in 0..visits.len() {
        for y in x + 1..visits.len() {
            for &p in &visits[x] {
                for &q in &visits[y] {
                    let p2 = visits[x][0] + visits[x][1] - p;
                    let q2 = visits[y][0] + visits[y][1] - q;
                    // I runs between p and q (either direction), J between
                    // the remaining visits (either direction).
                    for (ia, ib) in [(p, q), (q, p)] {
                        for (ja, jb) in [(p2, q2), (q2, p2)] {
                            let disjoint =
                                !in_arc(len, ia, ib, ja) && !in_arc(len, ia, ib, jb) && !in_arc(len, ja, jb, ia);
                            if !disjoint {
                                continue;
                            }
                            let mut arcs = vec![(ia, ib), (ja, jb)];
                            arcs.sort();
                            let first = arc(strand, arcs[0].0, arcs[0].1);
                            let second = arc(strand, arcs[1].0, arcs[1].1);
                            let end = map.vertex_of(strand[arcs[0].1]);
                            let mut subloop = first;
                            if map.vertex_of(strand[arcs[1].0]) == end {
                                subloop.extend(second);
                            } else {
                                subloop.extend(reversed(&second));
                            }
                            out.insert(Monorbigon {
                                kind: MonorbigonKind::Bigon,
                                arcs,
                                marked_points: vec![x, y],
                                subloop,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// The regions-level picture of a closed edge path in the plane `S² ∖ {∞}`.
struct SubloopView {
    /// Winding number of the path around each region.
    winding: Vec<i64>,
    /// Face of the path containing each region.
    face: Vec<usize>,
    n_faces: usize,
}

fn view(m: &Multiloop, tree: &DualSpanningTree, path: &[HalfEdge]) -> SubloopView {
    let map = m.map();
    let n = map.n_regions();
    let mut on_path = vec![false; map.n_edges() + 1];
    let mut step = vec![0i64; n];
    for &h in path {
        on_path[h.unsigned_abs() as usize] = true;
        if let Some((c, s)) = tree.crossing(h) {
            step[c] += i64::from(s);
        }
    }
    let mut winding = vec![0; n];
    for &r in tree.preorder() {
        if let Some(p) = tree.parent(r) {
            winding[r] = winding[p] + step[r];
        }
    }
    let mut uf = UnionFind::new(n);
    for e in 1..=map.n_edges() as HalfEdge {
        if !on_path[e as usize] {
            uf.union(map.region_of(e), map.region_of(-e));
        }
    }
    let mut ids = vec![usize::MAX; n];
    let mut face = vec![0; n];
    let mut n_faces = 0;
    for (r, f) in face.iter_mut().enumerate() {
        let root = uf.find(r);
        if ids[root] == usize::MAX {
            ids[root] = n_faces;
            n_faces += 1;
        }
        *f = ids[root];
    }
    SubloopView { winding, face, n_faces }
}

/// Whether the oriented closed path, with corners at the listed positions,
/// bounds an immersed disc lying on its left in the plane `S² ∖ {tree root}`.
fn bounds_oriented(m: &Multiloop, tree: &DualSpanningTree, path: &[HalfEdge], corners: &[usize]) -> bool {
    let map = m.map();
    let k = path.len();
    // Every corner turns left: the outgoing half-edge is the clockwise
    // neighbour of the incoming one.
    for &i in corners {
        let a = path[i];
        let b = -path[(i + 1) % k];
        if map.sigma(b) != a {
            return false;
        }
    }
    let v = view(m, tree, path);
    if v.winding.iter().any(|&w| w < 0) {
        return false;
    }
    // Rotation number of the smoothed path: Σ over bounded faces of their
    // winding, minus the mean winding around each self-crossing.
    let mut face_winding = vec![0; v.n_faces];
    for r in 0..map.n_regions() {
        face_winding[v.face[r]] = v.winding[r];
    }
    let root_face = v.face[tree.root()];
    let faces_total: i64 = (0..v.n_faces).filter(|&f| f != root_face).map(|f| face_winding[f]).sum();
    let mut uses = vec![0; map.n_vertices()];
    for &h in path {
        uses[map.vertex_of(h)] += 1;
    }
    let mut crossings_total4 = 0;
    for (x, &u) in uses.iter().enumerate() {
        if u == 2 && !corners.iter().any(|&i| map.vertex_of(path[i]) == x) {
            crossings_total4 += map.vertices()[x].iter().map(|&h| v.winding[map.region_of(h)]).sum::<i64>();
        }
    }
    if 4 * faces_total - crossings_total4 != 4 {
        return false;
    }
    groupable(&blank_word(tree, path, &v))
}

/// A Blank letter: ray (by face), exit (+) or entry (−), and the depth of the
/// crossed tree edge (smaller is further out along the ray).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct BlankLetter {
    face: usize,
    exit: bool,
    depth: usize,
}

fn blank_word(tree: &DualSpanningTree, path: &[HalfEdge], v: &SubloopView) -> Vec<BlankLetter> {
    let root_face = v.face[tree.root()];
    // One ray origin per bounded face: its shallowest region.
    let mut origin: Vec<Option<usize>> = vec![None; v.n_faces];
    for &r in tree.preorder() {
        let f = v.face[r];
        if f != root_face {
            let better = match origin[f] {
                None => true,
                Some(o) => tree.depth(r) < tree.depth(o),
            };
            if better {
                origin[f] = Some(r);
            }
        }
    }
    let mut origins: Vec<usize> = origin.into_iter().flatten().collect();
    origins.sort_by_key(|&r| tree.pre_index(r));
    let mut word = Vec::new();
    for &h in path {
        let Some((c, s)) = tree.crossing(h) else { continue };
        let bundle: Vec<usize> = origins.iter().copied().filter(|&o| tree.in_subtree(o, c)).collect();
        let letter = |o: usize| BlankLetter { face: v.face[o], exit: s > 0, depth: tree.depth(c) };
        if s > 0 {
            word.extend(bundle.iter().rev().map(|&o| letter(o)));
        } else {
            word.extend(bundle.iter().map(|&o| letter(o)));
        }
    }
    word
}

fn pairs(word: &[BlankLetter], i: usize, k: usize) -> bool {
    let (a, b) = (word[i], word[k]);
    a.face == b.face && a.exit != b.exit && if a.exit { a.depth < b.depth } else { b.depth < a.depth }
}

/// Number of groupings of the word: matchings of every entry letter with an
/// exit letter of the same ray lying further out, no two matched pairs
/// interleaving around the cyclic word (saturating).
fn groupings(word: &[BlankLetter]) -> u64 {
    let m = word.len();
    // count[i][j]: groupings of the letters i..j on their own.
    let mut count = vec![vec![0u64; m + 1]; m + 1];
    for i in (0..=m).rev() {
        count[i][i] = 1;
        for j in i + 1..=m {
            let mut c = if word[i].exit { count[i + 1][j] } else { 0 };
            for k in i + 1..j {
                if pairs(word, i, k) {
                    c = c.saturating_add(count[i + 1][k].saturating_mul(count[k + 1][j]));
                }
            }
            count[i][j] = c;
        }
    }
    count[0][m]
}

fn groupable(word: &[BlankLetter]) -> bool {
    let m = word.len();
    let mut ok = vec![vec![false; m + 1]; m + 1];
    for i in (0..=m).rev() {
        ok[i][i] = true;
        for j in i + 1..=m {
            ok[i][j] =
                (word[i].exit && ok[i + 1][j]) || (i + 1..j).any(|k| pairs(word, i, k) && ok[i + 1][k] && ok[k + 1][j]);
        }
    }
    ok[0][m]
}

/// Whether a whole strand of the loop, followed in either direction, bounds
/// an immersed disc in the plane `S² ∖ {infinity}`; returns the number of
/// Blank groupings of the first orientation that does, or zero.
pub fn strand_bounds_immersed_disc(m: &Multiloop, strand: usize, infinity: usize) -> Result<u64> {
    let tree = DualSpanningTree::bfs(m.map(), infinity)?;
    let path = m.strands().get(strand).ok_or(Error::InvalidOrientation(strand as i32))?;
    for p in [path.clone(), reversed(path)] {
        if bounds_oriented(m, &tree, &p, &[]) {
            let v = view(m, &tree, &p);
            return Ok(groupings(&blank_word(&tree, &p, &v)));
        }
    }
    Ok(0)
}

/// Whether the monorbigon bounds an immersed disc in `S² ∖ {∞}`, trying
/// both orientations; returns the covered regions when it does.
pub fn mobidisc_with_root(m: &Multiloop, b: &Monorbigon, tree: &DualSpanningTree) -> Option<RegionSet> {
    for path in [b.subloop.clone(), reversed(&b.subloop)] {
        let cs = path_corners(m, &path);
        if bounds_oriented(m, tree, &path, &cs) {
            let v = view(m, tree, &path);
            return Some(RegionSet::from_iter(m.n_regions(), (0..m.n_regions()).filter(|&r| v.winding[r] != 0)));
        }
    }
    None
}

/// Corner positions: indices `i` where the path does not go straight on
/// between `path[i]` and `path[i + 1]`.
fn path_corners(m: &Multiloop, path: &[HalfEdge]) -> Vec<usize> {
    let map = m.map();
    let k = path.len();
    (0..k).filter(|&i| map.sigma(map.sigma(path[i])) != -path[(i + 1) % k]).collect()
}

/// Whether the monorbigon bounds an immersed disc avoiding region `infinity`.
pub fn bounds_immersed_disc(m: &Multiloop, b: &Monorbigon, infinity: usize) -> Result<bool> {
    let tree = DualSpanningTree::bfs(m.map(), infinity)?;
    Ok(mobidisc_with_root(m, b, &tree).is_some())
}

/// The mobidisc of a monorbigon bounding an immersed disc avoiding `infinity`.
pub fn mobidisc_of(m: &Multiloop, b: &Monorbigon, infinity: usize) -> Result<RegionSet> {
    let tree = DualSpanningTree::bfs(m.map(), infinity)?;
    mobidisc_with_root(m, b, &tree).ok_or(Error::NotImmersed)
}

/// Every proper mobidisc, over all choices of the region at infinity,
/// sorted and deduplicated.
pub fn mobidisc_set(m: &Multiloop) -> Result<Vec<RegionSet>> {
    let bigons = singular_monorbigons(m)?;
    let per_root: Result<Vec<Vec<RegionSet>>> = (0..m.n_regions())
        .into_par_iter()
        .map(|inf| {
            let tree = DualSpanningTree::bfs(m.map(), inf)?;
            Ok(bigons.iter().filter_map(|b| mobidisc_with_root(m, b, &tree)).collect())
        })
        .collect();
    let mut all: Vec<RegionSet> = per_root?.into_iter().flatten().collect();
    sort_sets(&mut all);
    all.dedup();
    Ok(all)
}

/// A positive CNF over region variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MobidiscFormula {
    pub variables: usize,
    pub clauses: Vec<RegionSet>,
}

impl MobidiscFormula {
    /// Drops every clause containing another one, sorts the rest.
    pub fn pruned(variables: usize, clauses: &[RegionSet]) -> Self {
        let mut sorted = clauses.to_vec();
        sort_sets(&mut sorted);
        sorted.dedup();
        let mut kept: Vec<RegionSet> = Vec::new();
        for c in sorted {
            if !kept.iter().any(|k| k.is_subset(&c)) {
                kept.push(c);
            }
        }
        MobidiscFormula { variables, clauses: kept }
    }

    pub fn is_satisfied_by(&self, s: &RegionSet) -> bool {
        self.clauses.iter().all(|c| c.intersects(s))
    }

    /// DIMACS text: variables are 1-based region indices, every literal is
    /// positive. `name` annotates the variables in comment lines.
    pub fn to_dimacs(&self, name: impl Fn(usize) -> String) -> String {
        let mut out = String::new();
        for r in 0..self.variables {
            let _ = writeln!(out, "c {} {}", r + 1, name(r));
        }
        let _ = writeln!(out, "p cnf {} {}", self.variables, self.clauses.len());
        for c in &self.clauses {
            for r in c.iter() {
                let _ = write!(out, "{} ", r + 1);
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<Self> {
        let bad = |m: String| Error::Parse(m);
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.len() != 3 || f[0] != "cnf" {
                    return Err(bad(format!("bad problem line {line:?}")));
                }
                let v = f[1].parse().map_err(|_| bad(format!("bad variable count {:?}", f[1])))?;
                let c = f[2].parse().map_err(|_| bad(format!("bad clause count {:?}", f[2])))?;
                header = Some((v, c));
                continue;
            }
            let (vars, _) = header.ok_or_else(|| bad("clause before problem line".into()))?;
            for tok in line.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| bad(format!("bad literal {tok:?}")))?;
                if lit == 0 {
                    clauses.push(RegionSet::from_iter(vars, current.drain(..)));
                } else if lit < 0 {
                    return Err(bad(format!("negative literal {lit} in a positive formula")));
                } else if lit as usize > vars {
                    return Err(bad(format!("literal {lit} exceeds {vars} variables")));
                } else {
                    current.push(lit as usize - 1);
                }
            }
        }
        let (vars, n) = header.ok_or_else(|| bad("missing problem line".into()))?;
        if !current.is_empty() {
            clauses.push(RegionSet::from_iter(vars, current));
        }
        if clauses.len() != n {
            return Err(bad(format!("expected {n} clauses, found {}", clauses.len())));
        }
        Ok(MobidiscFormula { variables: vars, clauses })
    }
}

/// The pruned mobidisc formula of a loop.
pub fn mobidisc_formula(m: &Multiloop) -> Result<MobidiscFormula> {
    Ok(MobidiscFormula::pruned(m.n_regions(), &mobidisc_set(m)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HittingMode {
    Minimum,
    AllMinimal,
}

/// Hitting sets of a positive CNF: a minimum one, or every minimal one.
pub fn solve_hitting(f: &MobidiscFormula, mode: HittingMode) -> PinningReport {
    let n = f.variables;
    match mode {
        HittingMode::Minimum => {
            let best = minimum_hitting_set(f);
            PinningReport {
                pinning_number: best.len(),
                optimal_sets: vec![best.clone()],
                minimal_sets: vec![best],
                forced_regions: unit_variables(f),
            }
        }
        HittingMode::AllMinimal => PinningReport::from_minimal(n, minimal_hitting_sets(f)),
    }
}

fn unit_variables(f: &MobidiscFormula) -> RegionSet {
    let mut s = RegionSet::empty(f.variables);
    for c in f.clauses.iter().filter(|c| c.len() == 1) {
        s.insert(c.first().unwrap());
    }
    s
}

/// Branch and bound: unit clauses are taken first, the search branches on
/// the elements of a shortest open clause, and a greedy packing of pairwise
/// disjoint open clauses bounds the remaining cost.
pub fn minimum_hitting_set(f: &MobidiscFormula) -> RegionSet {
    let n = f.variables;
    let mut best = RegionSet::full(n);
    if f.clauses.iter().any(RegionSet::is_empty) {
        return best;
    }
    let chosen = unit_variables(f);
    let excluded = RegionSet::empty(n);
    branch_minimum(f, chosen, excluded, &mut best);
    best
}

fn open_clauses(f: &MobidiscFormula, chosen: &RegionSet, excluded: &RegionSet) -> Option<Vec<RegionSet>> {
    let mut open = Vec::new();
    for c in &f.clauses {
        if c.intersects(chosen) {
            continue;
        }
        let live = c.difference(excluded);
        if live.is_empty() {
            return None;
        }
        open.push(live);
    }
    Some(open)
}

fn packing_bound(open: &[RegionSet], n: usize) -> usize {
    let mut used = RegionSet::empty(n);
    let mut sorted: Vec<&RegionSet> = open.iter().collect();
    sorted.sort_by_key(|c| c.len());
    let mut count = 0;
    for c in sorted {
        if !c.intersects(&used) {
            used = used.union(c);
            count += 1;
        }
    }
    count
}

fn branch_minimum(f: &MobidiscFormula, chosen: RegionSet, excluded: RegionSet, best: &mut RegionSet) {
    let Some(open) = open_clauses(f, &chosen, &excluded) else { return };
    if open.is_empty() {
        if chosen.len() < best.len() || (chosen.len() == best.len() && chosen.to_vec() < best.to_vec()) {
            *best = chosen;
        }
        return;
    }
    if chosen.len() + packing_bound(&open, f.variables) > best.len() {
        return;
    }
    let clause = open.iter().min_by_key(|c| c.len()).unwrap().clone();
    let mut excl = excluded;
    for v in clause.iter() {
        branch_minimum(f, chosen.with(v), excl.clone(), best);
        excl.insert(v);
    }
}

/// Every inclusion-minimal hitting set, sorted by size then elements.
pub fn minimal_hitting_sets(f: &MobidiscFormula) -> Vec<RegionSet> {
    let n = f.variables;
    let mut out = Vec::new();
    if f.clauses.iter().any(RegionSet::is_empty) {
        return out;
    }
    branch_all(f, RegionSet::empty(n), RegionSet::empty(n), &mut out);
    sort_sets(&mut out);
    out
}

fn is_minimal_hitting(f: &MobidiscFormula, s: &RegionSet) -> bool {
    s.iter().all(|v| f.clauses.iter().any(|c| c.intersection(s).to_vec() == [v]))
}

fn branch_all(f: &MobidiscFormula, chosen: RegionSet, excluded: RegionSet, out: &mut Vec<RegionSet>) {
    // Prune as soon as a chosen variable has lost every private clause.
    if !chosen.iter().all(|v| f.clauses.iter().any(|c| c.contains(v) && c.intersection(&chosen).len() == 1)) {
        return;
    }
    let Some(open) = open_clauses(f, &chosen, &excluded) else { return };
    if open.is_empty() {
        if is_minimal_hitting(f, &chosen) {
            out.push(chosen);
        }
        return;
    }
    let clause = open.iter().min_by_key(|c| c.len()).unwrap().clone();
    let mut excl = excluded;
    for v in clause.iter() {
        branch_all(f, chosen.with(v), excl.clone(), out);
        excl.insert(v);
    }
}

/// A monorbigon whose linking with every pair of pins vanishes, if any.
pub fn linking_obstruction(m: &Multiloop, pins: &RegionSet) -> Result<Option<Monorbigon>> {
    let Some(base) = pins.first() else {
        return Err(Error::EmptyPinSetUnsupported);
    };
    let tree = DualSpanningTree::bfs(m.map(), base)?;
    for b in singular_monorbigons(m)? {
        let v = view(m, &tree, &b.subloop);
        if pins.iter().all(|o| v.winding[o] == v.winding[base]) {
            return Ok(Some(b));
        }
    }
    Ok(None)
}
