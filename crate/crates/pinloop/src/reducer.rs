//! Reduction from planar vertex cover to the pinning number of a plane loop.
//!
//! Every edge `e` of a straight-line plane graph becomes an edge gadget: a
//! thin core loop running along the line of `e` whose two self-crossings cut
//! out a bigon `M_e` around the edge, plus four lassos and two small bigons
//! hanging outside a convex boundary polygon that replaces the unit circle.
//! The gadgets are spliced into the boundary, giving a single loop whose
//! pinning number is `6|E|` plus the vertex cover number of the graph.
//!
//! All coordinates are exact rationals. Each gadget is laid out in the frame
//! `a + u·d + v·d⊥` of its edge `a → a + d`, and the boundary side where a
//! gadget attaches is perpendicular to `d`, so every gadget point has
//! rational coordinates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::combmap::{HalfEdge, Multiloop};
use crate::error::{Error, Result};
use crate::geometry::{angle_cmp, cross, Arrangement, Point, Q};
use crate::io::{parse_rational, GraphFile, GraphVertices};
use crate::mobidisc::{minimum_hitting_set, mobidisc_formula};
use crate::regionset::RegionSet;

type V2 = (Q, Q);

/// Forced pins per edge gadget.
pub const FORCED_PER_EDGE: usize = 6;

/// Largest vertex count accepted by the brute-force vertex cover.
const MAX_COVER_VERTICES: usize = 20;

/// A connected graph drawn with straight, pairwise non-parallel and
/// non-crossing edges. Edges are stored from their smaller to their larger
/// endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    vertices: Vec<Point>,
    edges: Vec<(usize, usize)>,
}

fn sub(a: &Point, b: &Point) -> V2 {
    (&a.x - &b.x, &a.y - &b.y)
}

fn dot(a: &V2, b: &V2) -> Q {
    &a.0 * &b.0 + &a.1 * &b.1
}

fn perp(a: &V2) -> V2 {
    (-a.1.clone(), a.0.clone())
}

fn l1(a: &V2) -> Q {
    a.0.abs() + a.1.abs()
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn add_scaled(p: &Point, a: &V2, s: &Q) -> Point {
    Point::new(&p.x + &a.0 * s, &p.y + &a.1 * s)
}

/// Squared distance from `p` to the segment `a + [0,1]·d`.
fn segment_distance2(p: &Point, a: &Point, d: &V2) -> Q {
    let ap = sub(p, a);
    let mut t = dot(&ap, d) / dot(d, d);
    if t.is_negative() {
        t = Q::zero();
    } else if t > Q::one() {
        t = Q::one();
    }
    let foot = add_scaled(a, d, &t);
    let r = sub(p, &foot);
    dot(&r, &r)
}

/// Whether `p` lies on the closed segment `[a, b]`.
fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    let ab = sub(b, a);
    let ap = sub(p, a);
    cross(&ab, &ap).is_zero() && {
        let t = dot(&ap, &ab);
        !t.is_negative() && t <= dot(&ab, &ab)
    }
}

/// The primitive integer vector pointing along `v`.
fn primitive(v: &V2) -> V2 {
    let den = v.0.denom().lcm(v.1.denom());
    let x = v.0.numer() * (&den / v.0.denom());
    let y = v.1.numer() * (&den / v.1.denom());
    let g = x.gcd(&y);
    (Q::from_integer(x / &g), Q::from_integer(y / g))
}

impl PlaneGraph {
    pub fn new(vertices: Vec<Point>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        let invalid = |m: String| Error::InvalidGraph(m);
        if edges.is_empty() {
            return Err(invalid("the graph has no edges".into()));
        }
        let mut seen = BTreeMap::new();
        let mut oriented = Vec::with_capacity(edges.len());
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(invalid(format!("edge {i} uses a vertex out of range")));
            }
            if a == b {
                return Err(invalid(format!("edge {i} is a loop")));
            }
            let e = (a.min(b), a.max(b));
            if let Some(j) = seen.insert(e, i) {
                return Err(invalid(format!("edges {j} and {i} are repeated")));
            }
            oriented.push(e);
        }
        for i in 0..n {
            for j in i + 1..n {
                if vertices[i] == vertices[j] {
                    return Err(invalid(format!("vertices {i} and {j} coincide")));
                }
            }
        }
        let mut reached = vec![false; n];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &oriented {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !reached[y] {
                        reached[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(invalid("the graph is not connected".into()));
        }
        let g = PlaneGraph { vertices, edges: oriented };
        let dirs: Vec<V2> = (0..g.edges.len()).map(|i| g.direction(i)).collect();
        for i in 0..dirs.len() {
            for j in i + 1..dirs.len() {
                if cross(&dirs[i], &dirs[j]).is_zero() {
                    return Err(Error::ParallelEdges(i, j));
                }
            }
        }
        for i in 0..dirs.len() {
            for j in i + 1..dirs.len() {
                if g.edges_meet_badly(i, j) {
                    return Err(Error::CrossingEdges(i, j));
                }
            }
        }
        Ok(g)
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let vertices = match &file.vertices {
            GraphVertices::Points(ps) => ps
                .iter()
                .map(|[x, y]| Ok(Point::new(parse_rational(x)?, parse_rational(y)?)))
                .collect::<Result<Vec<_>>>()?,
            GraphVertices::Count(n) => embed_small(*n, &file.edges)?,
        };
        PlaneGraph::new(vertices, file.edges.clone())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Edges as `(smaller, larger)` vertex pairs, in input order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn direction(&self, e: usize) -> V2 {
        let (a, b) = self.edges[e];
        sub(&self.vertices[b], &self.vertices[a])
    }

    /// Non-parallel edges `i`, `j` meet anywhere but at a shared endpoint.
    fn edges_meet_badly(&self, i: usize, j: usize) -> bool {
        let (a, b) = self.edges[i];
        let (c, d) = self.edges[j];
        let r = self.direction(i);
        let s = self.direction(j);
        let qp = sub(&self.vertices[c], &self.vertices[a]);
        let den = cross(&r, &s);
        let t = cross(&qp, &s) / &den;
        let u = cross(&qp, &r) / &den;
        let inside = |x: &Q| !x.is_negative() && *x <= Q::one();
        if !(inside(&t) && inside(&u)) {
            return false;
        }
        let at = |x: &Q, p: usize, q: usize| {
            if x.is_zero() {
                Some(p)
            } else if x.is_one() {
                Some(q)
            } else {
                None
            }
        };
        !matches!((at(&t, a, b), at(&u, c, d)), (Some(x), Some(y)) if x == y)
    }

    /// Size of a minimum vertex cover, by exhaustive search.
    pub fn min_vertex_cover(&self) -> Result<usize> {
        let n = self.vertices.len();
        if n > MAX_COVER_VERTICES {
            return Err(Error::BudgetExceeded(format!(
                "vertex cover search is limited to {MAX_COVER_VERTICES} vertices, the graph has {n}"
            )));
        }
        let masks: Vec<u32> = self.edges.iter().map(|&(a, b)| (1 << a) | (1 << b)).collect();
        Ok((0u32..1 << n)
            .filter(|s| masks.iter().all(|m| s & m != 0))
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap_or(0))
    }

    /// Smallest squared distance between a vertex and another vertex or an
    /// edge it does not belong to.
    fn feature_distance2(&self) -> Q {
        let mut best: Option<Q> = None;
        let mut offer = |d: Q| {
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        };
        for (i, p) in self.vertices.iter().enumerate() {
            for o in &self.vertices[i + 1..] {
                let r = sub(p, o);
                offer(dot(&r, &r));
            }
            for (e, &(a, b)) in self.edges.iter().enumerate() {
                if a != i && b != i {
                    offer(segment_distance2(p, &self.vertices[a], &self.direction(e)));
                }
            }
        }
        best.expect("a graph with an edge has two vertices")
    }
}

/// Brute-force straight-line drawing of a small graph on a grid, for inputs
/// given without coordinates.
pub fn embed_small(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Point>> {
    const MAX_VERTICES: usize = 8;
    const SIDE: i64 = 7;
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::InvalidGraph(format!("automatic drawing needs 1 to {MAX_VERTICES} vertices, got {n}")));
    }
    let grid: Vec<(i64, i64)> = (0..SIDE * SIDE).map(|k| (k % SIDE, k / SIDE)).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut budget = 5_000_000u64;
    fn ok(chosen: &[usize], grid: &[(i64, i64)], edges: &[(usize, usize)]) -> bool {
        let k = chosen.len();
        let pts: Vec<Point> = chosen.iter().map(|&c| Point::int(grid[c].0, grid[c].1)).collect();
        let live: Vec<(usize, usize)> = edges.iter().copied().filter(|&(a, b)| a < k && b < k && a != b).collect();
        if pts.len() >= 2 && !live.is_empty() {
            let edges_now: Vec<(usize, usize)> = live;
            let g = PlaneGraph { vertices: pts.clone(), edges: edges_now.clone() };
            for i in 0..edges_now.len() {
                for j in i + 1..edges_now.len() {
                    if cross(&g.direction(i), &g.direction(j)).is_zero() || g.edges_meet_badly(i, j) {
                        return false;
                    }
                }
            }
            for (v, p) in pts.iter().enumerate() {
                for &(a, b) in &edges_now {
                    if a != v && b != v && on_segment(p, &pts[a], &pts[b]) {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn search(
        n: usize,
        chosen: &mut Vec<usize>,
        grid: &[(i64, i64)],
        edges: &[(usize, usize)],
        budget: &mut u64,
    ) -> bool {
        if chosen.len() == n {
            return true;
        }
        for c in 0..grid.len() {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            if chosen.contains(&c) {
                continue;
            }
            chosen.push(c);
            if ok(chosen, grid, edges) && search(n, chosen, grid, edges, budget) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if search(n, &mut chosen, &grid, edges, &mut budget) {
        Ok(chosen.iter().map(|&c| Point::int(grid[c].0, grid[c].1)).collect())
    } else {
        Err(Error::InvalidGraph("no straight-line drawing found on the search grid".into()))
    }
}

/// The loop built from a plane graph.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub multiloop: Multiloop,
    /// Graph vertex → region containing it; that region lies in the bigon
    /// of every incident edge.
    pub correspondence: Vec<usize>,
    /// The six regions per gadget that every pinning set must contain.
    pub forced_pins: RegionSet,
    /// The bigon region of each edge gadget around the middle of its edge.
    pub edge_bigons: Vec<usize>,
    /// The gadget width parameter.
    pub epsilon: Q,
    /// The closed polyline of the loop.
    pub curve: Vec<Point>,
}

impl Reduction {
    /// Pinning number through the mobidisc formula and an exact hitting set.
    pub fn pinning_number(&self) -> Result<usize> {
        Ok(minimum_hitting_set(&mobidisc_formula(&self.multiloop)?).len())
    }
}

/// Layout frame of one gadget: `a + u·d + v·d⊥`, with `h` the gadget unit.
struct Frame {
    a: Point,
    d: V2,
    dp: V2,
    h: Q,
    /// `u` of the boundary sides at the start and end of the edge line.
    lo: Q,
    hi: Q,
}

impl Frame {
    fn at(&self, u: &Q, v: &Q) -> Point {
        add_scaled(&add_scaled(&self.a, &self.d, u), &self.dp, v)
    }

    /// A point `s` units outside the boundary and `t` units along it in the
    /// counter-clockwise direction, at the far (`right`) or near end.
    fn end(&self, right: bool, s: i64, t: i64) -> Point {
        if right {
            self.at(&(&self.hi + q(s) * &self.h), &(q(t) * &self.h))
        } else {
            self.at(&(&self.lo - q(s) * &self.h), &(-q(t) * &self.h))
        }
    }

    fn uv(&self, p: &Point) -> (Q, Q) {
        let r = sub(p, &self.a);
        let n = dot(&self.d, &self.d);
        (dot(&r, &self.d) / &n, dot(&r, &self.dp) / n)
    }
}

/// Extended lasso: its lobe sits inside the outer loop.
const LASSO_EXTENDED: [(i64, i64); 12] = [
    (0, -10),
    (3, -10),
    (5, -11),
    (20, -11),
    (10, -6),
    (6, -6),
    (6, -10),
    (10, -10),
    (20, -5),
    (5, -5),
    (3, -6),
    (0, -6),
];
/// Simple lasso: a single twist and a lobe beyond it.
const LASSO_SIMPLE: [(i64, i64); 8] = [(0, 6), (2, 6), (6, 10), (10, 10), (10, 6), (6, 6), (2, 10), (0, 10)];
/// The doubled twist of the core beyond the near boundary side.
const TWIST_OUT: [(i64, i64); 5] = [(0, -2), (5, -2), (13, 2), (17, 2), (29, -4)];
const TWIST_BACK: [(i64, i64); 5] = [(29, 4), (17, -2), (13, -2), (5, 2), (0, 2)];
/// Sample points (outside, along) of the forced regions at each end.
const NEAR_FORCED: [(&str, i64, i64); 3] = [("p1", 8, 8), ("p2", 8, -8), ("q1", 15, 0)];
const FAR_FORCED: [(&str, i64, i64); 3] = [("p3", 8, 8), ("p4", 8, -8), ("q2", 2, 0)];
/// Core half-width and bigon overhang, in gadget units.
const CORE_HALF_WIDTH: i64 = 4;
const BIGON_OVERHANG: i64 = 8;

/// Builds the loop of a plane graph.
pub fn vc_to_loop(g: &PlaneGraph) -> Result<Reduction> {
    let d2 = g.feature_distance2();
    // Largest power of two ε with (32ε)² ≤ d².
    let mut eps = Q::one();
    let mut halvings = 0;
    while q(1024) * &eps * &eps > d2 {
        eps /= q(2);
        halvings += 1;
        if halvings > 512 {
            return Err(Error::EpsilonUnderflow);
        }
    }
    // Accidental coincidences (three curves through a point, a corner on a
    // curve, a graph vertex on a curve) are removed by shrinking ε and
    // rescaling later gadgets by slightly different factors: near a shared
    // vertex all gadgets scale together, so shrinking alone cannot help.
    for attempt in 0..24 {
        match build(g, &eps, attempt) {
            Ok(r) => return Ok(r),
            Err(Error::DegenerateArrangement(_)) => eps = eps * q(5) / q(7),
            Err(e) => return Err(e),
        }
    }
    Err(Error::EpsilonUnderflow)
}

struct Side {
    normal: V2,
    end: Option<(usize, bool)>,
}

fn build(g: &PlaneGraph, eps: &Q, attempt: i64) -> Result<Reduction> {
    let degenerate = |m: &str| Error::DegenerateArrangement(m.to_string());
    let m = g.edges.len();
    let mut frames: Vec<Frame> = (0..m)
        .map(|e| {
            let d = g.direction(e);
            let jitter = Q::new(BigInt::from(64 + (attempt * (2 * e as i64 + 1)) % 17), BigInt::from(64));
            let h = eps * jitter / l1(&d);
            Frame { a: g.vertices[g.edges[e].0].clone(), dp: perp(&d), d, h, lo: Q::zero(), hi: Q::zero() }
        })
        .collect();

    // Boundary sides: one per end of every edge line, perpendicular to it,
    // plus fillers wherever consecutive normals are a right angle or more apart.
    let mut ends: Vec<Side> = Vec::new();
    for (e, f) in frames.iter().enumerate() {
        let p = primitive(&f.d);
        ends.push(Side { normal: (-p.0.clone(), -p.1.clone()), end: Some((e, false)) });
        ends.push(Side { normal: p, end: Some((e, true)) });
    }
    ends.sort_by(|a, b| angle_cmp(&a.normal, &b.normal));
    let mut sides: Vec<Side> = Vec::new();
    for k in 0..ends.len() {
        let a = &ends[k].normal;
        let b = &ends[(k + 1) % ends.len()].normal;
        sides.push(Side { normal: a.clone(), end: ends[k].end });
        let c = cross(a, b);
        if c.is_positive() && dot(a, b).is_positive() {
            continue;
        }
        let filler = if c.is_positive() {
            let (na, nb) = (l1(a), l1(b));
            primitive(&(&a.0 / &na + &b.0 / &nb, &a.1 / &na + &b.1 / &nb))
        } else {
            perp(a)
        };
        sides.push(Side { normal: filler, end: None });
    }

    let n = g.vertices.len();
    let center = Point::new(
        g.vertices.iter().map(|p| p.x.clone()).sum::<Q>() / q(n as i64),
        g.vertices.iter().map(|p| p.y.clone()).sum::<Q>() / q(n as i64),
    );
    let mut crossings: Vec<(usize, usize, Point)> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let (fi, fj) = (&frames[i], &frames[j]);
            let t = cross(&sub(&fj.a, &fi.a), &fj.d) / cross(&fi.d, &fj.d);
            crossings.push((i, j, add_scaled(&fi.a, &fi.d, &t)));
        }
    }
    let spread = g
        .vertices
        .iter()
        .chain(crossings.iter().map(|c| &c.2))
        .map(|p| l1(&sub(p, &center)))
        .fold(Q::zero(), |acc, x| if x > acc { x } else { acc });
    let mut radius = q(2) * spread + q(1);
    let mut scale = BigInt::from(16);

    let (corners, chord_ok) = 'place: {
        for _ in 0..96 {
            // Side k: (x − center)·n = radius·r with r slightly above |n|.
            let lines: Vec<(V2, Q)> = sides
                .iter()
                .map(|s| {
                    let nn = dot(&s.normal, &s.normal);
                    let sq = (nn.numer() * &scale * &scale).sqrt() + BigInt::one();
                    let r = Q::new(sq, scale.clone());
                    let offset = &radius * r + &center.x * &s.normal.0 + &center.y * &s.normal.1;
                    (s.normal.clone(), offset)
                })
                .collect();
            let k = lines.len();
            let corners: Vec<Point> = (0..k)
                .map(|i| {
                    let (n1, c1) = &lines[i];
                    let (n2, c2) = &lines[(i + 1) % k];
                    let det = cross(n1, n2);
                    Point::new((c1 * &n2.1 - c2 * &n1.1) / &det, (&n1.0 * c2 - &n2.0 * c1) / det)
                })
                .collect();
            let mut good = (0..k).all(|i| {
                let prev = &corners[(i + k - 1) % k];
                dot(&sub(&corners[i], prev), &perp(&lines[i].0)).is_positive()
            });
            for (i, s) in sides.iter().enumerate() {
                if !good {
                    break;
                }
                let Some((e, right)) = s.end else { continue };
                let f = &mut frames[e];
                let (nrm, c) = &lines[i];
                let u = (c - dot(&(f.a.x.clone(), f.a.y.clone()), nrm)) / dot(&f.d, nrm);
                if right {
                    f.hi = u;
                } else {
                    f.lo = u;
                }
                let sign = if right { Q::one() } else { -Q::one() };
                let before = &sign * f.uv(&corners[(i + k - 1) % k]).1;
                let after = &sign * f.uv(&corners[i]).1;
                let clear = q(16) * &f.h;
                good = before < -clear.clone() && after > clear;
            }
            if good {
                good = frames.iter().enumerate().all(|(e, f)| {
                    let margin = q(64) * &f.h;
                    let mut lo_need = Q::zero();
                    let mut hi_need = Q::one();
                    for (i, j, x) in &crossings {
                        if *i == e || *j == e {
                            let u = f.uv(x).0;
                            if u < lo_need {
                                lo_need = u.clone();
                            }
                            if u > hi_need {
                                hi_need = u;
                            }
                        }
                    }
                    f.lo.clone() + &margin < lo_need && f.hi.clone() - margin > hi_need
                });
            }
            if good {
                let far = q(64) * eps;
                good = frames.iter().enumerate().all(|(e, f)| {
                    [&f.lo, &f.hi].iter().all(|u| {
                        let p = add_scaled(&f.a, &f.d, u);
                        frames.iter().enumerate().filter(|(o, _)| *o != e).all(|(_, o)| {
                            let c = cross(&sub(&p, &o.a), &o.d);
                            &c * &c > &far * &far * dot(&o.d, &o.d)
                        })
                    })
                });
            }
            if good {
                break 'place (corners, true);
            }
            radius *= q(2);
            scale *= 4;
        }
        (Vec::new(), false)
    };
    if !chord_ok {
        return Err(Error::EpsilonUnderflow);
    }

    let w = q(CORE_HALF_WIDTH);
    let overhang = q(2 * BIGON_OVERHANG);
    let mut curve: Vec<Point> = Vec::new();
    for (i, s) in sides.iter().enumerate() {
        if let Some((e, right)) = s.end {
            let f = &frames[e];
            let push = |curve: &mut Vec<Point>, pts: &[(i64, i64)]| {
                curve.extend(pts.iter().map(|&(s, t)| f.end(right, s, t)));
            };
            push(&mut curve, &LASSO_EXTENDED);
            if !right {
                push(&mut curve, &TWIST_OUT);
                let h = &f.h;
                let (ww, oh) = (&w * h, &overhang * h);
                let tip = &f.hi + q(4) * h;
                let one = Q::one();
                let core = [
                    (-oh.clone(), ww.clone()),
                    (Q::zero(), -ww.clone()),
                    (one.clone(), -ww.clone()),
                    (&one + &oh, ww.clone()),
                    (tip.clone(), ww.clone()),
                    (tip, -ww.clone()),
                    (&one + &oh, -ww.clone()),
                    (one, ww.clone()),
                    (Q::zero(), ww.clone()),
                    (-oh, -ww),
                ];
                curve.extend(core.iter().map(|(u, v)| f.at(u, v)));
                push(&mut curve, &TWIST_BACK);
            }
            push(&mut curve, &LASSO_SIMPLE);
        }
        curve.push(corners[i].clone());
    }

    let arrangement = Arrangement::new(std::slice::from_ref(&curve))?;
    let segments = || (0..curve.len()).map(|i| (&curve[i], &curve[(i + 1) % curve.len()]));
    let off_curve = |p: &Point| segments().all(|(a, b)| !on_segment(p, a, b));

    let mut labels: BTreeMap<usize, String> = BTreeMap::new();
    let mut correspondence = Vec::with_capacity(n);
    for (v, p) in g.vertices.iter().enumerate() {
        if !off_curve(p) {
            return Err(degenerate("a graph vertex lies on the loop"));
        }
        let r = arrangement.locate(p);
        correspondence.push(r);
        labels.entry(r).and_modify(|l: &mut String| l.push_str(&format!("+v{v}"))).or_insert(format!("v{v}"));
    }
    let regions = arrangement.map.n_regions();
    let mut forced_pins = RegionSet::empty(regions);
    let mut edge_bigons = Vec::with_capacity(m);
    for (e, f) in frames.iter().enumerate() {
        for (right, table) in [(false, &NEAR_FORCED), (true, &FAR_FORCED)] {
            for &(name, s, t) in table.iter() {
                let p = f.end(right, s, t);
                let r = arrangement.locate(&p);
                if forced_pins.contains(r) || labels.contains_key(&r) {
                    return Err(degenerate("forced regions of two gadgets coincide"));
                }
                forced_pins.insert(r);
                labels.insert(r, format!("e{e}.{name}"));
            }
        }
        let mid = f.at(&Q::new(BigInt::one(), BigInt::from(2)), &Q::zero());
        if !off_curve(&mid) {
            return Err(degenerate("an edge midpoint lies on the loop"));
        }
        let r = arrangement.locate(&mid);
        edge_bigons.push(r);
        labels.entry(r).or_insert(format!("M{e}"));
    }

    let reps: Vec<HalfEdge> = arrangement.curve_edges.iter().map(|es| es[0] as HalfEdge).collect();
    let map = arrangement.map.clone().with_labels(labels)?;
    let multiloop = Multiloop::new(map, Some(&reps))?;
    Ok(Reduction { multiloop, correspondence, forced_pins, edge_bigons, epsilon: eps.clone(), curve })
}

/// Checks the reduction on one instance: the graph has a vertex cover of
/// size `k`, and the pinning number of its loop is exactly `6|E|` plus the
/// minimum vertex cover. `max_double_points` bounds the exact solver.
pub fn verify_correspondence(g: &PlaneGraph, k: usize, max_double_points: Option<usize>) -> Result<bool> {
    let cover = g.min_vertex_cover()?;
    let red = vc_to_loop(g)?;
    let size = red.multiloop.n_double_points();
    if let Some(limit) = max_double_points {
        if size > limit {
            return Err(Error::BudgetExceeded(format!("the loop has {size} double points, the limit is {limit}")));
        }
    }
    let pin = red.pinning_number()?;
    Ok(cover <= k && pin == FORCED_PER_EDGE * g.edges.len() + cover)
}
