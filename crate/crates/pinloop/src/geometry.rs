//! Exact planar arrangements of closed polylines.
//!
//! A family of closed polylines in general position (transverse crossings
//! only, never at a polyline corner) is turned into its combinatorial map:
//! crossings become vertices with counter-clockwise rotations, the arcs
//! between consecutive crossings become edges, and the edge along which a
//! curve leaves a crossing gets the half-edge `-e` there while its arrival
//! end gets `+e`. All arithmetic is over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combmap::{CombinatorialMap, HalfEdge, Multiloop};
use crate::error::{Error, Result};

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point { x: Q::from_integer(x.into()), y: Q::from_integer(y.into()) }
    }

    /// Parses decimal coordinates such as `"5.8738"` exactly.
    pub fn decimal(x: &str, y: &str) -> Result<Self> {
        Ok(Point { x: decimal(x)?, y: decimal(y)? })
    }

    fn sub(&self, o: &Point) -> (Q, Q) {
        (&self.x - &o.x, &self.y - &o.y)
    }

    /// `self + t·(to − self)`.
    pub fn lerp(&self, to: &Point, t: &Q) -> Point {
        Point { x: &self.x + (&to.x - &self.x) * t, y: &self.y + (&to.y - &self.y) * t }
    }
}

/// Parses an optionally signed decimal literal exactly.
pub fn decimal(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("not a decimal number: {s:?}"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let q = Q::new(num, den);
    Ok(if neg { -q } else { q })
}

pub(crate) fn cross(a: &(Q, Q), b: &(Q, Q)) -> Q {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Counter-clockwise angular comparison of nonzero direction vectors,
/// starting from the positive x axis.
pub(crate) fn angle_cmp(a: &(Q, Q), b: &(Q, Q)) -> Ordering {
    let half = |v: &(Q, Q)| {
        if v.1.is_positive() || (v.1.is_zero() && v.0.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Twice the signed area enclosed by a closed polygon.
pub fn signed_area2(poly: &[Point]) -> Q {
    let mut s = Q::zero();
    for i in 0..poly.len() {
        let (p, q) = (&poly[i], &poly[(i + 1) % poly.len()]);
        s += &p.x * &q.y - &q.x * &p.y;
    }
    s
}

/// Winding number of a closed polygon around a point not on it.
pub fn winding_number(poly: &[Point], q: &Point) -> i64 {
    let mut w = 0;
    for i in 0..poly.len() {
        let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
        let side = cross(&b.sub(a), &q.sub(a));
        if a.y <= q.y {
            if b.y > q.y && side.is_positive() {
                w += 1;
            }
        } else if b.y <= q.y && side.is_negative() {
            w -= 1;
        }
    }
    w
}

/// One crossing met along a curve.
#[derive(Clone, Debug)]
struct Visit {
    segment: usize,
    t: Q,
    vertex: usize,
    /// Direction of the curve through the crossing.
    direction: (Q, Q),
}

/// The combinatorial map of an arrangement of closed polylines together with
/// the geometry of every edge, for point location.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub crossings: Vec<Point>,
    /// `edge_paths[e - 1]`: the points of edge `e` from its `-e` end to its `+e` end.
    pub edge_paths: Vec<Vec<Point>>,
    /// The first edge of each curve; the curve runs along its edges in order.
    pub curve_edges: Vec<Vec<usize>>,
    pub map: CombinatorialMap,
}

impl Arrangement {
    pub fn new(curves: &[Vec<Point>]) -> Result<Self> {
        let degenerate = |m: String| Error::DegenerateArrangement(m);
        let segs: Vec<Vec<(Point, Point)>> = curves
            .iter()
            .map(|c| (0..c.len()).map(|i| (c[i].clone(), c[(i + 1) % c.len()].clone())).collect())
            .collect();
        for (ci, c) in segs.iter().enumerate() {
            if c.len() < 3 || c.iter().any(|(a, b)| a == b) {
                return Err(degenerate(format!("curve {ci} has a degenerate segment")));
            }
        }
        let mut visits: Vec<Vec<Visit>> = vec![Vec::new(); curves.len()];
        let mut crossings: Vec<Point> = Vec::new();
        let mut seen: BTreeMap<Point, usize> = BTreeMap::new();
        let flat: Vec<(usize, usize)> =
            segs.iter().enumerate().flat_map(|(ci, c)| (0..c.len()).map(move |si| (ci, si))).collect();
        for (i, &(ca, sa)) in flat.iter().enumerate() {
            for &(cb, sb) in &flat[i + 1..] {
                let (p, p2) = &segs[ca][sa];
                let (q, q2) = &segs[cb][sb];
                let r = p2.sub(p);
                let s = q2.sub(q);
                let qp = q.sub(p);
                let den = cross(&r, &s);
                let adjacent = ca == cb && {
                    let n = segs[ca].len();
                    (sa + 1) % n == sb || (sb + 1) % n == sa
                };
                if den.is_zero() {
                    if cross(&qp, &r).is_zero() {
                        // Collinear: reject any overlap beyond a shared corner.
                        let rr = &r.0 * &r.0 + &r.1 * &r.1;
                        let dot = |v: &(Q, Q)| &v.0 * &r.0 + &v.1 * &r.1;
                        let t0 = dot(&qp) / &rr;
                        let t1 = dot(&q2.sub(p)) / &rr;
                        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
                        let overlap_lo = if lo > Q::zero() { lo } else { Q::zero() };
                        let overlap_hi = if hi < Q::one() { hi } else { Q::one() };
                        if overlap_lo < overlap_hi || (overlap_lo == overlap_hi && !adjacent) {
                            return Err(degenerate(format!("overlapping segments ({ca},{sa}) and ({cb},{sb})")));
                        }
                    }
                    continue;
                }
                let t = cross(&qp, &s) / &den;
                let u = cross(&qp, &r) / &den;
                let zero = Q::zero();
                let one = Q::one();
                if t < zero || t > one || u < zero || u > one {
                    continue;
                }
                let interior = t > zero && t < one && u > zero && u < one;
                if !interior {
                    if adjacent && (t == zero || t == one) && (u == zero || u == one) {
                        continue;
                    }
                    return Err(degenerate(format!("segments ({ca},{sa}) and ({cb},{sb}) meet at a corner")));
                }
                let x = p.lerp(p2, &t);
                if seen.contains_key(&x) {
                    return Err(degenerate(format!("three strands through ({}, {})", x.x, x.y)));
                }
                let v = crossings.len();
                seen.insert(x.clone(), v);
                crossings.push(x);
                visits[ca].push(Visit { segment: sa, t, vertex: v, direction: r });
                visits[cb].push(Visit { segment: sb, t: u, vertex: v, direction: s });
            }
        }
        for (ci, v) in visits.iter_mut().enumerate() {
            if v.is_empty() {
                return Err(degenerate(format!("curve {ci} crosses nothing")));
            }
            v.sort_by(|a, b| a.segment.cmp(&b.segment).then_with(|| a.t.cmp(&b.t)));
        }
        // Edges between consecutive visits, and the darts at each crossing
        // with their outgoing directions.
        let mut darts: Vec<Vec<(HalfEdge, (Q, Q))>> = vec![Vec::new(); crossings.len()];
        let mut edge_paths = Vec::new();
        let mut curve_edges = Vec::new();
        for (ci, vs) in visits.iter().enumerate() {
            let curve = &curves[ci];
            let mut edges = Vec::new();
            for k in 0..vs.len() {
                let a = &vs[k];
                let b = &vs[(k + 1) % vs.len()];
                let e = edge_paths.len() as HalfEdge + 1;
                let mut path = vec![crossings[a.vertex].clone()];
                let mut s = a.segment;
                let wraps = k + 1 == vs.len();
                if wraps || b.segment != a.segment || b.t <= a.t {
                    loop {
                        s = (s + 1) % curve.len();
                        path.push(curve[s].clone());
                        if s == b.segment {
                            break;
                        }
                    }
                }
                path.push(crossings[b.vertex].clone());
                edge_paths.push(path);
                edges.push(e as usize);
                let d = &a.direction;
                darts[a.vertex].push((-e, d.clone()));
                let back = (-b.direction.0.clone(), -b.direction.1.clone());
                darts[b.vertex].push((e, back));
            }
            curve_edges.push(edges);
        }
        let cycles: Vec<Vec<HalfEdge>> = darts
            .into_iter()
            .map(|mut ds| {
                ds.sort_by(|a, b| angle_cmp(&a.1, &b.1));
                ds.into_iter().map(|(h, _)| h).collect()
            })
            .collect();
        let map = CombinatorialMap::from_cycles(&cycles)?;
        Ok(Arrangement { crossings, edge_paths, curve_edges, map })
    }

    /// The multiloop, each curve oriented along its polyline.
    pub fn multiloop(&self) -> Result<Multiloop> {
        let reps: Vec<HalfEdge> = self.curve_edges.iter().map(|es| es[0] as HalfEdge).collect();
        Multiloop::new(self.map.clone(), Some(&reps))
    }

    /// The boundary polygon of a region, traversed along its `φ`-orbit.
    pub fn region_polygon(&self, r: usize) -> Vec<Point> {
        let mut poly = Vec::new();
        for &h in &self.map.regions()[r].orbit {
            // Half-edge `h` sits at the crossing the walk leaves from.
            let path = &self.edge_paths[h.unsigned_abs() as usize - 1];
            if h < 0 {
                poly.extend(path[..path.len() - 1].iter().cloned());
            } else {
                poly.extend(path[1..].iter().rev().cloned());
            }
        }
        poly
    }

    /// The unbounded region: its boundary is the only one whose orientation
    /// disagrees with the others.
    pub fn outer_region(&self) -> usize {
        let areas: Vec<Q> = (0..self.map.n_regions()).map(|r| signed_area2(&self.region_polygon(r))).collect();
        let positive = areas.iter().filter(|a| a.is_positive()).count();
        let want_positive = positive == 1;
        areas.iter().position(|a| a.is_positive() == want_positive).unwrap()
    }

    /// The region containing a point off the curves.
    pub fn locate(&self, q: &Point) -> usize {
        let outer = self.outer_region();
        (0..self.map.n_regions())
            .filter(|&r| r != outer)
            .find(|&r| winding_number(&self.region_polygon(r), q) != 0)
            .unwrap_or(outer)
    }
}

/// Looks for an isomorphism of maps carrying `a` to `b`: a bijection of
/// half-edges commuting with `σ` and negation. Returns the region
/// correspondence `a`-index → `b`-index of every isomorphism found.
pub fn map_isomorphisms(a: &CombinatorialMap, b: &CombinatorialMap) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    if a.n_edges() != b.n_edges() || a.n_vertices() != b.n_vertices() || a.n_regions() != b.n_regions() {
        return found;
    }
    let n = a.n_edges() as HalfEdge;
    let slot = crate::combmap::half_edge_slot;
    let start = 1;
    for target in b.half_edges() {
        let mut image: Vec<Option<HalfEdge>> = vec![None; 2 * n as usize];
        let mut used = vec![false; 2 * n as usize];
        let mut stack = vec![(start, target)];
        let mut ok = true;
        while let Some((h, k)) = stack.pop() {
            match image[slot(h)] {
                Some(x) if x == k => continue,
                Some(_) => {
                    ok = false;
                    break;
                }
                None => {}
            }
            if used[slot(k)] {
                ok = false;
                break;
            }
            image[slot(h)] = Some(k);
            used[slot(k)] = true;
            stack.push((-h, -k));
            stack.push((a.sigma(h), b.sigma(k)));
        }
        if ok && image.iter().all(Option::is_some) {
            let regions =
                (0..a.n_regions()).map(|r| b.region_of(image[slot(a.regions()[r].orbit[0])].unwrap())).collect();
            found.push(regions);
        }
    }
    found
}

/// The mirror image of a map: every rotation reversed.
pub fn mirror(map: &CombinatorialMap) -> Result<CombinatorialMap> {
    let cycles: Vec<Vec<HalfEdge>> = map
        .sigma_cycles()
        .into_iter()
        .map(|mut c| {
            c.reverse();
            c
        })
        .collect();
    CombinatorialMap::from_cycles(&cycles)
}
