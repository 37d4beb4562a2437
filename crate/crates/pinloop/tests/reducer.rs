use pinloop::geometry::Point;
use pinloop::io::GraphFile;
use pinloop::pinning::forced_regions;
use pinloop::reducer::{vc_to_loop, verify_correspondence, PlaneGraph, FORCED_PER_EDGE};
use pinloop::{Error, RegionSet};

fn graph(points: &[(i64, i64)], edges: &[(usize, usize)]) -> PlaneGraph {
    PlaneGraph::new(points.iter().map(|&(x, y)| Point::int(x, y)).collect(), edges.to_vec()).unwrap()
}

fn k2() -> PlaneGraph {
    graph(&[(0, 0), (1, 0)], &[(0, 1)])
}

fn path() -> PlaneGraph {
    graph(&[(0, 0), (1, 0), (1, 1)], &[(0, 1), (1, 2)])
}

fn triangle() -> PlaneGraph {
    graph(&[(0, 0), (2, 0), (1, 2)], &[(0, 1), (1, 2), (2, 0)])
}

/// Structural facts every reduction output satisfies.
fn check_output(g: &PlaneGraph) -> pinloop::reducer::Reduction {
    let red = vc_to_loop(g).unwrap();
    let m = &red.multiloop;
    assert_eq!(m.n_strands(), 1);
    assert_eq!(m.map().genus().unwrap(), 0);
    assert!(m.degree_identity_check());
    let e = g.edges().len();
    assert_eq!(red.forced_pins.len(), FORCED_PER_EDGE * e);
    assert_eq!(red.correspondence.len(), g.vertices().len());
    let corr = RegionSet::from_iter(m.n_regions(), red.correspondence.iter().copied());
    assert!(!corr.intersects(&red.forced_pins));
    assert_eq!(red.edge_bigons.len(), e);
    red
}

#[test]
fn single_edge() {
    let g = k2();
    let red = check_output(&g);
    assert_eq!(red.multiloop.n_double_points(), 12);
    assert_eq!(red.pinning_number().unwrap(), 7);
    let mut expected = red.forced_pins.clone();
    expected.insert(red.edge_bigons[0]);
    assert_eq!(forced_regions(&red.multiloop, None).unwrap(), expected);
    assert!(verify_correspondence(&g, 1, None).unwrap());
    assert!(!verify_correspondence(&g, 0, None).unwrap());
}

#[test]
fn path_of_two_edges() {
    let g = path();
    let red = check_output(&g);
    assert_eq!(red.multiloop.n_double_points(), 28);
    assert_eq!(red.pinning_number().unwrap(), 13);
    assert!(verify_correspondence(&g, 1, None).unwrap());
}

#[test]
fn triangle_census() {
    let red = check_output(&triangle());
    assert_eq!(red.multiloop.n_double_points(), 48);
}

#[test]
fn double_point_limit_is_enforced() {
    assert!(matches!(verify_correspondence(&path(), 1, Some(10)), Err(Error::BudgetExceeded(..))));
}

#[test]
fn invalid_graphs_are_rejected() {
    let pts = |v: &[(i64, i64)]| v.iter().map(|&(x, y)| Point::int(x, y)).collect::<Vec<_>>();
    assert!(PlaneGraph::new(pts(&[(0, 0), (1, 0)]), vec![]).is_err());
    assert!(PlaneGraph::new(pts(&[(0, 0), (0, 0)]), vec![(0, 1)]).is_err());
    assert!(PlaneGraph::new(pts(&[(0, 0), (1, 0), (5, 5), (6, 5)]), vec![(0, 1), (2, 3)]).is_err());
    assert!(matches!(
        PlaneGraph::new(pts(&[(0, 0), (2, 2), (0, 2), (2, 0)]), vec![(0, 1), (2, 3), (0, 2)]),
        Err(Error::CrossingEdges(..))
    ));
}

#[test]
fn graph_files_with_a_vertex_count_are_drawn_automatically() {
    let file = GraphFile::parse(r#"{"vertices": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
    let g = PlaneGraph::from_file(&file).unwrap();
    assert_eq!(g.vertices().len(), 3);
    assert_eq!(g.min_vertex_cover().unwrap(), 1);
}
