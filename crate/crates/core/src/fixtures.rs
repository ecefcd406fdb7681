//! Small maps used throughout the tests and bundled with the CLI.

use crate::graph::Graph;
use crate::map::{EmbeddedMap, MapBuilder, Sign};

fn neighbours(rows: &[(&str, &[&str])]) -> EmbeddedMap {
    MapBuilder::from_neighbours(rows).expect("fixture is a valid map")
}

/// One edge joining two vertices in the sphere.
pub fn single_edge() -> EmbeddedMap {
    neighbours(&[("u", &["w"]), ("w", &["u"])])
}

/// The 4-cycle in the sphere.
pub fn c4() -> EmbeddedMap {
    neighbours(&[("c0", &["c1", "c3"]), ("c1", &["c2", "c0"]), ("c2", &["c3", "c1"]), ("c3", &["c0", "c2"])])
}

/// One vertex with two loops `a`, `b` and rotation `a1 b1 a2 b2`: the torus.
pub fn t1() -> EmbeddedMap {
    t1_signed(Sign::Plus)
}

/// [`t1`] with loop `a` twisted: the Klein bottle.
pub fn t1_klein() -> EmbeddedMap {
    t1_signed(Sign::Minus)
}

fn t1_signed(a: Sign) -> EmbeddedMap {
    MapBuilder::new()
        .vertex("x", ["a1", "b1", "a2", "b2"])
        .edge("a", "a1", "a2", a)
        .edge("b", "b1", "b2", Sign::Plus)
        .build()
        .expect("fixture is a valid map")
}

/// The cube in the sphere: outer square `a0..a3`, inner square `b0..b3`.
pub fn q3() -> EmbeddedMap {
    neighbours(&[
        ("a0", &["a1", "b0", "a3"]),
        ("a1", &["a2", "b1", "a0"]),
        ("a2", &["a3", "b2", "a1"]),
        ("a3", &["a0", "b3", "a2"]),
        ("b0", &["b1", "b3", "a0"]),
        ("b1", &["b2", "b0", "a1"]),
        ("b2", &["b3", "b1", "a2"]),
        ("b3", &["b0", "b2", "a3"]),
    ])
}

/// K4 in the sphere (four triangular faces).
pub fn k4() -> EmbeddedMap {
    neighbours(&[("k0", &["k1", "k2", "k3"]), ("k1", &["k2", "k0", "k3"]), ("k2", &["k3", "k0", "k1"]), ("k3", &["k1", "k0", "k2"])])
}

/// The octahedron in the sphere.
pub fn octahedron() -> EmbeddedMap {
    neighbours(&[
        ("n", &["e0", "e1", "e2", "e3"]),
        ("e0", &["s", "e1", "n", "e3"]),
        ("e1", &["s", "e2", "n", "e0"]),
        ("e2", &["s", "e3", "n", "e1"]),
        ("e3", &["s", "e0", "n", "e2"]),
        ("s", &["e3", "e2", "e1", "e0"]),
    ])
}

/// A 10-cycle `r0..r9` with hub `h1` joined to the even rim vertices inside
/// and hub `h2` joined to the odd ones outside: a spherical grid with
/// curvature sequence 3x10, 5x2.
pub fn pdw() -> EmbeddedMap {
    let names: Vec<String> = (0..10).map(|i| format!("r{i}")).collect();
    let mut rows: Vec<(String, Vec<String>)> = Vec::new();
    rows.push(("h1".into(), (0..10).step_by(2).map(|i| names[i].clone()).collect()));
    rows.push(("h2".into(), [9, 7, 5, 3, 1].iter().map(|&i| names[i].clone()).collect()));
    for i in 0..10 {
        let next = names[(i + 1) % 10].clone();
        let prev = names[(i + 9) % 10].clone();
        let rot = if i % 2 == 0 { vec![next, "h1".into(), prev] } else { vec!["h2".into(), next, prev] };
        rows.push((names[i].clone(), rot));
    }
    let borrowed: Vec<(&str, Vec<&str>)> =
        rows.iter().map(|(v, r)| (v.as_str(), r.iter().map(String::as_str).collect())).collect();
    let rows: Vec<(&str, &[&str])> = borrowed.iter().map(|(v, r)| (*v, r.as_slice())).collect();
    neighbours(&rows)
}

/// A quadrangular immersion of the Wagner graph in the sphere with two
/// crossings `x0` and `x1`: the 8-cycle bounds a disk, two long diagonals
/// cross inside it and two outside. The dual is a single transverse circuit.
pub fn v8_skeleton() -> EmbeddedMap {
    crate::smap::parse_smap(V8_SKELETON_SMAP).expect("bundled fixture parses")
}

pub(crate) const V8_SKELETON_SMAP: &str = include_str!("../fixtures/v8_skeleton.smap");

/// The alternating wheel on an even rim `r0..r<n-1>`: hub `h1` is joined to
/// the even rim vertices and hub `h2` to the odd ones. With a rim of 2 the
/// rim is a pair of parallel edges. The rim of 10 is the graph of [`pdw`].
pub fn alternating_wheel(rim: usize) -> Graph {
    assert!(rim >= 2 && rim % 2 == 0, "rim length must be even and positive");
    let mut g = Graph::with_vertices(["h1".to_string(), "h2".to_string()]);
    for i in 0..rim {
        g.add_vertex(format!("r{i}"));
    }
    for i in 0..rim {
        g.add_edge(2 + i, 2 + (i + 1) % rim);
    }
    for i in 0..rim {
        g.add_edge(i % 2, 2 + i);
    }
    g
}

/// The Wagner graph: an 8-cycle plus its four long diagonals.
pub fn wagner_graph() -> Graph {
    let mut g = Graph::with_vertices((0..8).map(|i| format!("w{i}")));
    for i in 0..8 {
        g.add_edge(i, (i + 1) % 8);
    }
    for i in 0..4 {
        g.add_edge(i, i + 4);
    }
    g
}

/// Every bundled fixture by CLI name.
pub fn all() -> Vec<(&'static str, EmbeddedMap)> {
    vec![
        ("single_edge", single_edge()),
        ("c4", c4()),
        ("t1", t1()),
        ("t1_klein", t1_klein()),
        ("q3", q3()),
        ("k4", k4()),
        ("octahedron", octahedron()),
        ("pdw", pdw()),
        ("v8_skeleton", v8_skeleton()),
    ]
}
