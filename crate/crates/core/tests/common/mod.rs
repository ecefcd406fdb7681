#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use sgrid::{fixtures, oracle, EmbeddedMap, Graph, MapBuilder};

/// Every bundled fixture map.
pub fn fixture_maps() -> Vec<(&'static str, EmbeddedMap)> {
    fixtures::all()
}

/// Fixtures that are grids.
pub fn fixture_grids() -> Vec<(&'static str, EmbeddedMap)> {
    fixture_maps().into_iter().filter(|(_, m)| m.is_grid()).collect()
}

/// Skeleton grids with nonempty curvature, including searched immersions
/// that carry crossings.
pub fn skeleton_corpus() -> Vec<(String, EmbeddedMap)> {
    let mut out: Vec<(String, EmbeddedMap)> = ["c4", "q3", "pdw", "v8_skeleton"]
        .iter()
        .map(|n| (n.to_string(), fixture_maps().into_iter().find(|(m, _)| m == n).unwrap().1))
        .collect();
    let budget = oracle::EnumerationBudget { max_crossings: 2, ..Default::default() };
    let report = oracle::search_quadrangular(&fixtures::alternating_wheel(2), &budget).unwrap();
    for im in report.immersions {
        out.push((format!("wheel2/x{}", im.crossings), im.map));
    }
    out
}

/// A random isomorphic copy: vertices and edges reordered, darts of an
/// edge swapped, rotations shifted, random vertices switched, and all names
/// replaced.
pub fn relabel(m: &EmbeddedMap, rng: &mut StdRng) -> EmbeddedMap {
    let nv = m.vertex_count();
    let ne = m.edge_count();
    let switched: Vec<bool> = (0..nv).map(|_| rng.gen_bool(0.5)).collect();
    let swap: Vec<bool> = (0..ne).map(|_| rng.gen_bool(0.5)).collect();
    let mut vorder: Vec<usize> = (0..nv).collect();
    vorder.shuffle(rng);
    let mut eorder: Vec<usize> = (0..ne).collect();
    eorder.shuffle(rng);
    let salt: u32 = rng.gen();
    let dname = |d: sgrid::Dart| format!("q{salt}_{}", d.index() ^ usize::from(swap[d.edge()]));
    let mut b = MapBuilder::new();
    for &v in &vorder {
        let mut rot: Vec<String> = m.rotation(v).iter().map(|&d| dname(d)).collect();
        if switched[v] {
            rot.reverse();
        }
        let k = rng.gen_range(0..rot.len());
        rot.rotate_left(k);
        b.vertex(format!("p{salt}_{v}"), rot);
    }
    for &e in &eorder {
        let (u, v) = m.edge_ends(e);
        let mut sign = m.sign(e);
        if switched[u] != switched[v] {
            sign = sign.flip();
        }
        let (a, c) = (sgrid::Dart(2 * e as u32), sgrid::Dart(2 * e as u32 + 1));
        b.edge(format!("r{salt}_{e}"), dname(a), dname(c), sign);
    }
    b.build().expect("relabelled copy is a valid map")
}

/// Two-colouring by parity propagation over the edges, independent of the
/// library's own check.
pub fn bipartite_by_parity(m: &EmbeddedMap) -> bool {
    let n = m.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut parity = vec![0u8; n];
    fn find(parent: &mut [usize], parity: &mut [u8], x: usize) -> (usize, u8) {
        if parent[x] == x {
            return (x, 0);
        }
        let (root, p) = find(parent, parity, parent[x]);
        parent[x] = root;
        parity[x] ^= p;
        (root, parity[x])
    }
    for e in 0..m.edge_count() {
        let (u, v) = m.edge_ends(e);
        let (ru, pu) = find(&mut parent, &mut parity, u);
        let (rv, pv) = find(&mut parent, &mut parity, v);
        if ru == rv {
            if pu == pv {
                return false;
            }
        } else {
            parent[ru] = rv;
            parity[ru] = pu ^ pv ^ 1;
        }
    }
    true
}

/// Abstract multigraph isomorphism by backtracking over vertex images.
pub fn graphs_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() || a.degree_sequence() != b.degree_sequence() {
        return false;
    }
    let matrix = |g: &Graph| {
        let mut m = vec![vec![0usize; n]; n];
        for &(u, v) in g.edges() {
            m[u][v] += 1;
            if u != v {
                m[v][u] += 1;
            }
        }
        m
    };
    let (ma, mb) = (matrix(a), matrix(b));
    let (da, db) = (a.degrees(), b.degrees());
    fn extend(k: usize, image: &mut Vec<usize>, used: &mut [bool], ma: &[Vec<usize>], mb: &[Vec<usize>], da: &[usize], db: &[usize]) -> bool {
        let n = ma.len();
        if k == n {
            return true;
        }
        for t in 0..n {
            if used[t] || da[k] != db[t] || ma[k][k] != mb[t][t] {
                continue;
            }
            if (0..k).any(|j| ma[k][j] != mb[t][image[j]]) {
                continue;
            }
            used[t] = true;
            image.push(t);
            if extend(k + 1, image, used, ma, mb, da, db) {
                return true;
            }
            image.pop();
            used[t] = false;
        }
        false
    }
    extend(0, &mut Vec::new(), &mut vec![false; n], &ma, &mb, &da, &db)
}

/// `3v1 + 2v2 + v3 - sum (i - 4) v_i` over vertices of degree other than 4.
pub fn curvature_sum(m: &EmbeddedMap) -> i64 {
    m.degree_sequence().iter().map(|&d| 4 - d as i64).sum()
}
