//! Transverse walks and circuits, and skeleton grids.
//!
//! At a vertex of degree four the dart two steps further in the rotation is
//! its transverse partner. Following partners through degree-4 vertices
//! splits the edge set uniquely into walks (between vertices of degree other
//! than four) and circuits (entirely through degree-4 vertices).

use crate::error::{defect, Error, Result};
use crate::graph::Graph;
use crate::map::{Dart, EmbeddedMap, RawBuilder, Sign};

/// A trail between vertices of degree other than four whose internal
/// vertices all have degree four. `darts[k]` leaves the k-th vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransverseWalk {
    pub darts: Vec<Dart>,
    pub start: usize,
    pub end: usize,
}

/// A closed transverse trail through degree-4 vertices only, stored in its
/// lexicographically least rotation/reversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransverseCircuit {
    pub darts: Vec<Dart>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TransverseDecomposition {
    pub walks: Vec<TransverseWalk>,
    pub circuits: Vec<TransverseCircuit>,
}

/// Which trail an edge belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strand {
    Walk(usize),
    Circuit(usize),
}

impl TransverseDecomposition {
    /// Owner of every edge. Panics if the decomposition does not cover `m`.
    pub fn edge_owner(&self, edge_count: usize) -> Vec<Strand> {
        let mut owner = vec![None; edge_count];
        for (i, w) in self.walks.iter().enumerate() {
            for d in &w.darts {
                owner[d.edge()] = Some(Strand::Walk(i));
            }
        }
        for (i, c) in self.circuits.iter().enumerate() {
            for d in &c.darts {
                owner[d.edge()] = Some(Strand::Circuit(i));
            }
        }
        owner.into_iter().map(|o| o.expect("decomposition covers every edge")).collect()
    }

    /// `walk <v> -> <v>: e1 e2 ...` and `circuit: e1 e2 ...` lines.
    pub fn to_text(&self, m: &EmbeddedMap) -> String {
        let mut out = String::new();
        let edges = |darts: &[Dart]| darts.iter().map(|d| m.edge_name(d.edge())).collect::<Vec<_>>().join(" ");
        for w in &self.walks {
            out.push_str(&format!(
                "walk {} -> {}: {}\n",
                m.vertex_name(w.start),
                m.vertex_name(w.end),
                edges(&w.darts)
            ));
        }
        for c in &self.circuits {
            out.push_str(&format!("circuit: {}\n", edges(&c.darts)));
        }
        out
    }
}

/// The transverse partner of `d` at its degree-4 vertex.
pub fn transverse_next(m: &EmbeddedMap, d: Dart) -> Result<Dart> {
    let v = m.vertex_of(d);
    if m.degree(v) != 4 {
        return Err(Error::Precondition(format!(
            "vertex `{}` has degree {}, transverse pairing needs degree 4",
            m.vertex_name(v),
            m.degree(v)
        )));
    }
    Ok(m.next(m.next(d)))
}

fn reverse_darts(darts: &[Dart]) -> Vec<Dart> {
    darts.iter().rev().map(|d| d.partner()).collect()
}

fn min_edge(darts: &[Dart]) -> usize {
    darts.iter().map(|d| d.edge()).min().unwrap_or(usize::MAX)
}

/// Splits the edges of `m` into transverse walks and circuits.
///
/// Output is deterministic: walks are oriented from the endpoint with the
/// smaller vertex index (ties: smaller first dart), circuits are in least
/// rotation/reversal form, and both lists are sorted by smallest edge.
pub fn decompose(m: &EmbeddedMap) -> TransverseDecomposition {
    let mut used = vec![false; m.edge_count()];
    let mut walks = Vec::new();
    for v in 0..m.vertex_count() {
        if m.degree(v) == 4 {
            continue;
        }
        for &d0 in m.rotation(v) {
            if used[d0.edge()] {
                continue;
            }
            let mut darts = vec![d0];
            let mut d = d0;
            loop {
                used[d.edge()] = true;
                let arrival = d.partner();
                let w = m.vertex_of(arrival);
                if m.degree(w) != 4 {
                    break;
                }
                d = m.next(m.next(arrival));
                darts.push(d);
            }
            let end = m.vertex_of(darts.last().unwrap().partner());
            let reversed = reverse_darts(&darts);
            let forward_key = (v, darts[0]);
            let backward_key = (end, reversed[0]);
            let walk = if backward_key < forward_key {
                TransverseWalk { darts: reversed, start: end, end: v }
            } else {
                TransverseWalk { darts, start: v, end }
            };
            walks.push(walk);
        }
    }
    let mut circuits = Vec::new();
    for e in 0..m.edge_count() {
        if used[e] {
            continue;
        }
        let d0 = Dart(2 * e as u32);
        let mut darts = Vec::new();
        let mut d = d0;
        loop {
            used[d.edge()] = true;
            darts.push(d);
            d = m.next(m.next(d.partner()));
            if d == d0 {
                break;
            }
        }
        circuits.push(TransverseCircuit { darts: least_cyclic_form(&darts) });
    }
    walks.sort_by_key(|w| min_edge(&w.darts));
    circuits.sort_by_key(|c| min_edge(&c.darts));
    TransverseDecomposition { walks, circuits }
}

fn least_cyclic_form(darts: &[Dart]) -> Vec<Dart> {
    let n = darts.len();
    let reversed = reverse_darts(darts);
    let mut best: Option<Vec<Dart>> = None;
    for seq in [darts, reversed.as_slice()] {
        for shift in 0..n {
            let cand: Vec<Dart> = seq[shift..].iter().chain(&seq[..shift]).copied().collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    /// Degree other than four.
    Curvature,
    /// Degree four, both transverse strands on walks.
    Crossing,
    /// Degree four, exactly one strand on a walk.
    Subdividing,
    /// Degree four, no strand on a walk.
    Interior,
}

impl VertexClass {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexClass::Curvature => "curvature",
            VertexClass::Crossing => "crossing",
            VertexClass::Subdividing => "subdividing",
            VertexClass::Interior => "interior",
        }
    }
}

pub fn classify_vertices(m: &EmbeddedMap, dec: &TransverseDecomposition) -> Vec<VertexClass> {
    let owner = dec.edge_owner(m.edge_count());
    (0..m.vertex_count())
        .map(|v| {
            if m.degree(v) != 4 {
                return VertexClass::Curvature;
            }
            let rot = m.rotation(v);
            let on_walk = |d: Dart| matches!(owner[d.edge()], Strand::Walk(_));
            match (on_walk(rot[0]), on_walk(rot[1])) {
                (true, true) => VertexClass::Crossing,
                (false, false) => VertexClass::Interior,
                _ => VertexClass::Subdividing,
            }
        })
        .collect()
}

/// The skeleton grid of a grid together with the data needed to rebuild it.
#[derive(Clone, Debug)]
pub struct SkeletonResult {
    /// One vertex per curvature vertex, one edge per transverse walk.
    pub curvature_graph: Graph,
    /// Index in the input map of each curvature-graph vertex.
    pub curvature_vertices: Vec<usize>,
    /// The skeleton grid: curvature and crossing vertices, with every
    /// subdividing vertex smoothed.
    pub skeleton: EmbeddedMap,
    /// Index in the input map of each skeleton vertex.
    pub skeleton_vertices: Vec<usize>,
    pub classification: Vec<VertexClass>,
    /// Dart sequence in the input of each curvature-graph edge.
    pub walk_paths: Vec<Vec<Dart>>,
    /// Dart sequence in the input of each skeleton edge.
    pub edge_paths: Vec<Vec<Dart>>,
    /// Number of smoothed vertices on each skeleton edge.
    pub edge_subdivisions: Vec<usize>,
}

/// Extracts the skeleton grid of a grid with nonempty curvature sequence.
pub fn extract_skeleton(m: &EmbeddedMap) -> Result<SkeletonResult> {
    if !m.is_grid() {
        return Err(Error::NotAGrid("skeleton extraction needs every face of length 4".into()));
    }
    if m.curvature_sequence().is_empty() {
        return Err(Error::EmptyCurvature);
    }
    let dec = decompose(m);
    let classes = classify_vertices(m, &dec);
    let is_branch = |v: usize| matches!(classes[v], VertexClass::Curvature | VertexClass::Crossing);

    // Crossing strands must interleave; with both strands on walks every
    // dart of the vertex is a walk dart, so this is a check on the classes.
    let owner = dec.edge_owner(m.edge_count());
    for v in 0..m.vertex_count() {
        if classes[v] == VertexClass::Crossing
            && !m.rotation(v).iter().all(|d| matches!(owner[d.edge()], Strand::Walk(_)))
        {
            return Err(defect(format!("crossing `{}` has a strand off the walks", m.vertex_name(v))));
        }
    }

    let mut curvature_graph = Graph::new();
    let mut graph_index = vec![usize::MAX; m.vertex_count()];
    let mut curvature_vertices = Vec::new();
    for v in 0..m.vertex_count() {
        if classes[v] == VertexClass::Curvature {
            graph_index[v] = curvature_graph.add_vertex(m.vertex_name(v));
            curvature_vertices.push(v);
        }
    }
    let mut walk_paths = Vec::new();
    for w in &dec.walks {
        curvature_graph.add_edge(graph_index[w.start], graph_index[w.end]);
        walk_paths.push(w.darts.clone());
    }

    // Cut every walk at branch vertices.
    let mut segments: Vec<Vec<Dart>> = Vec::new();
    for w in &dec.walks {
        let mut current = Vec::new();
        for &d in &w.darts {
            current.push(d);
            if is_branch(m.vertex_of(d.partner())) {
                segments.push(std::mem::take(&mut current));
            }
        }
        debug_assert!(current.is_empty());
    }

    let mut raw = RawBuilder::default();
    let mut new_vertex = vec![usize::MAX; m.vertex_count()];
    let mut skeleton_vertices = Vec::new();
    for v in 0..m.vertex_count() {
        if is_branch(v) {
            new_vertex[v] = raw.add_vertex(m.vertex_name(v).to_string());
            skeleton_vertices.push(v);
        }
    }
    let mut dart_map = vec![None; m.dart_count()];
    let mut edge_subdivisions = Vec::new();
    for seg in &segments {
        let first = seg[0];
        let last = seg.last().unwrap().partner();
        let sign = seg.iter().fold(Sign::Plus, |s, d| s * m.sign(d.edge()));
        let (a, b) = raw.add_edge(
            m.edge_name(first.edge()).to_string(),
            m.dart_name(first).to_string(),
            m.dart_name(last).to_string(),
            sign,
        );
        dart_map[first.index()] = Some(a);
        dart_map[last.index()] = Some(b);
        edge_subdivisions.push(seg.len() - 1);
    }
    for v in 0..m.vertex_count() {
        if is_branch(v) {
            let rot = m
                .rotation(v)
                .iter()
                .map(|d| dart_map[d.index()].ok_or_else(|| defect("branch dart not on a segment")))
                .collect::<Result<Vec<_>>>()?;
            raw.rotations[new_vertex[v]] = rot;
        }
    }
    let skeleton = raw.finish()?;

    let result = SkeletonResult {
        curvature_graph,
        curvature_vertices,
        skeleton,
        skeleton_vertices,
        classification: classes,
        walk_paths,
        edge_paths: segments,
        edge_subdivisions,
    };
    check_skeleton(m, &result)?;
    Ok(result)
}

fn check_skeleton(m: &EmbeddedMap, r: &SkeletonResult) -> Result<()> {
    let sk = &r.skeleton;
    if r.curvature_graph.degree_sequence() != m.curvature_sequence() {
        return Err(defect("curvature graph degrees differ from the curvature sequence"));
    }
    if !sk.is_grid() {
        return Err(defect("skeleton is not a grid"));
    }
    if sk.euler_characteristic() != m.euler_characteristic() {
        return Err(defect("skeleton changes the Euler characteristic"));
    }
    if sk.is_orientable() != m.is_orientable() {
        return Err(defect("skeleton changes orientability"));
    }
    let crossings = r.classification.iter().filter(|c| **c == VertexClass::Crossing).count();
    let mut expected = m.curvature_sequence();
    expected.extend(std::iter::repeat(4).take(crossings));
    expected.sort_unstable();
    if sk.degree_sequence() != expected {
        return Err(defect("skeleton degree sequence is not curvature plus crossings"));
    }
    Ok(())
}
