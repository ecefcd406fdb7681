//! Building grids from skeleton grids: subdivide edges class by class, then
//! fill every face with a rectangular patch.

use num_rational::Ratio;

use crate::error::{defect, Error, Result};
use crate::graph::Graph;
use crate::map::{Dart, EmbeddedMap, Flag, RawBuilder, Sign};
use crate::transverse::{decompose, extract_skeleton, SkeletonResult, VertexClass};

/// The Euler characteristic forced on any quadrangular immersion of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ForcedEuler {
    /// `|V| - |E| / 2`, exactly.
    pub chi: Ratio<i64>,
    /// `chi` is an integer no larger than 2.
    pub feasible: bool,
}

impl ForcedEuler {
    pub fn integer(&self) -> Option<i64> {
        self.chi.is_integer().then(|| self.chi.to_integer())
    }
}

pub fn forced_euler(g: &Graph) -> Result<ForcedEuler> {
    if let Some(v) = g.degrees().iter().position(|&d| d == 4) {
        return Err(Error::Precondition(format!("vertex `{}` has degree 4", g.name(v))));
    }
    let chi = Ratio::new(2 * g.vertex_count() as i64 - g.edge_count() as i64, 2);
    let feasible = chi.is_integer() && chi <= Ratio::from_integer(2);
    Ok(ForcedEuler { chi, feasible })
}

/// Edge classes of a skeleton grid (one per transverse circuit of its dual)
/// with a subdivision count per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionPlan {
    pub classes: Vec<Vec<usize>>,
    pub counts: Vec<usize>,
}

impl SubdivisionPlan {
    pub fn class_of_edges(&self, edge_count: usize) -> Vec<usize> {
        let mut class = vec![usize::MAX; edge_count];
        for (k, edges) in self.classes.iter().enumerate() {
            for &e in edges {
                class[e] = k;
            }
        }
        class
    }

    pub fn per_edge_counts(&self, edge_count: usize) -> Vec<usize> {
        self.class_of_edges(edge_count).into_iter().map(|k| self.counts[k]).collect()
    }

    pub fn with_counts(mut self, counts: &[usize]) -> Result<SubdivisionPlan> {
        if counts.len() != self.classes.len() {
            return Err(Error::Precondition(format!(
                "{} counts given for {} classes",
                counts.len(),
                self.classes.len()
            )));
        }
        self.counts = counts.to_vec();
        Ok(self)
    }

    /// `class <k>: <edge> ...` lines followed by `count <k>: <n>` lines.
    pub fn to_text(&self, m: &EmbeddedMap) -> String {
        let mut out = String::new();
        for (k, edges) in self.classes.iter().enumerate() {
            let names: Vec<&str> = edges.iter().map(|&e| m.edge_name(e)).collect();
            out.push_str(&format!("class {k}: {}\n", names.join(" ")));
        }
        for (k, n) in self.counts.iter().enumerate() {
            out.push_str(&format!("count {k}: {n}\n"));
        }
        out
    }

    /// Reads counts from a plan file and checks its classes against the
    /// classes of `m`. Missing counts default to 0.
    pub fn parse_counts(text: &str, m: &EmbeddedMap, expected: &SubdivisionPlan) -> Result<SubdivisionPlan> {
        let mut plan = expected.clone();
        plan.counts = vec![0; plan.classes.len()];
        let classes_of = plan.class_of_edges(m.edge_count());
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let perr = |message: String| Error::Parse { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (head, body) = content.split_once(':').ok_or_else(|| perr("missing `:`".into()))?;
            let mut head = head.split_whitespace();
            let keyword = head.next().unwrap_or("");
            let k: usize = head
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| perr("expected a class number".into()))?;
            if k >= plan.classes.len() {
                return Err(perr(format!("class {k} does not exist")));
            }
            match keyword {
                "class" => {
                    for name in body.split_whitespace() {
                        let e = m
                            .find_edge(name)
                            .ok_or_else(|| Error::Structural(format!("unknown edge id `{name}`")))?;
                        if classes_of[e] != k {
                            return Err(perr(format!("edge `{name}` is not in class {k}")));
                        }
                    }
                }
                "count" => {
                    plan.counts[k] = body.trim().parse().map_err(|_| perr(format!("invalid count `{}`", body.trim())))?;
                }
                other => return Err(perr(format!("unknown keyword `{other}`"))),
            }
        }
        Ok(plan)
    }
}

/// Edge classes of a grid: the transverse circuits of its (4-regular) dual,
/// with each dual edge read as the primal edge it crosses. Counts are 0.
pub fn dual_circuit_classes(skel: &EmbeddedMap) -> Result<SubdivisionPlan> {
    if !skel.is_grid() {
        return Err(Error::NotAGrid("edge classes need every face of length 4".into()));
    }
    let dual = skel.dual();
    if dual.degree_sequence().iter().any(|&d| d != 4) {
        return Err(defect("dual of a grid is not 4-regular"));
    }
    let dec = decompose(&dual);
    if !dec.walks.is_empty() {
        return Err(defect("dual of a grid has transverse walks"));
    }
    let mut classes: Vec<Vec<usize>> = dec
        .circuits
        .iter()
        .map(|c| {
            let mut edges: Vec<usize> = c
                .darts
                .iter()
                .map(|d| skel.find_edge(dual.edge_name(d.edge())).expect("dual edges keep primal names"))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            edges
        })
        .collect();
    classes.sort();
    let plan = SubdivisionPlan { counts: vec![0; classes.len()], classes };

    // Opposite sides of every face share a class.
    let class = plan.class_of_edges(skel.edge_count());
    for face in skel.faces() {
        let e: Vec<usize> = face.steps.iter().map(|f| f.dart().edge()).collect();
        if class[e[0]] != class[e[2]] || class[e[1]] != class[e[3]] {
            return Err(defect("opposite sides of a face lie in different classes"));
        }
    }
    Ok(plan)
}

/// A map with some edges subdivided; `original[v]` marks vertices that
/// existed before subdivision.
#[derive(Clone, Debug)]
pub struct Subdivided {
    pub map: EmbeddedMap,
    pub original: Vec<bool>,
}

pub fn subdivide(m: &EmbeddedMap, plan: &SubdivisionPlan) -> Result<Subdivided> {
    if plan.counts.len() != plan.classes.len() {
        return Err(Error::Precondition("plan has a count per class".into()));
    }
    let mut per_edge = vec![0usize; m.edge_count()];
    let mut covered = vec![false; m.edge_count()];
    for (k, edges) in plan.classes.iter().enumerate() {
        for &e in edges {
            if e >= m.edge_count() {
                return Err(Error::Structural(format!("plan names unknown edge {e}")));
            }
            per_edge[e] = plan.counts[k];
            covered[e] = true;
        }
    }
    if let Some(e) = covered.iter().position(|c| !c) {
        return Err(Error::Structural(format!("edge `{}` is in no class", m.edge_name(e))));
    }
    subdivide_edges(m, &per_edge)
}

/// Replaces edge `e` by a path of `counts[e] + 1` edges. The sign rides on
/// the first sub-edge. Sub-edges are `e.k`, new vertices `e.s<k>`.
pub fn subdivide_edges(m: &EmbeddedMap, counts: &[usize]) -> Result<Subdivided> {
    let mut raw = RawBuilder::default();
    for v in 0..m.vertex_count() {
        raw.add_vertex(m.vertex_name(v).to_string());
    }
    let mut original = vec![true; m.vertex_count()];
    let mut dart_map = vec![Dart(0); m.dart_count()];
    for e in 0..m.edge_count() {
        let (d, dbar) = (Dart(2 * e as u32), Dart(2 * e as u32 + 1));
        let n = counts[e];
        let name = m.edge_name(e);
        if n == 0 {
            let (a, b) = raw.add_edge(name.to_string(), m.dart_name(d).to_string(), m.dart_name(dbar).to_string(), m.sign(e));
            dart_map[d.index()] = a;
            dart_map[dbar.index()] = b;
            continue;
        }
        let mut prev_end: Option<Dart> = None;
        for k in 0..=n {
            let a_name = if k == 0 { m.dart_name(d).to_string() } else { format!("{name}.{k}.a") };
            let b_name = if k == n { m.dart_name(dbar).to_string() } else { format!("{name}.{k}.b") };
            let sign = if k == 0 { m.sign(e) } else { Sign::Plus };
            let (a, b) = raw.add_edge(format!("{name}.{k}"), a_name, b_name, sign);
            if k == 0 {
                dart_map[d.index()] = a;
            } else {
                let v = raw.add_vertex(format!("{name}.s{k}"));
                original.push(false);
                raw.rotations[v] = vec![prev_end.unwrap(), a];
            }
            if k == n {
                dart_map[dbar.index()] = b;
            }
            prev_end = Some(b);
        }
    }
    for v in 0..m.vertex_count() {
        raw.rotations[v] = m.rotation(v).iter().map(|d| dart_map[d.index()]).collect();
    }
    Ok(Subdivided { map: raw.finish()?, original })
}

/// Inserts darts into corners. `slots[d]` holds the dart to place right
/// after `d` in its rotation.
pub(crate) struct CornerInserts {
    after: Vec<Option<Dart>>,
}

impl CornerInserts {
    pub fn new(dart_count: usize) -> CornerInserts {
        CornerInserts { after: vec![None; dart_count] }
    }

    /// The corner named by `flag`: side `+` follows the dart, side `-`
    /// precedes it.
    pub fn insert(&mut self, m: &EmbeddedMap, flag: Flag, new: Dart) {
        let anchor = match flag.side() {
            Sign::Plus => flag.dart(),
            Sign::Minus => m.prev(flag.dart()),
        };
        let slot = &mut self.after[anchor.index()];
        assert!(slot.is_none(), "corner used twice");
        *slot = Some(new);
    }

    /// Rotation of `v` with insertions, keeping the old darts if `keep` is set.
    pub fn rotation(&self, m: &EmbeddedMap, v: usize, keep: impl Fn(Dart) -> Option<Dart>) -> Vec<Dart> {
        let mut out = Vec::new();
        for &d in m.rotation(v) {
            if let Some(x) = keep(d) {
                out.push(x);
            }
            if let Some(x) = self.after[d.index()] {
                out.push(x);
            }
        }
        out
    }
}

/// Fills every face of a subdivided grid with a rectangular patch.
pub fn patch(s: &Subdivided) -> Result<EmbeddedMap> {
    patch_oriented(s, false)
}

/// Patching with each face walked in the given or the reverse direction.
pub fn patch_oriented(s: &Subdivided, reverse: bool) -> Result<EmbeddedMap> {
    let m = &s.map;
    let fs = m.flags();
    let mut raw = RawBuilder::default();
    for v in 0..m.vertex_count() {
        raw.add_vertex(m.vertex_name(v).to_string());
    }
    for e in 0..m.edge_count() {
        raw.add_edge(
            m.edge_name(e).to_string(),
            m.dart_name(Dart(2 * e as u32)).to_string(),
            m.dart_name(Dart(2 * e as u32 + 1)).to_string(),
            m.sign(e),
        );
    }
    let mut inserts = CornerInserts::new(m.dart_count());

    for (fi, face) in m.faces().into_iter().enumerate() {
        let mut steps = face.steps;
        if reverse {
            steps = steps.iter().rev().map(|&g| fs.s0(g)).collect();
        }
        let len = steps.len();
        let corners: Vec<usize> =
            (0..len).filter(|&k| s.original[m.vertex_of(steps[k].dart())]).collect();
        if corners.len() != 4 {
            return Err(Error::MalformedPatch(format!("face {fi} has {} corners, expected 4", corners.len())));
        }
        let side = |i: usize| (corners[(i + 1) % 4] + len - corners[i]) % len - 1;
        let (a, b) = (side(0), side(1));
        if side(2) != a || side(3) != b {
            return Err(Error::MalformedPatch(format!(
                "face {fi} has sides {}, {}, {}, {}",
                side(0),
                side(1),
                side(2),
                side(3)
            )));
        }
        if a == 0 && b == 0 {
            continue;
        }
        let step_at = |side_index: usize, j: usize| steps[(corners[side_index] + j) % len];
        // Boundary points: bottom p_i, right q_j, top p'_i, left q'_j.
        let bottom = |i: usize| step_at(0, i);
        let right = |j: usize| step_at(1, j);
        let top = |i: usize| step_at(2, i);
        let left = |j: usize| step_at(3, j);

        // Interior vertex (i, j) has rotation east, north, west, south.
        let mut grid = vec![[Dart(0); 4]; a * b];
        let cell = |i: usize, j: usize| (i - 1) * b + (j - 1);
        let mut interior = vec![0usize; a * b];
        for i in 1..=a {
            for j in 1..=b {
                interior[cell(i, j)] = raw.add_vertex(format!("f{fi}.{i}.{j}"));
            }
        }
        const EAST: usize = 0;
        const NORTH: usize = 1;
        const WEST: usize = 2;
        const SOUTH: usize = 3;

        // Vertical lines from bottom p_i to top p'_{a+1-i}.
        for i in 1..=a {
            for k in 0..=b {
                let name = format!("f{fi}.v{i}.{k}");
                let lower: Option<Flag> = (k == 0).then(|| bottom(i));
                let upper: Option<Flag> = (k == b).then(|| top(a + 1 - i));
                let sign = lower.map_or(Sign::Plus, |f| f.side()) * upper.map_or(Sign::Plus, |f| f.side());
                let (x, y) = raw.add_edge(name.clone(), format!("{name}.a"), format!("{name}.b"), sign);
                match lower {
                    Some(f) => inserts.insert(m, f, x),
                    None => grid[cell(i, k)][NORTH] = x,
                }
                match upper {
                    Some(f) => inserts.insert(m, f, y),
                    None => grid[cell(i, k + 1)][SOUTH] = y,
                }
            }
        }
        // Horizontal lines from left q'_{b+1-j} to right q_j.
        for j in 1..=b {
            for k in 0..=a {
                let name = format!("f{fi}.h{j}.{k}");
                let west_end: Option<Flag> = (k == 0).then(|| left(b + 1 - j));
                let east_end: Option<Flag> = (k == a).then(|| right(j));
                let sign = west_end.map_or(Sign::Plus, |f| f.side()) * east_end.map_or(Sign::Plus, |f| f.side());
                let (x, y) = raw.add_edge(name.clone(), format!("{name}.a"), format!("{name}.b"), sign);
                match west_end {
                    Some(f) => inserts.insert(m, f, x),
                    None => grid[cell(k, j)][EAST] = x,
                }
                match east_end {
                    Some(f) => inserts.insert(m, f, y),
                    None => grid[cell(k + 1, j)][WEST] = y,
                }
            }
        }
        for (c, darts) in grid.iter().enumerate() {
            raw.rotations[interior[c]] = darts.to_vec();
        }
    }
    for v in 0..m.vertex_count() {
        raw.rotations[v] = inserts.rotation(m, v, Some);
    }
    let out = raw.finish()?;
    if !out.is_grid() {
        return Err(defect("patched map is not a grid"));
    }
    Ok(out)
}

/// Per-class counts read off an extracted skeleton.
pub fn recover_plan(r: &SkeletonResult) -> Result<SubdivisionPlan> {
    let mut plan = dual_circuit_classes(&r.skeleton)?;
    for (k, edges) in plan.classes.iter().enumerate() {
        let n = r.edge_subdivisions[edges[0]];
        if edges.iter().any(|&e| r.edge_subdivisions[e] != n) {
            return Err(defect(format!("class {k} has unequal subdivision counts")));
        }
        plan.counts[k] = n;
    }
    Ok(plan)
}

/// True when every degree-4 vertex of `skel` is a crossing of two walks, so
/// that skeleton extraction returns `skel` itself.
pub fn is_skeleton_grid(skel: &EmbeddedMap) -> bool {
    let dec = decompose(skel);
    crate::transverse::classify_vertices(skel, &dec)
        .iter()
        .all(|c| matches!(c, VertexClass::Curvature | VertexClass::Crossing))
}

/// Subdivides by class counts and patches, checking that the result is a
/// grid on the same surface with the same curvature, and that skeleton
/// extraction returns `skel` with the same counts.
pub fn synthesize(skel: &EmbeddedMap, counts: &[usize]) -> Result<EmbeddedMap> {
    let plan = dual_circuit_classes(skel)?.with_counts(counts)?;
    let grid = patch(&subdivide(skel, &plan)?)?;
    if grid.euler_characteristic() != skel.euler_characteristic() || grid.is_orientable() != skel.is_orientable() {
        return Err(defect("synthesis changed the surface"));
    }
    if grid.curvature_sequence() != skel.curvature_sequence() {
        return Err(defect("synthesis changed the curvature sequence"));
    }
    if skel.curvature_sequence().is_empty() {
        log::warn!("skeleton has empty curvature sequence; skipping the extraction round trip");
        return Ok(grid);
    }
    if !is_skeleton_grid(skel) {
        return Err(Error::Precondition("input has degree-4 vertices that are not crossings".into()));
    }
    let recovered = extract_skeleton(&grid)?;
    let recovered_plan = recover_plan(&recovered)?;
    let to_u32 = |v: Vec<usize>| v.into_iter().map(|x| x as u32).collect::<Vec<_>>();
    let want = skel.canonical_form_labeled(&to_u32(plan.per_edge_counts(skel.edge_count())));
    let got = recovered
        .skeleton
        .canonical_form_labeled(&to_u32(recovered_plan.per_edge_counts(recovered.skeleton.edge_count())));
    if want != got {
        return Err(defect("skeleton extraction does not return the input skeleton and counts"));
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn forced_euler_values() {
        let chi = |g: &Graph| forced_euler(g).unwrap();
        let w = chi(&fixtures::wagner_graph());
        assert_eq!(w.integer(), Some(2));
        assert!(w.feasible);
        let cube = chi(&Graph::from_map(&fixtures::q3()));
        assert_eq!(cube.integer(), Some(2));
        let k4 = chi(&Graph::from_map(&fixtures::k4()));
        assert_eq!(k4.integer(), Some(1));
        assert!(k4.feasible);
        let c5 = Graph::parse("edge a b\nedge b c\nedge c d\nedge d e\nedge e a\n").unwrap();
        let r = chi(&c5);
        assert_eq!(r.chi, Ratio::new(5, 2));
        assert!(!r.feasible);
        let star = Graph::parse("edge h a\nedge h b\nedge h c\nedge h d\n").unwrap();
        assert!(matches!(forced_euler(&star), Err(Error::Precondition(_))));
    }

    #[test]
    fn c4_classes_are_opposite_pairs() {
        let m = fixtures::c4();
        let plan = dual_circuit_classes(&m).unwrap();
        assert_eq!(plan.classes.len(), 2);
        for class in &plan.classes {
            assert_eq!(class.len(), 2);
            let (u0, v0) = m.edge_ends(class[0]);
            let (u1, v1) = m.edge_ends(class[1]);
            assert!(u0 != u1 && u0 != v1 && v0 != u1 && v0 != v1, "opposite edges share no vertex");
        }
    }

    #[test]
    fn cube_has_three_parallel_classes() {
        let plan = dual_circuit_classes(&fixtures::q3()).unwrap();
        assert_eq!(plan.classes.iter().map(Vec::len).collect::<Vec<_>>(), vec![4, 4, 4]);
    }

    #[test]
    fn subdivide_c4() {
        let m = fixtures::c4();
        let plan = dual_circuit_classes(&m).unwrap().with_counts(&[1, 0]).unwrap();
        let s = subdivide(&m, &plan).unwrap();
        assert_eq!(s.map.vertex_count(), 6);
        assert_eq!(s.map.edge_count(), 6);
        let lens: Vec<usize> = s.map.faces().iter().map(|f| f.len()).collect();
        assert_eq!(lens, vec![6, 6]);
        let p = patch(&s).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count(), p.face_count()), (6, 8, 4));
        assert_eq!(p.euler_characteristic(), 2);
        assert!(p.is_grid());
    }

    #[test]
    fn zero_counts_change_nothing() {
        for m in [fixtures::c4(), fixtures::q3(), fixtures::t1(), fixtures::pdw()] {
            let plan = dual_circuit_classes(&m).unwrap();
            let s = subdivide(&m, &plan).unwrap();
            assert!(s.map.is_isomorphic(&m));
            assert!(patch(&s).unwrap().is_isomorphic(&m));
        }
    }

    #[test]
    fn cube_counts() {
        let m = fixtures::q3();
        let plan = dual_circuit_classes(&m).unwrap().with_counts(&[2, 2, 2]).unwrap();
        let s = subdivide(&m, &plan).unwrap();
        assert_eq!(s.map.vertex_count(), 32);
        assert_eq!(s.map.edge_count(), 36);
        let boxed = synthesize(&m, &[2, 0, 0]).unwrap();
        assert!(boxed.is_grid());
        assert_eq!(boxed.euler_characteristic(), 2);
        // Three 1x1x1 cubes stacked: 16 vertices.
        assert_eq!(boxed.vertex_count(), 16);
    }

    #[test]
    fn patch_direction_does_not_matter() {
        let m = fixtures::q3();
        let plan = dual_circuit_classes(&m).unwrap().with_counts(&[1, 2, 3]).unwrap();
        let s = subdivide(&m, &plan).unwrap();
        assert!(patch_oriented(&s, false).unwrap().is_isomorphic(&patch_oriented(&s, true).unwrap()));
        let k = fixtures::t1_klein();
        let plan = dual_circuit_classes(&k).unwrap().with_counts(&[2, 1]).unwrap();
        let s = subdivide(&k, &plan).unwrap();
        assert!(patch_oriented(&s, false).unwrap().is_isomorphic(&patch_oriented(&s, true).unwrap()));
    }

    #[test]
    fn malformed_patch_detected() {
        let m = fixtures::c4();
        let s = subdivide_edges(&m, &[1, 0, 0, 0]).unwrap();
        assert!(matches!(patch(&s), Err(Error::MalformedPatch(_))));
    }

    #[test]
    fn sign_placement_is_irrelevant() {
        // Moving a twist along a subdivided edge gives an isomorphic map.
        let k = fixtures::t1_klein();
        let s = subdivide_edges(&k, &[2, 0]).unwrap();
        let mut moved = crate::map::MapBuilder::new();
        let sm = &s.map;
        for v in 0..sm.vertex_count() {
            moved.vertex(sm.vertex_name(v), sm.rotation(v).iter().map(|d| sm.dart_name(*d).to_string()));
        }
        for e in 0..sm.edge_count() {
            let sign = match sm.edge_name(e) {
                "a.0" => Sign::Plus,
                "a.2" => Sign::Minus,
                _ => sm.sign(e),
            };
            moved.edge(sm.edge_name(e), sm.dart_name(Dart(2 * e as u32)), sm.dart_name(Dart(2 * e as u32 + 1)), sign);
        }
        assert!(moved.build().unwrap().is_isomorphic(sm));
    }

    #[test]
    fn synthesis_round_trips_on_cube() {
        let grid = synthesize(&fixtures::q3(), &[1, 1, 1]).unwrap();
        assert_eq!(grid.curvature_sequence(), vec![3; 8]);
        let r = extract_skeleton(&grid).unwrap();
        assert!(r.skeleton.is_isomorphic(&fixtures::q3()));
        let classes = &r.classification;
        let count = |c: VertexClass| classes.iter().filter(|x| **x == c).count();
        assert_eq!(count(VertexClass::Curvature), 8);
        assert_eq!(count(VertexClass::Subdividing), 12);
        assert_eq!(count(VertexClass::Interior), 6);
        assert_eq!(count(VertexClass::Crossing), 0);
    }

    #[test]
    fn empty_curvature_skeleton_still_synthesizes() {
        let g = synthesize(&fixtures::t1(), &[1, 2]).unwrap();
        assert!(g.is_grid());
        assert_eq!(g.vertex_count(), 6);
    }

    #[test]
    fn plan_text_round_trip() {
        let m = fixtures::q3();
        let plan = dual_circuit_classes(&m).unwrap().with_counts(&[0, 3, 1]).unwrap();
        let text = plan.to_text(&m);
        let parsed = SubdivisionPlan::parse_counts(&text, &m, &dual_circuit_classes(&m).unwrap()).unwrap();
        assert_eq!(parsed, plan);
        let bad = "class 0: a0-a1 a1-a2\n";
        assert!(SubdivisionPlan::parse_counts(bad, &m, &plan).is_err());
    }
}
