//! Radial, medial and overlay grids, and recognition of radial and overlay
//! grids among arbitrary grids.

use crate::error::{defect, Error, Result};
use crate::map::{Dart, EmbeddedMap, FaceWalk, Flag, RawBuilder};
use crate::synthesis::{subdivide_edges, CornerInserts};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
    Red,
    Blue,
}

impl Color {
    pub fn as_str(self) -> &'static str {
        match self {
            Color::Black => "black",
            Color::White => "white",
            Color::Red => "red",
            Color::Blue => "blue",
        }
    }
}

/// A grid with a vertex colouring.
#[derive(Clone, Debug)]
pub struct ColoredGrid {
    pub map: EmbeddedMap,
    pub colors: Vec<Color>,
}

impl ColoredGrid {
    /// `# color: <vid> <color>` lines.
    pub fn color_block(&self) -> String {
        (0..self.map.vertex_count())
            .map(|v| format!("# color: {} {}\n", self.map.vertex_name(v), self.colors[v].as_str()))
            .collect()
    }
}

/// Adds a vertex inside every face, joined to the selected corners of its
/// boundary walk in walk order. `select(face, step)` picks the corners.
/// Original edges are kept only if `keep_edges` is set.
fn star_faces(
    m: &EmbeddedMap,
    keep_edges: bool,
    center_prefix: &str,
    select: impl Fn(usize, usize, &FaceWalk) -> bool,
) -> Result<(EmbeddedMap, usize)> {
    let mut raw = RawBuilder::default();
    for v in 0..m.vertex_count() {
        raw.add_vertex(m.vertex_name(v).to_string());
    }
    if keep_edges {
        for e in 0..m.edge_count() {
            raw.add_edge(
                m.edge_name(e).to_string(),
                m.dart_name(Dart(2 * e as u32)).to_string(),
                m.dart_name(Dart(2 * e as u32 + 1)).to_string(),
                m.sign(e),
            );
        }
    }
    let mut inserts = CornerInserts::new(m.dart_count());
    let faces = m.faces();
    for (fi, face) in faces.iter().enumerate() {
        let center = raw.add_vertex(format!("{center_prefix}{fi}"));
        let mut spokes = Vec::new();
        for (k, &step) in face.steps.iter().enumerate() {
            if !select(fi, k, face) {
                continue;
            }
            let name = format!("{center_prefix}{fi}.{k}");
            // The centre turns with the walk; the corner's side says whether
            // the boundary vertex agrees.
            let (outer, inner) = raw.add_edge(name.clone(), format!("{name}.o"), format!("{name}.i"), step.side());
            inserts.insert(m, step, outer);
            spokes.push(inner);
        }
        if spokes.is_empty() {
            return Err(defect(format!("face {fi} received no spokes")));
        }
        raw.rotations[center] = spokes;
    }
    for v in 0..m.vertex_count() {
        raw.rotations[v] = inserts.rotation(m, v, |d| keep_edges.then_some(d));
    }
    Ok((raw.finish()?, faces.len()))
}

/// The radial grid: vertices of `h` (black) and one vertex per face
/// (white), joined along every face corner.
pub fn radial(h: &EmbeddedMap) -> ColoredGrid {
    let (map, faces) = star_faces(h, false, "r", |_, _, _| true).expect("radial construction is total");
    let mut colors = vec![Color::Black; h.vertex_count()];
    colors.extend(std::iter::repeat(Color::White).take(faces));
    debug_assert!(map.is_grid());
    ColoredGrid { map, colors }
}

/// The medial map: the dual of the radial grid. Always 4-regular.
pub fn medial(h: &EmbeddedMap) -> EmbeddedMap {
    let m = radial(h).map.dual();
    debug_assert!(m.degree_sequence().iter().all(|&d| d == 4));
    m
}

/// The overlay grid, computed as the radial grid of the radial grid.
/// Red: vertices of `h`; blue: faces of `h`; white: edge crossings.
pub fn overlay(h: &EmbeddedMap) -> ColoredGrid {
    let first = radial(h);
    let second = radial(&first.map);
    let colors = (0..second.map.vertex_count())
        .map(|v| match first.colors.get(v) {
            Some(Color::Black) => Color::Red,
            Some(_) => Color::Blue,
            None => Color::White,
        })
        .collect();
    ColoredGrid { map: second.map, colors }
}

/// The overlay grid built directly: every edge of `h` is split by a white
/// vertex, then a blue vertex in each face is joined to the white vertices
/// on its boundary.
pub fn overlay_direct(h: &EmbeddedMap) -> ColoredGrid {
    let split = subdivide_edges(h, &vec![1; h.edge_count()]).expect("subdivision is total");
    let m = &split.map;
    let is_white = |v: usize| !split.original[v];
    let (map, faces) = star_faces(m, true, "b", |_, k, face| is_white(m.vertex_of(face.steps[k].dart())))
        .expect("every face of a subdivided map has a white corner");
    let mut colors: Vec<Color> =
        (0..m.vertex_count()).map(|v| if is_white(v) { Color::White } else { Color::Red }).collect();
    colors.extend(std::iter::repeat(Color::Blue).take(faces));
    ColoredGrid { map, colors }
}

/// Joins the two `black` corners of every face of a grid by a diagonal and
/// drops all other vertices and edges. Rotations list the diagonals in the
/// corner order of the grid.
pub fn face_diagonals(g: &EmbeddedMap, black: &[bool]) -> Result<EmbeddedMap> {
    let mut raw = RawBuilder::default();
    let mut index = vec![usize::MAX; g.vertex_count()];
    for v in 0..g.vertex_count() {
        if black[v] {
            index[v] = raw.add_vertex(g.vertex_name(v).to_string());
        }
    }
    let mut inserts = CornerInserts::new(g.dart_count());
    for (fi, face) in g.faces().iter().enumerate() {
        if face.len() != 4 {
            return Err(Error::NotAGrid(format!("face {fi} has length {}", face.len())));
        }
        let color = |k: usize| black[g.vertex_of(face.steps[k].dart())];
        let start = match (color(0), color(1), color(2), color(3)) {
            (true, false, true, false) => 0,
            (false, true, false, true) => 1,
            _ => return Err(Error::Precondition(format!("face {fi} does not alternate colours"))),
        };
        let (s, t): (Flag, Flag) = (face.steps[start], face.steps[start + 2]);
        let name = format!("q{fi}");
        let (x, y) = raw.add_edge(name.clone(), format!("{name}.a"), format!("{name}.b"), s.side() * t.side());
        inserts.insert(g, s, x);
        inserts.insert(g, t, y);
    }
    for v in 0..g.vertex_count() {
        if black[v] {
            raw.rotations[index[v]] = inserts.rotation(g, v, |_| None);
        }
    }
    raw.finish()
}

/// The graph R(G) of a grid with a designated white class whose vertices
/// all have degree 4, together with its bipartition if it has one.
pub fn r_graph(g: &EmbeddedMap, white: &[bool]) -> Result<(EmbeddedMap, Option<Vec<u8>>)> {
    if !g.is_grid() {
        return Err(Error::NotAGrid("R(G) needs every face of length 4".into()));
    }
    for v in 0..g.vertex_count() {
        if white[v] && g.degree(v) != 4 {
            return Err(Error::Precondition(format!(
                "white vertex `{}` has degree {}",
                g.vertex_name(v),
                g.degree(v)
            )));
        }
    }
    let black: Vec<bool> = white.iter().map(|w| !w).collect();
    let r = face_diagonals(g, &black)?;
    let colouring = r.is_bipartite();
    Ok((r, colouring))
}

#[derive(Clone, Debug)]
pub struct RadialVerdict {
    pub is_radial: bool,
    /// `(H, H*)`: the diagonal maps on colour class 0 and colour class 1.
    pub recovered: Option<(EmbeddedMap, EmbeddedMap)>,
}

/// A grid is radial iff it is bipartite; recovery checks that the radial
/// grid of the recovered map is the input again.
pub fn check_radial_form(g: &EmbeddedMap) -> Result<RadialVerdict> {
    if !g.is_grid() {
        return Err(Error::NotAGrid("radial recognition needs every face of length 4".into()));
    }
    let Some(colouring) = g.is_bipartite() else {
        return Ok(RadialVerdict { is_radial: false, recovered: None });
    };
    let class = |c: u8| colouring.iter().map(|&x| x == c).collect::<Vec<bool>>();
    let h = face_diagonals(g, &class(0))?;
    let h_dual = face_diagonals(g, &class(1))?;
    if !radial(&h).map.is_isomorphic(g) || !radial(&h_dual).map.is_isomorphic(g) {
        return Err(defect("radial grid of the recovered map differs from the input"));
    }
    Ok(RadialVerdict { is_radial: true, recovered: Some((h, h_dual)) })
}

#[derive(Clone, Debug)]
pub struct OverlayVerdict {
    pub is_overlay: bool,
    pub bipartite: bool,
    /// Colour classes (0 or 1) whose vertices all have degree 4.
    pub degree4_classes: Vec<u8>,
    /// Colour class used as white in the recovery.
    pub white_class: Option<u8>,
    /// `(H, H*)`: red and blue maps recovered from R(G).
    pub recovered: Option<(EmbeddedMap, EmbeddedMap)>,
}

/// A grid is an overlay grid iff it is bipartite, some colour class has
/// only degree-4 vertices, and R(G) for that class is bipartite. Both
/// classes are tried.
pub fn check_overlay_form(g: &EmbeddedMap) -> Result<OverlayVerdict> {
    if !g.is_grid() {
        return Err(Error::NotAGrid("overlay recognition needs every face of length 4".into()));
    }
    let mut verdict =
        OverlayVerdict { is_overlay: false, bipartite: false, degree4_classes: vec![], white_class: None, recovered: None };
    let Some(colouring) = g.is_bipartite() else {
        return Ok(verdict);
    };
    verdict.bipartite = true;
    for c in [0u8, 1] {
        let white: Vec<bool> = colouring.iter().map(|&x| x == c).collect();
        if (0..g.vertex_count()).any(|v| white[v] && g.degree(v) != 4) {
            continue;
        }
        verdict.degree4_classes.push(c);
        let (r, r_colouring) = r_graph(g, &white)?;
        let Some(rb) = r_colouring else {
            continue;
        };
        let red: Vec<bool> = rb.iter().map(|&x| x == 0).collect();
        let blue: Vec<bool> = rb.iter().map(|&x| x == 1).collect();
        let h = face_diagonals(&r, &red)?;
        let h_dual = face_diagonals(&r, &blue)?;
        if !overlay(&h).map.is_isomorphic(g) {
            return Err(defect("overlay grid of the recovered map differs from the input"));
        }
        if !verdict.is_overlay {
            verdict.is_overlay = true;
            verdict.white_class = Some(c);
            verdict.recovered = Some((h, h_dual));
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn check_grid(c: &ColoredGrid, h: &EmbeddedMap) {
        assert!(c.map.is_grid());
        assert_eq!(c.map.euler_characteristic(), h.euler_characteristic());
        assert_eq!(c.map.is_orientable(), h.is_orientable());
    }

    #[test]
    fn radial_of_k4_is_cube() {
        let r = radial(&fixtures::k4());
        check_grid(&r, &fixtures::k4());
        assert_eq!(r.map.edge_count(), 12);
        assert!(r.map.is_isomorphic(&fixtures::q3()));
    }

    #[test]
    fn radial_of_single_edge_is_a_path() {
        let r = radial(&fixtures::single_edge());
        assert!(r.map.is_grid());
        assert_eq!((r.map.vertex_count(), r.map.edge_count(), r.map.face_count()), (3, 2, 1));
        assert_eq!(r.colors.iter().filter(|c| **c == Color::White).count(), 1);
    }

    #[test]
    fn radial_of_torus_map() {
        let h = fixtures::t1();
        let r = radial(&h);
        check_grid(&r, &h);
        assert_eq!(r.map.vertex_count(), 2);
        assert_eq!(r.map.edge_count(), 4);
    }

    #[test]
    fn radial_of_klein_map() {
        let h = fixtures::t1_klein();
        let r = radial(&h);
        check_grid(&r, &h);
    }

    #[test]
    fn medial_of_k4_is_octahedron() {
        let m = medial(&fixtures::k4());
        assert!(m.is_isomorphic(&fixtures::octahedron()));
        let c = medial(&fixtures::c4());
        assert!(c.degree_sequence().iter().all(|&d| d == 4));
        assert_eq!(c.euler_characteristic(), 2);
    }

    #[test]
    fn overlay_counts_for_k4() {
        let o = overlay(&fixtures::k4());
        check_grid(&o, &fixtures::k4());
        assert_eq!((o.map.vertex_count(), o.map.edge_count(), o.map.face_count()), (14, 24, 12));
        let count = |c: Color| o.colors.iter().filter(|x| **x == c).count();
        assert_eq!((count(Color::Red), count(Color::Blue), count(Color::White)), (4, 4, 6));
        for v in 0..o.map.vertex_count() {
            if o.colors[v] == Color::White {
                assert_eq!(o.map.degree(v), 4);
            }
        }
        assert!(o.map.is_isomorphic(&overlay_direct(&fixtures::k4()).map));
    }

    #[test]
    fn white_vertices_alternate_red_blue() {
        let o = overlay_direct(&fixtures::t1_klein());
        for v in 0..o.map.vertex_count() {
            if o.colors[v] == Color::White {
                let around: Vec<Color> =
                    o.map.rotation(v).iter().map(|d| o.colors[o.map.vertex_of(d.partner())]).collect();
                assert_eq!(around.len(), 4);
                assert_eq!(around[0], around[2]);
                assert_eq!(around[1], around[3]);
                assert_ne!(around[0], around[1]);
            }
        }
    }

    #[test]
    fn r_graph_of_c4() {
        let g = fixtures::c4();
        let white: Vec<bool> = (0..4).map(|v| v % 2 == 1).collect();
        // White vertices of the 4-cycle have degree 2.
        assert!(matches!(r_graph(&g, &white), Err(Error::Precondition(_))));
        let r = face_diagonals(&g, &white.iter().map(|w| !w).collect::<Vec<_>>()).unwrap();
        assert_eq!(r.vertex_count(), 2);
        assert_eq!(r.edge_count(), 2);
        assert_eq!(r.edge_ends(0), r.edge_ends(1));
    }

    #[test]
    fn r_graph_of_overlay_is_radial() {
        let o = overlay(&fixtures::k4());
        let white: Vec<bool> = o.colors.iter().map(|c| *c == Color::White).collect();
        let (r, colouring) = r_graph(&o.map, &white).unwrap();
        assert!(colouring.is_some());
        assert!(r.is_isomorphic(&radial(&fixtures::k4()).map));
    }

    #[test]
    fn radial_recognition() {
        let v = check_radial_form(&fixtures::q3()).unwrap();
        assert!(v.is_radial);
        let (h, hd) = v.recovered.unwrap();
        assert!(h.is_isomorphic(&fixtures::k4()) && hd.is_isomorphic(&fixtures::k4()));
        assert!(check_radial_form(&fixtures::pdw()).unwrap().is_radial);
        assert!(!check_radial_form(&fixtures::t1()).unwrap().is_radial);
        assert!(matches!(check_radial_form(&fixtures::k4()), Err(Error::NotAGrid(_))));
    }

    #[test]
    fn overlay_recognition() {
        let o = overlay(&fixtures::k4());
        let v = check_overlay_form(&o.map).unwrap();
        assert!(v.is_overlay);
        let (h, _) = v.recovered.unwrap();
        assert!(h.is_isomorphic(&fixtures::k4()));
        // Neither class of the 4-cycle is a white class in an overlay.
        let c4 = check_overlay_form(&fixtures::c4()).unwrap();
        assert!(c4.bipartite);
        assert!(!c4.is_overlay);
        assert!(c4.degree4_classes.is_empty());
    }
}
