use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use crate::error::{defect, structural, Error, Result};

/// One end of an edge. Edge `e` owns darts `2e` and `2e + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub u32);

impl Dart {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn edge(self) -> usize {
        (self.0 >> 1) as usize
    }

    /// The other end of the same edge.
    pub fn partner(self) -> Dart {
        Dart(self.0 ^ 1)
    }
}

/// Edge signs and flag sides share the same two-valued type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A (dart, side) pair. Side `+` of a dart is the corner between it and the
/// next dart in its vertex rotation; side `-` is the corner before it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag(pub u32);

impl Flag {
    pub fn new(dart: Dart, side: Sign) -> Flag {
        Flag(dart.0 * 2 + u32::from(side == Sign::Minus))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn dart(self) -> Dart {
        Dart(self.0 >> 1)
    }

    pub fn side(self) -> Sign {
        if self.0 & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Three labeled involutions on the flags of a map.
///
/// `s0` moves to the other end of the edge, `s1` to the neighbouring dart
/// across a corner, `s2` to the other side of the same dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagSystem {
    pub(crate) gens: [Vec<u32>; 3],
}

impl FlagSystem {
    pub fn len(&self) -> usize {
        self.gens[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn apply(&self, generator: usize, flag: usize) -> usize {
        self.gens[generator][flag] as usize
    }

    pub fn s0(&self, f: Flag) -> Flag {
        Flag(self.gens[0][f.index()])
    }

    pub fn s1(&self, f: Flag) -> Flag {
        Flag(self.gens[1][f.index()])
    }

    pub fn s2(&self, f: Flag) -> Flag {
        Flag(self.gens[2][f.index()])
    }

    /// Orbits of the subgroup generated by `generators`, ordered by their
    /// smallest flag. Each orbit lists flags in discovery order.
    pub fn orbits(&self, generators: &[usize]) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let f = orbit[head];
                head += 1;
                for &g in generators {
                    let t = self.apply(g, f);
                    if !seen[t] {
                        seen[t] = true;
                        orbit.push(t);
                    }
                }
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.orbits(&[0, 1, 2]).len() <= 1
    }

    /// Two-colours the flag graph; `None` when it has an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.len();
        let mut color = vec![u8::MAX; n];
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                for g in 0..3 {
                    let t = self.apply(g, f);
                    if color[t] == u8::MAX {
                        color[t] = 1 - color[f];
                        queue.push_back(t);
                    } else if color[t] == color[f] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// Checks involutivity, absence of fixed points, and `s0 s2 = s2 s0`
    /// with `s0 s2` fixed-point-free.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        for (g, perm) in self.gens.iter().enumerate() {
            if perm.len() != n {
                return Err(structural(format!("generator s{g} has wrong length")));
            }
            for (f, &t) in perm.iter().enumerate() {
                let t = t as usize;
                if t >= n || t == f || perm[t] as usize != f {
                    return Err(structural(format!("s{g} is not a fixed-point-free involution at flag {f}")));
                }
            }
        }
        for f in 0..n {
            let a = self.apply(0, self.apply(2, f));
            let b = self.apply(2, self.apply(0, f));
            if a != b {
                return Err(structural(format!("s0 and s2 do not commute at flag {f}")));
            }
            if a == f {
                return Err(structural(format!("s0 s2 fixes flag {f}")));
            }
        }
        Ok(())
    }
}

/// A facial boundary walk.
///
/// `steps[k]` is the flag by which the walk leaves its k-th vertex: its dart
/// is the edge traversed next and its side names the corner of this face at
/// that vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWalk {
    pub steps: Vec<Flag>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Invariant byte encoding of a map up to relabeling and reflection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// A connected graph cellularly embedded in a closed surface, stored as a
/// signed rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedMap {
    vertex_names: Vec<String>,
    rotations: Vec<Vec<Dart>>,
    edge_names: Vec<String>,
    signs: Vec<Sign>,
    dart_names: Vec<String>,
    dart_vertex: Vec<usize>,
    dart_pos: Vec<usize>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'.' || b == b'-')
}

fn check_unique(kind: &str, names: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(names.len());
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(structural(format!("duplicate {kind} id `{n}`")));
        }
    }
    Ok(())
}

impl EmbeddedMap {
    /// Assembles a map from index-level parts, validating every invariant.
    pub(crate) fn from_parts(
        vertex_names: Vec<String>,
        rotations: Vec<Vec<Dart>>,
        edge_names: Vec<String>,
        signs: Vec<Sign>,
        dart_names: Vec<String>,
    ) -> Result<EmbeddedMap> {
        let n_edges = edge_names.len();
        let n_darts = 2 * n_edges;
        if signs.len() != n_edges || dart_names.len() != n_darts || rotations.len() != vertex_names.len() {
            return Err(structural("inconsistent part sizes"));
        }
        if n_edges == 0 {
            return Err(structural("map has no edges"));
        }
        check_unique("vertex", &vertex_names)?;
        check_unique("edge", &edge_names)?;
        check_unique("dart", &dart_names)?;
        let mut dart_vertex = vec![usize::MAX; n_darts];
        let mut dart_pos = vec![0; n_darts];
        for (v, rot) in rotations.iter().enumerate() {
            if rot.is_empty() {
                return Err(structural(format!("vertex `{}` has an empty rotation", vertex_names[v])));
            }
            for (i, d) in rot.iter().enumerate() {
                let di = d.index();
                if di >= n_darts {
                    return Err(structural(format!("vertex `{}` uses an unknown dart", vertex_names[v])));
                }
                if dart_vertex[di] != usize::MAX {
                    return Err(structural(format!("dart `{}` appears in two rotations", dart_names[di])));
                }
                dart_vertex[di] = v;
                dart_pos[di] = i;
            }
        }
        if let Some(d) = dart_vertex.iter().position(|&v| v == usize::MAX) {
            return Err(structural(format!("dart `{}` is not in any rotation", dart_names[d])));
        }
        let m = EmbeddedMap { vertex_names, rotations, edge_names, signs, dart_names, dart_vertex, dart_pos };
        if !m.is_graph_connected() {
            return Err(structural("underlying graph is disconnected"));
        }
        Ok(m)
    }

    fn is_graph_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &d in &self.rotations[v] {
                let w = self.vertex_of(d.partner());
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Returns the same map with new names; sizes must match.
    pub(crate) fn renamed(
        &self,
        vertex_names: Vec<String>,
        edge_names: Vec<String>,
        dart_names: Vec<String>,
    ) -> Result<EmbeddedMap> {
        EmbeddedMap::from_parts(vertex_names, self.rotations.clone(), edge_names, self.signs.clone(), dart_names)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.signs.len()
    }

    pub fn dart_count(&self) -> usize {
        self.dart_names.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edge_names[e]
    }

    pub fn dart_name(&self, d: Dart) -> &str {
        &self.dart_names[d.index()]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edge_names
    }

    pub fn dart_names(&self) -> &[String] {
        &self.dart_names
    }

    pub fn find_vertex(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }

    pub fn find_edge(&self, name: &str) -> Option<usize> {
        self.edge_names.iter().position(|n| n == name)
    }

    pub fn find_dart(&self, name: &str) -> Option<Dart> {
        self.dart_names.iter().position(|n| n == name).map(|i| Dart(i as u32))
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotations
    }

    pub fn sign(&self, e: usize) -> Sign {
        self.signs[e]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn vertex_of(&self, d: Dart) -> usize {
        self.dart_vertex[d.index()]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        (self.vertex_of(Dart(2 * e as u32)), self.vertex_of(Dart(2 * e as u32 + 1)))
    }

    pub fn next(&self, d: Dart) -> Dart {
        let rot = &self.rotations[self.vertex_of(d)];
        rot[(self.dart_pos[d.index()] + 1) % rot.len()]
    }

    pub fn prev(&self, d: Dart) -> Dart {
        let rot = &self.rotations[self.vertex_of(d)];
        let p = self.dart_pos[d.index()];
        rot[(p + rot.len() - 1) % rot.len()]
    }

    /// Builds the flag system of the map.
    pub fn flags(&self) -> FlagSystem {
        let n = 2 * self.dart_count();
        let mut gens = [vec![0u32; n], vec![0u32; n], vec![0u32; n]];
        for di in 0..self.dart_count() {
            let d = Dart(di as u32);
            let sign = self.signs[d.edge()];
            for side in [Sign::Plus, Sign::Minus] {
                let f = Flag::new(d, side).index();
                gens[2][f] = Flag::new(d, side.flip()).0;
                gens[0][f] = Flag::new(d.partner(), (side * sign).flip()).0;
                gens[1][f] = match side {
                    Sign::Plus => Flag::new(self.next(d), Sign::Minus).0,
                    Sign::Minus => Flag::new(self.prev(d), Sign::Plus).0,
                };
            }
        }
        FlagSystem { gens }
    }

    /// Facial boundary walks, ordered by their smallest flag; each walk
    /// starts from that flag.
    pub fn faces(&self) -> Vec<FaceWalk> {
        let fs = self.flags();
        faces_of(&fs)
    }

    pub fn face_count(&self) -> usize {
        self.flags().orbits(&[0, 1]).len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn is_orientable(&self) -> bool {
        self.flags().bipartition().is_some()
    }

    pub fn is_grid(&self) -> bool {
        self.faces().iter().all(|f| f.len() == 4)
    }

    /// Sorted vertex degrees.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.rotations.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    /// Sorted degrees other than four.
    pub fn curvature_sequence(&self) -> Vec<usize> {
        self.degree_sequence().into_iter().filter(|&d| d != 4).collect()
    }

    /// Evaluates `3v1 + 2v2 + v3 = 4 chi + sum_{i>=5} (i-4) v_i` on a grid.
    pub fn check_curvature_identity(&self) -> Result<bool> {
        if !self.is_grid() {
            return Err(Error::NotAGrid("curvature identity needs every face of length 4".into()));
        }
        let mut lhs = 0i64;
        let mut excess = 0i64;
        for v in 0..self.vertex_count() {
            let d = self.degree(v) as i64;
            if d < 4 {
                lhs += 4 - d;
            } else {
                excess += d - 4;
            }
        }
        Ok(lhs == 4 * self.euler_characteristic() + excess)
    }

    /// Proper 2-colouring of the underlying graph, first vertex coloured 0.
    pub fn is_bipartite(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut color = vec![u8::MAX; n];
        color[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &d in &self.rotations[v] {
                let w = self.vertex_of(d.partner());
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
        Some(color)
    }

    /// The topological dual. Dual vertex `i` is face `i` of `self` (named
    /// `f<i>`), and each dual edge keeps the name of the primal edge it
    /// crosses.
    pub fn dual(&self) -> EmbeddedMap {
        let fs = self.flags();
        let (raw, flag_map) = from_flags(&fs.gens[2], &fs.gens[1], &fs.gens[0]);
        let vertex_names = (0..raw.vertex_count()).map(|i| format!("f{i}")).collect();
        let mut edge_names = vec![String::new(); raw.edge_count()];
        let mut dart_best = vec![u32::MAX; raw.dart_count()];
        for (f, &(d, _)) in flag_map.iter().enumerate() {
            let primal = Flag(f as u32).dart();
            edge_names[d.edge()] = self.edge_names[primal.edge()].clone();
            dart_best[d.index()] = dart_best[d.index()].min(f as u32);
        }
        let dart_names = dart_best
            .iter()
            .map(|&f| {
                let flag = Flag(f);
                let tag = if flag.side() == Sign::Plus { "p" } else { "m" };
                format!("{}.{tag}", self.dart_name(flag.dart()))
            })
            .collect();
        raw.renamed(vertex_names, edge_names, dart_names)
            .expect("dual names are unique by construction")
    }

    /// Minimal breadth-first encoding of the flag system over all starting
    /// flags. Reflection is absorbed because flags carry no orientation.
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form_of(&self.flags())
    }

    /// Canonical form of the map with an integer label on each edge; equal
    /// iff there is an isomorphism carrying labels onto labels.
    pub fn canonical_form_labeled(&self, edge_labels: &[u32]) -> CanonicalForm {
        assert_eq!(edge_labels.len(), self.edge_count());
        let fs = self.flags();
        let labels: Vec<u32> = (0..fs.len()).map(|f| edge_labels[Flag(f as u32).dart().edge()]).collect();
        let (code, _) = canonical_code(&fs, Some(&labels));
        encode(fs.len(), &code)
    }

    pub fn is_isomorphic(&self, other: &EmbeddedMap) -> bool {
        self.edge_count() == other.edge_count()
            && self.vertex_count() == other.vertex_count()
            && self.canonical_form() == other.canonical_form()
    }

    /// The canonical representative: flags relabeled in canonical discovery
    /// order and read back with generated names `v<i>`, `e<i>`, `d<i>`.
    pub fn canonical_map(&self) -> EmbeddedMap {
        let fs = self.flags();
        let (_, order) = canonical_code(&fs, None);
        let mut label = vec![0u32; order.len()];
        for (i, &f) in order.iter().enumerate() {
            label[f as usize] = i as u32;
        }
        let relabel = |g: usize| -> Vec<u32> {
            let mut out = vec![0u32; order.len()];
            for (i, &f) in order.iter().enumerate() {
                out[i] = label[fs.gens[g][f as usize] as usize];
            }
            out
        };
        from_flags(&relabel(0), &relabel(1), &relabel(2)).0
    }

    /// The sub-map on the kept edges. Vertices left without darts are
    /// dropped; names are preserved.
    pub fn edge_submap(&self, keep: &[bool]) -> Result<EmbeddedMap> {
        let mut edge_index = vec![usize::MAX; self.edge_count()];
        let mut edge_names = Vec::new();
        let mut signs = Vec::new();
        let mut dart_names = Vec::new();
        for e in 0..self.edge_count() {
            if keep[e] {
                edge_index[e] = edge_names.len();
                edge_names.push(self.edge_names[e].clone());
                signs.push(self.signs[e]);
                dart_names.push(self.dart_names[2 * e].clone());
                dart_names.push(self.dart_names[2 * e + 1].clone());
            }
        }
        let mut vertex_names = Vec::new();
        let mut rotations = Vec::new();
        for v in 0..self.vertex_count() {
            let rot: Vec<Dart> = self.rotations[v]
                .iter()
                .filter(|d| keep[d.edge()])
                .map(|d| Dart((2 * edge_index[d.edge()] + (d.index() & 1)) as u32))
                .collect();
            if !rot.is_empty() {
                vertex_names.push(self.vertex_names[v].clone());
                rotations.push(rot);
            }
        }
        EmbeddedMap::from_parts(vertex_names, rotations, edge_names, signs, dart_names)
    }
}

pub(crate) fn faces_of(fs: &FlagSystem) -> Vec<FaceWalk> {
    let n = fs.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut steps = Vec::new();
        let mut g = start;
        loop {
            seen[g] = true;
            let arrival = fs.apply(0, g);
            seen[arrival] = true;
            steps.push(Flag(g as u32));
            g = fs.apply(1, arrival);
            if g == start {
                break;
            }
        }
        out.push(FaceWalk { steps });
    }
    out
}

/// Reads a signed rotation system back from three involutions. Darts are
/// the `s2` orbits; vertices are discovered in order of their smallest flag.
/// Also returns, for every flag, its (dart, side) in the new map.
pub(crate) fn from_flags(s0: &[u32], s1: &[u32], s2: &[u32]) -> (EmbeddedMap, Vec<(Dart, Sign)>) {
    let n = s0.len();
    let unset = u32::MAX;
    let mut tdart = vec![unset; n];
    let mut side = vec![Sign::Plus; n];
    let mut rot_tmp: Vec<Vec<u32>> = Vec::new();
    let mut tcount = 0u32;
    for f in 0..n {
        if tdart[f] != unset {
            continue;
        }
        let mut rot = Vec::new();
        let mut y = f;
        loop {
            debug_assert_eq!(tdart[y], unset, "flag system is not a valid map");
            let z = s2[y] as usize;
            tdart[y] = tcount;
            tdart[z] = tcount;
            side[y] = Sign::Plus;
            side[z] = Sign::Minus;
            rot.push(tcount);
            tcount += 1;
            y = s2[s1[y] as usize] as usize;
            if y == f {
                break;
            }
        }
        rot_tmp.push(rot);
    }
    // A "+" flag of every temporary dart.
    let mut plus_flag = vec![0usize; tcount as usize];
    for f in 0..n {
        if side[f] == Sign::Plus {
            plus_flag[tdart[f] as usize] = f;
        }
    }
    let mut final_dart = vec![u32::MAX; tcount as usize];
    let mut signs = Vec::new();
    for rot in &rot_tmp {
        for &td in rot {
            if final_dart[td as usize] != u32::MAX {
                continue;
            }
            let e = signs.len() as u32;
            let z = s0[plus_flag[td as usize]] as usize;
            let other = tdart[z];
            final_dart[td as usize] = 2 * e;
            final_dart[other as usize] = 2 * e + 1;
            signs.push(if side[z] == Sign::Minus { Sign::Plus } else { Sign::Minus });
        }
    }
    let rotations: Vec<Vec<Dart>> = rot_tmp
        .iter()
        .map(|rot| rot.iter().map(|&td| Dart(final_dart[td as usize])).collect())
        .collect();
    let vertex_names = (0..rotations.len()).map(|i| format!("v{i}")).collect();
    let edge_names = (0..signs.len()).map(|i| format!("e{i}")).collect();
    let dart_names = (0..2 * signs.len()).map(|i| format!("d{i}")).collect();
    let map = EmbeddedMap::from_parts(vertex_names, rotations, edge_names, signs, dart_names)
        .expect("flag system must be connected and valid");
    let flag_map = (0..n).map(|f| (Dart(final_dart[tdart[f] as usize]), side[f])).collect();
    (map, flag_map)
}

pub(crate) fn canonical_form_of(fs: &FlagSystem) -> CanonicalForm {
    let (code, _) = canonical_code(fs, None);
    encode(fs.len(), &code)
}

fn encode(n: usize, code: &[u32]) -> CanonicalForm {
    let mut bytes = Vec::with_capacity(4 * (code.len() + 1));
    bytes.extend_from_slice(&(n as u32).to_be_bytes());
    for c in code {
        bytes.extend_from_slice(&c.to_be_bytes());
    }
    CanonicalForm(bytes)
}

/// Lexicographically least BFS code over the admissible starting flags,
/// together with the discovery order that produced it.
pub(crate) fn canonical_code(fs: &FlagSystem, labels: Option<&[u32]>) -> (Vec<u32>, Vec<u32>) {
    let n = fs.len();
    // Restrict starting flags by an isomorphism invariant.
    let mut vsize = vec![0usize; n];
    for orbit in fs.orbits(&[1, 2]) {
        for &f in &orbit {
            vsize[f] = orbit.len();
        }
    }
    let mut fsize = vec![0usize; n];
    for orbit in fs.orbits(&[0, 1]) {
        for &f in &orbit {
            fsize[f] = orbit.len();
        }
    }
    let key = |f: usize| (labels.map_or(0, |l| l[f]), vsize[f], fsize[f]);
    let best_key = (0..n).map(key).min().expect("non-empty flag system");

    let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
    let mut label = vec![u32::MAX; n];
    for start in (0..n).filter(|&f| key(f) == best_key) {
        if let Some(result) = bfs_code(fs, start, labels, best.as_ref().map(|b| b.0.as_slice()), &mut label) {
            best = Some(result);
        }
    }
    best.expect("at least one start flag")
}

fn bfs_code(
    fs: &FlagSystem,
    start: usize,
    labels: Option<&[u32]>,
    best: Option<&[u32]>,
    label: &mut [u32],
) -> Option<(Vec<u32>, Vec<u32>)> {
    label.iter_mut().for_each(|l| *l = u32::MAX);
    let per = if labels.is_some() { 4 } else { 3 };
    let mut code = Vec::with_capacity(fs.len() * per);
    let mut order = vec![start as u32];
    label[start] = 0;
    let mut tied = best.is_some();
    let mut head = 0;
    let emit = |code: &mut Vec<u32>, value: u32, tied: &mut bool| -> bool {
        let pos = code.len();
        code.push(value);
        if *tied {
            let b = best.unwrap()[pos];
            if value > b {
                return false;
            }
            if value < b {
                *tied = false;
            }
        }
        true
    };
    while head < order.len() {
        let f = order[head] as usize;
        head += 1;
        if let Some(l) = labels {
            if !emit(&mut code, l[f], &mut tied) {
                return None;
            }
        }
        for g in 0..3 {
            let t = fs.apply(g, f);
            if label[t] == u32::MAX {
                label[t] = order.len() as u32;
                order.push(t as u32);
            }
            if !emit(&mut code, label[t], &mut tied) {
                return None;
            }
        }
    }
    if tied {
        // Equal to the incumbent.
        return None;
    }
    Some((code, order))
}

/// Name-based construction of an [`EmbeddedMap`].
#[derive(Clone, Debug, Default)]
pub struct MapBuilder {
    vertices: Vec<(String, Vec<String>)>,
    edges: Vec<(String, String, String, Sign)>,
}

impl MapBuilder {
    pub fn new() -> MapBuilder {
        MapBuilder::default()
    }

    pub fn vertex<I, S>(&mut self, name: impl Into<String>, rotation: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices
            .push((name.into(), rotation.into_iter().map(Into::into).collect()));
        self
    }

    pub fn edge(&mut self, name: impl Into<String>, a: impl Into<String>, b: impl Into<String>, sign: Sign) -> &mut Self {
        self.edges.push((name.into(), a.into(), b.into(), sign));
        self
    }

    pub fn build(&self) -> Result<EmbeddedMap> {
        let mut dart_index: HashMap<&str, u32> = HashMap::new();
        let mut dart_names = Vec::new();
        let mut edge_names = Vec::new();
        let mut signs = Vec::new();
        for (e, (name, a, b, sign)) in self.edges.iter().enumerate() {
            for (k, d) in [a, b].into_iter().enumerate() {
                if !is_identifier(d) {
                    return Err(structural(format!("invalid dart id `{d}`")));
                }
                if dart_index.insert(d.as_str(), (2 * e + k) as u32).is_some() {
                    return Err(structural(format!("dart `{d}` appears in two edges")));
                }
                dart_names.push(d.clone());
            }
            if !is_identifier(name) {
                return Err(structural(format!("invalid edge id `{name}`")));
            }
            edge_names.push(name.clone());
            signs.push(*sign);
        }
        let mut vertex_names = Vec::new();
        let mut rotations = Vec::new();
        for (name, rot) in &self.vertices {
            if !is_identifier(name) {
                return Err(structural(format!("invalid vertex id `{name}`")));
            }
            let darts = rot
                .iter()
                .map(|d| {
                    dart_index
                        .get(d.as_str())
                        .map(|&i| Dart(i))
                        .ok_or_else(|| structural(format!("dart `{d}` of vertex `{name}` belongs to no edge")))
                })
                .collect::<Result<Vec<_>>>()?;
            vertex_names.push(name.clone());
            rotations.push(darts);
        }
        EmbeddedMap::from_parts(vertex_names, rotations, edge_names, signs, dart_names)
    }

    /// Orientable map of a simple graph from neighbour lists in rotation
    /// order, all signs `+`. Edge `u-v` has dart `u.v` at `u`.
    pub fn from_neighbours(rotations: &[(&str, &[&str])]) -> Result<EmbeddedMap> {
        let mut b = MapBuilder::new();
        let mut done = HashSet::new();
        for (u, nbrs) in rotations {
            b.vertex(*u, nbrs.iter().map(|v| format!("{u}.{v}")));
            for v in nbrs.iter() {
                let key = if u < v { (*u, *v) } else { (*v, *u) };
                if done.insert(key) {
                    b.edge(format!("{}-{}", key.0, key.1), format!("{u}.{v}"), format!("{v}.{u}"), Sign::Plus);
                }
            }
        }
        b.build()
    }
}

impl fmt::Display for EmbeddedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::smap::write_smap(self))
    }
}

/// Index-level map assembly used by the constructions.
#[derive(Default)]
pub(crate) struct RawBuilder {
    pub vertex_names: Vec<String>,
    pub rotations: Vec<Vec<Dart>>,
    pub edge_names: Vec<String>,
    pub signs: Vec<Sign>,
    pub dart_names: Vec<String>,
}

impl RawBuilder {
    pub fn add_vertex(&mut self, name: String) -> usize {
        self.vertex_names.push(name);
        self.rotations.push(Vec::new());
        self.vertex_names.len() - 1
    }

    /// Adds an edge and returns its two darts; rotations are set by the caller.
    pub fn add_edge(&mut self, name: String, a: String, b: String, sign: Sign) -> (Dart, Dart) {
        let e = self.edge_names.len() as u32;
        self.edge_names.push(name);
        self.signs.push(sign);
        self.dart_names.push(a);
        self.dart_names.push(b);
        (Dart(2 * e), Dart(2 * e + 1))
    }

    /// Builds the map. Generated names that clash with earlier ones get a
    /// `_<n>` suffix.
    pub fn finish(mut self) -> Result<EmbeddedMap> {
        uniquify(&mut self.vertex_names);
        uniquify(&mut self.edge_names);
        uniquify(&mut self.dart_names);
        EmbeddedMap::from_parts(self.vertex_names, self.rotations, self.edge_names, self.signs, self.dart_names)
            .map_err(|e| defect(format!("constructed map is invalid: {e}")))
    }
}

fn uniquify(names: &mut [String]) {
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    let mut seen: HashSet<String> = HashSet::new();
    for name in names.iter_mut() {
        if seen.insert(name.clone()) {
            continue;
        }
        let fresh = (2..).map(|n| format!("{name}_{n}")).find(|c| !taken.contains(c)).unwrap();
        taken.insert(fresh.clone());
        seen.insert(fresh.clone());
        *name = fresh;
    }
}
