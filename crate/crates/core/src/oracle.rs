//! Brute-force enumeration of small embeddings, grids and quadrangular
//! immersions. Everything here is exhaustive and deduplicated by canonical
//! form, so it doubles as ground truth for the rest of the crate.

use std::collections::{HashSet, VecDeque};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::map::{canonical_form_of, from_flags, CanonicalForm, Dart, EmbeddedMap, FlagSystem, RawBuilder, Sign};
use crate::synthesis::forced_euler;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_edges: usize,
    pub max_crossings: usize,
    /// Upper bound on rotation choices times sign choices for one graph.
    pub max_space: u64,
    pub chi: Option<i64>,
    pub orientable: Option<bool>,
    pub grid_only: bool,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_edges: 14,
            max_crossings: 3,
            max_space: 50_000_000,
            chi: None,
            orientable: None,
            grid_only: false,
        }
    }
}

/// A quadrangular immersion found by [`search_quadrangular`]: a skeleton grid
/// whose degree-4 vertices are the crossings.
#[derive(Clone, Debug)]
pub struct Immersion {
    pub map: EmbeddedMap,
    pub crossings: usize,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub forced_chi: i64,
    pub immersions: Vec<Immersion>,
    /// Embeddings of candidate graphs on the forced surface that are not
    /// grids, counted before deduplication.
    pub non_quadrangular: u64,
    /// First crossing count skipped because it would exceed `max_edges`.
    pub truncated_at: Option<usize>,
}

/// Darts `2e` and `2e + 1` belong to edge `e`; `minus[e]` is its sign.
struct Frame {
    next: Vec<u32>,
    prev: Vec<u32>,
    minus: Vec<bool>,
}

impl Frame {
    fn new(darts: usize) -> Frame {
        Frame { next: vec![0; darts], prev: vec![0; darts], minus: vec![false; darts / 2] }
    }

    fn set_rotation(&mut self, rot: &[u32]) {
        for (i, &d) in rot.iter().enumerate() {
            let n = rot[(i + 1) % rot.len()];
            self.next[d as usize] = n;
            self.prev[n as usize] = d;
        }
    }

    #[inline]
    fn s0(&self, f: usize) -> usize {
        let d = f >> 1;
        let em = self.minus[d >> 1] as usize;
        (((d ^ 1) << 1) | ((f & 1) ^ 1 ^ em)) as usize
    }

    #[inline]
    fn s1(&self, f: usize) -> usize {
        let d = f >> 1;
        if f & 1 == 0 {
            ((self.next[d] as usize) << 1) | 1
        } else {
            (self.prev[d] as usize) << 1
        }
    }

    /// Number of faces, or `None` if `quads_only` and some face is not a
    /// quadrilateral; the second value says whether all faces have length 4.
    fn faces(&self, seen: &mut [bool], quads_only: bool) -> Option<(usize, bool)> {
        seen.iter_mut().for_each(|s| *s = false);
        let mut count = 0;
        let mut all_quads = true;
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut len = 0;
            let mut g = start;
            loop {
                seen[g] = true;
                let a = self.s0(g);
                seen[a] = true;
                len += 1;
                g = self.s1(a);
                if g == start {
                    break;
                }
                if quads_only && len >= 4 {
                    return None;
                }
            }
            if len != 4 {
                if quads_only {
                    return None;
                }
                all_quads = false;
            }
        }
        Some((count, all_quads))
    }

    fn flag_system(&self) -> FlagSystem {
        let n = 2 * self.next.len();
        let mut gens = [vec![0u32; n], vec![0u32; n], vec![0u32; n]];
        for f in 0..n {
            gens[0][f] = self.s0(f) as u32;
            gens[1][f] = self.s1(f) as u32;
            gens[2][f] = (f ^ 1) as u32;
        }
        FlagSystem { gens }
    }
}

/// The space of signed rotation systems of one graph.
struct Space {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    rotation_choices: Vec<Vec<Vec<u32>>>,
    free_edges: Vec<usize>,
    edge_count: usize,
}

impl Space {
    fn size(&self) -> u64 {
        let rotations =
            self.rotation_choices.iter().fold(1u64, |acc, c| acc.saturating_mul(c.len() as u64));
        rotations.saturating_mul(1u64 << self.free_edges.len().min(63))
    }

    /// Visits every embedding: rotations in lexicographic order of choice
    /// indices, then signs counting up over the free edges.
    fn for_each(&self, mut visit: impl FnMut(&Frame, &[usize])) {
        let nv = self.rotation_choices.len();
        let mut frame = Frame::new(2 * self.edge_count);
        let mut choice = vec![0usize; nv];
        for v in 0..nv {
            frame.set_rotation(&self.rotation_choices[v][0]);
        }
        loop {
            for bits in 0u64..(1u64 << self.free_edges.len()) {
                for (i, &e) in self.free_edges.iter().enumerate() {
                    frame.minus[e] = bits >> (self.free_edges.len() - 1 - i) & 1 == 1;
                }
                visit(&frame, &choice);
            }
            let mut v = nv;
            loop {
                if v == 0 {
                    return;
                }
                v -= 1;
                choice[v] += 1;
                if choice[v] < self.rotation_choices[v].len() {
                    frame.set_rotation(&self.rotation_choices[v][choice[v]]);
                    break;
                }
                choice[v] = 0;
                frame.set_rotation(&self.rotation_choices[v][0]);
            }
        }
    }

    fn build(&self, frame: &Frame, choice: &[usize]) -> EmbeddedMap {
        let mut raw = RawBuilder::default();
        for (v, name) in self.vertex_names.iter().enumerate() {
            let idx = raw.add_vertex(name.clone());
            raw.rotations[idx] = self.rotation_choices[v][choice[v]].iter().map(|&d| Dart(d)).collect();
        }
        for (e, name) in self.edge_names.iter().enumerate() {
            let sign = if frame.minus[e] { Sign::Minus } else { Sign::Plus };
            raw.add_edge(name.clone(), format!("{name}.a"), format!("{name}.b"), sign);
        }
        raw.finish().expect("enumerated rotation systems are valid maps")
    }
}

/// All rotations of `darts` with the first dart fixed.
fn rotations_of(darts: &[u32]) -> Vec<Vec<u32>> {
    let (first, rest) = darts.split_first().expect("vertex has darts");
    rest.iter()
        .copied()
        .permutations(rest.len())
        .map(|p| std::iter::once(*first).chain(p).collect())
        .collect()
}

/// Edges outside a breadth-first spanning tree; only their signs matter up
/// to switching.
fn non_tree_edges(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((e, v));
        adj[v].push((e, u));
    }
    let mut tree = vec![false; edges.len()];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &(e, w) in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    (0..edges.len()).filter(|&e| !tree[e]).collect()
}

fn incident_darts(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<u32>> {
    let mut darts = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        darts[u].push(2 * e as u32);
        darts[v].push(2 * e as u32 + 1);
    }
    darts
}

fn edge_names(names: &[String], edges: &[(usize, usize)]) -> Vec<String> {
    edges.iter().map(|&(u, v)| format!("{}-{}", names[u], names[v])).collect()
}

fn check_graph(g: &Graph, budget: &EnumerationBudget) -> Result<()> {
    if g.edge_count() == 0 {
        return Err(Error::Precondition("graph has no edges".into()));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("graph is disconnected".into()));
    }
    if g.edge_count() > budget.max_edges {
        return Err(Error::Budget(format!(
            "graph has {} edges, budget allows {}",
            g.edge_count(),
            budget.max_edges
        )));
    }
    Ok(())
}

struct Filter {
    chi: Option<i64>,
    orientable: Option<bool>,
    grid_only: bool,
}

/// Runs the space through the filter and returns the distinct survivors in
/// discovery order. `on_surface_non_grid` counts raw embeddings with Euler
/// characteristic `chi` that are not grids.
fn collect(
    space: &Space,
    vertex_count: usize,
    filter: &Filter,
    seen_forms: &mut HashSet<CanonicalForm>,
    mut on_surface_non_grid: Option<&mut u64>,
) -> Vec<EmbeddedMap> {
    let mut out = Vec::new();
    let mut seen = vec![false; 4 * space.edge_count];
    let quads_only = filter.grid_only && on_surface_non_grid.is_none();
    space.for_each(|frame, choice| {
        let Some((faces, quads)) = frame.faces(&mut seen, quads_only) else {
            return;
        };
        let chi = vertex_count as i64 - space.edge_count as i64 + faces as i64;
        if filter.chi.is_some_and(|c| c != chi) {
            return;
        }
        if filter.grid_only && !quads {
            if let Some(count) = on_surface_non_grid.as_deref_mut() {
                *count += 1;
            }
            return;
        }
        let fs = frame.flag_system();
        if let Some(o) = filter.orientable {
            if fs.bipartition().is_some() != o {
                return;
            }
        }
        if seen_forms.insert(canonical_form_of(&fs)) {
            out.push(space.build(frame, choice));
        }
    });
    out
}

/// All signed rotation systems of `g` up to isomorphism, filtered by the
/// surface and grid options of the budget.
pub fn enumerate_embeddings(g: &Graph, budget: &EnumerationBudget) -> Result<Vec<EmbeddedMap>> {
    check_graph(g, budget)?;
    let names: Vec<String> = (0..g.vertex_count()).map(|v| g.name(v).to_string()).collect();
    let edges = g.edges().to_vec();
    let space = Space {
        edge_names: edge_names(&names, &edges),
        vertex_names: names,
        rotation_choices: incident_darts(g.vertex_count(), &edges).iter().map(|d| rotations_of(d)).collect(),
        free_edges: if budget.orientable == Some(true) { vec![] } else { non_tree_edges(g.vertex_count(), &edges) },
        edge_count: edges.len(),
    };
    if space.size() > budget.max_space {
        return Err(Error::Budget(format!("{} embeddings exceed the budget of {}", space.size(), budget.max_space)));
    }
    let filter = Filter { chi: budget.chi, orientable: budget.orientable, grid_only: budget.grid_only };
    Ok(collect(&space, g.vertex_count(), &filter, &mut HashSet::new(), None))
}

/// Searches for quadrangular transverse immersions of a graph without
/// degree-4 vertices, adding up to `max_crossings` crossings.
///
/// A crossing splices two edge segments through a new degree-4 vertex whose
/// rotation alternates the two strands. Candidates whose edge count would
/// exceed `max_edges` are not generated; the first skipped level is
/// reported in `truncated_at`.
pub fn search_quadrangular(g: &Graph, budget: &EnumerationBudget) -> Result<SearchReport> {
    check_graph(g, budget)?;
    let forced = forced_euler(g)?;
    let Some(chi) = forced.integer().filter(|_| forced.feasible) else {
        return Err(Error::Infeasible(format!("forced Euler characteristic {} is not an integer at most 2", forced.chi)));
    };
    let mut report = SearchReport { forced_chi: chi, immersions: Vec::new(), non_quadrangular: 0, truncated_at: None };
    if budget.chi.is_some_and(|c| c != chi) {
        return Ok(report);
    }
    // Only orientable surfaces have Euler characteristic 2, and every
    // orientable embedding is switching equivalent to an all-plus one.
    let orientable = if chi == 2 { Some(true) } else { budget.orientable };
    if chi == 2 && budget.orientable == Some(false) {
        return Ok(report);
    }
    let budget = &EnumerationBudget { orientable, ..budget.clone() };
    let filter = Filter { chi: Some(chi), orientable, grid_only: true };
    let mut seen_forms = HashSet::new();
    let names: Vec<String> = (0..g.vertex_count()).map(|v| g.name(v).to_string()).collect();
    let base_edges = g.edges();
    let pairs: Vec<(usize, usize)> =
        (0..base_edges.len()).flat_map(|e| (e..base_edges.len()).map(move |f| (e, f))).collect();
    for k in 0..=budget.max_crossings {
        if base_edges.len() + 2 * k > budget.max_edges {
            report.truncated_at = Some(k);
            break;
        }
        for chosen in pairs.iter().copied().combinations_with_replacement(k) {
            // Occurrences of crossings along each edge: (crossing, strand).
            let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); base_edges.len()];
            for (c, &(e, f)) in chosen.iter().enumerate() {
                occurrences[e].push((c, 0));
                occurrences[f].push((c, 1));
            }
            let orders: Vec<Vec<Vec<(usize, usize)>>> =
                occurrences.iter().map(|occ| occ.iter().copied().permutations(occ.len()).collect()).collect();
            for order in orders.iter().map(|o| o.iter()).multi_cartesian_product() {
                let space = crossing_space(&names, base_edges, k, &order, budget);
                if space.size() > budget.max_space {
                    return Err(Error::Budget(format!(
                        "{} embeddings of a candidate exceed the budget of {}",
                        space.size(),
                        budget.max_space
                    )));
                }
                let found = collect(
                    &space,
                    names.len() + k,
                    &filter,
                    &mut seen_forms,
                    Some(&mut report.non_quadrangular),
                );
                report.immersions.extend(found.into_iter().map(|map| Immersion { map, crossings: k }));
            }
            if k == 0 {
                break;
            }
        }
    }
    Ok(report)
}

/// The embedding space of `g` with crossings spliced into its edges in the
/// given orders.
fn crossing_space(
    names: &[String],
    base_edges: &[(usize, usize)],
    crossings: usize,
    order: &[&Vec<(usize, usize)>],
    budget: &EnumerationBudget,
) -> Space {
    let n = names.len();
    let mut vertex_names = names.to_vec();
    vertex_names.extend((0..crossings).map(|c| format!("x{c}")));
    let base_names = edge_names(names, base_edges);
    let mut edges = Vec::new();
    let mut edge_names_out = Vec::new();
    // Per crossing and strand: the dart arriving and the dart leaving.
    let mut ports = vec![[[0u32; 2]; 2]; crossings];
    for (e, &(u, v)) in base_edges.iter().enumerate() {
        let mut at = u;
        let stops = order[e];
        for (i, &(c, strand)) in stops.iter().enumerate() {
            let id = edges.len() as u32;
            edges.push((at, n + c));
            edge_names_out.push(format!("{}.{i}", base_names[e]));
            ports[c][strand][0] = 2 * id + 1;
            ports[c][strand][1] = 2 * (id + 1);
            at = n + c;
        }
        edges.push((at, v));
        edge_names_out.push(if stops.is_empty() { base_names[e].clone() } else { format!("{}.{}", base_names[e], stops.len()) });
    }
    let darts = incident_darts(n + crossings, &edges);
    let mut rotation_choices: Vec<Vec<Vec<u32>>> = darts[..n].iter().map(|d| rotations_of(d)).collect();
    for p in &ports {
        let [[in0, out0], [in1, out1]] = *p;
        rotation_choices.push(vec![vec![in0, in1, out0, out1], vec![in0, out1, out0, in1]]);
    }
    Space {
        vertex_names,
        edge_names: edge_names_out,
        rotation_choices,
        free_edges: if budget.orientable == Some(true) { vec![] } else { non_tree_edges(n + crossings, &edges) },
        edge_count: edges.len(),
    }
}

/// Every grid with at most `max_edges` edges, up to isomorphism. Grids are
/// generated as duals of connected 4-regular maps; a generated labelling is
/// kept only when its root flag has the least breadth-first code, so every
/// isomorphism class appears exactly once. The order is deterministic.
pub fn enumerate_grids(max_edges: usize) -> Vec<EmbeddedMap> {
    let mut out = Vec::new();
    for n in 1..=max_edges / 2 {
        let mut partner = vec![u32::MAX; 4 * n];
        let mut minus = vec![false; 4 * n];
        let mut scratch = Scratch::new(8 * n);
        quartic_dfs(n, 1, &mut partner, &mut minus, &mut |partner, minus| {
            let fs = quartic_flags(partner, minus);
            if scratch.root_is_least(&fs) {
                // The dual swaps the roles of s0 and s2.
                let (grid, _) = from_flags(&fs.gens[2], &fs.gens[1], &fs.gens[0]);
                out.push(grid);
            }
        });
    }
    out
}

struct Scratch {
    label: Vec<u32>,
    order: Vec<u32>,
    base: Vec<u32>,
    face_size: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Scratch {
        Scratch { label: vec![0; n], order: Vec::with_capacity(n), base: Vec::with_capacity(3 * n), face_size: vec![0; n] }
    }

    fn key(&self, fs: &FlagSystem, f: usize) -> (u32, u32) {
        (self.face_size[f], self.face_size[fs.gens[2][f] as usize])
    }

    /// Whether no flag yields a smaller breadth-first code than flag 0.
    fn root_is_least(&mut self, fs: &FlagSystem) -> bool {
        let n = fs.len();
        self.face_size.iter_mut().for_each(|s| *s = 0);
        for f in 0..n {
            if self.face_size[f] != 0 {
                continue;
            }
            let mut orbit = 0;
            let mut g = f;
            loop {
                orbit += 2;
                g = fs.gens[1][fs.gens[0][g] as usize] as usize;
                if g == f {
                    break;
                }
            }
            let mut g = f;
            loop {
                let a = fs.gens[0][g] as usize;
                self.face_size[g] = orbit;
                self.face_size[a] = orbit;
                g = fs.gens[1][a] as usize;
                if g == f {
                    break;
                }
            }
        }
        let root_key = self.key(fs, 0);
        if (1..n).any(|f| self.key(fs, f) < root_key) {
            return false;
        }
        self.bfs(fs, 0, true);
        for f in 1..n {
            if self.key(fs, f) == root_key && self.bfs(fs, f, false) == std::cmp::Ordering::Less {
                return false;
            }
        }
        true
    }

    /// Breadth-first code from `start`, either recorded as the base or
    /// compared against it with early exit.
    fn bfs(&mut self, fs: &FlagSystem, start: usize, record: bool) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        self.label.iter_mut().for_each(|l| *l = u32::MAX);
        self.order.clear();
        if record {
            self.base.clear();
        }
        self.label[start] = 0;
        self.order.push(start as u32);
        let mut pos = 0;
        let mut head = 0;
        while head < self.order.len() {
            let f = self.order[head] as usize;
            head += 1;
            for g in 0..3 {
                let t = fs.gens[g][f] as usize;
                if self.label[t] == u32::MAX {
                    self.label[t] = self.order.len() as u32;
                    self.order.push(t as u32);
                }
                if record {
                    self.base.push(self.label[t]);
                } else {
                    match self.label[t].cmp(&self.base[pos]) {
                        Ordering::Equal => {}
                        other => return other,
                    }
                }
                pos += 1;
            }
        }
        Ordering::Equal
    }
}

/// Pairs the darts of `n` vertices of degree 4 (vertex `i` owns darts
/// `4i..4i+4` in rotation order). A dart reaching an undiscovered vertex is
/// joined to its first dart with a plus sign, which loses nothing up to
/// rotation and switching.
fn quartic_dfs(
    n: usize,
    discovered: usize,
    partner: &mut [u32],
    minus: &mut [bool],
    leaf: &mut dyn FnMut(&[u32], &[bool]),
) {
    let limit = 4 * discovered;
    let Some(x) = (0..limit).find(|&d| partner[d] == u32::MAX) else {
        if discovered == n {
            leaf(partner, minus);
        }
        return;
    };
    for y in x + 1..limit {
        if partner[y] != u32::MAX {
            continue;
        }
        partner[x] = y as u32;
        partner[y] = x as u32;
        for sign in [false, true] {
            minus[x] = sign;
            minus[y] = sign;
            quartic_dfs(n, discovered, partner, minus, leaf);
        }
        minus[x] = false;
        minus[y] = false;
        partner[x] = u32::MAX;
        partner[y] = u32::MAX;
    }
    if discovered < n {
        let y = 4 * discovered;
        partner[x] = y as u32;
        partner[y] = x as u32;
        quartic_dfs(n, discovered + 1, partner, minus, leaf);
        partner[x] = u32::MAX;
        partner[y] = u32::MAX;
    }
}

fn quartic_flags(partner: &[u32], minus: &[bool]) -> FlagSystem {
    let n = 2 * partner.len();
    let mut gens = [vec![0u32; n], vec![0u32; n], vec![0u32; n]];
    for f in 0..n {
        let d = f >> 1;
        let side_minus = f & 1;
        let flip = 1 ^ minus[d] as usize;
        gens[0][f] = ((partner[d] as usize) << 1 | (side_minus ^ flip)) as u32;
        let base = d & !3;
        gens[1][f] = if side_minus == 0 {
            ((base + (d + 1) % 4) << 1 | 1) as u32
        } else {
            ((base + (d + 3) % 4) << 1) as u32
        };
        gens[2][f] = (f ^ 1) as u32;
    }
    FlagSystem { gens }
}

/// Connected multigraphs (loops allowed) with exactly `edges` edges, one per
/// isomorphism class.
pub fn enumerate_graphs(edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=edges + 1 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let mut seen = HashSet::new();
        for chosen in pairs.iter().copied().combinations_with_replacement(edges) {
            let mut g = Graph::with_vertices((0..n).map(|i| format!("u{i}")));
            for &(u, v) in &chosen {
                g.add_edge(u, v);
            }
            if !g.is_connected() || g.degrees().contains(&0) {
                continue;
            }
            let key = perms
                .iter()
                .map(|p| {
                    let mut relabeled: Vec<(usize, usize)> =
                        chosen.iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
                    relabeled.sort_unstable();
                    relabeled
                })
                .min()
                .expect("at least one permutation");
            if seen.insert(key) {
                out.push(g);
            }
        }
    }
    out
}

/// Every map with at most `max_edges` edges, up to isomorphism.
pub fn enumerate_maps(max_edges: usize) -> Result<Vec<EmbeddedMap>> {
    let budget = EnumerationBudget { max_edges, ..EnumerationBudget::default() };
    let mut out = Vec::new();
    for e in 1..=max_edges {
        for g in enumerate_graphs(e) {
            out.extend(enumerate_embeddings(&g, &budget)?);
        }
    }
    Ok(out)
}

/// Orientability decided by sign switching: a map is orientable iff some
/// choice of vertex signs makes every edge positive.
pub fn orientable_by_switching(m: &EmbeddedMap) -> bool {
    let n = m.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for e in 0..m.edge_count() {
        let (u, v) = m.edge_ends(e);
        adj[u].push((v, m.sign(e)));
        adj[v].push((u, m.sign(e)));
    }
    let mut switch: Vec<Option<Sign>> = vec![None; n];
    switch[0] = Some(Sign::Plus);
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        let su = switch[u].expect("queued vertices are switched");
        for &(v, s) in &adj[u] {
            let want = su * s;
            match switch[v] {
                None => {
                    switch[v] = Some(want);
                    queue.push_back(v);
                }
                Some(sv) if sv != want => return false,
                Some(_) => {}
            }
        }
    }
    true
}
