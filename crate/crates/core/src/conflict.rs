//! Conflict graph construction and per-component statistics.
//!
//! Two vias conflict when their border distance falls below the litho
//! distance; a conflict edge is additionally a DSA edge when the center
//! distance lies inside the closed pairing window and the technology's
//! edge-level restriction holds. DSA edges are always a subset of conflict
//! edges.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use crate::layout::{center_distance, dist_cmp, Layout, Tech, TechRules, AXIS_TOL};

#[derive(Debug, Clone)]
pub struct ConflictGraph {
    positions: Vec<(f64, f64)>,
    diameter: f64,
    /// Lexicographically sorted with u < v.
    edges: Vec<(usize, usize)>,
    /// Parallel to `edges`: true when the edge is also a DSA edge.
    dsa: Vec<bool>,
    adj: Vec<Vec<usize>>,
    adj_f: Vec<Vec<usize>>,
}

impl ConflictGraph {
    /// Assemble a graph from explicit parts. Edges are normalized to u < v
    /// and sorted; self-loops and duplicates panic, since callers construct
    /// these deterministically.
    pub fn from_parts(
        positions: Vec<(f64, f64)>,
        diameter: f64,
        mut edge_list: Vec<(usize, usize, bool)>,
    ) -> ConflictGraph {
        let n = positions.len();
        for e in edge_list.iter_mut() {
            assert!(e.0 != e.1, "self-loop on vertex {}", e.0);
            assert!(e.0 < n && e.1 < n, "edge endpoint out of range");
            if e.0 > e.1 {
                std::mem::swap(&mut e.0, &mut e.1);
            }
        }
        edge_list.sort_unstable();
        edge_list.windows(2).for_each(|w| {
            assert!(
                (w[0].0, w[0].1) != (w[1].0, w[1].1),
                "duplicate edge ({}, {})",
                w[0].0,
                w[0].1
            )
        });
        let mut adj = vec![Vec::new(); n];
        let mut adj_f = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut dsa = Vec::with_capacity(edge_list.len());
        for &(u, v, f) in &edge_list {
            edges.push((u, v));
            dsa.push(f);
            adj[u].push(v);
            adj[v].push(u);
            if f {
                adj_f[u].push(v);
                adj_f[v].push(u);
            }
        }
        for l in adj.iter_mut().chain(adj_f.iter_mut()) {
            l.sort_unstable();
        }
        ConflictGraph {
            positions,
            diameter,
            edges,
            dsa,
            adj,
            adj_f,
        }
    }

    /// Classify one via pair under the rules: `None` for no conflict,
    /// `Some(false)` for a plain conflict edge, `Some(true)` for a DSA edge.
    fn classify(a: (f64, f64), b: (f64, f64), diameter: f64, rules: &TechRules) -> Option<bool> {
        let cd = center_distance(a, b);
        let b2b = (cd - diameter).max(0.0);
        let cmp = dist_cmp(b2b, rules.litho_dist);
        let in_conflict = match cmp {
            Ordering::Less => true,
            Ordering::Equal => rules.inclusive_conflict,
            Ordering::Greater => false,
        };
        if !in_conflict {
            return None;
        }
        let in_window = dist_cmp(cd, rules.l0) != Ordering::Less
            && dist_cmp(cd, rules.u0) != Ordering::Greater;
        let tech_ok = match rules.tech {
            Tech::Axis193i => {
                (a.0 - b.0).abs() <= AXIS_TOL || (a.1 - b.1).abs() <= AXIS_TOL
            }
            // The angle window constrains chains of three, not single edges.
            Tech::EuvAngle => true,
            Tech::Unrestricted => true,
        };
        Some(in_window && tech_ok)
    }

    /// Build the conflict graph with a uniform spatial grid. Cell size is the
    /// conflict center-distance threshold, so candidate pairs only ever live
    /// in adjacent cells.
    pub fn build(layout: &Layout, rules: &TechRules) -> ConflictGraph {
        debug_assert!(rules.validate().is_ok());
        let n = layout.len();
        let positions = layout.positions();
        let cell = rules.litho_dist + layout.diameter;
        let key = |p: (f64, f64)| ((p.0 / cell).floor() as i64, (p.1 / cell).floor() as i64);
        let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        let mut edge_list: Vec<(usize, usize, bool)> = Vec::new();
        for v in 0..n {
            let p = positions[v];
            let (cx, cy) = key(p);
            for gx in (cx - 1)..=(cx + 1) {
                for gy in (cy - 1)..=(cy + 1) {
                    if let Some(bucket) = grid.get(&(gx, gy)) {
                        for &u in bucket {
                            if let Some(f) =
                                Self::classify(positions[u], p, layout.diameter, rules)
                            {
                                edge_list.push((u, v, f));
                            }
                        }
                    }
                }
            }
            grid.entry((cx, cy)).or_default().push(v);
        }
        ConflictGraph::from_parts(positions, layout.diameter, edge_list)
    }

    /// Reference construction that tests every pair. Quadratic; kept as the
    /// independent route the grid construction is checked against.
    pub fn build_reference(layout: &Layout, rules: &TechRules) -> ConflictGraph {
        debug_assert!(rules.validate().is_ok());
        let n = layout.len();
        let positions = layout.positions();
        let mut edge_list = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if let Some(f) = Self::classify(positions[u], positions[v], layout.diameter, rules)
                {
                    edge_list.push((u, v, f));
                }
            }
        }
        ConflictGraph::from_parts(positions, layout.diameter, edge_list)
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_dsa_edges(&self) -> usize {
        self.dsa.iter().filter(|&&f| f).count()
    }

    pub fn position(&self, v: usize) -> (f64, f64) {
        self.positions[v]
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Conflict edges with their DSA flag, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, bool)> + '_ {
        self.edges
            .iter()
            .zip(self.dsa.iter())
            .map(|(&(u, v), &f)| (u, v, f))
    }

    /// DSA edges only, sorted lexicographically.
    pub fn dsa_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges
            .iter()
            .zip(self.dsa.iter())
            .filter(|(_, &f)| f)
            .map(|(&(u, v), _)| (u, v))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn dsa_neighbors(&self, v: usize) -> &[usize] {
        &self.adj_f[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_dsa_edge(&self, u: usize, v: usize) -> bool {
        self.adj_f[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges per vertex.
    pub fn density(&self) -> f64 {
        if self.positions.is_empty() {
            0.0
        } else {
            self.edges.len() as f64 / self.positions.len() as f64
        }
    }

    /// Text dump used by golden tests: `n <count>` then one `e u v [dsa]`
    /// line per edge in sorted order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.n());
        for (u, v, f) in self.edges() {
            if f {
                let _ = writeln!(out, "e {u} {v} dsa");
            } else {
                let _ = writeln!(out, "e {u} {v}");
            }
        }
        out
    }
}

/// One connected component with vertices re-indexed to 0..n. `original_ids`
/// maps local indices back to the parent graph.
#[derive(Debug, Clone)]
pub struct Component {
    pub graph: ConflictGraph,
    pub original_ids: Vec<usize>,
}

/// Connected components of the conflict edge set, largest first; ties break
/// on the smallest original vertex id.
pub fn connected_components(g: &ConflictGraph) -> Vec<Component> {
    let n = g.n();
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        comp_of[start] = id;
        let mut head = 0;
        while head < members.len() {
            let v = members[head];
            head += 1;
            for &w in g.neighbors(v) {
                if comp_of[w] == usize::MAX {
                    comp_of[w] = id;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    comps
        .into_iter()
        .map(|members| {
            let mut local = HashMap::with_capacity(members.len());
            for (i, &v) in members.iter().enumerate() {
                local.insert(v, i);
            }
            let positions = members.iter().map(|&v| g.position(v)).collect();
            let edge_list = g
                .edges()
                .filter(|&(u, _, _)| local.contains_key(&u))
                .filter_map(|(u, v, f)| {
                    let lu = *local.get(&u)?;
                    let lv = *local.get(&v)?;
                    Some((lu, lv, f))
                })
                .collect();
            Component {
                graph: ConflictGraph::from_parts(positions, g.diameter(), edge_list),
                original_ids: members,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentStats {
    pub n_vertices: usize,
    pub n_edges: usize,
    pub n_dsa_edges: usize,
    /// Edges per vertex.
    pub density: f64,
    /// Size of a maximum clique.
    pub omega: usize,
    /// Maximum degree.
    pub delta: usize,
}

pub fn component_stats(g: &ConflictGraph) -> ComponentStats {
    ComponentStats {
        n_vertices: g.n(),
        n_edges: g.num_edges(),
        n_dsa_edges: g.num_dsa_edges(),
        density: g.density(),
        omega: max_clique_size(g),
        delta: (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0),
    }
}

pub fn max_clique_size(g: &ConflictGraph) -> usize {
    max_clique_adj(g.adjacency())
}

/// Exact maximum clique by branch and bound with a greedy-coloring bound.
/// Vertices are visited in degeneracy order, so each root candidate set is
/// at most the degeneracy plus one.
pub(crate) fn max_clique_adj(adj: &[Vec<usize>]) -> usize {
    let n = adj.len();
    if n == 0 {
        return 0;
    }
    let order = degeneracy_order(adj);
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut best = 0usize;
    for &v in &order {
        let cands: Vec<usize> = adj[v].iter().copied().filter(|&u| rank[u] > rank[v]).collect();
        if cands.len() + 1 > best {
            expand(adj, cands, 1, &mut best);
        }
    }
    best
}

fn expand(adj: &[Vec<usize>], cands: Vec<usize>, size: usize, best: &mut usize) {
    if cands.is_empty() {
        *best = (*best).max(size);
        return;
    }
    // Greedy coloring of the candidates; color numbers bound the clique size
    // reachable through each candidate.
    let mut colors: Vec<(usize, usize)> = Vec::with_capacity(cands.len());
    for &v in &cands {
        let mut c = 1usize;
        loop {
            let clash = colors
                .iter()
                .any(|&(u, cu)| cu == c && adj[v].binary_search(&u).is_ok());
            if !clash {
                break;
            }
            c += 1;
        }
        colors.push((v, c));
    }
    colors.sort_by_key(|&(_, c)| c);
    let mut live: Vec<usize> = colors.iter().map(|&(v, _)| v).collect();
    for i in (0..colors.len()).rev() {
        let (v, c) = colors[i];
        if size + c <= *best {
            return;
        }
        live.truncate(i);
        let next: Vec<usize> = live
            .iter()
            .copied()
            .filter(|&u| adj[v].binary_search(&u).is_ok())
            .collect();
        if next.is_empty() {
            *best = (*best).max(size + 1);
        } else if size + 1 + next.len() > *best {
            expand(adj, next, size + 1, best);
        }
    }
}

/// Repeatedly remove a minimum-degree vertex; ties break on vertex id.
fn degeneracy_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut deg: Vec<usize> = adj.iter().map(|l| l.len()).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        removed[v] = true;
        order.push(v);
        for &u in &adj[v] {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{generate_random_layout, Layout};

    fn default_rules(tech: Tech) -> TechRules {
        TechRules {
            tech,
            ..TechRules::default()
        }
    }

    /// Two vias 25 nm apart on the x axis conflict (border distance 0 under
    /// diameter 25... use diameter 10: border 15 < 31) and pair.
    #[test]
    fn axis_aligned_pair_is_dsa_edge() {
        let l = Layout::new(vec![(0.0, 0.0), (25.0, 0.0), (100.0, 0.0)], 10.0).unwrap();
        let g = ConflictGraph::build(&l, &default_rules(Tech::Axis193i));
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.num_dsa_edges(), 1);
        assert!(g.has_dsa_edge(0, 1));
        assert!(!g.has_edge(1, 2));
    }

    /// Diagonal pair at center distance 25: in conflict and in the pairing
    /// window, but not axis aligned, so not a DSA edge under 193i.
    #[test]
    fn diagonal_pair_is_conflict_only_under_193i() {
        let l = Layout::new(vec![(0.0, 0.0), (20.0, 15.0)], 10.0).unwrap();
        let g = ConflictGraph::build(&l, &default_rules(Tech::Axis193i));
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.num_dsa_edges(), 0);
        let g2 = ConflictGraph::build(&l, &default_rules(Tech::Unrestricted));
        assert_eq!(g2.num_dsa_edges(), 1);
    }

    #[test]
    fn euv_imposes_nothing_at_edge_level() {
        let l = Layout::new(vec![(0.0, 0.0), (20.0, 15.0)], 10.0).unwrap();
        let g = ConflictGraph::build(&l, &default_rules(Tech::EuvAngle));
        assert_eq!(g.num_dsa_edges(), 1);
    }

    /// Centers 45 apart, diameter 10: border distance 35, no conflict at
    /// litho 31 even though nothing else separates them.
    #[test]
    fn far_pair_has_no_edge() {
        let l = Layout::new(vec![(0.0, 0.0), (45.0, 0.0)], 10.0).unwrap();
        let g = ConflictGraph::build(&l, &default_rules(Tech::Axis193i));
        assert_eq!(g.num_edges(), 0);
    }

    /// Center distance 41 -> border distance exactly 31. Strict conflicts
    /// exclude the tie; the inclusive flag admits it.
    #[test]
    fn litho_tie_follows_inclusive_flag() {
        let l = Layout::new(vec![(0.0, 0.0), (41.0, 0.0)], 10.0).unwrap();
        let strict = ConflictGraph::build(&l, &default_rules(Tech::Axis193i));
        assert_eq!(strict.num_edges(), 0);
        let mut rules = default_rules(Tech::Axis193i);
        rules.inclusive_conflict = true;
        let inclusive = ConflictGraph::build(&l, &rules);
        assert_eq!(inclusive.num_edges(), 1);
        // 41 is outside the closed [20, 40] window either way
        assert_eq!(inclusive.num_dsa_edges(), 0);
    }

    /// Window ends are closed: center distance exactly 20 and exactly 40
    /// both pair.
    #[test]
    fn dsa_window_is_closed() {
        let l = Layout::new(vec![(0.0, 0.0), (20.0, 0.0)], 10.0).unwrap();
        let g = ConflictGraph::build(&l, &default_rules(Tech::Axis193i));
        assert_eq!(g.num_dsa_edges(), 1);
        let l2 = Layout::new(vec![(0.0, 0.0), (40.0, 0.0)], 10.0).unwrap();
        let g2 = ConflictGraph::build(&l2, &default_rules(Tech::Axis193i));
        assert_eq!(g2.num_dsa_edges(), 1);
    }

    #[test]
    fn dsa_edges_are_conflict_edges() {
        let l = generate_random_layout(300, 2.0, 17).unwrap();
        for tech in [Tech::Axis193i, Tech::EuvAngle, Tech::Unrestricted] {
            let g = ConflictGraph::build(&l, &default_rules(tech));
            for (u, v, f) in g.edges() {
                if f {
                    assert!(g.has_edge(u, v));
                }
            }
            assert!(g.num_dsa_edges() <= g.num_edges());
        }
    }

    #[test]
    fn grid_matches_reference_construction() {
        for seed in 0..5 {
            let l = generate_random_layout(400, 1.8, seed).unwrap();
            let rules = default_rules(Tech::Axis193i);
            let fast = ConflictGraph::build(&l, &rules);
            let slow = ConflictGraph::build_reference(&l, &rules);
            assert_eq!(fast.dump(), slow.dump());
        }
    }

    #[test]
    fn components_order_and_back_map() {
        // two components: a path of three and an isolated pair
        let l = Layout::new(
            vec![
                (0.0, 0.0),
                (500.0, 0.0),
                (25.0, 0.0),
                (50.0, 0.0),
                (525.0, 0.0),
            ],
            10.0,
        )
        .unwrap();
        let g = ConflictGraph::build(&l, &default_rules(Tech::Axis193i));
        let comps = connected_components(&g);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].original_ids, vec![0, 2, 3]);
        assert_eq!(comps[1].original_ids, vec![1, 4]);
        assert_eq!(comps[0].graph.n(), 3);
        assert_eq!(comps[0].graph.num_edges(), 2);
        // sum of component sizes matches the graph
        let total: usize = comps.iter().map(|c| c.graph.n()).sum();
        assert_eq!(total, g.n());
    }

    #[test]
    fn stats_on_triangle() {
        // equilateral triangle, side 25: every pair conflicts
        let h = 25.0 * 3f64.sqrt() / 2.0;
        let l = Layout::new(vec![(0.0, 0.0), (25.0, 0.0), (12.5, h)], 10.0).unwrap();
        let g = ConflictGraph::build(&l, &default_rules(Tech::Unrestricted));
        let s = component_stats(&g);
        assert_eq!(s.n_vertices, 3);
        assert_eq!(s.n_edges, 3);
        assert_eq!(s.omega, 3);
        assert_eq!(s.delta, 2);
        assert!((s.density - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stats_on_singleton() {
        let l = Layout::new(vec![(0.0, 0.0)], 10.0).unwrap();
        let g = ConflictGraph::build(&l, &default_rules(Tech::Axis193i));
        let s = component_stats(&g);
        assert_eq!((s.omega, s.delta, s.n_edges), (1, 0, 0));
    }

    /// Exhaustive subset check of the clique solver on small random graphs.
    #[test]
    fn max_clique_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let n = rng.gen_range(1..12usize);
            let mut edge_list = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.45) {
                        edge_list.push((u, v, false));
                    }
                }
            }
            let positions = (0..n).map(|i| (i as f64 * 100.0, 0.0)).collect();
            let g = ConflictGraph::from_parts(positions, 10.0, edge_list);
            let mut brute = 0usize;
            for mask in 1u32..(1 << n) {
                let verts: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
                let is_clique = verts
                    .iter()
                    .enumerate()
                    .all(|(i, &u)| verts[i + 1..].iter().all(|&v| g.has_edge(u, v)));
                if is_clique {
                    brute = brute.max(verts.len());
                }
            }
            assert_eq!(max_clique_size(&g), brute);
        }
    }

    #[test]
    fn build_is_input_order_independent() {
        let l = generate_random_layout(150, 2.0, 31).unwrap();
        let rules = default_rules(Tech::Axis193i);
        let g = ConflictGraph::build(&l, &rules);
        // reverse the via order and map edges back
        let n = l.len();
        let rev: Vec<(f64, f64)> = l.vias.iter().rev().map(|v| (v.x, v.y)).collect();
        let l2 = Layout::new(rev, l.diameter).unwrap();
        let g2 = ConflictGraph::build(&l2, &rules);
        let mut mapped: Vec<(usize, usize, bool)> = g2
            .edges()
            .map(|(u, v, f)| {
                let (a, b) = (n - 1 - u, n - 1 - v);
                (a.min(b), a.max(b), f)
            })
            .collect();
        mapped.sort_unstable();
        let original: Vec<(usize, usize, bool)> = g.edges().collect();
        assert_eq!(mapped, original);
    }
}
