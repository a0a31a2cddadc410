//! Enumeration of feasible via groups and the conflict relation between
//! groups.
//!
//! A group is a set of vias printable as one guiding pattern: a chain in the
//! DSA edge set with at most `k_max` vias, subject to the technology's
//! geometric restriction. Induced mode additionally requires the chain to be
//! chord-free. Two groups conflict when they share a via or some conflict
//! edge runs between them; conflicting groups cannot share a patterning
//! step.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::conflict::ConflictGraph;
use crate::layout::{
    corner_angle_rad, direction_change_deg, InducedWrt, Tech, TechRules, AXIS_TOL,
    RIGHT_ANGLE_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Singleton,
    /// Chord-free chain in the DSA graph.
    InducedPath,
    /// Vertex set spanned by some chain in the DSA graph.
    HamiltonianPath,
}

impl GroupKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupKind::Singleton => "singleton",
            GroupKind::InducedPath => "induced",
            GroupKind::HamiltonianPath => "general",
        }
    }
}

/// Which family of groups to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupMode {
    /// Chord-free chains only.
    Induced,
    /// Any vertex set spanned by a chain.
    General,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    /// Members in chain order; the order witnesses feasibility.
    pub vertices: Vec<usize>,
    pub kind: GroupKind,
}

impl Group {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn sorted_members(&self) -> Vec<usize> {
        let mut m = self.vertices.clone();
        m.sort_unstable();
        m
    }
}

#[derive(Debug, Clone)]
pub struct GroupCatalog {
    pub groups: Vec<Group>,
    /// Conflicting group index pairs, i < j, sorted.
    pub conflicts: Vec<(usize, usize)>,
    membership: Vec<Vec<usize>>,
    conflict_adj: Vec<Vec<usize>>,
}

impl GroupCatalog {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Groups containing vertex `v`, ascending.
    pub fn membership(&self, v: usize) -> &[usize] {
        &self.membership[v]
    }

    pub fn num_vertices(&self) -> usize {
        self.membership.len()
    }

    /// Groups conflicting with group `gi`, ascending.
    pub fn conflict_neighbors(&self, gi: usize) -> &[usize] {
        &self.conflict_adj[gi]
    }

    pub fn conflicts_with(&self, a: usize, b: usize) -> bool {
        self.conflict_adj[a].binary_search(&b).is_ok()
    }

    /// Largest group size in the catalog.
    pub fn max_group_size(&self) -> usize {
        self.groups.iter().map(|g| g.len()).max().unwrap_or(0)
    }

    /// Text dump used by golden tests: one `g <kind> v...` line per group,
    /// then one `c i j` line per conflict pair.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for g in &self.groups {
            let _ = write!(out, "g {}", g.kind.as_str());
            for v in &g.vertices {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        for &(i, j) in &self.conflicts {
            let _ = writeln!(out, "c {i} {j}");
        }
        out
    }

    fn assemble(groups: Vec<Group>, g: &ConflictGraph) -> GroupCatalog {
        let conflicts = group_conflicts(&groups, g);
        let mut membership = vec![Vec::new(); g.n()];
        for (gi, group) in groups.iter().enumerate() {
            for &v in &group.vertices {
                membership[v].push(gi);
            }
        }
        let mut conflict_adj = vec![Vec::new(); groups.len()];
        for &(i, j) in &conflicts {
            conflict_adj[i].push(j);
            conflict_adj[j].push(i);
        }
        for l in conflict_adj.iter_mut() {
            l.sort_unstable();
        }
        GroupCatalog {
            groups,
            conflicts,
            membership,
            conflict_adj,
        }
    }
}

#[derive(Debug, Error)]
pub enum GroupError {
    #[error(
        "group catalog exceeds {cap} groups (at least {count}); densest vertex {busiest_vertex} \
         sits in {busiest_membership} groups"
    )]
    CatalogTooLarge {
        count: usize,
        cap: usize,
        busiest_vertex: usize,
        busiest_membership: usize,
    },
}

/// Default ceiling on catalog size before enumeration refuses.
pub const DEFAULT_CATALOG_CAP: usize = 2_000_000;

pub fn enumerate_groups(
    g: &ConflictGraph,
    rules: &TechRules,
    mode: GroupMode,
) -> Result<GroupCatalog, GroupError> {
    enumerate_groups_capped(g, rules, mode, DEFAULT_CATALOG_CAP)
}

/// Enumerate every feasible group by depth-first traversal of chains in the
/// DSA graph. Each vertex set is kept once; because starts are visited in
/// ascending order, the stored chain begins at the set's smallest feasible
/// endpoint.
pub fn enumerate_groups_capped(
    g: &ConflictGraph,
    rules: &TechRules,
    mode: GroupMode,
    cap: usize,
) -> Result<GroupCatalog, GroupError> {
    debug_assert!(rules.validate().is_ok());
    let n = g.n();
    let mut state = PathEnum {
        g,
        rules,
        mode,
        cap,
        path: Vec::with_capacity(rules.k_max),
        on_path: vec![false; n],
        found: HashMap::new(),
        count: n,
    };
    if state.count > cap {
        return Err(too_large(&state));
    }
    if rules.k_max >= 2 {
        for s in 0..n {
            state.path.push(s);
            state.on_path[s] = true;
            if let Err(e) = state.dfs(true, true) {
                return Err(e);
            }
            state.on_path[s] = false;
            state.path.pop();
        }
    }
    let mut groups: Vec<Group> = (0..n)
        .map(|v| Group {
            vertices: vec![v],
            kind: GroupKind::Singleton,
        })
        .collect();
    let kind = match mode {
        GroupMode::Induced => GroupKind::InducedPath,
        GroupMode::General => GroupKind::HamiltonianPath,
    };
    let mut multi: Vec<(Vec<usize>, Vec<usize>)> = state.found.into_iter().collect();
    multi.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    groups.extend(multi.into_iter().map(|(_, witness)| Group {
        vertices: witness,
        kind,
    }));
    Ok(GroupCatalog::assemble(groups, g))
}

struct PathEnum<'a> {
    g: &'a ConflictGraph,
    rules: &'a TechRules,
    mode: GroupMode,
    cap: usize,
    path: Vec<usize>,
    on_path: Vec<bool>,
    /// Sorted vertex set -> chain order of first discovery.
    found: HashMap<Vec<usize>, Vec<usize>>,
    count: usize,
}

impl<'a> PathEnum<'a> {
    /// Extend the current chain by one vertex in every feasible way. The
    /// geometric filters are hereditary (a failing prefix cannot recover),
    /// so failing extensions prune their whole subtree.
    fn dfs(&mut self, same_x: bool, same_y: bool) -> Result<(), GroupError> {
        let last = *self.path.last().unwrap();
        let neighbors = self.g.dsa_neighbors(last);
        for &w in neighbors {
            if self.on_path[w] {
                continue;
            }
            let first = self.g.position(self.path[0]);
            let pw = self.g.position(w);
            let w_same_x = same_x && (pw.0 - first.0).abs() <= AXIS_TOL;
            let w_same_y = same_y && (pw.1 - first.1).abs() <= AXIS_TOL;
            if !self.extension_allowed(w, w_same_x, w_same_y) {
                continue;
            }
            self.path.push(w);
            self.on_path[w] = true;
            let mut key: Vec<usize> = self.path.clone();
            key.sort_unstable();
            if !self.found.contains_key(&key) {
                self.found.insert(key, self.path.clone());
                self.count += 1;
                if self.count > self.cap {
                    return Err(too_large(self));
                }
            }
            if self.path.len() < self.rules.k_max {
                self.dfs(w_same_x, w_same_y)?;
            }
            self.on_path[w] = false;
            self.path.pop();
        }
        Ok(())
    }

    fn extension_allowed(&self, w: usize, w_same_x: bool, w_same_y: bool) -> bool {
        let len = self.path.len();
        match self.rules.tech {
            Tech::Axis193i => {
                // whole chain must stay on one axis-parallel line
                if !(w_same_x || w_same_y) {
                    return false;
                }
            }
            Tech::EuvAngle => {
                if len >= 2 {
                    let a = direction_change_deg(
                        self.g.position(self.path[len - 2]),
                        self.g.position(self.path[len - 1]),
                        self.g.position(w),
                    );
                    let (lo, hi) = self.rules.angle_window_deg;
                    if !(a >= lo - 1e-9 && a <= hi + 1e-9) {
                        return false;
                    }
                }
            }
            Tech::Unrestricted => {
                if self.rules.remove_l_shapes && len >= 2 {
                    let ang = corner_angle_rad(
                        self.g.position(self.path[len - 2]),
                        self.g.position(self.path[len - 1]),
                        self.g.position(w),
                    );
                    if (ang - std::f64::consts::FRAC_PI_2).abs() <= RIGHT_ANGLE_TOL {
                        return false;
                    }
                }
            }
        }
        if self.mode == GroupMode::Induced {
            // no chord from w back to a non-consecutive chain vertex
            for &p in &self.path[..len - 1] {
                let chord = match self.rules.induced_wrt {
                    InducedWrt::Conflict => self.g.has_edge(p, w),
                    InducedWrt::Dsa => self.g.has_dsa_edge(p, w),
                };
                if chord {
                    return false;
                }
            }
        }
        true
    }
}

fn too_large(state: &PathEnum) -> GroupError {
    let n = state.g.n();
    let mut members = vec![1usize; n];
    for set in state.found.keys() {
        for &v in set {
            members[v] += 1;
        }
    }
    let busiest_vertex = (0..n).max_by_key(|&v| (members[v], n - v)).unwrap_or(0);
    GroupError::CatalogTooLarge {
        count: state.count,
        cap: state.cap,
        busiest_vertex,
        busiest_membership: members.get(busiest_vertex).copied().unwrap_or(0),
    }
}

/// Conflict pairs among groups: two groups conflict when they intersect or
/// some conflict edge joins them. Pairs come back sorted with i < j.
pub fn group_conflicts(groups: &[Group], g: &ConflictGraph) -> Vec<(usize, usize)> {
    let mut membership = vec![Vec::new(); g.n()];
    for (gi, group) in groups.iter().enumerate() {
        for &v in &group.vertices {
            membership[v].push(gi);
        }
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut closure: Vec<usize> = Vec::new();
    let mut in_closure = vec![false; g.n()];
    for (gi, group) in groups.iter().enumerate() {
        closure.clear();
        for &v in &group.vertices {
            if !in_closure[v] {
                in_closure[v] = true;
                closure.push(v);
            }
            for &u in g.neighbors(v) {
                if !in_closure[u] {
                    in_closure[u] = true;
                    closure.push(u);
                }
            }
        }
        for &u in &closure {
            for &gj in &membership[u] {
                if gj != gi {
                    pairs.insert((gi.min(gj), gi.max(gj)));
                }
            }
        }
        for &u in &closure {
            in_closure[u] = false;
        }
    }
    pairs.into_iter().collect()
}

/// Right-angle chain triples `(u, v, w)`: both `(u, v)` and `(v, w)` are DSA
/// edges and the corner at `v` is 90 degrees. The corner vertex sits in the
/// middle; u < w.
pub fn l_shape_triples(g: &ConflictGraph) -> Vec<(usize, usize, usize)> {
    let mut triples = Vec::new();
    for v in 0..g.n() {
        let nbrs = g.dsa_neighbors(v);
        for (i, &u) in nbrs.iter().enumerate() {
            for &w in &nbrs[i + 1..] {
                let ang = corner_angle_rad(g.position(u), g.position(v), g.position(w));
                if (ang - std::f64::consts::FRAC_PI_2).abs() <= RIGHT_ANGLE_TOL {
                    triples.push((u, v, w));
                }
            }
        }
    }
    triples
}

/// Chain triples the technology forbids as consecutive group members. For
/// 193i that is every non-collinear triple (which, with axis-parallel DSA
/// edges, means right angles); for EUV every triple whose bend falls outside
/// the angle window in both walk directions; unrestricted with the L-shape
/// flag set forbids right angles only.
pub fn forbidden_triples(g: &ConflictGraph, rules: &TechRules) -> Vec<(usize, usize, usize)> {
    match rules.tech {
        Tech::Axis193i => {
            let mut triples = Vec::new();
            for v in 0..g.n() {
                let nbrs = g.dsa_neighbors(v);
                for (i, &u) in nbrs.iter().enumerate() {
                    for &w in &nbrs[i + 1..] {
                        let (pu, pv, pw) = (g.position(u), g.position(v), g.position(w));
                        let same_x =
                            (pu.0 - pv.0).abs() <= AXIS_TOL && (pw.0 - pv.0).abs() <= AXIS_TOL;
                        let same_y =
                            (pu.1 - pv.1).abs() <= AXIS_TOL && (pw.1 - pv.1).abs() <= AXIS_TOL;
                        if !(same_x || same_y) {
                            triples.push((u, v, w));
                        }
                    }
                }
            }
            triples
        }
        Tech::EuvAngle => {
            let (lo, hi) = rules.angle_window_deg;
            let in_window = |a: f64| a >= lo - 1e-9 && a <= hi + 1e-9;
            let mut triples = Vec::new();
            for v in 0..g.n() {
                let nbrs = g.dsa_neighbors(v);
                for (i, &u) in nbrs.iter().enumerate() {
                    for &w in &nbrs[i + 1..] {
                        let fwd =
                            direction_change_deg(g.position(u), g.position(v), g.position(w));
                        let bwd =
                            direction_change_deg(g.position(w), g.position(v), g.position(u));
                        if !in_window(fwd) && !in_window(bwd) {
                            triples.push((u, v, w));
                        }
                    }
                }
            }
            triples
        }
        Tech::Unrestricted => {
            if rules.remove_l_shapes {
                l_shape_triples(g)
            } else {
                Vec::new()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{generate_random_layout, Layout};

    fn rules(tech: Tech, k_max: usize) -> TechRules {
        TechRules {
            tech,
            k_max,
            ..TechRules::default()
        }
    }

    fn graph(points: Vec<(f64, f64)>, r: &TechRules) -> ConflictGraph {
        ConflictGraph::build(&Layout::new(points, 10.0).unwrap(), r)
    }

    fn sets(cat: &GroupCatalog) -> Vec<Vec<usize>> {
        let mut s: Vec<Vec<usize>> = cat.groups.iter().map(|g| g.sorted_members()).collect();
        s.sort();
        s
    }

    #[test]
    fn collinear_triple_full_catalog() {
        let r = rules(Tech::Axis193i, 3);
        let g = graph(vec![(0.0, 0.0), (25.0, 0.0), (50.0, 0.0)], &r);
        let cat = enumerate_groups(&g, &r, GroupMode::Induced).unwrap();
        assert_eq!(
            sets(&cat),
            vec![
                vec![0],
                vec![0, 1],
                vec![0, 1, 2],
                vec![1],
                vec![1, 2],
                vec![2]
            ]
        );
    }

    #[test]
    fn l_shape_excluded_under_193i() {
        let r = rules(Tech::Axis193i, 3);
        let g = graph(vec![(0.0, 0.0), (25.0, 0.0), (25.0, 25.0)], &r);
        let cat = enumerate_groups(&g, &r, GroupMode::Induced).unwrap();
        assert_eq!(
            sets(&cat),
            vec![vec![0], vec![0, 1], vec![1], vec![1, 2], vec![2]]
        );
        assert_eq!(l_shape_triples(&g), vec![(0, 1, 2)]);
    }

    #[test]
    fn l_shape_flag_controls_unrestricted_mode() {
        // corner via only reachable through the right angle at via 1
        let mut r = rules(Tech::Unrestricted, 3);
        let g = graph(vec![(0.0, 0.0), (25.0, 0.0), (25.0, 35.0)], &r);
        let with = enumerate_groups(&g, &r, GroupMode::Induced).unwrap();
        assert!(sets(&with).contains(&vec![0, 1, 2]));
        r.remove_l_shapes = true;
        for mode in [GroupMode::Induced, GroupMode::General] {
            let without = enumerate_groups(&g, &r, mode).unwrap();
            assert!(!sets(&without).contains(&vec![0, 1, 2]));
        }
    }

    fn triangle(r: &TechRules) -> ConflictGraph {
        let h = 25.0 * 3f64.sqrt() / 2.0;
        graph(vec![(0.0, 0.0), (25.0, 0.0), (12.5, h)], r)
    }

    #[test]
    fn triangle_induced_vs_general() {
        let r = rules(Tech::Unrestricted, 3);
        let g = triangle(&r);
        assert_eq!(g.num_dsa_edges(), 3);
        let induced = enumerate_groups(&g, &r, GroupMode::Induced).unwrap();
        // every chain of all three has a chord
        assert_eq!(induced.len(), 6);
        assert!(!sets(&induced).contains(&vec![0, 1, 2]));
        let general = enumerate_groups(&g, &r, GroupMode::General).unwrap();
        assert_eq!(general.len(), 7);
        assert!(sets(&general).contains(&vec![0, 1, 2]));
    }

    #[test]
    fn k_max_one_gives_singletons_only() {
        let r = rules(Tech::Unrestricted, 1);
        let g = triangle(&r);
        for mode in [GroupMode::Induced, GroupMode::General] {
            let cat = enumerate_groups(&g, &r, mode).unwrap();
            assert_eq!(cat.len(), 3);
            assert!(cat.groups.iter().all(|gr| gr.kind == GroupKind::Singleton));
        }
    }

    #[test]
    fn witness_chains_walk_dsa_edges() {
        let l = generate_random_layout(80, 2.2, 3).unwrap();
        for tech in [Tech::Axis193i, Tech::EuvAngle, Tech::Unrestricted] {
            let r = rules(tech, 3);
            let g = ConflictGraph::build(&l, &r);
            for mode in [GroupMode::Induced, GroupMode::General] {
                let cat = enumerate_groups(&g, &r, mode).unwrap();
                for gr in &cat.groups {
                    for pair in gr.vertices.windows(2) {
                        assert!(g.has_dsa_edge(pair[0], pair[1]));
                    }
                }
            }
        }
    }

    #[test]
    fn induced_catalog_is_subset_of_general() {
        let l = generate_random_layout(60, 2.2, 5).unwrap();
        let r = rules(Tech::Unrestricted, 3);
        let g = ConflictGraph::build(&l, &r);
        let induced = sets(&enumerate_groups(&g, &r, GroupMode::Induced).unwrap());
        let general = sets(&enumerate_groups(&g, &r, GroupMode::General).unwrap());
        for s in &induced {
            assert!(general.contains(s), "induced group {s:?} missing from general");
        }
    }

    #[test]
    fn conflict_relation_examples() {
        // a-b adjacent singles conflict; disjoint far groups do not
        let r = rules(Tech::Axis193i, 2);
        let g = graph(vec![(0.0, 0.0), (25.0, 0.0), (200.0, 0.0), (225.0, 0.0)], &r);
        let cat = enumerate_groups(&g, &r, GroupMode::Induced).unwrap();
        let idx = |s: &[usize]| {
            cat.groups
                .iter()
                .position(|g| g.sorted_members() == s)
                .unwrap()
        };
        let s0 = idx(&[0]);
        let s1 = idx(&[1]);
        let ab = idx(&[0, 1]);
        let cd = idx(&[2, 3]);
        assert!(cat.conflicts_with(s0, s1)); // conflict edge between them
        assert!(cat.conflicts_with(s0, ab)); // shared vertex
        assert!(!cat.conflicts_with(ab, cd)); // disjoint, no edge between
    }

    #[test]
    fn overlapping_chains_conflict() {
        let r = rules(Tech::Axis193i, 2);
        let g = graph(vec![(0.0, 0.0), (25.0, 0.0), (50.0, 0.0)], &r);
        let cat = enumerate_groups(&g, &r, GroupMode::Induced).unwrap();
        let idx = |s: &[usize]| {
            cat.groups
                .iter()
                .position(|g| g.sorted_members() == s)
                .unwrap()
        };
        assert!(cat.conflicts_with(idx(&[0, 1]), idx(&[1, 2])));
    }

    #[test]
    fn no_l_shapes_on_a_line() {
        let r = rules(Tech::Axis193i, 3);
        let g = graph(vec![(0.0, 0.0), (25.0, 0.0), (50.0, 0.0)], &r);
        assert!(l_shape_triples(&g).is_empty());
        let single = graph(vec![(0.0, 0.0), (25.0, 0.0)], &r);
        assert!(l_shape_triples(&single).is_empty());
    }

    #[test]
    fn catalog_cap_refuses_with_counts() {
        let r = rules(Tech::Axis193i, 3);
        let g = graph(vec![(0.0, 0.0), (25.0, 0.0), (50.0, 0.0)], &r);
        match enumerate_groups_capped(&g, &r, GroupMode::Induced, 4) {
            Err(GroupError::CatalogTooLarge { count, cap, .. }) => {
                assert!(count > cap);
                assert_eq!(cap, 4);
            }
            other => panic!("expected cap refusal, got {other:?}"),
        }
    }

    #[test]
    fn relabeling_preserves_group_sets() {
        let l = generate_random_layout(40, 2.0, 8).unwrap();
        let r = rules(Tech::Unrestricted, 3);
        let g = ConflictGraph::build(&l, &r);
        let cat = enumerate_groups(&g, &r, GroupMode::General).unwrap();
        let n = l.len();
        let rev: Vec<(f64, f64)> = l.vias.iter().rev().map(|v| (v.x, v.y)).collect();
        let l2 = Layout::new(rev, l.diameter).unwrap();
        let g2 = ConflictGraph::build(&l2, &r);
        let cat2 = enumerate_groups(&g2, &r, GroupMode::General).unwrap();
        let mut mapped: Vec<Vec<usize>> = cat2
            .groups
            .iter()
            .map(|gr| {
                let mut m: Vec<usize> = gr.vertices.iter().map(|&v| n - 1 - v).collect();
                m.sort_unstable();
                m
            })
            .collect();
        mapped.sort();
        assert_eq!(mapped, sets(&cat));
    }

    /// Under 193i with k_max 3, general mode only adds sets when three
    /// collinear vias have the outer pair in conflict and both gaps in the
    /// pairing window. Without such a configuration the catalogs coincide.
    #[test]
    fn general_equals_induced_when_premise_holds() {
        let r = rules(Tech::Axis193i, 3);
        // spacing 25: outer pair at 50 is out of conflict range
        let g = graph(vec![(0.0, 0.0), (25.0, 0.0), (50.0, 0.0)], &r);
        let a = sets(&enumerate_groups(&g, &r, GroupMode::Induced).unwrap());
        let b = sets(&enumerate_groups(&g, &r, GroupMode::General).unwrap());
        assert_eq!(a, b);
        // spacing 20: outer pair at 40 conflicts (border 30 < 31), premise
        // fails and general mode keeps the full triple
        let g2 = graph(vec![(0.0, 0.0), (20.0, 0.0), (40.0, 0.0)], &r);
        let a2 = sets(&enumerate_groups(&g2, &r, GroupMode::Induced).unwrap());
        let b2 = sets(&enumerate_groups(&g2, &r, GroupMode::General).unwrap());
        assert!(!a2.contains(&vec![0, 1, 2]));
        assert!(b2.contains(&vec![0, 1, 2]));
    }

    #[test]
    fn euv_angle_window_filters_sharp_bends() {
        // bend of 90 degrees at the middle via: outside [135, 225]
        let mut r = rules(Tech::EuvAngle, 3);
        let g = graph(vec![(0.0, 0.0), (25.0, 0.0), (25.0, 35.0)], &r);
        let cat = enumerate_groups(&g, &r, GroupMode::Induced).unwrap();
        assert!(!sets(&cat).contains(&vec![0, 1, 2]));
        // widen the window and the bend becomes legal
        r.angle_window_deg = (80.0, 280.0);
        let cat2 = enumerate_groups(&g, &r, GroupMode::Induced).unwrap();
        assert!(sets(&cat2).contains(&vec![0, 1, 2]));
    }

    #[test]
    fn forbidden_triples_match_tech() {
        // right angle at via 1; the diagonal pair is too far apart to pair
        let l_points = vec![(0.0, 0.0), (25.0, 0.0), (25.0, 35.0)];
        let r193 = rules(Tech::Axis193i, 3);
        let g = graph(l_points.clone(), &r193);
        assert_eq!(forbidden_triples(&g, &r193), vec![(0, 1, 2)]);
        let reuv = rules(Tech::EuvAngle, 3);
        let geuv = graph(l_points.clone(), &reuv);
        assert_eq!(forbidden_triples(&geuv, &reuv), vec![(0, 1, 2)]);
        let mut runr = rules(Tech::Unrestricted, 3);
        let gunr = graph(l_points, &runr);
        assert!(forbidden_triples(&gunr, &runr).is_empty());
        runr.remove_l_shapes = true;
        assert_eq!(forbidden_triples(&gunr, &runr), vec![(0, 1, 2)]);
    }
}
