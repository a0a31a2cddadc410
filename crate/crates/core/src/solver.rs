//! Exact native solver for grouped coloring plus a small-instance oracle.
//!
//! The solver branches over (group, color) choices for one uncovered via at
//! a time, with a greedy incumbent and clique lower bounds. It is
//! deterministic for fixed inputs: the time budget can truncate the search
//! but never reorders it. Whole layouts are solved per connected component
//! and merged, since colors can be reused freely across components.

use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::conflict::{connected_components, max_clique_adj, Component, ConflictGraph};
use crate::groups::{enumerate_groups, GroupCatalog, GroupError, GroupMode};
use crate::layout::{Layout, TechRules};

#[derive(Debug, Clone)]
pub struct SolveBudget {
    pub time_limit: f64,
    pub node_limit: u64,
    pub parallel_components: bool,
}

impl Default for SolveBudget {
    fn default() -> SolveBudget {
        SolveBudget {
            time_limit: 3600.0,
            node_limit: u64::MAX,
            parallel_components: true,
        }
    }
}

/// A grouped coloring of one catalog instance. Group indices refer to the
/// catalog the solve ran against; vertex ids are local to its graph.
#[derive(Debug, Clone)]
pub struct ColoringSolution {
    /// Catalog group indices per color, colors in use order.
    pub classes: Vec<Vec<usize>>,
    /// 1-based color per vertex.
    pub color_of: Vec<usize>,
    /// Chain order of the group containing each vertex.
    pub group_of: Vec<Vec<usize>>,
    pub num_colors: usize,
    pub optimal: bool,
    pub lower_bound: usize,
    pub elapsed: f64,
    /// Seconds into the solve at which the returned classes were found.
    pub time_to_best: f64,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("no solution within {bound} colors ({})", if *.proven { "proven" } else { "search truncated" })]
    NoSolutionWithin { bound: usize, proven: bool },
    #[error("instance has {n} vias, oracle accepts at most {max_n}")]
    TooLarge { n: usize, max_n: usize },
    #[error(transparent)]
    Catalog(#[from] GroupError),
}

/// Minimize the number of colors over group selections from the catalog.
/// Returns a proven optimum when the search completes within budget,
/// otherwise the best incumbent with `optimal` unset.
pub fn solve_exact(
    catalog: &GroupCatalog,
    g: &ConflictGraph,
    color_bound: usize,
    budget: &SolveBudget,
) -> Result<ColoringSolution, SolveError> {
    let start = Instant::now();
    let n = g.n();
    if n == 0 {
        return Ok(ColoringSolution {
            classes: Vec::new(),
            color_of: Vec::new(),
            group_of: Vec::new(),
            num_colors: 0,
            optimal: true,
            lower_bound: 0,
            elapsed: start.elapsed().as_secs_f64(),
            time_to_best: 0.0,
        });
    }
    assert!(color_bound >= 1);
    let lb = lower_bound(catalog, g);
    let greedy = greedy_classes(catalog, g);
    let mut search = Search {
        catalog,
        g,
        color_bound,
        covered: vec![false; n],
        classes: Vec::new(),
        adj_color: vec![vec![0u32; color_bound + 1]; n],
        saturation: vec![0u32; n],
        best: None,
        best_len: color_bound + 1,
        best_at: 0.0,
        lb,
        nodes: 0,
        node_limit: budget.node_limit,
        deadline: budget.time_limit,
        started: start,
        truncated: false,
    };
    if greedy.len() <= color_bound {
        search.best_len = greedy.len();
        search.best = Some(greedy);
        search.best_at = start.elapsed().as_secs_f64();
    }
    if search.best_len != lb {
        search.branch();
    }
    let truncated = search.truncated;
    let best_at = search.best_at;
    match search.best {
        Some(classes) => {
            let optimal = !truncated || classes.len() == lb;
            let lower = if optimal { classes.len() } else { lb };
            Ok(assemble(catalog, n, classes, optimal, lower, start, best_at))
        }
        None => Err(SolveError::NoSolutionWithin {
            bound: color_bound,
            proven: !truncated,
        }),
    }
}

fn assemble(
    catalog: &GroupCatalog,
    n: usize,
    mut classes: Vec<Vec<usize>>,
    optimal: bool,
    lower_bound: usize,
    start: Instant,
    time_to_best: f64,
) -> ColoringSolution {
    for class in classes.iter_mut() {
        class.sort_unstable();
    }
    let mut color_of = vec![0usize; n];
    let mut group_of = vec![Vec::new(); n];
    for (ci, class) in classes.iter().enumerate() {
        for &gi in class {
            for &v in &catalog.groups[gi].vertices {
                color_of[v] = ci + 1;
                group_of[v] = catalog.groups[gi].vertices.clone();
            }
        }
    }
    ColoringSolution {
        num_colors: classes.len(),
        classes,
        color_of,
        group_of,
        optimal,
        lower_bound,
        elapsed: start.elapsed().as_secs_f64(),
        time_to_best,
    }
}

/// max over: one color needed at all, clique number divided by the largest
/// group, and the clique number among vias no multi-via group can absorb.
fn lower_bound(catalog: &GroupCatalog, g: &ConflictGraph) -> usize {
    let n = g.n();
    let omega = max_clique_adj(g.adjacency());
    let max_gs = catalog.max_group_size().max(1);
    let mut lb = omega.div_ceil(max_gs).max(usize::from(n >= 1));
    let loners: Vec<usize> = (0..n).filter(|&v| catalog.membership(v).len() == 1).collect();
    if loners.len() > 1 {
        let index: std::collections::HashMap<usize, usize> =
            loners.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj: Vec<Vec<usize>> = loners
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .filter_map(|u| index.get(u).copied())
                    .collect()
            })
            .collect();
        lb = lb.max(max_clique_adj(&adj));
    }
    lb
}

/// First-fit cover: walk vias in order, give each uncovered via its largest
/// available group and the first color that group fits in.
fn greedy_classes(catalog: &GroupCatalog, g: &ConflictGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut covered = vec![false; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if covered[v] {
            continue;
        }
        let gi = candidate_groups(catalog, &covered, v)
            .next()
            .expect("every via has its singleton group");
        let slot = classes
            .iter()
            .position(|class| class.iter().all(|&h| !catalog.conflicts_with(gi, h)));
        match slot {
            Some(ci) => classes[ci].push(gi),
            None => classes.push(vec![gi]),
        }
        for &u in &catalog.groups[gi].vertices {
            covered[u] = true;
        }
    }
    classes
}

/// Groups containing `v` whose members are all uncovered, largest first,
/// catalog order inside one size.
fn candidate_groups<'a>(
    catalog: &'a GroupCatalog,
    covered: &'a [bool],
    v: usize,
) -> impl Iterator<Item = usize> + 'a {
    let mut cands: Vec<usize> = catalog
        .membership(v)
        .iter()
        .copied()
        .filter(|&gi| catalog.groups[gi].vertices.iter().all(|&u| !covered[u]))
        .collect();
    cands.sort_by_key(|&gi| (usize::MAX - catalog.groups[gi].len(), gi));
    cands.into_iter()
}

struct Search<'a> {
    catalog: &'a GroupCatalog,
    g: &'a ConflictGraph,
    color_bound: usize,
    covered: Vec<bool>,
    classes: Vec<Vec<usize>>,
    /// per (vertex, color): covered conflict neighbors carrying that color
    adj_color: Vec<Vec<u32>>,
    saturation: Vec<u32>,
    best: Option<Vec<Vec<usize>>>,
    best_len: usize,
    best_at: f64,
    lb: usize,
    nodes: u64,
    node_limit: u64,
    deadline: f64,
    started: Instant,
    truncated: bool,
}

enum Pick {
    /// Every via is covered.
    Done,
    /// Some via has no feasible move; the subtree is infeasible.
    Stuck,
    Vertex(usize),
}

enum Cover {
    Feasible,
    Infeasible,
    Truncated,
}

impl Search<'_> {
    /// Returns true when the search should unwind (budget or proven-best).
    fn branch(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.node_limit
            || (self.nodes & 1023 == 0
                && self.started.elapsed().as_secs_f64() > self.deadline)
        {
            self.truncated = true;
            return true;
        }
        if self.classes.len() >= self.best_len {
            return false;
        }
        let maxc = (self.classes.len() + 1).min(self.best_len - 1).min(self.color_bound);
        if maxc == self.classes.len() {
            // No fresh class can open below the incumbent, so what remains
            // is a pure decision problem. It factors over E-connected
            // regions of the uncovered subgraph: the class list is fixed
            // and F is a subset of E, so regions never interact.
            let pool: Vec<usize> = (0..self.g.n()).filter(|&v| !self.covered[v]).collect();
            let mut trail = Vec::new();
            let outcome = self.cover_all(&pool, &mut trail);
            if matches!(outcome, Cover::Feasible) {
                self.best_len = self.classes.len();
                self.best = Some(self.classes.clone());
                self.best_at = self.started.elapsed().as_secs_f64();
            }
            for &(gi, c) in trail.iter().rev() {
                self.unassign(gi, c);
            }
            return matches!(outcome, Cover::Truncated) || self.best_len == self.lb;
        }
        let v = match self.pick_vertex() {
            Pick::Vertex(v) => v,
            Pick::Stuck => return false,
            Pick::Done => {
                // full cover strictly better than the incumbent
                self.best_len = self.classes.len();
                self.best = Some(self.classes.clone());
                self.best_at = self.started.elapsed().as_secs_f64();
                return self.best_len == self.lb;
            }
        };
        let groups: Vec<usize> = candidate_groups(self.catalog, &self.covered, v).collect();
        for gi in groups {
            let colors = (self.classes.len() + 1).min(self.best_len - 1).min(self.color_bound);
            for c in 1..=colors {
                if !self.fits(gi, c) {
                    continue;
                }
                self.assign(gi, c);
                let stop = self.branch();
                self.unassign(gi, c);
                if stop {
                    return true;
                }
            }
        }
        false
    }

    /// Cover every uncovered via in `pool` using only the existing classes.
    /// `pool` is closed under uncovered E-adjacency, so its regions are
    /// independent: all must succeed. On `Infeasible` the state is restored
    /// to the call point; on success the assignments stay on `trail`.
    fn cover_all(&mut self, pool: &[usize], trail: &mut Vec<(usize, usize)>) -> Cover {
        let mut parts = self.split_parts(pool);
        parts.sort_by_key(Vec::len);
        let mark = trail.len();
        for part in &parts {
            match self.cover_one(part, trail) {
                Cover::Feasible => {}
                Cover::Truncated => return Cover::Truncated,
                Cover::Infeasible => {
                    while trail.len() > mark {
                        let (gi, c) = trail.pop().unwrap();
                        self.unassign(gi, c);
                    }
                    return Cover::Infeasible;
                }
            }
        }
        Cover::Feasible
    }

    /// Decision search on one E-connected region of uncovered vias.
    fn cover_one(&mut self, part: &[usize], trail: &mut Vec<(usize, usize)>) -> Cover {
        self.nodes += 1;
        if self.nodes > self.node_limit
            || (self.nodes & 1023 == 0
                && self.started.elapsed().as_secs_f64() > self.deadline)
        {
            self.truncated = true;
            return Cover::Truncated;
        }
        let v = match self.pick_in(part) {
            Pick::Vertex(v) => v,
            Pick::Stuck => return Cover::Infeasible,
            Pick::Done => return Cover::Feasible,
        };
        let mark = trail.len();
        let groups: Vec<usize> = candidate_groups(self.catalog, &self.covered, v).collect();
        for gi in groups {
            for c in 1..=self.classes.len() {
                if !self.fits(gi, c) {
                    continue;
                }
                self.assign(gi, c);
                trail.push((gi, c));
                match self.cover_all(part, trail) {
                    Cover::Feasible => return Cover::Feasible,
                    Cover::Truncated => return Cover::Truncated,
                    Cover::Infeasible => {
                        while trail.len() > mark {
                            let (hg, hc) = trail.pop().unwrap();
                            self.unassign(hg, hc);
                        }
                    }
                }
            }
        }
        Cover::Infeasible
    }

    /// E-connected regions of the uncovered vias in `pool`, each listed in
    /// discovery order.
    fn split_parts(&self, pool: &[usize]) -> Vec<Vec<usize>> {
        let mut state = vec![0u8; self.g.n()];
        for &v in pool {
            if !self.covered[v] {
                state[v] = 1;
            }
        }
        let mut parts = Vec::new();
        for &v in pool {
            if state[v] != 1 {
                continue;
            }
            state[v] = 2;
            let mut queue = vec![v];
            let mut part = Vec::new();
            while let Some(u) = queue.pop() {
                part.push(u);
                for &w in self.g.neighbors(u) {
                    if state[w] == 1 {
                        state[w] = 2;
                        queue.push(w);
                    }
                }
            }
            parts.push(part);
        }
        parts
    }

    /// A group joins a class only when no member has a covered conflict
    /// neighbor carrying that color; a class beyond the current list is
    /// fresh and accepts anything.
    fn fits(&self, gi: usize, c: usize) -> bool {
        c > self.classes.len()
            || self.catalog.groups[gi]
                .vertices
                .iter()
                .all(|&m| self.adj_color[m][c] == 0)
    }

    /// Fail-first pruning with saturation branching: a via with no feasible
    /// (group, color) move fails the node outright, a via with exactly one
    /// is branched before anything else (its move is forced), and otherwise
    /// the most saturated via is branched, ties to higher conflict degree
    /// then higher id. A via with zero moves can never be rescued later,
    /// since fresh classes accept anything and class room only shrinks.
    fn pick_vertex(&self) -> Pick {
        let maxc = (self.classes.len() + 1).min(self.best_len - 1).min(self.color_bound);
        let mut fallback: Option<(u32, usize, usize)> = None;
        for v in 0..self.g.n() {
            if self.covered[v] {
                continue;
            }
            match self.moves_capped(v, maxc, 2) {
                0 => return Pick::Stuck,
                1 => return Pick::Vertex(v),
                _ => {
                    let key = (self.saturation[v], self.g.degree(v), v);
                    if fallback.map_or(true, |cur| key > cur) {
                        fallback = Some(key);
                    }
                }
            }
        }
        match fallback {
            Some((_, _, v)) => Pick::Vertex(v),
            None => Pick::Done,
        }
    }

    /// `pick_vertex` restricted to one region, with the class list fixed.
    fn pick_in(&self, part: &[usize]) -> Pick {
        let maxc = self.classes.len();
        let mut fallback: Option<(u32, usize, usize)> = None;
        for &v in part {
            if self.covered[v] {
                continue;
            }
            match self.moves_capped(v, maxc, 2) {
                0 => return Pick::Stuck,
                1 => return Pick::Vertex(v),
                _ => {
                    let key = (self.saturation[v], self.g.degree(v), v);
                    if fallback.map_or(true, |cur| key > cur) {
                        fallback = Some(key);
                    }
                }
            }
        }
        match fallback {
            Some((_, _, v)) => Pick::Vertex(v),
            None => Pick::Done,
        }
    }

    /// Feasible (group, color) moves for `v`; counting stops at `cap`.
    fn moves_capped(&self, v: usize, maxc: usize, cap: usize) -> usize {
        let mut moves = 0;
        for &gi in self.catalog.membership(v) {
            if self.catalog.groups[gi]
                .vertices
                .iter()
                .any(|&u| self.covered[u])
            {
                continue;
            }
            for c in 1..=maxc {
                if self.fits(gi, c) {
                    moves += 1;
                    if moves >= cap {
                        return moves;
                    }
                }
            }
        }
        moves
    }

    fn assign(&mut self, gi: usize, color: usize) {
        if color > self.classes.len() {
            self.classes.push(Vec::new());
        }
        self.classes[color - 1].push(gi);
        for &m in &self.catalog.groups[gi].vertices {
            self.covered[m] = true;
            for &u in self.g.neighbors(m) {
                let slot = &mut self.adj_color[u][color];
                if *slot == 0 {
                    self.saturation[u] += 1;
                }
                *slot += 1;
            }
        }
    }

    fn unassign(&mut self, gi: usize, color: usize) {
        for &m in &self.catalog.groups[gi].vertices {
            self.covered[m] = false;
            for &u in self.g.neighbors(m) {
                let slot = &mut self.adj_color[u][color];
                *slot -= 1;
                if *slot == 0 {
                    self.saturation[u] -= 1;
                }
            }
        }
        let class = &mut self.classes[color - 1];
        class.pop();
        if class.is_empty() && color == self.classes.len() {
            self.classes.pop();
        }
    }
}

/// Exact minimum by exhaustive enumeration: cover vias lowest-first with
/// catalog groups, colors assigned in canonical first-use order, pruned
/// only by the best count found so far. Independent of the solver above.
pub fn brute_force_oracle(
    catalog: &GroupCatalog,
    g: &ConflictGraph,
    max_n: usize,
) -> Result<usize, SolveError> {
    let n = g.n();
    if n > max_n {
        return Err(SolveError::TooLarge { n, max_n });
    }
    if n == 0 {
        return Ok(0);
    }
    fn recurse(
        catalog: &GroupCatalog,
        covered: &mut Vec<bool>,
        classes: &mut Vec<Vec<usize>>,
        best: &mut usize,
    ) {
        if classes.len() >= *best {
            return;
        }
        let v = match covered.iter().position(|&c| !c) {
            Some(v) => v,
            None => {
                *best = classes.len();
                return;
            }
        };
        for &gi in catalog.membership(v) {
            if !catalog.groups[gi].vertices.iter().all(|&u| !covered[u]) {
                continue;
            }
            for &u in &catalog.groups[gi].vertices {
                covered[u] = true;
            }
            for ci in 0..=classes.len().min(*best - 1) {
                if ci == classes.len() {
                    classes.push(vec![gi]);
                    recurse(catalog, covered, classes, best);
                    classes.pop();
                    break;
                }
                if classes[ci].iter().all(|&h| !catalog.conflicts_with(gi, h)) {
                    classes[ci].push(gi);
                    recurse(catalog, covered, classes, best);
                    classes[ci].pop();
                }
            }
            for &u in &catalog.groups[gi].vertices {
                covered[u] = false;
            }
        }
    }
    let mut best = n + 1;
    recurse(
        catalog,
        &mut vec![false; n],
        &mut Vec::new(),
        &mut best,
    );
    debug_assert!(best <= n, "singleton cover always exists");
    Ok(best)
}

/// One component's instance data and solution, ids mapped back to the
/// original layout.
#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub original_ids: Vec<usize>,
    pub n_vertices: usize,
    pub n_edges: usize,
    pub n_dsa_edges: usize,
    pub catalog_size: usize,
    pub solution: ColoringSolution,
}

/// A coloring of the whole layout in original vertex ids.
#[derive(Debug, Clone)]
pub struct MergedColoring {
    /// 1-based color per via.
    pub color_of: Vec<usize>,
    /// Chain order of the group containing each via.
    pub group_of: Vec<Vec<usize>>,
    pub num_colors: usize,
    pub optimal: bool,
    pub lower_bound: usize,
    pub elapsed: f64,
}

impl MergedColoring {
    /// Distinct groups per color, each in chain order, colors 1..=num.
    pub fn groups_by_color(&self) -> Vec<Vec<Vec<usize>>> {
        let mut by_color = vec![Vec::new(); self.num_colors];
        let mut seen = vec![false; self.color_of.len()];
        for v in 0..self.color_of.len() {
            if seen[v] {
                continue;
            }
            let group = &self.group_of[v];
            for &m in group {
                seen[m] = true;
            }
            by_color[self.color_of[v] - 1].push(group.clone());
        }
        by_color
    }

    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let _ = writeln!(out, "colors {}", self.num_colors);
        let _ = writeln!(out, "optimal {}", self.optimal);
        let _ = writeln!(out, "bound {}", self.lower_bound);
        let _ = writeln!(out, "elapsed {:.3}", self.elapsed);
        for v in 0..self.color_of.len() {
            let members: Vec<String> =
                self.group_of[v].iter().map(|m| m.to_string()).collect();
            let _ = writeln!(
                out,
                "v {} color {} group {}",
                v,
                self.color_of[v],
                members.join(" ")
            );
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<MergedColoring, String> {
        let mut lines = text.lines().enumerate();
        let mut header = |key: &str| -> Result<String, String> {
            let (idx, line) = lines
                .next()
                .ok_or_else(|| format!("missing `{key}` header line"))?;
            let rest = line
                .strip_prefix(key)
                .ok_or_else(|| format!("line {}: expected `{key} ...`", idx + 1))?;
            Ok(rest.trim().to_string())
        };
        let num_colors: usize = header("colors")?
            .parse()
            .map_err(|e| format!("bad color count: {e}"))?;
        let optimal: bool = header("optimal")?
            .parse()
            .map_err(|e| format!("bad optimal flag: {e}"))?;
        let lower_bound: usize = header("bound")?
            .parse()
            .map_err(|e| format!("bad bound: {e}"))?;
        let elapsed: f64 = header("elapsed")?
            .parse()
            .map_err(|e| format!("bad elapsed: {e}"))?;
        let mut rows: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 6 || toks[0] != "v" || toks[2] != "color" || toks[4] != "group" {
                return Err(format!(
                    "line {lineno}: expected `v <id> color <c> group <members...>`"
                ));
            }
            let parse =
                |t: &str| t.parse::<usize>().map_err(|e| format!("line {lineno}: {e}"));
            let id = parse(toks[1])?;
            let color = parse(toks[3])?;
            let members = toks[5..]
                .iter()
                .map(|t| parse(t))
                .collect::<Result<Vec<usize>, String>>()?;
            if color == 0 || color > num_colors {
                return Err(format!("line {lineno}: color {color} out of range"));
            }
            if !members.contains(&id) {
                return Err(format!("line {lineno}: via {id} missing from its group"));
            }
            rows.push((id, color, members));
        }
        let n = rows.len();
        let mut color_of = vec![0usize; n];
        let mut group_of = vec![Vec::new(); n];
        for (id, color, members) in rows {
            if id >= n {
                return Err(format!("via id {id} out of range for {n} rows"));
            }
            if color_of[id] != 0 {
                return Err(format!("via {id} listed twice"));
            }
            color_of[id] = color;
            group_of[id] = members;
        }
        for v in 0..n {
            for &m in &group_of[v] {
                if m >= n || group_of[m] != group_of[v] || color_of[m] != color_of[v] {
                    return Err(format!("group of via {v} is inconsistent at member {m}"));
                }
            }
        }
        Ok(MergedColoring {
            color_of,
            group_of,
            num_colors,
            optimal,
            lower_bound,
            elapsed,
        })
    }
}

#[derive(Debug)]
pub struct LayoutSolution {
    pub components: Vec<ComponentReport>,
    pub merged: MergedColoring,
}

/// Solve a layout per connected component and merge, reusing colors across
/// components. The merged color count is the maximum over components.
pub fn solve_layout(
    layout: &Layout,
    rules: &TechRules,
    mode: GroupMode,
    budget: &SolveBudget,
) -> Result<LayoutSolution, SolveError> {
    let start = Instant::now();
    let g = ConflictGraph::build(layout, rules);
    let comps = connected_components(&g);
    let solve_one = |comp: &Component| -> Result<ComponentReport, SolveError> {
        let catalog = enumerate_groups(&comp.graph, rules, mode)?;
        let solution = solve_exact(&catalog, &comp.graph, rules.color_bound, budget)?;
        Ok(ComponentReport {
            original_ids: comp.original_ids.clone(),
            n_vertices: comp.graph.n(),
            n_edges: comp.graph.num_edges(),
            n_dsa_edges: comp.graph.num_dsa_edges(),
            catalog_size: catalog.len(),
            solution,
        })
    };
    let components: Vec<ComponentReport> = if budget.parallel_components {
        comps
            .par_iter()
            .map(solve_one)
            .collect::<Result<Vec<_>, _>>()?
    } else {
        comps
            .iter()
            .map(solve_one)
            .collect::<Result<Vec<_>, _>>()?
    };
    let n = g.n();
    let mut color_of = vec![0usize; n];
    let mut group_of = vec![Vec::new(); n];
    for report in &components {
        for (local, &orig) in report.original_ids.iter().enumerate() {
            color_of[orig] = report.solution.color_of[local];
            group_of[orig] = report.solution.group_of[local]
                .iter()
                .map(|&m| report.original_ids[m])
                .collect();
        }
    }
    let merged = MergedColoring {
        color_of,
        group_of,
        num_colors: components
            .iter()
            .map(|r| r.solution.num_colors)
            .max()
            .unwrap_or(0),
        optimal: components.iter().all(|r| r.solution.optimal),
        lower_bound: components
            .iter()
            .map(|r| r.solution.lower_bound)
            .max()
            .unwrap_or(0),
        elapsed: start.elapsed().as_secs_f64(),
    };
    // cross-component conflicts cannot exist; fail loudly if they do
    for (u, v, _) in g.edges() {
        if merged.color_of[u] == merged.color_of[v] {
            assert_eq!(
                merged.group_of[u], merged.group_of[v],
                "conflicting vias {u} and {v} share color {} in different groups",
                merged.color_of[u]
            );
        }
    }
    Ok(LayoutSolution { components, merged })
}
