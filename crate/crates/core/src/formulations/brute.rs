//! Exhaustive optima for small instances, decided by the models themselves.
//!
//! Each routine walks candidate colorings from the cheapest color count up,
//! translates every candidate into a full variable assignment, and accepts
//! it only if the built model's constraint check does. The structural work
//! here merely shapes witnesses; acceptance always goes through
//! [`IpModel::satisfies_dense`], so these routines double as an independent
//! check of the builders themselves.

use crate::conflict::ConflictGraph;
use crate::groups::GroupCatalog;

use super::{l_name, xe_name, xg_name, xo_name, yo_name, ys_name, z_name, IpModel};

/// Smallest color count accepted by the pair model, or None if even the
/// model's color bound does not suffice.
pub fn pairing_optimum(model: &IpModel, g: &ConflictGraph) -> Option<usize> {
    let n = g.n();
    search(model, n, |classes| {
        let mut cand = Candidate::new(model);
        cand.mark_colors(classes.len());
        for (ci, class) in classes.iter().enumerate() {
            let i = ci + 1;
            for &v in class {
                cand.set(z_name(i, v));
            }
            for (&u, &v) in distinct_pairs(class) {
                if g.has_dsa_edge(u, v) {
                    cand.set(xe_name(i, u, v));
                }
            }
        }
        cand.check()
    })
}

/// Smallest color count accepted by a catalog model. Works for the plain
/// and the strengthened form alike, which share their variables.
pub fn naive_optimum(model: &IpModel, catalog: &GroupCatalog) -> Option<usize> {
    let n = catalog.num_vertices();
    assert!(n <= 64, "enumeration uses 64-bit vertex masks");
    let group_masks: Vec<u64> = catalog
        .groups
        .iter()
        .map(|g| g.vertices.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    search(model, n, |classes| {
        // groups never span classes, so decompose each class on its own
        let mut decomps: Vec<Vec<Vec<usize>>> = Vec::with_capacity(classes.len());
        for class in classes {
            let mask = class.iter().fold(0u64, |m, &v| m | 1 << v);
            let mut found = Vec::new();
            collect_decompositions(catalog, &group_masks, mask, &mut Vec::new(), &mut found);
            if found.is_empty() {
                return false;
            }
            decomps.push(found);
        }
        let mut pick = vec![0usize; decomps.len()];
        try_products(&decomps, 0, &mut pick, &mut |pick| {
            let mut cand = Candidate::new(model);
            cand.mark_colors(classes.len());
            for (ci, &which) in pick.iter().enumerate() {
                for &gi in &decomps[ci][which] {
                    cand.set(xg_name(ci + 1, gi));
                }
            }
            cand.check()
        })
    })
}

/// Smallest color count accepted by the oriented chain model with the
/// chord-free reading: class components in the DSA graph must be chains of
/// at most k vias.
pub fn induced_optimum(model: &IpModel, g: &ConflictGraph, k: usize) -> Option<usize> {
    let n = g.n();
    search(model, n, |classes| {
        let mut cand = Candidate::new(model);
        cand.mark_colors(classes.len());
        for (ci, class) in classes.iter().enumerate() {
            let i = ci + 1;
            for &v in class {
                cand.set(z_name(i, v));
            }
            for (&u, &v) in distinct_pairs(class) {
                if g.has_dsa_edge(u, v) {
                    cand.set(xe_name(i, u, v));
                }
            }
            for comp in components_in_class(g, class) {
                // a class whose component is no chain gets no start or
                // orientation variables and is rejected by the check
                if comp.len() > k {
                    continue;
                }
                if let Some(order) = chain_order(g, &comp) {
                    cand.set(ys_name(i, order[0]));
                    for (kappa, pair) in order.windows(2).enumerate() {
                        cand.set(xo_name(i, kappa, pair[0], pair[1]));
                    }
                }
            }
        }
        cand.check()
    })
}

/// Smallest color count accepted by the origin-labeled chain model: class
/// components in the conflict graph must be spanned by a DSA chain of at
/// most k vias.
pub fn general_optimum(model: &IpModel, g: &ConflictGraph, k: usize) -> Option<usize> {
    let n = g.n();
    search(model, n, |classes| {
        let mut cand = Candidate::new(model);
        cand.mark_colors(classes.len());
        for (ci, class) in classes.iter().enumerate() {
            let i = ci + 1;
            for &v in class {
                cand.set(z_name(i, v));
            }
            for comp in conflict_components_in_class(g, class) {
                if comp.len() > k {
                    continue;
                }
                if let Some(order) = hamiltonian_chain(g, &comp) {
                    let origin = order[0];
                    for &v in &comp {
                        cand.set(yo_name(i, v, origin));
                    }
                    for (kappa, pair) in order.windows(2).enumerate() {
                        cand.set(xo_name(i, kappa, pair[0], pair[1]));
                        cand.set(xe_name(i, pair[0], pair[1]));
                    }
                }
            }
        }
        cand.check()
    })
}

/// Proper chromatic number of the conflict graph by plain backtracking,
/// independent of any model.
pub fn chromatic_number(g: &ConflictGraph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    fn feasible(g: &ConflictGraph, colors: &mut Vec<usize>, v: usize, n: usize, t: usize) -> bool {
        if v == n {
            return true;
        }
        let used = colors.iter().copied().max().map_or(0, |m| m + 1);
        for c in 0..t.min(used + 1) {
            if g.neighbors(v).iter().all(|&u| u >= v || colors[u] != c) {
                colors.push(c);
                if feasible(g, colors, v + 1, n, t) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    for t in 1..=n {
        let mut colors = Vec::new();
        if feasible(g, &mut colors, 0, n, t) {
            return t;
        }
    }
    n
}

struct Candidate<'m> {
    model: &'m IpModel,
    values: Vec<f64>,
}

impl<'m> Candidate<'m> {
    fn new(model: &'m IpModel) -> Candidate<'m> {
        Candidate {
            model,
            values: vec![0.0; model.num_vars()],
        }
    }

    fn mark_colors(&mut self, used: usize) {
        for i in 1..=used {
            self.set(l_name(i));
        }
    }

    fn set(&mut self, name: String) {
        let id = self
            .model
            .var_id(&name)
            .unwrap_or_else(|| panic!("model {} lacks variable {name}", self.model.name));
        self.values[id] = 1.0;
    }

    fn check(&self) -> bool {
        self.model.satisfies_dense(&self.values)
    }
}

/// Try color counts from zero upward; within one count, enumerate
/// partitions of the vertices into that many classes in canonical order
/// (each class is opened by its smallest vertex).
fn search(
    model: &IpModel,
    n: usize,
    mut try_partition: impl FnMut(&[Vec<usize>]) -> bool,
) -> Option<usize> {
    for t in 0..=model.colors {
        if for_each_partition(n, t, &mut try_partition) {
            return Some(t);
        }
    }
    None
}

fn for_each_partition(
    n: usize,
    t: usize,
    f: &mut impl FnMut(&[Vec<usize>]) -> bool,
) -> bool {
    fn recurse(
        v: usize,
        n: usize,
        t: usize,
        classes: &mut Vec<Vec<usize>>,
        f: &mut impl FnMut(&[Vec<usize>]) -> bool,
    ) -> bool {
        if v == n {
            return classes.len() == t && f(classes);
        }
        for ci in 0..classes.len() {
            classes[ci].push(v);
            if recurse(v + 1, n, t, classes, f) {
                return true;
            }
            classes[ci].pop();
        }
        if classes.len() < t {
            classes.push(vec![v]);
            if recurse(v + 1, n, t, classes, f) {
                return true;
            }
            classes.pop();
        }
        false
    }
    recurse(0, n, t, &mut Vec::new(), f)
}

fn distinct_pairs(class: &[usize]) -> impl Iterator<Item = (&usize, &usize)> {
    class
        .iter()
        .enumerate()
        .flat_map(move |(i, u)| class[i + 1..].iter().map(move |v| (u, v)))
}

/// All ways to tile `mask` with catalog groups, always extending at the
/// lowest uncovered vertex.
fn collect_decompositions(
    catalog: &GroupCatalog,
    group_masks: &[u64],
    mask: u64,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if mask == 0 {
        out.push(chosen.clone());
        return;
    }
    let v = mask.trailing_zeros() as usize;
    for &gi in catalog.membership(v) {
        if group_masks[gi] & !mask == 0 {
            chosen.push(gi);
            collect_decompositions(catalog, group_masks, mask & !group_masks[gi], chosen, out);
            chosen.pop();
        }
    }
}

fn try_products(
    decomps: &[Vec<Vec<usize>>],
    ci: usize,
    pick: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if ci == decomps.len() {
        return f(pick);
    }
    for which in 0..decomps[ci].len() {
        pick[ci] = which;
        if try_products(decomps, ci + 1, pick, f) {
            return true;
        }
    }
    false
}

/// Connected components of the class in the DSA graph.
fn components_in_class(g: &ConflictGraph, class: &[usize]) -> Vec<Vec<usize>> {
    components_by(class, |v| g.dsa_neighbors(v))
}

/// Connected components of the class in the conflict graph.
fn conflict_components_in_class(g: &ConflictGraph, class: &[usize]) -> Vec<Vec<usize>> {
    components_by(class, |v| g.neighbors(v))
}

fn components_by<'a>(
    class: &[usize],
    neighbors: impl Fn(usize) -> &'a [usize],
) -> Vec<Vec<usize>> {
    let mut comps = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for &start in class {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = vec![start];
        seen.push(start);
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &u in neighbors(v) {
                if class.contains(&u) && !seen.contains(&u) {
                    seen.push(u);
                    comp.push(u);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Order the component as a chain when its internal DSA edges form one,
/// starting from the smaller endpoint.
fn chain_order(g: &ConflictGraph, comp: &[usize]) -> Option<Vec<usize>> {
    if comp.len() == 1 {
        return Some(comp.to_vec());
    }
    let deg = |v: usize| {
        g.dsa_neighbors(v)
            .iter()
            .filter(|u| comp.contains(u))
            .count()
    };
    let edges: usize = comp.iter().map(|&v| deg(v)).sum::<usize>() / 2;
    if edges != comp.len() - 1 || comp.iter().any(|&v| deg(v) > 2) {
        return None;
    }
    let &start = comp.iter().find(|&&v| deg(v) == 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    while order.len() < comp.len() {
        let v = *order.last().unwrap();
        let next = g
            .dsa_neighbors(v)
            .iter()
            .find(|&&u| u != prev && comp.contains(&u))?;
        prev = v;
        order.push(*next);
    }
    Some(order)
}

/// Any ordering of the component that walks DSA edges and visits every
/// vertex once, found by backtracking.
fn hamiltonian_chain(g: &ConflictGraph, comp: &[usize]) -> Option<Vec<usize>> {
    if comp.len() == 1 {
        return Some(comp.to_vec());
    }
    fn extend(g: &ConflictGraph, comp: &[usize], order: &mut Vec<usize>) -> bool {
        if order.len() == comp.len() {
            return true;
        }
        let v = *order.last().unwrap();
        for &u in g.dsa_neighbors(v) {
            if comp.contains(&u) && !order.contains(&u) {
                order.push(u);
                if extend(g, comp, order) {
                    return true;
                }
                order.pop();
            }
        }
        false
    }
    for &start in comp {
        let mut order = vec![start];
        if extend(g, comp, &mut order) {
            return Some(order);
        }
    }
    None
}
