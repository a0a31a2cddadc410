//! Builders for the five model flavors.
//!
//! All builders share conventions: colors are 1-based, the objective is the
//! sum of the color-use variables, an empty instance yields an empty model
//! (optimum 0), and constraints that would have an empty left-hand side are
//! not emitted. Symmetry breaking orders the color-use variables so that
//! color i can only be used when color i-1 is.

use std::collections::HashMap;

use crate::conflict::ConflictGraph;
use crate::groups::GroupCatalog;

use super::{
    l_name, xe_name, xg_name, xo_name, yo_name, ys_name, z_name, IpModel, ModelError, Sense,
};

/// Ceiling on variable count, constraint count, and (a quarter of) the
/// coefficient count of a model before building refuses.
pub const DEFAULT_MODEL_CAP: usize = 10_000_000;

type Triple = (usize, usize, usize);

/// Pair coloring: every color class is a matching in the DSA graph plus
/// isolated vertices, with no conflict edge inside a class.
pub fn build_pairing(g: &ConflictGraph, colors: usize, lshape: &[Triple], sym: bool) -> IpModel {
    assert!(colors >= 1);
    let n = g.n();
    let mut m = IpModel::new("pairing", colors);
    if n == 0 {
        return m;
    }
    let fedges: Vec<(usize, usize)> = g.dsa_edges().collect();
    let eindex = edge_index(&fedges);
    let mut l = vec![0usize; colors + 1];
    let mut z = vec![vec![0usize; n]; colors + 1];
    let mut xe = vec![vec![0usize; fedges.len()]; colors + 1];
    for i in 1..=colors {
        l[i] = m.add_var(l_name(i));
        m.add_objective_term(1.0, l[i]);
        for v in 0..n {
            z[i][v] = m.add_var(z_name(i, v));
        }
        for (e, &(u, v)) in fedges.iter().enumerate() {
            xe[i][e] = m.add_var(xe_name(i, u, v));
        }
    }
    add_assignment(&mut m, &z, n, colors);
    for i in 1..=colors {
        for (e, &(u, v)) in fedges.iter().enumerate() {
            m.add_constraint(
                format!("edge_lb_{i}_{u}_{v}"),
                vec![(1.0, z[i][u]), (1.0, z[i][v]), (-1.0, xe[i][e])],
                Sense::Le,
                1.0,
            );
        }
        for u in 0..n {
            let nbrs = g.dsa_neighbors(u);
            if nbrs.is_empty() {
                continue;
            }
            let terms = nbrs
                .iter()
                .map(|&v| (1.0, xe[i][eindex[&key(u, v)]]))
                .collect();
            m.add_constraint(format!("fdeg_{i}_{u}"), terms, Sense::Le, 1.0);
        }
        add_conflict_pairs(&mut m, g, &z[i], i);
        for v in 0..n {
            m.add_constraint(
                format!("link_z_{i}_{v}"),
                vec![(1.0, z[i][v]), (-1.0, l[i])],
                Sense::Le,
                0.0,
            );
        }
        for (e, &(u, v)) in fedges.iter().enumerate() {
            m.add_constraint(
                format!("link_xe_{i}_{u}_{v}"),
                vec![(1.0, xe[i][e]), (-1.0, l[i])],
                Sense::Le,
                0.0,
            );
        }
        add_lshape_cuts(&mut m, &z[i], lshape, i);
    }
    add_symmetry(&mut m, &l, colors, sym);
    m
}

/// Catalog coloring: pick one group per via and color groups so that
/// conflicting groups differ. The strengthened flavor replaces the pairwise
/// packing constraints with one clique constraint per conflicting via pair,
/// summing over every group touching either via.
pub fn build_naive(
    catalog: &GroupCatalog,
    colors: usize,
    strengthened: bool,
    sym: bool,
) -> IpModel {
    assert!(colors >= 1);
    let name = if strengthened {
        "naive-strengthened"
    } else {
        "naive"
    };
    let ng = catalog.len();
    let mut m = IpModel::new(name, colors);
    if ng == 0 {
        return m;
    }
    let n = catalog.num_vertices();
    let mut l = vec![0usize; colors + 1];
    let mut xg = vec![vec![0usize; ng]; colors + 1];
    for i in 1..=colors {
        l[i] = m.add_var(l_name(i));
        m.add_objective_term(1.0, l[i]);
        for gi in 0..ng {
            xg[i][gi] = m.add_var(xg_name(i, gi));
        }
    }
    for v in 0..n {
        let mut terms = Vec::new();
        for i in 1..=colors {
            for &gi in catalog.membership(v) {
                terms.push((1.0, xg[i][gi]));
            }
        }
        m.add_constraint(format!("assign_{v}"), terms, Sense::Eq, 1.0);
    }
    let via_pairs = if strengthened {
        conflicting_via_pairs(catalog)
    } else {
        Vec::new()
    };
    for i in 1..=colors {
        if strengthened {
            for &(u, v) in &via_pairs {
                let mut ids: Vec<usize> = catalog
                    .membership(u)
                    .iter()
                    .chain(catalog.membership(v))
                    .map(|&gi| xg[i][gi])
                    .collect();
                ids.sort_unstable();
                ids.dedup();
                let terms = ids.into_iter().map(|id| (1.0, id)).collect();
                m.add_constraint(format!("clique_{i}_{u}_{v}"), terms, Sense::Le, 1.0);
            }
        } else {
            for &(f, gq) in &catalog.conflicts {
                m.add_constraint(
                    format!("pack_{i}_{f}_{gq}"),
                    vec![(1.0, xg[i][f]), (1.0, xg[i][gq])],
                    Sense::Le,
                    1.0,
                );
            }
        }
        for gi in 0..ng {
            m.add_constraint(
                format!("link_g_{i}_{gi}"),
                vec![(1.0, xg[i][gi]), (-1.0, l[i])],
                Sense::Le,
                0.0,
            );
        }
    }
    add_symmetry(&mut m, &l, colors, sym);
    m
}

/// Conflicting via pairs recovered from the catalog: two singleton groups
/// conflict exactly when their vias are in conflict.
fn conflicting_via_pairs(catalog: &GroupCatalog) -> Vec<(usize, usize)> {
    let mut singleton_via = HashMap::new();
    for (gi, g) in catalog.groups.iter().enumerate() {
        if g.len() == 1 {
            singleton_via.insert(gi, g.vertices[0]);
        }
    }
    let mut pairs = Vec::new();
    for &(a, b) in &catalog.conflicts {
        if let (Some(&u), Some(&v)) = (singleton_via.get(&a), singleton_via.get(&b)) {
            pairs.push((u.min(v), u.max(v)));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// Chain coloring with an explicit orientation: every color class is a
/// disjoint union of chord-free chains of at most k vertices. Oriented edge
/// variables carry a position index so chains cannot exceed the cap or close
/// into cycles.
pub fn build_induced_path(
    g: &ConflictGraph,
    colors: usize,
    k: usize,
    lshape: &[Triple],
    sym: bool,
) -> IpModel {
    assert!(colors >= 1 && k >= 2);
    let n = g.n();
    let mut m = IpModel::new("induced", colors);
    if n == 0 {
        return m;
    }
    let fedges: Vec<(usize, usize)> = g.dsa_edges().collect();
    let eindex = edge_index(&fedges);
    let positions = k - 1;
    let mut l = vec![0usize; colors + 1];
    let mut z = vec![vec![0usize; n]; colors + 1];
    let mut ys = vec![vec![0usize; n]; colors + 1];
    let mut xe = vec![vec![0usize; fedges.len()]; colors + 1];
    // oriented ids indexed [edge][kappa][direction], direction 0 = low->high
    let mut xo = vec![vec![0usize; fedges.len() * positions * 2]; colors + 1];
    for i in 1..=colors {
        l[i] = m.add_var(l_name(i));
        m.add_objective_term(1.0, l[i]);
        for v in 0..n {
            z[i][v] = m.add_var(z_name(i, v));
        }
        for v in 0..n {
            ys[i][v] = m.add_var(ys_name(i, v));
        }
        for (e, &(u, v)) in fedges.iter().enumerate() {
            xe[i][e] = m.add_var(xe_name(i, u, v));
        }
        for (e, &(u, v)) in fedges.iter().enumerate() {
            for kappa in 0..positions {
                xo[i][oid(e, kappa, 0, positions)] = m.add_var(xo_name(i, kappa, u, v));
                xo[i][oid(e, kappa, 1, positions)] = m.add_var(xo_name(i, kappa, v, u));
            }
        }
    }
    let oriented = |i: usize, kappa: usize, from: usize, to: usize, xo: &[Vec<usize>]| {
        let e = eindex[&key(from, to)];
        let dir = usize::from(from > to);
        xo[i][oid(e, kappa, dir, positions)]
    };
    add_assignment(&mut m, &z, n, colors);
    for i in 1..=colors {
        for v in 0..n {
            if g.dsa_neighbors(v).is_empty() {
                continue;
            }
            let mut terms: Vec<(f64, usize)> = g
                .dsa_neighbors(v)
                .iter()
                .map(|&u| (1.0, oriented(i, 0, v, u, &xo)))
                .collect();
            terms.push((-1.0, ys[i][v]));
            m.add_constraint(format!("start_{i}_{v}"), terms, Sense::Le, 0.0);
        }
        for kappa in 1..positions {
            for v in 0..n {
                if g.dsa_neighbors(v).is_empty() {
                    continue;
                }
                let mut terms = Vec::new();
                for &u in g.dsa_neighbors(v) {
                    terms.push((1.0, oriented(i, kappa, v, u, &xo)));
                }
                for &u in g.dsa_neighbors(v) {
                    terms.push((-1.0, oriented(i, kappa - 1, u, v, &xo)));
                }
                m.add_constraint(format!("flow_{i}_{kappa}_{v}"), terms, Sense::Le, 0.0);
            }
        }
        for (e, &(u, v)) in fedges.iter().enumerate() {
            let mut terms = Vec::new();
            for kappa in 0..positions {
                terms.push((1.0, xo[i][oid(e, kappa, 0, positions)]));
                terms.push((1.0, xo[i][oid(e, kappa, 1, positions)]));
            }
            terms.push((-1.0, xe[i][e]));
            m.add_constraint(format!("orient_{i}_{u}_{v}"), terms, Sense::Eq, 0.0);
        }
        for v in 0..n {
            let mut terms = vec![(1.0, ys[i][v])];
            for kappa in 0..positions {
                for &u in g.dsa_neighbors(v) {
                    terms.push((1.0, oriented(i, kappa, u, v, &xo)));
                }
            }
            terms.push((-1.0, z[i][v]));
            m.add_constraint(format!("incoming_{i}_{v}"), terms, Sense::Eq, 0.0);
        }
        for (e, &(u, v)) in fedges.iter().enumerate() {
            m.add_constraint(
                format!("edge_lb_{i}_{u}_{v}"),
                vec![(1.0, z[i][u]), (1.0, z[i][v]), (-1.0, xe[i][e])],
                Sense::Le,
                1.0,
            );
        }
        add_conflict_pairs(&mut m, g, &z[i], i);
        for v in 0..n {
            m.add_constraint(
                format!("link_z_{i}_{v}"),
                vec![(1.0, z[i][v]), (-1.0, l[i])],
                Sense::Le,
                0.0,
            );
        }
        for (e, &(u, v)) in fedges.iter().enumerate() {
            m.add_constraint(
                format!("link_xe_{i}_{u}_{v}"),
                vec![(1.0, xe[i][e]), (-1.0, l[i])],
                Sense::Le,
                0.0,
            );
        }
        add_lshape_cuts(&mut m, &z[i], lshape, i);
    }
    add_symmetry(&mut m, &l, colors, sym);
    m
}

pub fn build_general(
    g: &ConflictGraph,
    colors: usize,
    k: usize,
    lshape: &[Triple],
    sym: bool,
) -> Result<IpModel, ModelError> {
    build_general_capped(g, colors, k, lshape, sym, DEFAULT_MODEL_CAP)
}

/// Size estimate the chain-spanned model is refused on. Exposed so callers
/// can pre-check an instance (for example the whole graph before a
/// per-component export) without paying for the build.
pub fn check_general_size(
    n: usize,
    ne: usize,
    nf: usize,
    colors: usize,
    k: usize,
    n_lshape: usize,
    cap: usize,
) -> Result<(), ModelError> {
    let positions = k.saturating_sub(1);
    let vars = colors * (1 + n + n * n + nf * (2 * k - 1));
    let per_color_cons = 4 * n                      // start, incoming, origin, link_z
        + positions.saturating_sub(1) * n           // flow
        + 2 * nf                                    // orient, link_xe
        + 2 * nf * n                                // propagation
        + 2 * ne * n                                // separation
        + 2 * nf * positions                        // link_xo
        + n * n                                     // link_yo
        + n_lshape;
    let cons = n + colors * per_color_cons + colors.saturating_sub(1);
    let terms = colors
        * (2 * ne * n * n + 6 * nf * n + 3 * n * n + (4 * positions + 3) * nf + 8 * n)
        + 2 * n * colors;
    if vars > cap || cons > cap || terms > 4 * cap {
        return Err(ModelError::TooLarge {
            vars,
            cons,
            terms,
            cap,
        });
    }
    Ok(())
}

/// Chain coloring where classes only need to be spanned by a chain: every
/// via is labeled with the origin of its chain, labels propagate along
/// chosen edges, and conflicting vias in one color must share an origin.
/// The origin labeling squares the variable count, so the size is estimated
/// up front and oversized models are refused instead of built.
pub fn build_general_capped(
    g: &ConflictGraph,
    colors: usize,
    k: usize,
    lshape: &[Triple],
    sym: bool,
    cap: usize,
) -> Result<IpModel, ModelError> {
    assert!(colors >= 1 && k >= 2);
    let n = g.n();
    let mut m = IpModel::new("general", colors);
    if n == 0 {
        return Ok(m);
    }
    check_general_size(
        n,
        g.num_edges(),
        g.num_dsa_edges(),
        colors,
        k,
        lshape.len(),
        cap,
    )?;
    let positions = k - 1;
    let fedges: Vec<(usize, usize)> = g.dsa_edges().collect();
    let eindex = edge_index(&fedges);
    let mut l = vec![0usize; colors + 1];
    let mut z = vec![vec![0usize; n]; colors + 1];
    let mut yo = vec![vec![0usize; n * n]; colors + 1];
    let mut xe = vec![vec![0usize; fedges.len()]; colors + 1];
    let mut xo = vec![vec![0usize; fedges.len() * positions * 2]; colors + 1];
    for i in 1..=colors {
        l[i] = m.add_var(l_name(i));
        m.add_objective_term(1.0, l[i]);
        for v in 0..n {
            z[i][v] = m.add_var(z_name(i, v));
        }
        for v in 0..n {
            for o in 0..n {
                yo[i][v * n + o] = m.add_var(yo_name(i, v, o));
            }
        }
        for (e, &(u, v)) in fedges.iter().enumerate() {
            xe[i][e] = m.add_var(xe_name(i, u, v));
        }
        for (e, &(u, v)) in fedges.iter().enumerate() {
            for kappa in 0..positions {
                xo[i][oid(e, kappa, 0, positions)] = m.add_var(xo_name(i, kappa, u, v));
                xo[i][oid(e, kappa, 1, positions)] = m.add_var(xo_name(i, kappa, v, u));
            }
        }
    }
    let oriented = |i: usize, kappa: usize, from: usize, to: usize, xo: &[Vec<usize>]| {
        let e = eindex[&key(from, to)];
        let dir = usize::from(from > to);
        xo[i][oid(e, kappa, dir, positions)]
    };
    add_assignment(&mut m, &z, n, colors);
    for i in 1..=colors {
        for v in 0..n {
            if g.dsa_neighbors(v).is_empty() {
                continue;
            }
            let mut terms: Vec<(f64, usize)> = g
                .dsa_neighbors(v)
                .iter()
                .map(|&u| (1.0, oriented(i, 0, v, u, &xo)))
                .collect();
            terms.push((-1.0, yo[i][v * n + v]));
            m.add_constraint(format!("start_{i}_{v}"), terms, Sense::Le, 0.0);
        }
        for kappa in 1..positions {
            for v in 0..n {
                if g.dsa_neighbors(v).is_empty() {
                    continue;
                }
                let mut terms = Vec::new();
                for &u in g.dsa_neighbors(v) {
                    terms.push((1.0, oriented(i, kappa, v, u, &xo)));
                }
                for &u in g.dsa_neighbors(v) {
                    terms.push((-1.0, oriented(i, kappa - 1, u, v, &xo)));
                }
                m.add_constraint(format!("flow_{i}_{kappa}_{v}"), terms, Sense::Le, 0.0);
            }
        }
        for (e, &(u, v)) in fedges.iter().enumerate() {
            let mut terms = Vec::new();
            for kappa in 0..positions {
                terms.push((1.0, xo[i][oid(e, kappa, 0, positions)]));
                terms.push((1.0, xo[i][oid(e, kappa, 1, positions)]));
            }
            terms.push((-1.0, xe[i][e]));
            m.add_constraint(format!("orient_{i}_{u}_{v}"), terms, Sense::Eq, 0.0);
        }
        for v in 0..n {
            let mut terms = vec![(1.0, yo[i][v * n + v])];
            for kappa in 0..positions {
                for &u in g.dsa_neighbors(v) {
                    terms.push((1.0, oriented(i, kappa, u, v, &xo)));
                }
            }
            terms.push((-1.0, z[i][v]));
            m.add_constraint(format!("incoming_{i}_{v}"), terms, Sense::Eq, 0.0);
        }
        for (e, &(u, v)) in fedges.iter().enumerate() {
            for o in 0..n {
                m.add_constraint(
                    format!("prop_fwd_{i}_{u}_{v}_{o}"),
                    vec![
                        (1.0, yo[i][u * n + o]),
                        (1.0, xe[i][e]),
                        (-1.0, yo[i][v * n + o]),
                    ],
                    Sense::Le,
                    1.0,
                );
            }
            for o in 0..n {
                m.add_constraint(
                    format!("prop_bwd_{i}_{u}_{v}_{o}"),
                    vec![
                        (1.0, yo[i][v * n + o]),
                        (1.0, xe[i][e]),
                        (-1.0, yo[i][u * n + o]),
                    ],
                    Sense::Le,
                    1.0,
                );
            }
        }
        for v in 0..n {
            let mut terms: Vec<(f64, usize)> =
                (0..n).map(|o| (1.0, yo[i][v * n + o])).collect();
            terms.push((-1.0, z[i][v]));
            m.add_constraint(format!("origin_{i}_{v}"), terms, Sense::Eq, 0.0);
        }
        // conflicting vias in one color must sit in the same chain; emitted
        // for both orientations of each conflict edge
        for (u, v, _) in g.edges() {
            for (a, b) in [(u, v), (v, u)] {
                for o in 0..n {
                    let mut terms = vec![(1.0, yo[i][a * n + o])];
                    for o2 in 0..n {
                        if o2 != o {
                            terms.push((1.0, yo[i][b * n + o2]));
                        }
                    }
                    m.add_constraint(format!("sep_{i}_{a}_{b}_{o}"), terms, Sense::Le, 1.0);
                }
            }
        }
        for v in 0..n {
            m.add_constraint(
                format!("link_z_{i}_{v}"),
                vec![(1.0, z[i][v]), (-1.0, l[i])],
                Sense::Le,
                0.0,
            );
        }
        for (e, &(u, v)) in fedges.iter().enumerate() {
            m.add_constraint(
                format!("link_xe_{i}_{u}_{v}"),
                vec![(1.0, xe[i][e]), (-1.0, l[i])],
                Sense::Le,
                0.0,
            );
        }
        for (e, &(u, v)) in fedges.iter().enumerate() {
            for kappa in 0..positions {
                for (from, to, dir) in [(u, v, 0), (v, u, 1)] {
                    m.add_constraint(
                        format!("link_xo_{i}_{kappa}_{from}_{to}"),
                        vec![(1.0, xo[i][oid(e, kappa, dir, positions)]), (-1.0, l[i])],
                        Sense::Le,
                        0.0,
                    );
                }
            }
        }
        for v in 0..n {
            for o in 0..n {
                m.add_constraint(
                    format!("link_yo_{i}_{v}_{o}"),
                    vec![(1.0, yo[i][v * n + o]), (-1.0, l[i])],
                    Sense::Le,
                    0.0,
                );
            }
        }
        add_lshape_cuts(&mut m, &z[i], lshape, i);
    }
    add_symmetry(&mut m, &l, colors, sym);
    Ok(m)
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn edge_index(fedges: &[(usize, usize)]) -> HashMap<(usize, usize), usize> {
    fedges.iter().enumerate().map(|(e, &p)| (p, e)).collect()
}

fn oid(e: usize, kappa: usize, dir: usize, positions: usize) -> usize {
    (e * positions + kappa) * 2 + dir
}

fn add_assignment(m: &mut IpModel, z: &[Vec<usize>], n: usize, colors: usize) {
    for v in 0..n {
        let terms = (1..=colors).map(|i| (1.0, z[i][v])).collect();
        m.add_constraint(format!("assign_{v}"), terms, Sense::Eq, 1.0);
    }
}

fn add_conflict_pairs(m: &mut IpModel, g: &ConflictGraph, z: &[usize], i: usize) {
    for (u, v, dsa) in g.edges() {
        if !dsa {
            m.add_constraint(
                format!("conflict_{i}_{u}_{v}"),
                vec![(1.0, z[u]), (1.0, z[v])],
                Sense::Le,
                1.0,
            );
        }
    }
}

fn add_lshape_cuts(m: &mut IpModel, z: &[usize], lshape: &[Triple], i: usize) {
    for &(u, v, w) in lshape {
        m.add_constraint(
            format!("lshape_{i}_{u}_{v}_{w}"),
            vec![(1.0, z[u]), (1.0, z[v]), (1.0, z[w])],
            Sense::Le,
            2.0,
        );
    }
}

fn add_symmetry(m: &mut IpModel, l: &[usize], colors: usize, enabled: bool) {
    if !enabled {
        return;
    }
    for i in 2..=colors {
        m.add_constraint(
            format!("sym_{i}"),
            vec![(1.0, l[i]), (-1.0, l[i - 1])],
            Sense::Le,
            0.0,
        );
    }
}
