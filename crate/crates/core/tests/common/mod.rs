#![allow(dead_code)]

use dsamp::conflict::ConflictGraph;
use dsamp::groups::{enumerate_groups, GroupCatalog, GroupMode};
use dsamp::layout::{Layout, Tech, TechRules};

pub fn layout_from(points: &[(f64, f64)]) -> Layout {
    Layout::new(points.to_vec(), 10.0).unwrap()
}

/// Equilateral triangle with side 25: every pair both conflicts and sits at
/// DSA pitch, so F = E = K3 under unrestricted rules.
pub fn k3() -> Layout {
    layout_from(&[(0.0, 0.0), (25.0, 0.0), (12.5, 21.650635094610966)])
}

/// Five collinear vias 25 apart: conflict path equals DSA path, vias two
/// steps apart are clear of both thresholds.
pub fn p5() -> Layout {
    layout_from(&[
        (0.0, 0.0),
        (25.0, 0.0),
        (50.0, 0.0),
        (75.0, 0.0),
        (100.0, 0.0),
    ])
}

/// Regular pentagon with side 30: conflict 5-cycle, diagonals clear.
pub fn c5() -> Layout {
    let r = 30.0 / (2.0 * (std::f64::consts::PI / 5.0).sin());
    let pts: Vec<(f64, f64)> = (0..5)
        .map(|i| {
            let a = std::f64::consts::FRAC_PI_2
                + i as f64 * 2.0 * std::f64::consts::PI / 5.0;
            (r * a.cos(), r * a.sin())
        })
        .collect();
    layout_from(&pts)
}

/// A right-angle corner: 0-1 horizontal at pitch 25, 1-2 vertical at pitch
/// 35; the diagonal 0-2 clears both thresholds.
pub fn corner() -> Layout {
    layout_from(&[(0.0, 0.0), (25.0, 0.0), (25.0, 35.0)])
}

pub fn rules(litho: f64, tech: Tech, k_max: usize) -> TechRules {
    TechRules {
        litho_dist: litho,
        tech,
        k_max,
        ..TechRules::default()
    }
}

pub fn unrestricted(k_max: usize) -> TechRules {
    rules(31.0, Tech::Unrestricted, k_max)
}

pub fn graph_and_catalog(
    layout: &Layout,
    r: &TechRules,
    mode: GroupMode,
) -> (ConflictGraph, GroupCatalog) {
    let g = ConflictGraph::build(layout, r);
    let catalog = enumerate_groups(&g, r, mode).unwrap();
    (g, catalog)
}
