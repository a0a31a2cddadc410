mod common;

use common::*;
use dsamp::formulations::{build_naive, naive_assignment};
use dsamp::groups::GroupMode;
use dsamp::layout::{generate_random_layout, Layout, Tech};
use dsamp::solver::{
    brute_force_oracle, solve_exact, solve_layout, MergedColoring, SolveBudget, SolveError,
};

#[test]
fn fixture_optima_match_oracle_and_solver() {
    let budget = SolveBudget::default();
    let cases = [
        (k3(), 1usize, GroupMode::Induced, 3usize),
        (k3(), 2, GroupMode::Induced, 2),
        (k3(), 3, GroupMode::Induced, 2),
        (k3(), 3, GroupMode::General, 1),
        (p5(), 3, GroupMode::Induced, 2),
    ];
    for (layout, k, mode, expected) in cases {
        let r = unrestricted(k);
        let (g, catalog) = graph_and_catalog(&layout, &r, mode);
        let oracle = brute_force_oracle(&catalog, &g, 14).unwrap();
        assert_eq!(oracle, expected, "oracle, k {k} mode {mode:?}");
        let sol = solve_exact(&catalog, &g, g.n(), &budget).unwrap();
        assert_eq!(sol.num_colors, expected, "solver, k {k} mode {mode:?}");
        assert!(sol.optimal);
        assert!(sol.lower_bound <= sol.num_colors);
    }
}

#[test]
fn solver_agrees_with_oracle_on_random_layouts() {
    let budget = SolveBudget::default();
    for seed in 0..10u64 {
        let n = 4 + (seed as usize) % 9;
        let layout = generate_random_layout(n, 1.5, seed).unwrap();
        for litho in [31.0, 41.0, 49.0] {
            for k in [1usize, 2, 3] {
                for mode in [GroupMode::Induced, GroupMode::General] {
                    let r = rules(litho, Tech::Unrestricted, k);
                    let (g, catalog) = graph_and_catalog(&layout, &r, mode);
                    let oracle = brute_force_oracle(&catalog, &g, 14).unwrap();
                    let sol = solve_exact(&catalog, &g, n, &budget).unwrap();
                    assert_eq!(
                        sol.num_colors, oracle,
                        "seed {seed} litho {litho} k {k} mode {mode:?}"
                    );
                    assert!(sol.optimal);

                    // the solution must satisfy the catalog model exactly
                    let model = build_naive(&catalog, n, false, true);
                    let assignment = naive_assignment(&model, &sol).unwrap();
                    let report = model.check_named(&assignment).unwrap();
                    assert!(report.valid(), "seed {seed}: {:?}", report.violations);
                    assert_eq!(report.objective, sol.num_colors as f64);
                }
            }
        }
    }
}

#[test]
fn optima_are_monotone_in_k_and_litho() {
    let budget = SolveBudget::default();
    for seed in 40..52u64 {
        let n = 6 + (seed as usize) % 7;
        let layout = generate_random_layout(n, 1.5, seed).unwrap();
        for mode in [GroupMode::Induced, GroupMode::General] {
            let mut prev = usize::MAX;
            for k in [1usize, 2, 3] {
                let r = rules(31.0, Tech::Unrestricted, k);
                let (g, catalog) = graph_and_catalog(&layout, &r, mode);
                let v = solve_exact(&catalog, &g, n, &budget).unwrap().num_colors;
                assert!(v <= prev, "seed {seed} mode {mode:?}: k {k} rose to {v}");
                prev = v;
            }
        }
        let mut prev = 0usize;
        for litho in [31.0, 41.0, 49.0] {
            let r = rules(litho, Tech::Unrestricted, 3);
            let (g, catalog) = graph_and_catalog(&layout, &r, GroupMode::Induced);
            let v = solve_exact(&catalog, &g, n, &budget).unwrap().num_colors;
            assert!(v >= prev, "seed {seed}: litho {litho} fell to {v}");
            prev = v;
        }
    }
}

#[test]
fn repeated_solves_are_identical() {
    let layout = generate_random_layout(12, 1.5, 99).unwrap();
    let r = unrestricted(3);
    let (g, catalog) = graph_and_catalog(&layout, &r, GroupMode::Induced);
    let budget = SolveBudget::default();
    let a = solve_exact(&catalog, &g, 12, &budget).unwrap();
    let b = solve_exact(&catalog, &g, 12, &budget).unwrap();
    assert_eq!(a.classes, b.classes);
    assert_eq!(a.color_of, b.color_of);
    assert_eq!(a.num_colors, b.num_colors);
    assert_eq!(a.optimal, b.optimal);
}

#[test]
fn exhausted_budget_returns_incumbent_without_proof() {
    let r = unrestricted(2);
    let (g, catalog) = graph_and_catalog(&c5(), &r, GroupMode::Induced);

    let strangled = SolveBudget {
        node_limit: 0,
        ..SolveBudget::default()
    };
    let sol = solve_exact(&catalog, &g, 5, &strangled).unwrap();
    assert!(!sol.optimal);
    assert_eq!(sol.num_colors, 3);
    assert_eq!(sol.lower_bound, 1);

    // full budget closes the greedy gap and proves the optimum
    let sol = solve_exact(&catalog, &g, 5, &SolveBudget::default()).unwrap();
    assert!(sol.optimal);
    assert_eq!(sol.num_colors, 2);
    assert_eq!(sol.lower_bound, 2);
    assert_eq!(brute_force_oracle(&catalog, &g, 14).unwrap(), 2);
}

#[test]
fn bound_too_small_is_a_proven_error() {
    let r = unrestricted(1);
    let (g, catalog) = graph_and_catalog(&k3(), &r, GroupMode::Induced);
    let err = solve_exact(&catalog, &g, 2, &SolveBudget::default()).unwrap_err();
    match err {
        SolveError::NoSolutionWithin { bound, proven } => {
            assert_eq!(bound, 2);
            assert!(proven);
        }
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn oracle_refuses_large_instances() {
    let points: Vec<(f64, f64)> = (0..15).map(|i| (1000.0 * i as f64, 0.0)).collect();
    let layout = layout_from(&points);
    let r = unrestricted(2);
    let (g, catalog) = graph_and_catalog(&layout, &r, GroupMode::Induced);
    match brute_force_oracle(&catalog, &g, 14) {
        Err(SolveError::TooLarge { n: 15, max_n: 14 }) => {}
        other => panic!("unexpected result {other:?}"),
    }
}

#[test]
fn layout_solve_merges_components_and_round_trips_text() {
    // K3 cluster plus a far-away DSA pair: two components
    let layout = layout_from(&[
        (0.0, 0.0),
        (25.0, 0.0),
        (12.5, 21.650635094610966),
        (500.0, 0.0),
        (525.0, 0.0),
    ]);
    let r = unrestricted(2);
    let solved = solve_layout(&layout, &r, GroupMode::Induced, &SolveBudget::default()).unwrap();

    assert_eq!(solved.components.len(), 2);
    assert_eq!(solved.components[0].n_vertices, 3);
    assert_eq!(solved.components[1].n_vertices, 2);
    assert_eq!(solved.components[0].solution.num_colors, 2);
    assert_eq!(solved.components[1].solution.num_colors, 1);

    let merged = &solved.merged;
    assert_eq!(merged.num_colors, 2);
    assert!(merged.optimal);
    assert_eq!(merged.color_of.len(), 5);
    // the far pair is one group in original ids
    assert_eq!(merged.group_of[3], vec![3, 4]);
    assert_eq!(merged.color_of[3], merged.color_of[4]);

    let text = merged.to_text();
    let parsed = MergedColoring::parse_text(&text).unwrap();
    assert_eq!(parsed.color_of, merged.color_of);
    assert_eq!(parsed.group_of, merged.group_of);
    assert_eq!(parsed.num_colors, merged.num_colors);
    assert_eq!(parsed.to_text(), text);

    let by_color = merged.groups_by_color();
    assert_eq!(by_color.len(), 2);
    let total_groups: usize = by_color.iter().map(|c| c.len()).sum();
    let distinct: std::collections::HashSet<&Vec<usize>> =
        merged.group_of.iter().collect();
    assert_eq!(total_groups, distinct.len());
}

#[test]
fn parallel_flag_does_not_change_the_result() {
    let layout = generate_random_layout(60, 1.3, 7).unwrap();
    let r = unrestricted(3);
    let serial = SolveBudget {
        parallel_components: false,
        ..SolveBudget::default()
    };
    let parallel = SolveBudget {
        parallel_components: true,
        ..SolveBudget::default()
    };
    let a = solve_layout(&layout, &r, GroupMode::Induced, &serial).unwrap();
    let b = solve_layout(&layout, &r, GroupMode::Induced, &parallel).unwrap();
    assert_eq!(a.merged.color_of, b.merged.color_of);
    assert_eq!(a.merged.num_colors, b.merged.num_colors);
    assert_eq!(a.components.len(), b.components.len());
}

#[test]
fn empty_layout_solves_to_nothing() {
    let layout = Layout::new(Vec::new(), 10.0).unwrap();
    let r = unrestricted(2);
    let solved = solve_layout(&layout, &r, GroupMode::Induced, &SolveBudget::default()).unwrap();
    assert_eq!(solved.components.len(), 0);
    assert_eq!(solved.merged.num_colors, 0);
    assert!(solved.merged.optimal);
    let text = solved.merged.to_text();
    let parsed = MergedColoring::parse_text(&text).unwrap();
    assert_eq!(parsed.color_of.len(), 0);
    assert_eq!(parsed.to_text(), text);
}

#[test]
fn corrupted_solution_text_is_rejected() {
    let good = "colors 1\noptimal true\nbound 1\nelapsed 0.001\nv 0 color 1 group 0\n";
    assert!(MergedColoring::parse_text(good).is_ok());

    // color outside the declared range
    let bad = "colors 1\noptimal true\nbound 1\nelapsed 0.001\nv 0 color 2 group 0\n";
    assert!(MergedColoring::parse_text(bad).is_err());

    // vertex missing from its own group
    let bad = "colors 1\noptimal true\nbound 1\nelapsed 0.001\nv 0 color 1 group 1\n";
    assert!(MergedColoring::parse_text(bad).is_err());

    // members disagree about the group
    let bad = "colors 1\noptimal true\nbound 1\nelapsed 0.001\n\
               v 0 color 1 group 0 1\nv 1 color 1 group 1\n";
    assert!(MergedColoring::parse_text(bad).is_err());

    // missing header line
    assert!(MergedColoring::parse_text("optimal true\n").is_err());
}
