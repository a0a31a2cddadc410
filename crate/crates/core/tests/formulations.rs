mod common;

use common::*;
use dsamp::conflict::ConflictGraph;
use dsamp::formulations::{
    build_general, build_general_capped, build_induced_path, build_naive, build_pairing,
    chromatic_number, general_optimum, induced_optimum, naive_assignment, naive_optimum,
    pairing_optimum, ModelError,
};
use dsamp::groups::{forbidden_triples, GroupMode};
use dsamp::layout::{generate_random_layout, Layout, TechRules};
use dsamp::solver::{solve_exact, SolveBudget};

fn graph(layout: &Layout, r: &TechRules) -> ConflictGraph {
    ConflictGraph::build(layout, r)
}

#[test]
fn variable_counts_match_closed_forms_on_k3() {
    let r = unrestricted(3);
    let g = graph(&k3(), &r);
    let (n, nf) = (3usize, 3usize);
    let l = 3usize;

    let pairing = build_pairing(&g, l, &[], true);
    assert_eq!(pairing.num_vars(), l * (n + nf + 1));
    assert_eq!(pairing.num_vars(), 21);
    pairing.validate().unwrap();

    let (_, cat_ind) = graph_and_catalog(&k3(), &r, GroupMode::Induced);
    // 3 singletons + 3 pairs; the triple has a chord
    assert_eq!(cat_ind.len(), 6);
    let naive = build_naive(&cat_ind, l, false, true);
    assert_eq!(naive.num_vars(), l * (1 + cat_ind.len()));
    naive.validate().unwrap();

    let (_, cat_gen) = graph_and_catalog(&k3(), &r, GroupMode::General);
    // same plus the spanned triple
    assert_eq!(cat_gen.len(), 7);
    let strengthened = build_naive(&cat_gen, l, true, true);
    assert_eq!(strengthened.num_vars(), l * (1 + cat_gen.len()));
    strengthened.validate().unwrap();

    let k = 3usize;
    let induced = build_induced_path(&g, l, k, &[], true);
    assert_eq!(induced.num_vars(), l * (1 + 2 * n + nf * (2 * k - 1)));
    induced.validate().unwrap();

    let general = build_general(&g, l, k, &[], true).unwrap();
    assert_eq!(general.num_vars(), l * (1 + n + n * n + nf * (2 * k - 1)));
    general.validate().unwrap();
}

#[test]
fn fixture_optima_across_models() {
    let r = unrestricted(3);
    let g = graph(&k3(), &r);

    let pairing = build_pairing(&g, 3, &[], true);
    assert_eq!(pairing_optimum(&pairing, &g), Some(2));

    // singleton catalog makes every model plain coloring
    let (_, cat1) = graph_and_catalog(&k3(), &unrestricted(1), GroupMode::Induced);
    assert_eq!(cat1.len(), 3);
    let naive1 = build_naive(&cat1, 3, false, true);
    assert_eq!(naive_optimum(&naive1, &cat1), Some(3));
    assert_eq!(chromatic_number(&g), 3);

    let induced = build_induced_path(&g, 3, 3, &[], true);
    assert_eq!(induced_optimum(&induced, &g, 3), Some(2));

    let general = build_general(&g, 3, 3, &[], true).unwrap();
    assert_eq!(general_optimum(&general, &g, 3), Some(1));

    let (_, cat_ind) = graph_and_catalog(&k3(), &r, GroupMode::Induced);
    let naive_ind = build_naive(&cat_ind, 3, false, true);
    assert_eq!(naive_optimum(&naive_ind, &cat_ind), Some(2));

    let (_, cat_gen) = graph_and_catalog(&k3(), &r, GroupMode::General);
    let naive_gen = build_naive(&cat_gen, 3, false, true);
    assert_eq!(naive_optimum(&naive_gen, &cat_gen), Some(1));
    let strong_gen = build_naive(&cat_gen, 3, true, true);
    assert_eq!(naive_optimum(&strong_gen, &cat_gen), Some(1));

    let g5 = graph(&p5(), &r);
    let induced5 = build_induced_path(&g5, 3, 3, &[], true);
    assert_eq!(induced_optimum(&induced5, &g5, 3), Some(2));
}

/// The cross-model ordering on small random instances: general <= induced
/// == naive over the induced catalog, pairing == everything at k = 2,
/// values non-increasing in k, and k = 1 degenerates to proper coloring.
#[test]
fn model_chain_on_small_random_layouts() {
    for seed in 0..12u64 {
        let n = 4 + (seed as usize) % 5;
        let layout = generate_random_layout(n, 1.5, seed).unwrap();
        let l = n;

        let r2 = unrestricted(2);
        let g = graph(&layout, &r2);
        let pairing = build_pairing(&g, l, &[], true);
        let p = pairing_optimum(&pairing, &g).unwrap();

        let mut per_k = Vec::new();
        for k in [2usize, 3] {
            let rk = unrestricted(k);
            let (_, cat_ind) = graph_and_catalog(&layout, &rk, GroupMode::Induced);
            let (_, cat_gen) = graph_and_catalog(&layout, &rk, GroupMode::General);

            let ind = induced_optimum(&build_induced_path(&g, l, k, &[], true), &g, k).unwrap();
            let gen = general_optimum(&build_general(&g, l, k, &[], true).unwrap(), &g, k)
                .unwrap();
            let na_ind =
                naive_optimum(&build_naive(&cat_ind, l, false, true), &cat_ind).unwrap();
            let na_gen =
                naive_optimum(&build_naive(&cat_gen, l, false, true), &cat_gen).unwrap();
            let strong =
                naive_optimum(&build_naive(&cat_gen, l, true, true), &cat_gen).unwrap();

            assert_eq!(ind, na_ind, "seed {seed} k {k}");
            assert_eq!(na_gen, strong, "seed {seed} k {k}");
            assert!(gen <= ind, "seed {seed} k {k}: general {gen} > induced {ind}");
            assert!(na_gen <= na_ind, "seed {seed} k {k}");
            if k == 2 {
                assert_eq!(p, ind, "seed {seed}: pairing vs induced k=2");
                assert_eq!(p, na_ind, "seed {seed}: pairing vs naive k=2");
            }
            per_k.push((ind, gen));
        }
        let (ind2, gen2) = per_k[0];
        let (ind3, gen3) = per_k[1];
        assert!(ind3 <= ind2, "seed {seed}: induced not monotone in k");
        assert!(gen3 <= gen2, "seed {seed}: general not monotone in k");

        let (_, cat1) = graph_and_catalog(&layout, &unrestricted(1), GroupMode::Induced);
        let chi = naive_optimum(&build_naive(&cat1, l, false, true), &cat1).unwrap();
        assert_eq!(chi, chromatic_number(&g), "seed {seed}: k=1 vs chromatic");
    }
}

#[test]
fn native_solution_maps_onto_catalog_model() {
    let r = unrestricted(3);
    let (g, catalog) = graph_and_catalog(&k3(), &r, GroupMode::Induced);
    let sol = solve_exact(&catalog, &g, 3, &SolveBudget::default()).unwrap();
    assert_eq!(sol.num_colors, 2);

    let model = build_naive(&catalog, 3, false, true);
    let assignment = naive_assignment(&model, &sol).unwrap();
    let report = model.check_named(&assignment).unwrap();
    assert!(report.valid(), "violations: {:?}", report.violations);
    assert_eq!(report.objective, sol.num_colors as f64);

    // activating a group in an unused color must trip the color linking
    let mut broken = assignment.clone();
    broken.insert("xg_3_0".into(), 1.0);
    let report = model.check_named(&broken).unwrap();
    assert!(!report.valid());
    assert!(report
        .violations
        .iter()
        .any(|v| v.constraint.starts_with("link_g_3_")));

    let tight = build_naive(&catalog, 1, false, true);
    assert!(matches!(
        naive_assignment(&tight, &sol),
        Err(ModelError::TooManyColors { used: 2, bound: 1 })
    ));
}

#[test]
fn oversized_general_model_is_refused_with_counts() {
    let r = unrestricted(3);
    let g = graph(&k3(), &r);
    let err = build_general_capped(&g, 2, 3, &[], true, 50).unwrap_err();
    match err {
        ModelError::TooLarge { vars, cons, terms, cap } => {
            // 2 colors * (1 + 3 + 9 + 3 * 5) variables
            assert_eq!(vars, 56);
            assert!(cons > 0 && terms > 0);
            assert_eq!(cap, 50);
        }
        other => panic!("unexpected error {other:?}"),
    }
    // the same build passes under the default cap
    assert!(build_general(&g, 2, 3, &[], true).is_ok());
}

/// The corner fixture separates the two ways right-angle exclusion is
/// realized: catalog filtering for the group models, explicit cuts for the
/// graph models. Both land on the same optimum.
#[test]
fn right_angle_exclusion_and_cuts_agree() {
    let plain = unrestricted(3);
    let mut flagged = plain.clone();
    flagged.remove_l_shapes = true;
    let layout = corner();
    let g = graph(&layout, &plain);
    assert_eq!(g.num_edges(), 2);
    assert_eq!(g.num_dsa_edges(), 2);

    let (_, cat_free) = graph_and_catalog(&layout, &plain, GroupMode::General);
    let one = naive_optimum(&build_naive(&cat_free, 3, false, true), &cat_free);
    assert_eq!(one, Some(1));

    let (_, cat_cut) = graph_and_catalog(&layout, &flagged, GroupMode::General);
    assert_eq!(cat_cut.len(), cat_free.len() - 1);
    let two = naive_optimum(&build_naive(&cat_cut, 3, false, true), &cat_cut);
    assert_eq!(two, Some(2));

    let triples = forbidden_triples(&g, &flagged);
    assert_eq!(triples, vec![(0, 1, 2)]);

    let induced_free = build_induced_path(&g, 3, 3, &[], true);
    assert_eq!(induced_optimum(&induced_free, &g, 3), Some(1));
    let induced_cut = build_induced_path(&g, 3, 3, &triples, true);
    assert_eq!(induced_optimum(&induced_cut, &g, 3), Some(2));

    let general_free = build_general(&g, 3, 3, &[], true).unwrap();
    assert_eq!(general_optimum(&general_free, &g, 3), Some(1));
    let general_cut = build_general(&g, 3, 3, &triples, true).unwrap();
    assert_eq!(general_optimum(&general_cut, &g, 3), Some(2));

    let pairing_cut = build_pairing(&g, 3, &triples, true);
    assert_eq!(pairing_optimum(&pairing_cut, &g), Some(2));
}

#[test]
fn strengthened_rows_aggregate_groups_of_both_vias() {
    let r = unrestricted(3);
    let (_, catalog) = graph_and_catalog(&k3(), &r, GroupMode::General);
    let strong = build_naive(&catalog, 2, true, true);
    let plain = build_naive(&catalog, 2, false, true);

    assert!(strong.constraints().iter().all(|c| !c.name.starts_with("pack_")));
    assert!(plain.constraints().iter().all(|c| !c.name.starts_with("clique_")));

    let row = strong
        .constraints()
        .iter()
        .find(|c| c.name == "clique_1_0_1")
        .expect("clique row for conflicting pair (0, 1)");
    // every group touching via 0 or via 1: two singletons, three pairs,
    // the spanned triple; each with coefficient 1 despite double inclusion
    assert_eq!(row.terms.len(), 6);
    assert!(row.terms.iter().all(|&(c, _)| c == 1.0));
    assert_eq!(row.rhs, 1.0);
}

#[test]
fn empty_layout_yields_empty_models_with_optimum_zero() {
    let r = unrestricted(3);
    let layout = Layout::new(Vec::new(), 10.0).unwrap();
    let g = graph(&layout, &r);
    let (_, catalog) = graph_and_catalog(&layout, &r, GroupMode::General);

    let pairing = build_pairing(&g, 2, &[], true);
    assert_eq!(pairing.num_vars(), 0);
    assert_eq!(pairing_optimum(&pairing, &g), Some(0));

    let naive = build_naive(&catalog, 2, false, true);
    assert_eq!(naive.num_vars(), 0);
    assert_eq!(naive_optimum(&naive, &catalog), Some(0));

    let induced = build_induced_path(&g, 2, 3, &[], true);
    assert_eq!(induced_optimum(&induced, &g, 3), Some(0));

    let general = build_general(&g, 2, 3, &[], true).unwrap();
    assert_eq!(general.num_vars(), 0);
    assert_eq!(general_optimum(&general, &g, 3), Some(0));
}

#[test]
fn symmetry_breaking_is_optional_and_value_neutral() {
    let r = unrestricted(2);
    let g = graph(&k3(), &r);
    let with = build_pairing(&g, 3, &[], true);
    let without = build_pairing(&g, 3, &[], false);
    assert_eq!(
        with.num_constraints(),
        without.num_constraints() + 2,
        "one ordering row per color beyond the first"
    );
    assert_eq!(pairing_optimum(&with, &g), pairing_optimum(&without, &g));
}
