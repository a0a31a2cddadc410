//! LP export: one file per connected component plus a manifest of variable
//! and constraint counts. The chain-spanned model's size is estimated for
//! the whole graph first so oversized instances are refused up front, the
//! way an external solver would run out of memory on them.

use std::path::{Path, PathBuf};

use clap::Args;
use dsamp::conflict::{connected_components, ConflictGraph};
use dsamp::formulations::{
    build_general_capped, build_induced_path, build_naive, build_pairing, check_general_size,
    export_lp, IpModel, DEFAULT_MODEL_CAP,
};
use dsamp::groups::{enumerate_groups, forbidden_triples};
use dsamp::layout::TechRules;

use crate::report::Table;
use crate::{Failure, ModeArg, ModelArg, RuleArgs};

#[derive(Args)]
pub struct ExportArgs {
    /// Layout file
    layout: PathBuf,
    /// Output directory for LP files and the manifest
    #[arg(long)]
    out: PathBuf,
    /// Which model family to write
    #[arg(long, value_enum)]
    model: ModelArg,
    #[command(flatten)]
    rules: RuleArgs,
    /// Group family used by the catalog-based models
    #[arg(long, value_enum, default_value = "induced")]
    mode: ModeArg,
    /// Drop the symmetry-breaking order on step indicators
    #[arg(long)]
    no_sym: bool,
    /// Ceiling on model variables and constraints before refusing
    #[arg(long, default_value_t = DEFAULT_MODEL_CAP)]
    cap: usize,
}

pub fn run(args: ExportArgs) -> Result<(), Failure> {
    let rules = args.rules.to_rules()?;
    check_model_k(args.model, &rules)?;
    let layout = crate::load_layout(&args.layout)?;
    let g = ConflictGraph::build(&layout, &rules);

    if args.model == ModelArg::General {
        // refuse on the whole instance before any per-component work
        check_general_size(
            g.n(),
            g.num_edges(),
            g.num_dsa_edges(),
            rules.color_bound,
            rules.k_max,
            forbidden_triples(&g, &rules).len(),
            args.cap,
        )?;
    }

    std::fs::create_dir_all(&args.out)?;
    let stem = args
        .layout
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "layout".into());

    let mut manifest = Table::new(&["file", "variables", "constraints"]);
    for (idx, comp) in connected_components(&g).iter().enumerate() {
        let model = build_model(&comp.graph, &rules, args.model, args.mode, !args.no_sym, args.cap)?;
        let file = format!("{stem}_c{idx}.lp");
        export_lp(&model, &args.out.join(&file))?;
        println!(
            "{file}: {} variables, {} constraints",
            model.num_vars(),
            model.num_constraints()
        );
        manifest.push(vec![
            file,
            model.num_vars().to_string(),
            model.num_constraints().to_string(),
        ]);
    }
    let manifest_path = args.out.join(format!("{stem}_manifest.csv"));
    std::fs::write(&manifest_path, manifest.to_csv())?;
    println!("manifest: {}", manifest_path.display());
    Ok(())
}

pub fn check_model_k(model: ModelArg, rules: &TechRules) -> Result<(), Failure> {
    if matches!(model, ModelArg::Induced | ModelArg::General) && rules.k_max < 2 {
        return Err(Failure::usage(
            "chain models need --k of at least 2; use the pairing or naive model for --k 1",
        ));
    }
    Ok(())
}

/// Build one component's model. Chain restrictions reach the path models as
/// forbidden-triple cuts; the catalog models carry them in the catalog.
pub fn build_model(
    g: &ConflictGraph,
    rules: &TechRules,
    model: ModelArg,
    mode: ModeArg,
    sym: bool,
    cap: usize,
) -> Result<IpModel, Failure> {
    let colors = rules.color_bound;
    Ok(match model {
        ModelArg::Pairing => build_pairing(g, colors, &forbidden_triples(g, rules), sym),
        ModelArg::Naive | ModelArg::NaiveStrengthened => {
            let catalog = enumerate_groups(g, rules, mode.to_mode())?;
            build_naive(
                &catalog,
                colors,
                model == ModelArg::NaiveStrengthened,
                sym,
            )
        }
        ModelArg::Induced => {
            build_induced_path(g, colors, rules.k_max, &forbidden_triples(g, rules), sym)
        }
        ModelArg::General => build_general_capped(
            g,
            colors,
            rules.k_max,
            &forbidden_triples(g, rules),
            sym,
            cap,
        )?,
    })
}

pub fn component_by_index<'a>(
    comps: &'a [dsamp::conflict::Component],
    idx: usize,
    what: &Path,
) -> Result<&'a dsamp::conflict::Component, Failure> {
    comps.get(idx).ok_or_else(|| {
        Failure::input(format!(
            "component {idx} out of range: {} has {} components",
            what.display(),
            comps.len()
        ))
    })
}
