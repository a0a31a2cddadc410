//! Layout statistics: one whole-graph row, then the largest components with
//! their exact clique number and maximum degree.

use std::path::PathBuf;

use clap::Args;
use dsamp::conflict::{component_stats, connected_components, ConflictGraph};

use crate::report::Table;
use crate::{Failure, FormatArg, RuleArgs};

#[derive(Args)]
pub struct StatsArgs {
    /// Layout file
    layout: PathBuf,
    #[command(flatten)]
    rules: RuleArgs,
    /// Number of component rows shown, largest first
    #[arg(long, default_value_t = 10)]
    top: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

pub fn run(args: StatsArgs) -> Result<(), Failure> {
    let rules = args.rules.to_rules()?;
    let layout = crate::load_layout(&args.layout)?;
    let g = ConflictGraph::build(&layout, &rules);

    let mut table = Table::new(&[
        "scope",
        "vias",
        "edges",
        "dsa_edges",
        "density",
        "omega",
        "delta",
    ]);
    table.push(vec![
        "graph".into(),
        g.n().to_string(),
        g.num_edges().to_string(),
        g.num_dsa_edges().to_string(),
        format!("{:.3}", g.density()),
        String::new(),
        String::new(),
    ]);
    for (idx, comp) in connected_components(&g).iter().take(args.top).enumerate() {
        let s = component_stats(&comp.graph);
        table.push(vec![
            format!("c{idx}"),
            s.n_vertices.to_string(),
            s.n_edges.to_string(),
            s.n_dsa_edges.to_string(),
            format!("{:.3}", s.density),
            s.omega.to_string(),
            s.delta.to_string(),
        ]);
    }
    match args.format {
        FormatArg::Text => print!("{}", table.to_text()),
        FormatArg::Csv => print!("{}", table.to_csv()),
    }
    Ok(())
}
