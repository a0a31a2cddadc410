//! Native solve with a benchmarking report: best value, time to best, time
//! to certify, and gap per component, then summed and maximum rows.

use std::path::PathBuf;

use clap::Args;

use dsamp::solver::{solve_layout, ComponentReport, SolveBudget};

use crate::report::{ratio, seconds, Table};
use crate::{Failure, FormatArg, ModeArg, RuleArgs};

#[derive(Args)]
pub struct SolveArgs {
    /// Layout file
    layout: PathBuf,
    #[command(flatten)]
    rules: RuleArgs,
    /// Group family to enumerate
    #[arg(long, value_enum, default_value = "induced")]
    mode: ModeArg,
    /// Wall-clock limit per component, seconds
    #[arg(long, default_value_t = 3600.0)]
    time_limit: f64,
    /// Search node limit per component
    #[arg(long)]
    node_limit: Option<u64>,
    /// Solve components one at a time instead of in parallel
    #[arg(long)]
    serial: bool,
    /// Write the merged coloring here
    #[arg(long)]
    solution: Option<PathBuf>,
    /// Also write the report here
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

pub fn run(args: SolveArgs) -> Result<(), Failure> {
    let rules = args.rules.to_rules()?;
    let layout = crate::load_layout(&args.layout)?;
    let budget = SolveBudget {
        time_limit: args.time_limit,
        node_limit: args.node_limit.unwrap_or(u64::MAX),
        parallel_components: !args.serial,
    };
    let solved = solve_layout(&layout, &rules, args.mode.to_mode(), &budget)?;

    if let Some(path) = &args.solution {
        std::fs::write(path, solved.merged.to_text())?;
        println!("solution: {}", path.display());
    }

    let table = build_report(&solved.components, &solved.merged);
    let rendered = match args.format {
        FormatArg::Text => table.to_text(),
        FormatArg::Csv => table.to_csv(),
    };
    print!("{rendered}");
    if let Some(path) = &args.report {
        std::fs::write(path, &rendered)?;
    }

    if !solved.merged.optimal {
        let gap = gap_of(solved.merged.num_colors, solved.merged.lower_bound, true);
        return Err(Failure::budget(format!(
            "budget exhausted before optimality was proven (best {}, bound {}, gap {})",
            solved.merged.num_colors,
            solved.merged.lower_bound,
            ratio(gap)
        )));
    }
    Ok(())
}

/// Gap against the best known bound: zero once optimal.
fn gap_of(best: usize, bound: usize, truncated: bool) -> f64 {
    if !truncated || best == 0 {
        0.0
    } else {
        (best as f64 - bound as f64) / best as f64
    }
}

fn build_report(
    components: &[ComponentReport],
    merged: &dsamp::solver::MergedColoring,
) -> Table {
    let mut table = Table::new(&[
        "component",
        "vias",
        "best",
        "bound",
        "gap",
        "time_to_best",
        "time_to_certify",
    ]);
    for (idx, comp) in components.iter().enumerate() {
        let s = &comp.solution;
        table.push(vec![
            format!("c{idx}"),
            comp.n_vertices.to_string(),
            s.num_colors.to_string(),
            s.lower_bound.to_string(),
            ratio(gap_of(s.num_colors, s.lower_bound, !s.optimal)),
            seconds(s.time_to_best),
            if s.optimal {
                seconds(s.elapsed)
            } else {
                String::new()
            },
        ]);
    }
    let total_vias: usize = components.iter().map(|c| c.n_vertices).sum();
    let all_optimal = merged.optimal;
    let merged_gap = ratio(gap_of(merged.num_colors, merged.lower_bound, !all_optimal));
    let sum_certify = components
        .iter()
        .map(|c| c.solution.elapsed)
        .sum::<f64>();
    let max_certify = components
        .iter()
        .map(|c| c.solution.elapsed)
        .fold(0.0f64, f64::max);
    let certify_cell = |v: f64| {
        if all_optimal {
            seconds(v)
        } else {
            String::new()
        }
    };
    table.push(vec![
        "sum".into(),
        total_vias.to_string(),
        merged.num_colors.to_string(),
        merged.lower_bound.to_string(),
        merged_gap.clone(),
        seconds(
            components
                .iter()
                .map(|c| c.solution.time_to_best)
                .sum::<f64>(),
        ),
        certify_cell(sum_certify),
    ]);
    table.push(vec![
        "max".into(),
        total_vias.to_string(),
        merged.num_colors.to_string(),
        merged.lower_bound.to_string(),
        merged_gap,
        seconds(
            components
                .iter()
                .map(|c| c.solution.time_to_best)
                .fold(0.0f64, f64::max),
        ),
        certify_cell(max_certify),
    ]);
    table
}
