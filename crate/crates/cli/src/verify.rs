//! Check a foreign solver's variable assignment against a model built from
//! the same inputs. Variables the file leaves out count as zero; an
//! `objective <value>` line, when present, must match the evaluated point.

use std::collections::HashMap;
use std::path::PathBuf;

use clap::Args;
use dsamp::conflict::{connected_components, ConflictGraph};
use dsamp::formulations::DEFAULT_MODEL_CAP;

use crate::export::{build_model, check_model_k, component_by_index};
use crate::{Failure, ModeArg, ModelArg, RuleArgs};

const OBJECTIVE_TOL: f64 = 1e-6;

#[derive(Args)]
pub struct VerifyArgs {
    /// Layout file
    layout: PathBuf,
    /// Assignment file: `<variable> <value>` lines, `#` comments
    #[arg(long)]
    assignment: PathBuf,
    /// Model family the assignment refers to
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
    /// Connected component the assignment is for
    #[arg(long, default_value_t = 0)]
    component: usize,
}

pub fn run(args: VerifyArgs) -> Result<(), Failure> {
    let rules = args.rules.to_rules()?;
    check_model_k(args.model, &rules)?;
    let layout = crate::load_layout(&args.layout)?;
    let g = ConflictGraph::build(&layout, &rules);
    let comps = connected_components(&g);
    let comp = component_by_index(&comps, args.component, &args.layout)?;
    let model = build_model(&comp.graph, &rules, args.model, args.mode, !args.no_sym, args.cap)?;

    let text = std::fs::read_to_string(&args.assignment)?;
    let (entries, claimed) = parse_assignment(&text)?;

    let unknown: Vec<&str> = entries
        .keys()
        .filter(|name| model.var_id(name).is_none())
        .map(|s| s.as_str())
        .collect();
    if !unknown.is_empty() {
        let mut names: Vec<&str> = unknown;
        names.sort_unstable();
        let shown = names[..names.len().min(10)].join(", ");
        return Err(Failure::input(format!(
            "assignment names {} variables the model does not have: {}{}",
            names.len(),
            shown,
            if names.len() > 10 { ", ..." } else { "" }
        )));
    }

    let mut full: HashMap<String, f64> = model
        .var_names()
        .iter()
        .map(|name| (name.clone(), 0.0))
        .collect();
    for (name, value) in entries {
        full.insert(name, value);
    }
    let report = model
        .check_named(&full)
        .expect("assignment covers every variable");

    if !report.valid() {
        println!(
            "invalid: {} violated constraints, {} non-binary variables",
            report.total_violations, report.total_nonbinary
        );
        for v in report.violations.iter().take(20) {
            println!(
                "  {}: lhs {} {} {}",
                v.constraint,
                v.lhs,
                v.sense.as_str(),
                v.rhs
            );
        }
        for (name, value) in report.nonbinary.iter().take(20) {
            println!("  {name} = {value} is not 0/1");
        }
        return Err(Failure::input("assignment violates the model"));
    }
    if let Some(value) = claimed {
        if (value - report.objective).abs() > OBJECTIVE_TOL {
            println!(
                "value mismatch: file claims objective {value}, point evaluates to {}",
                report.objective
            );
            return Err(Failure::input("claimed objective does not match"));
        }
    }
    println!("valid: objective {}", report.objective);
    Ok(())
}

fn parse_assignment(text: &str) -> Result<(HashMap<String, f64>, Option<f64>), Failure> {
    let mut entries = HashMap::new();
    let mut claimed = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let name = parts.next().unwrap();
        let value: f64 = parts
            .next()
            .ok_or_else(|| Failure::input(format!("line {}: missing value", idx + 1)))?
            .parse()
            .map_err(|e| Failure::input(format!("line {}: {e}", idx + 1)))?;
        if parts.next().is_some() {
            return Err(Failure::input(format!(
                "line {}: expected `<variable> <value>`",
                idx + 1
            )));
        }
        if name == "objective" {
            claimed = Some(value);
            continue;
        }
        if entries.insert(name.to_string(), value).is_some() {
            return Err(Failure::input(format!(
                "line {}: variable {name} listed twice",
                idx + 1
            )));
        }
    }
    Ok((entries, claimed))
}
