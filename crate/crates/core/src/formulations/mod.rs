//! Integer programming models of the grouped coloring problem, their LP
//! text form, and solution checking.
//!
//! Every model minimizes the number of colors used over binary variables.
//! Builders are pure: the resulting [`IpModel`] is immutable and fully
//! determined by its inputs, so exported files diff cleanly.

mod brute;
mod build;
mod lp;

pub use brute::{
    chromatic_number, general_optimum, induced_optimum, naive_optimum, pairing_optimum,
};
pub use build::{
    build_general, build_general_capped, build_induced_path, build_naive, build_pairing,
    check_general_size, DEFAULT_MODEL_CAP,
};
pub use lp::{export_lp, lp_string, parse_lp, LpParseError};

use std::collections::HashMap;

use thiserror::Error;

use crate::solver::ColoringSolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Pairing,
    Naive,
    NaiveStrengthened,
    InducedPath,
    GeneralPath,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Pairing => "pairing",
            ModelKind::Naive => "naive",
            ModelKind::NaiveStrengthened => "naive-strengthened",
            ModelKind::InducedPath => "induced",
            ModelKind::GeneralPath => "general",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    pub fn as_str(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub name: String,
    /// (coefficient, variable id) pairs; never empty, no repeated ids.
    pub terms: Vec<(f64, usize)>,
    pub sense: Sense,
    pub rhs: f64,
}

/// A pure binary program: minimize the objective subject to linear
/// constraints over 0/1 variables.
#[derive(Debug, Clone)]
pub struct IpModel {
    pub name: String,
    /// Color bound the model was built with.
    pub colors: usize,
    vars: Vec<String>,
    var_index: HashMap<String, usize>,
    constraints: Vec<Constraint>,
    objective: Vec<(f64, usize)>,
}

impl IpModel {
    pub(crate) fn new(name: impl Into<String>, colors: usize) -> IpModel {
        IpModel {
            name: name.into(),
            colors,
            vars: Vec::new(),
            var_index: HashMap::new(),
            constraints: Vec::new(),
            objective: Vec::new(),
        }
    }

    /// Panics on a repeated name: builders never rename silently.
    pub(crate) fn add_var(&mut self, name: String) -> usize {
        assert!(
            !self.var_index.contains_key(&name),
            "duplicate variable name {name}"
        );
        let id = self.vars.len();
        self.var_index.insert(name.clone(), id);
        self.vars.push(name);
        id
    }

    pub(crate) fn add_constraint(
        &mut self,
        name: String,
        terms: Vec<(f64, usize)>,
        sense: Sense,
        rhs: f64,
    ) {
        debug_assert!(!terms.is_empty(), "empty constraint {name}");
        debug_assert!(
            {
                let mut ids: Vec<usize> = terms.iter().map(|t| t.1).collect();
                ids.sort_unstable();
                ids.windows(2).all(|w| w[0] != w[1])
            },
            "repeated variable in constraint {name}"
        );
        debug_assert!(
            !self.constraints.iter().any(|c| c.name == name),
            "duplicate constraint name {name}"
        );
        self.constraints.push(Constraint {
            name,
            terms,
            sense,
            rhs,
        });
    }

    pub(crate) fn add_objective_term(&mut self, coeff: f64, var: usize) {
        self.objective.push((coeff, var));
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, id: usize) -> &str {
        &self.vars[id]
    }

    pub fn var_id(&self, name: &str) -> Option<usize> {
        self.var_index.get(name).copied()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[(f64, usize)] {
        &self.objective
    }

    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective.iter().map(|&(c, v)| c * values[v]).sum()
    }

    /// Every variable must appear in at least one constraint; returns the
    /// offenders otherwise.
    pub fn validate(&self) -> Result<(), Vec<String>> {
        let mut seen = vec![false; self.vars.len()];
        for c in &self.constraints {
            for &(_, v) in &c.terms {
                seen[v] = true;
            }
        }
        let orphans: Vec<String> = seen
            .iter()
            .enumerate()
            .filter(|&(_, &s)| !s)
            .map(|(v, _)| self.vars[v].clone())
            .collect();
        if orphans.is_empty() {
            Ok(())
        } else {
            Err(orphans)
        }
    }

    /// Evaluate every constraint against a dense 0/1 vector indexed by
    /// variable id.
    pub fn check_dense(&self, values: &[f64]) -> CheckReport {
        assert_eq!(values.len(), self.vars.len(), "value vector length");
        let mut report = CheckReport {
            objective: self.objective_value(values),
            violations: Vec::new(),
            total_violations: 0,
            nonbinary: Vec::new(),
            total_nonbinary: 0,
        };
        for (id, &v) in values.iter().enumerate() {
            if (v - 0.0).abs() > BINARY_TOL && (v - 1.0).abs() > BINARY_TOL {
                report.total_nonbinary += 1;
                if report.nonbinary.len() < MAX_REPORTED {
                    report.nonbinary.push((self.vars[id].clone(), v));
                }
            }
        }
        for c in &self.constraints {
            let lhs: f64 = c.terms.iter().map(|&(coef, var)| coef * values[var]).sum();
            let ok = match c.sense {
                Sense::Le => lhs <= c.rhs + CHECK_TOL,
                Sense::Ge => lhs >= c.rhs - CHECK_TOL,
                Sense::Eq => (lhs - c.rhs).abs() <= CHECK_TOL,
            };
            if !ok {
                report.total_violations += 1;
                if report.violations.len() < MAX_REPORTED {
                    report.violations.push(Violation {
                        constraint: c.name.clone(),
                        lhs,
                        sense: c.sense,
                        rhs: c.rhs,
                    });
                }
            }
        }
        report
    }

    /// Like [`check_dense`](IpModel::check_dense) restricted to 0/1 vectors,
    /// but stops at the first violated constraint. The exhaustive optimum
    /// search lives on this.
    pub fn satisfies_dense(&self, values: &[f64]) -> bool {
        assert_eq!(values.len(), self.vars.len(), "value vector length");
        self.constraints.iter().all(|c| {
            let lhs: f64 = c.terms.iter().map(|&(coef, var)| coef * values[var]).sum();
            match c.sense {
                Sense::Le => lhs <= c.rhs + CHECK_TOL,
                Sense::Ge => lhs >= c.rhs - CHECK_TOL,
                Sense::Eq => (lhs - c.rhs).abs() <= CHECK_TOL,
            }
        })
    }

    /// Check a named assignment. The assignment must cover every variable
    /// exactly; unknown names are rejected rather than ignored.
    pub fn check_named(&self, assignment: &HashMap<String, f64>) -> Result<CheckReport, ModelError> {
        for name in assignment.keys() {
            if !self.var_index.contains_key(name) {
                return Err(ModelError::UnknownVariable { name: name.clone() });
            }
        }
        let mut values = vec![0.0; self.vars.len()];
        for (id, name) in self.vars.iter().enumerate() {
            match assignment.get(name) {
                Some(&v) => values[id] = v,
                None => return Err(ModelError::MissingVariable { name: name.clone() }),
            }
        }
        Ok(self.check_dense(&values))
    }
}

const CHECK_TOL: f64 = 1e-6;
const BINARY_TOL: f64 = 1e-6;
const MAX_REPORTED: usize = 100;

#[derive(Debug, Clone)]
pub struct Violation {
    pub constraint: String,
    pub lhs: f64,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub objective: f64,
    /// First hundred violated constraints.
    pub violations: Vec<Violation>,
    pub total_violations: usize,
    /// First hundred variables outside {0, 1}.
    pub nonbinary: Vec<(String, f64)>,
    pub total_nonbinary: usize,
}

impl CheckReport {
    pub fn valid(&self) -> bool {
        self.total_violations == 0 && self.total_nonbinary == 0
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error(
        "model would need {vars} variables, {cons} constraints and about {terms} coefficients \
         (cap {cap}); refusing to build it"
    )]
    TooLarge {
        vars: usize,
        cons: usize,
        terms: usize,
        cap: usize,
    },
    #[error("assignment is missing variable {name}")]
    MissingVariable { name: String },
    #[error("assignment names unknown variable {name}")]
    UnknownVariable { name: String },
    #[error("solution uses {used} colors but the model allows {bound}")]
    TooManyColors { used: usize, bound: usize },
}

// Shared variable naming. Colors are 1-based, vertices and positions
// 0-based; undirected edge names order the smaller endpoint first while
// oriented names keep their direction.
pub(crate) fn l_name(i: usize) -> String {
    format!("l_{i}")
}

pub(crate) fn z_name(i: usize, v: usize) -> String {
    format!("z_{i}_{v}")
}

pub(crate) fn xe_name(i: usize, u: usize, v: usize) -> String {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    format!("xe_{i}_{a}_{b}")
}

pub(crate) fn xo_name(i: usize, kappa: usize, from: usize, to: usize) -> String {
    format!("xo_{i}_{kappa}_{from}_{to}")
}

pub(crate) fn ys_name(i: usize, v: usize) -> String {
    format!("ys_{i}_{v}")
}

pub(crate) fn yo_name(i: usize, v: usize, origin: usize) -> String {
    format!("yo_{i}_{v}_{origin}")
}

pub(crate) fn xg_name(i: usize, g: usize) -> String {
    format!("xg_{i}_{g}")
}

/// Map a grouped coloring onto the catalog model's variables: chosen colors
/// carry their color-use variable and each selected group its group-color
/// variable; everything else is zero.
pub fn naive_assignment(
    model: &IpModel,
    solution: &ColoringSolution,
) -> Result<HashMap<String, f64>, ModelError> {
    if solution.classes.len() > model.colors {
        return Err(ModelError::TooManyColors {
            used: solution.classes.len(),
            bound: model.colors,
        });
    }
    let mut assignment: HashMap<String, f64> =
        model.vars.iter().map(|n| (n.clone(), 0.0)).collect();
    for (idx, class) in solution.classes.iter().enumerate() {
        let i = idx + 1;
        assignment.insert(l_name(i), 1.0);
        for &gidx in class {
            assignment.insert(xg_name(i, gidx), 1.0);
        }
    }
    Ok(assignment)
}
