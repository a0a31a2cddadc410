//! LP-format text for the models: Minimize / Subject To / Binary / End.
//!
//! Emission is deterministic and re-exporting a parsed file reproduces it
//! byte for byte. Long rows wrap at a fixed width with a two-space
//! continuation indent; every variable is listed in the Binary section in
//! model order, which is how a parsed model recovers variable order.

use std::fmt;
use std::path::Path;

use super::{IpModel, Sense};

const WRAP_WIDTH: usize = 72;

pub fn lp_string(model: &IpModel) -> String {
    let mut out = String::new();
    out.push_str("Minimize\n");
    let obj_terms: Vec<(f64, &str)> = model
        .objective()
        .iter()
        .map(|&(c, v)| (c, model.var_name(v)))
        .collect();
    emit_row(&mut out, "obj", &obj_terms, None);
    out.push_str("Subject To\n");
    for c in model.constraints() {
        let terms: Vec<(f64, &str)> = c
            .terms
            .iter()
            .map(|&(coef, v)| (coef, model.var_name(v)))
            .collect();
        emit_row(&mut out, &c.name, &terms, Some((c.sense, c.rhs)));
    }
    out.push_str("Binary\n");
    for name in model.var_names() {
        out.push(' ');
        out.push_str(name);
        out.push('\n');
    }
    out.push_str("End\n");
    out
}

pub fn export_lp(model: &IpModel, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, lp_string(model))
}

fn emit_row(out: &mut String, head: &str, terms: &[(f64, &str)], tail: Option<(Sense, f64)>) {
    let mut line = format!(" {head}:");
    // a chunk never splits; a line holding only the row name accepts its
    // first chunk regardless of width
    let mut bare = true;
    let push_chunk = |out: &mut String, line: &mut String, bare: &mut bool, chunk: String| {
        if !*bare && line.len() + chunk.len() > WRAP_WIDTH {
            out.push_str(line);
            out.push('\n');
            *line = format!("  {}", chunk.trim_start());
        } else {
            line.push_str(&chunk);
        }
        *bare = false;
    };
    for (idx, &(coef, name)) in terms.iter().enumerate() {
        let sign = if coef < 0.0 {
            " - "
        } else if idx > 0 {
            " + "
        } else {
            " "
        };
        let mag = coef.abs();
        let chunk = if (mag - 1.0).abs() < 1e-12 {
            format!("{sign}{name}")
        } else {
            format!("{sign}{} {name}", format_num(mag))
        };
        push_chunk(out, &mut line, &mut bare, chunk);
    }
    if let Some((sense, rhs)) = tail {
        push_chunk(
            out,
            &mut line,
            &mut bare,
            format!(" {} {}", sense.as_str(), format_num(rhs)),
        );
    }
    out.push_str(&line);
    out.push('\n');
}

/// Integral values print without a decimal point; everything else uses the
/// shortest round-trip form.
fn format_num(x: f64) -> String {
    if (x - x.round()).abs() < 1e-9 && x.abs() < 1e15 {
        format!("{}", x.round() as i64)
    } else {
        format!("{x}")
    }
}

#[derive(Debug)]
pub struct LpParseError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for LpParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lp parse error at line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for LpParseError {}

/// Parse a file produced by [`lp_string`]. The color bound is not encoded
/// in the format, so the parsed model carries 0 there; everything needed
/// for re-export and checking round-trips exactly.
pub fn parse_lp(text: &str) -> Result<IpModel, LpParseError> {
    let err = |line: usize, msg: &str| LpParseError {
        line,
        msg: msg.to_string(),
    };
    #[derive(PartialEq)]
    enum Section {
        Preamble,
        Objective,
        Constraints,
        Binary,
        Done,
    }
    // logical records: (starting line number, joined text)
    let mut obj_record: Option<(usize, String)> = None;
    let mut con_records: Vec<(usize, String)> = Vec::new();
    let mut binaries: Vec<(usize, String)> = Vec::new();
    let mut section = Section::Preamble;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        match raw.trim() {
            "Minimize" if section == Section::Preamble => {
                section = Section::Objective;
                continue;
            }
            "Subject To" if section == Section::Objective => {
                section = Section::Constraints;
                continue;
            }
            "Binary" if section == Section::Constraints => {
                section = Section::Binary;
                continue;
            }
            "End" if section == Section::Binary => {
                section = Section::Done;
                continue;
            }
            _ => {}
        }
        let continuation = raw.starts_with("  ");
        match section {
            Section::Preamble => return Err(err(lineno, "expected Minimize")),
            Section::Objective => match &mut obj_record {
                Some((_, rec)) if continuation => {
                    rec.push(' ');
                    rec.push_str(raw.trim_start());
                }
                None if !continuation => obj_record = Some((lineno, raw.trim().to_string())),
                _ => return Err(err(lineno, "malformed objective")),
            },
            Section::Constraints => {
                if continuation {
                    match con_records.last_mut() {
                        Some((_, rec)) => {
                            rec.push(' ');
                            rec.push_str(raw.trim_start());
                        }
                        None => return Err(err(lineno, "continuation before any constraint")),
                    }
                } else {
                    con_records.push((lineno, raw.trim().to_string()));
                }
            }
            Section::Binary => binaries.push((lineno, raw.trim().to_string())),
            Section::Done => return Err(err(lineno, "content after End")),
        }
    }
    if section != Section::Done {
        return Err(err(text.lines().count(), "missing End"));
    }
    let mut model = IpModel::new("parsed", 0);
    for (lineno, name) in &binaries {
        if name.split_whitespace().count() != 1 {
            return Err(err(*lineno, "expected one variable name per line"));
        }
        if model.var_id(name).is_some() {
            return Err(err(*lineno, "duplicate variable in Binary section"));
        }
        model.add_var(name.clone());
    }
    let (obj_line, obj_text) =
        obj_record.ok_or_else(|| err(text.lines().count(), "missing objective row"))?;
    let (name, terms, tail) = parse_row(&model, obj_line, &obj_text)?;
    if name != "obj" || tail.is_some() {
        return Err(err(obj_line, "objective row must be `obj:` with no relation"));
    }
    for (coef, var) in terms {
        model.add_objective_term(coef, var);
    }
    let mut seen_names = std::collections::HashSet::new();
    for (lineno, rec) in &con_records {
        let (name, terms, tail) = parse_row(&model, *lineno, rec)?;
        let (sense, rhs) = tail.ok_or_else(|| err(*lineno, "constraint lacks a relation"))?;
        if terms.is_empty() {
            return Err(err(*lineno, "constraint has no terms"));
        }
        if !seen_names.insert(name.clone()) {
            return Err(err(*lineno, "duplicate constraint name"));
        }
        model.add_constraint(name, terms, sense, rhs);
    }
    Ok(model)
}

type Row = (String, Vec<(f64, usize)>, Option<(Sense, f64)>);

fn parse_row(model: &IpModel, lineno: usize, text: &str) -> Result<Row, LpParseError> {
    let err = |msg: String| LpParseError { line: lineno, msg };
    let colon = text
        .find(':')
        .ok_or_else(|| err("missing `:` after row name".into()))?;
    let name = text[..colon].trim().to_string();
    if name.is_empty() || name.split_whitespace().count() != 1 {
        return Err(err("bad row name".into()));
    }
    let mut terms = Vec::new();
    let mut tail = None;
    let mut sign = 1.0;
    let mut coeff: Option<f64> = None;
    let mut tokens = text[colon + 1..].split_whitespace();
    while let Some(tok) = tokens.next() {
        match tok {
            "+" => sign = 1.0,
            "-" => sign = -sign,
            "<=" | ">=" | "=" => {
                if coeff.is_some() {
                    return Err(err("dangling coefficient before relation".into()));
                }
                let sense = match tok {
                    "<=" => Sense::Le,
                    ">=" => Sense::Ge,
                    _ => Sense::Eq,
                };
                let mut rhs_sign = 1.0;
                let mut rhs = None;
                for t in tokens.by_ref() {
                    match t {
                        "-" => rhs_sign = -rhs_sign,
                        "+" => {}
                        num => {
                            rhs = Some(
                                num.parse::<f64>()
                                    .map_err(|_| err(format!("bad right-hand side {num}")))?,
                            );
                        }
                    }
                }
                let rhs = rhs.ok_or_else(|| err("missing right-hand side".into()))?;
                tail = Some((sense, rhs_sign * rhs));
                break;
            }
            t if t.starts_with(|c: char| c.is_ascii_digit() || c == '.') => {
                if coeff.is_some() {
                    return Err(err(format!("two consecutive numbers near {t}")));
                }
                coeff =
                    Some(t.parse::<f64>().map_err(|_| err(format!("bad number {t}")))?);
            }
            name_tok => {
                let var = model
                    .var_id(name_tok)
                    .ok_or_else(|| err(format!("unknown variable {name_tok}")))?;
                terms.push((sign * coeff.take().unwrap_or(1.0), var));
                sign = 1.0;
            }
        }
    }
    if coeff.is_some() {
        return Err(err("dangling coefficient at end of row".into()));
    }
    Ok((name, terms, tail))
}
