//! DIMACS CNF feature models with a per-feature attribute table.
//!
//! The CNF file is standard DIMACS (`c` comment lines, one `p cnf V C` header,
//! zero-terminated clauses). The attribute file is a CSV with header
//! `feature,richness,reliability,defects,cost` and one row per variable in
//! DIMACS order; it supplies the four objectives (maximize richness and
//! reliability, minimize defects and cost).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{
    Constraint, InstanceError, Literal, Objective, ProblemInstance, Sense, Variable, VariableKind,
};

fn parse_err(line: usize, message: String) -> InstanceError {
    InstanceError::Parse { line, message }
}

/// Parses a DIMACS CNF plus attribute CSV into a four-objective instance with
/// one clause constraint per CNF clause.
pub fn parse_dimacs_fm(cnf_text: &str, attributes_text: &str) -> Result<ProblemInstance, InstanceError> {
    let mut n_vars: Option<usize> = None;
    let mut n_clauses: Option<usize> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_start_line = 0usize;

    for (no, raw) in cnf_text.lines().enumerate() {
        let no = no + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if n_vars.is_some() {
                return Err(parse_err(no, "duplicate problem line".to_string()));
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [_, kind, v, c] = toks.as_slice() else {
                return Err(parse_err(no, "expected 'p cnf V C'".to_string()));
            };
            if *kind != "cnf" {
                return Err(parse_err(no, format!("unsupported problem kind '{}'", kind)));
            }
            n_vars = Some(v.parse().map_err(|_| parse_err(no, format!("bad variable count '{}'", v)))?);
            n_clauses =
                Some(c.parse().map_err(|_| parse_err(no, format!("bad clause count '{}'", c)))?);
            continue;
        }
        let Some(nv) = n_vars else {
            return Err(parse_err(no, "clause before 'p cnf' header".to_string()));
        };
        for tok in line.split_whitespace() {
            let val: i64 =
                tok.parse().map_err(|_| parse_err(no, format!("expected a literal, found '{}'", tok)))?;
            if val == 0 {
                if current.is_empty() {
                    return Err(parse_err(no, "empty clause".to_string()));
                }
                clauses.push(core::mem::take(&mut current));
            } else {
                if val.unsigned_abs() as usize > nv {
                    return Err(parse_err(
                        no,
                        format!("literal {} references a variable beyond the declared {}", val, nv),
                    ));
                }
                if current.is_empty() {
                    current_start_line = no;
                }
                current.push(Literal::from_signed(val).unwrap());
            }
        }
    }
    let n_vars = n_vars.ok_or_else(|| parse_err(1, "missing 'p cnf' header".to_string()))?;
    if !current.is_empty() {
        return Err(parse_err(current_start_line, "clause not terminated by 0".to_string()));
    }
    if let Some(expected) = n_clauses {
        if clauses.len() != expected {
            return Err(parse_err(
                1,
                format!("header declares {} clauses, file contains {}", expected, clauses.len()),
            ));
        }
    }

    let (labels, attrs) = parse_attributes(attributes_text)?;
    if attrs.len() != n_vars {
        return Err(InstanceError::Invalid(format!(
            "attribute file has {} rows for {} variables",
            attrs.len(),
            n_vars
        )));
    }

    let variables = (0..n_vars)
        .map(|i| Variable { id: i, label: labels[i].clone(), kind: VariableKind::Feature })
        .collect();
    let column = |j: usize| -> Vec<f64> { attrs.iter().map(|row| row[j]).collect() };
    let objectives = alloc::vec![
        Objective { name: "richness".to_string(), sense: Sense::Maximize, coefficients: column(0), offset: 0.0 },
        Objective { name: "reliability".to_string(), sense: Sense::Maximize, coefficients: column(1), offset: 0.0 },
        Objective { name: "defects".to_string(), sense: Sense::Minimize, coefficients: column(2), offset: 0.0 },
        Objective { name: "cost".to_string(), sense: Sense::Minimize, coefficients: column(3), offset: 0.0 },
    ];
    let constraints = clauses.into_iter().map(|literals| Constraint::Clause { literals }).collect();

    let inst = ProblemInstance { name: "fsp".to_string(), variables, objectives, constraints };
    inst.validate()?;
    Ok(inst)
}

/// Parses the attribute CSV; returns feature labels and the four numeric
/// columns per row in `richness, reliability, defects, cost` order.
fn parse_attributes(text: &str) -> Result<(Vec<String>, Vec<[f64; 4]>), InstanceError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (no, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty attribute file".to_string()))?;
    let expected = "feature,richness,reliability,defects,cost";
    if header.replace(' ', "") != expected {
        return Err(parse_err(no, format!("expected header '{}'", expected)));
    }
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for (no, line) in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [name, rest @ ..] = fields.as_slice() else {
            return Err(parse_err(no, "empty row".to_string()));
        };
        if rest.len() != 4 {
            return Err(parse_err(no, format!("expected 4 attribute values, found {}", rest.len())));
        }
        let mut row = [0.0; 4];
        for (j, tok) in rest.iter().enumerate() {
            row[j] = tok
                .parse()
                .map_err(|_| parse_err(no, format!("expected a number, found '{}'", tok)))?;
        }
        labels.push(name.to_string());
        rows.push(row);
    }
    Ok((labels, rows))
}
