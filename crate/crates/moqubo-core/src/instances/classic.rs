//! Classic text format for release-planning instances.
//!
//! ```text
//! L                      level count
//! n_1                    requirements in level 1
//! c_1 ... c_n1           their integer costs, one line
//! ...                    (repeat per level)
//! D                      dependency count
//! a b                    D lines: requirement b requires requirement a
//! C                      customer count
//! p k id_1 ... id_k      C lines: profit, request count, requested ids
//! ```
//!
//! Requirement ids are 1-based and global across levels. LF and CRLF line
//! endings are both accepted; blank lines are ignored.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{
    Constraint, InstanceError, Objective, ProblemInstance, Sense, Variable, VariableKind,
};

struct LineReader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> LineReader<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        LineReader { lines, pos: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), InstanceError> {
        match self.lines.get(self.pos) {
            Some(&(no, line)) => {
                self.pos += 1;
                Ok((no, line))
            }
            None => Err(InstanceError::Parse {
                line: self.lines.last().map_or(1, |&(no, _)| no + 1),
                message: format!("unexpected end of file, expected {}", what),
            }),
        }
    }

    fn rest(&self) -> Option<usize> {
        self.lines.get(self.pos).map(|&(no, _)| no)
    }
}

fn parse_ints(line: &str, no: usize) -> Result<Vec<i64>, InstanceError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>().map_err(|_| InstanceError::Parse {
                line: no,
                message: format!("expected an integer, found '{}'", tok),
            })
        })
        .collect()
}

fn parse_count(line: &str, no: usize, what: &str) -> Result<usize, InstanceError> {
    let ints = parse_ints(line, no)?;
    match ints.as_slice() {
        [v] if *v >= 0 => Ok(*v as usize),
        _ => Err(InstanceError::Parse { line: no, message: format!("expected a single nonnegative {}", what) }),
    }
}

/// Parses the classic text format into a bi-objective instance: minimize the
/// total cost of selected requirements, maximize the total profit of satisfied
/// customers, with one implication per dependency and per customer request.
pub fn parse_classic_nrp(text: &str) -> Result<ProblemInstance, InstanceError> {
    let mut rd = LineReader::new(text);

    let (no, line) = rd.next("level count")?;
    let levels = parse_count(line, no, "level count")?;

    let mut costs: Vec<i64> = Vec::new();
    for _ in 0..levels {
        let (no, line) = rd.next("requirement count")?;
        let count = parse_count(line, no, "requirement count")?;
        let (no, line) = rd.next("cost line")?;
        let level_costs = parse_ints(line, no)?;
        if level_costs.len() != count {
            return Err(InstanceError::Parse {
                line: no,
                message: format!("expected {} costs, found {}", count, level_costs.len()),
            });
        }
        costs.extend(level_costs);
    }
    let n_req = costs.len();
    let req_id = |raw: i64, no: usize| -> Result<usize, InstanceError> {
        if raw >= 1 && (raw as usize) <= n_req {
            Ok(raw as usize - 1)
        } else {
            Err(InstanceError::Parse {
                line: no,
                message: format!("requirement id {} out of range 1..={}", raw, n_req),
            })
        }
    };

    let (no, line) = rd.next("dependency count")?;
    let n_dep = parse_count(line, no, "dependency count")?;
    let mut constraints = Vec::new();
    for _ in 0..n_dep {
        let (no, line) = rd.next("dependency line")?;
        let ints = parse_ints(line, no)?;
        let [a, b] = ints.as_slice() else {
            return Err(InstanceError::Parse {
                line: no,
                message: format!("expected 'a b', found {} tokens", ints.len()),
            });
        };
        // "a b" means b requires a: selecting b implies a is selected.
        constraints.push(Constraint::Implies { a: req_id(*b, no)?, b: req_id(*a, no)? });
    }

    let (no, line) = rd.next("customer count")?;
    let n_cust = parse_count(line, no, "customer count")?;
    let mut profits: Vec<i64> = Vec::with_capacity(n_cust);
    let mut requests: Vec<Vec<usize>> = Vec::with_capacity(n_cust);
    for _ in 0..n_cust {
        let (no, line) = rd.next("customer line")?;
        let ints = parse_ints(line, no)?;
        if ints.len() < 2 {
            return Err(InstanceError::Parse {
                line: no,
                message: "expected 'profit k id...'".to_string(),
            });
        }
        let profit = ints[0];
        let k = ints[1];
        if k < 0 || ints.len() != 2 + k as usize {
            return Err(InstanceError::Parse {
                line: no,
                message: format!("customer declares {} requests but lists {}", k, ints.len() - 2),
            });
        }
        let ids = ints[2..].iter().map(|&r| req_id(r, no)).collect::<Result<Vec<_>, _>>()?;
        profits.push(profit);
        requests.push(ids);
    }

    if let Some(no) = rd.rest() {
        return Err(InstanceError::Parse { line: no, message: "unexpected trailing content".to_string() });
    }

    let mut variables = Vec::with_capacity(n_req + n_cust);
    for i in 0..n_req {
        variables.push(Variable {
            id: i,
            label: format!("r{}", i + 1),
            kind: VariableKind::Requirement,
        });
    }
    for k in 0..n_cust {
        variables.push(Variable {
            id: n_req + k,
            label: format!("c{}", k + 1),
            kind: VariableKind::Customer,
        });
    }

    let n = n_req + n_cust;
    let mut cost_coeffs = alloc::vec![0.0; n];
    for (i, &c) in costs.iter().enumerate() {
        cost_coeffs[i] = c as f64;
    }
    let mut profit_coeffs = alloc::vec![0.0; n];
    for (k, &p) in profits.iter().enumerate() {
        profit_coeffs[n_req + k] = p as f64;
    }

    for (k, ids) in requests.iter().enumerate() {
        for &r in ids {
            constraints.push(Constraint::Implies { a: n_req + k, b: r });
        }
    }

    let inst = ProblemInstance {
        name: "nrp".to_string(),
        variables,
        objectives: alloc::vec![
            Objective {
                name: "cost".to_string(),
                sense: Sense::Minimize,
                coefficients: cost_coeffs,
                offset: 0.0,
            },
            Objective {
                name: "profit".to_string(),
                sense: Sense::Maximize,
                coefficients: profit_coeffs,
                offset: 0.0,
            },
        ],
        constraints,
    };
    inst.validate()?;
    Ok(inst)
}

/// Writes a requirement/customer instance back into the classic text format
/// (single level). Inverse of [`parse_classic_nrp`] on instances in classic
/// shape: integer costs and profits, dependencies before customer requests.
pub fn serialize_classic_nrp(inst: &ProblemInstance) -> String {
    let n_req = inst.variables.iter().filter(|v| v.kind == VariableKind::Requirement).count();
    let n_cust = inst.variables.len() - n_req;

    let mut out = String::new();
    out.push_str("1\n");
    out.push_str(&format!("{}\n", n_req));
    let costs: Vec<String> =
        (0..n_req).map(|i| format!("{}", inst.objectives[0].coefficients[i] as i64)).collect();
    out.push_str(&costs.join(" "));
    out.push('\n');

    let mut deps = Vec::new();
    let mut requests: Vec<Vec<usize>> = alloc::vec![Vec::new(); n_cust];
    for c in &inst.constraints {
        if let Constraint::Implies { a, b } = c {
            if *a < n_req {
                // Requirement a depends on requirement b: "b a" in file terms.
                deps.push((*b + 1, *a + 1));
            } else {
                requests[*a - n_req].push(*b + 1);
            }
        }
    }
    out.push_str(&format!("{}\n", deps.len()));
    for (a, b) in deps {
        out.push_str(&format!("{} {}\n", a, b));
    }
    out.push_str(&format!("{}\n", n_cust));
    for (k, ids) in requests.iter().enumerate() {
        let profit = inst.objectives[1].coefficients[n_req + k] as i64;
        let mut line = format!("{} {}", profit, ids.len());
        for id in ids {
            line.push_str(&format!(" {}", id));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}
