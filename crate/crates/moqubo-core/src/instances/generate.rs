//! Seeded synthetic instance generators.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    Constraint, InstanceError, Literal, Objective, ProblemInstance, Sense, Variable, VariableKind,
};
use crate::rng::derive_rng;

/// Generates a requirement/customer instance in classic shape.
///
/// Costs are uniform integers in 1..=10 and profits in 1..=50. Every customer
/// requests `1 + floor(density * n_requirements)` distinct requirements, and
/// `floor(density * n_requirements)` dependency pairs are drawn with the
/// prerequisite always at a lower index, so the dependency graph is acyclic by
/// construction.
pub fn generate_nrp(
    n_requirements: usize,
    n_customers: usize,
    density: f64,
    seed: u64,
) -> Result<ProblemInstance, InstanceError> {
    if n_requirements == 0 || n_customers == 0 {
        return Err(InstanceError::Invalid("need at least one requirement and one customer".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(InstanceError::Invalid(format!("density {} outside [0, 1]", density)));
    }
    let mut rng = derive_rng(seed, &[0x6e72_70]);

    let costs: Vec<i64> = (0..n_requirements).map(|_| rng.random_range(1..=10)).collect();
    let profits: Vec<i64> = (0..n_customers).map(|_| rng.random_range(1..=50)).collect();

    let n_deps = ((density * n_requirements as f64) as usize)
        .min(n_requirements * (n_requirements - 1) / 2);
    let mut seen = BTreeSet::new();
    let mut constraints = Vec::new();
    while seen.len() < n_deps {
        let a = rng.random_range(0..n_requirements);
        let b = rng.random_range(0..n_requirements);
        if a == b {
            continue;
        }
        let (prereq, dependent) = (a.min(b), a.max(b));
        if seen.insert((prereq, dependent)) {
            constraints.push(Constraint::Implies { a: dependent, b: prereq });
        }
    }

    let per_customer = (1 + (density * n_requirements as f64) as usize).min(n_requirements);
    let mut requests = Vec::with_capacity(n_customers);
    for _ in 0..n_customers {
        let mut ids: Vec<usize> =
            index::sample(&mut rng, n_requirements, per_customer).into_iter().collect();
        ids.sort_unstable();
        requests.push(ids);
    }
    for (k, ids) in requests.iter().enumerate() {
        for &r in ids {
            constraints.push(Constraint::Implies { a: n_requirements + k, b: r });
        }
    }

    let n = n_requirements + n_customers;
    let mut variables = Vec::with_capacity(n);
    for i in 0..n_requirements {
        variables.push(Variable { id: i, label: format!("r{}", i + 1), kind: VariableKind::Requirement });
    }
    for k in 0..n_customers {
        variables.push(Variable {
            id: n_requirements + k,
            label: format!("c{}", k + 1),
            kind: VariableKind::Customer,
        });
    }
    let mut cost_coeffs = alloc::vec![0.0; n];
    for (i, &c) in costs.iter().enumerate() {
        cost_coeffs[i] = c as f64;
    }
    let mut profit_coeffs = alloc::vec![0.0; n];
    for (k, &p) in profits.iter().enumerate() {
        profit_coeffs[n_requirements + k] = p as f64;
    }

    let inst = ProblemInstance {
        name: "nrp".to_string(),
        variables,
        objectives: alloc::vec![
            Objective { name: "cost".to_string(), sense: Sense::Minimize, coefficients: cost_coeffs, offset: 0.0 },
            Objective { name: "profit".to_string(), sense: Sense::Maximize, coefficients: profit_coeffs, offset: 0.0 },
        ],
        constraints,
    };
    inst.validate()?;
    Ok(inst)
}

#[derive(Clone, Copy, PartialEq)]
enum Relation {
    Optional,
    Mandatory,
    OrMember,
    AltMember,
}

/// Generates a random feature model with attribute objectives.
///
/// Feature 0 is the mandatory root; every other feature attaches to a random
/// lower-index parent as an optional child, mandatory child, or member of its
/// parent's or-group or alternative-group. `floor(cross_tree_ratio *
/// n_features)` implies/excludes cross-tree constraints are added between
/// non-root features. The returned model always admits at least one feasible
/// assignment: candidate assignments are built top-down along the tree and the
/// cross-tree constraint set is redrawn (shrinking as a last resort) until one
/// of them satisfies every constraint.
pub fn generate_fm(
    n_features: usize,
    cross_tree_ratio: f64,
    seed: u64,
) -> Result<ProblemInstance, InstanceError> {
    if n_features < 2 {
        return Err(InstanceError::Invalid("need at least 2 features".into()));
    }
    let mut rng = derive_rng(seed, &[0x666d]);

    let mut parent = alloc::vec![0usize; n_features];
    let mut relation = alloc::vec![Relation::Optional; n_features];
    for i in 1..n_features {
        parent[i] = rng.random_range(0..i);
        relation[i] = match rng.random_range(0..10) {
            0..=3 => Relation::Optional,
            4..=6 => Relation::Mandatory,
            7..=8 => Relation::OrMember,
            _ => Relation::AltMember,
        };
    }

    let mut or_groups: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut alt_groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for p in 0..n_features {
        let members = |rel: Relation| -> Vec<usize> {
            (1..n_features).filter(|&i| parent[i] == p && relation[i] == rel).collect()
        };
        let or = members(Relation::OrMember);
        if !or.is_empty() {
            or_groups.push((p, or));
        }
        let alt = members(Relation::AltMember);
        if !alt.is_empty() {
            alt_groups.push((p, alt));
        }
    }

    let mut tree_constraints = alloc::vec![Constraint::Clause { literals: alloc::vec![Literal::pos(0)] }];
    for i in 1..n_features {
        match relation[i] {
            Relation::Optional => tree_constraints.push(Constraint::Implies { a: i, b: parent[i] }),
            Relation::Mandatory => tree_constraints.push(Constraint::Iff { a: i, b: parent[i] }),
            // Or-members still imply their parent; the group constraint only
            // covers the parent-to-children direction.
            Relation::OrMember => tree_constraints.push(Constraint::Implies { a: i, b: parent[i] }),
            Relation::AltMember => {}
        }
    }
    for (p, children) in &or_groups {
        tree_constraints.push(Constraint::OrGroup { parent: *p, children: children.clone() });
    }
    for (p, children) in &alt_groups {
        tree_constraints.push(Constraint::AltGroup { parent: *p, children: children.clone() });
    }

    let mut n_cross = (cross_tree_ratio * n_features as f64) as usize;
    let cross_constraints = loop {
        let mut cross = Vec::new();
        let mut seen = BTreeSet::new();
        let mut attempts = 0;
        while cross.len() < n_cross && attempts < 50 * (n_cross + 1) {
            attempts += 1;
            if n_features < 3 {
                break;
            }
            let a = rng.random_range(1..n_features);
            let b = rng.random_range(1..n_features);
            if a == b || parent[a] == b || parent[b] == a || !seen.insert((a.min(b), a.max(b))) {
                continue;
            }
            if rng.random_bool(0.5) {
                cross.push(Constraint::Implies { a, b });
            } else {
                cross.push(Constraint::Excludes { a, b });
            }
        }
        if find_feasible(n_features, &parent, &relation, &or_groups, &alt_groups, &cross, &mut rng)
        {
            break cross;
        }
        // Redraw; if redraws keep failing, relax the cross-tree budget so the
        // loop terminates (the bare tree is always satisfiable).
        if n_cross > 0 && rng.random_bool(0.25) {
            n_cross -= 1;
        }
    };

    let pick = |rng: &mut ChaCha8Rng, lo: i64, hi: i64| -> Vec<f64> {
        (0..n_features).map(|_| rng.random_range(lo..=hi) as f64).collect()
    };
    let richness = pick(&mut rng, 1, 10);
    let reliability = pick(&mut rng, 1, 10);
    let defects = pick(&mut rng, 0, 10);
    let cost = pick(&mut rng, 5, 15);

    let variables = (0..n_features)
        .map(|i| Variable { id: i, label: format!("f{}", i + 1), kind: VariableKind::Feature })
        .collect();
    let mut constraints = tree_constraints;
    constraints.extend(cross_constraints);

    let inst = ProblemInstance {
        name: "fm".to_string(),
        variables,
        objectives: alloc::vec![
            Objective { name: "richness".to_string(), sense: Sense::Maximize, coefficients: richness, offset: 0.0 },
            Objective { name: "reliability".to_string(), sense: Sense::Maximize, coefficients: reliability, offset: 0.0 },
            Objective { name: "defects".to_string(), sense: Sense::Minimize, coefficients: defects, offset: 0.0 },
            Objective { name: "cost".to_string(), sense: Sense::Minimize, coefficients: cost, offset: 0.0 },
        ],
        constraints,
    };
    inst.validate()?;
    Ok(inst)
}

/// Randomized satisfiability search: builds top-down tree-consistent
/// assignments and checks them against the cross-tree constraints.
fn find_feasible(
    n: usize,
    parent: &[usize],
    relation: &[Relation],
    or_groups: &[(usize, Vec<usize>)],
    alt_groups: &[(usize, Vec<usize>)],
    cross: &[Constraint],
    rng: &mut ChaCha8Rng,
) -> bool {
    for _ in 0..200 {
        let mut x = alloc::vec![0u8; n];
        x[0] = 1;
        for p in 0..n {
            if x[p] == 0 {
                continue;
            }
            for i in (p + 1)..n {
                if parent[i] != p {
                    continue;
                }
                match relation[i] {
                    Relation::Mandatory => x[i] = 1,
                    Relation::Optional => x[i] = u8::from(rng.random_bool(0.5)),
                    Relation::OrMember | Relation::AltMember => {}
                }
            }
            if let Some((_, members)) = or_groups.iter().find(|(gp, _)| *gp == p) {
                for &m in members {
                    x[m] = u8::from(rng.random_bool(0.5));
                }
                if members.iter().all(|&m| x[m] == 0) {
                    x[members[rng.random_range(0..members.len())]] = 1;
                }
            }
            if let Some((_, members)) = alt_groups.iter().find(|(gp, _)| *gp == p) {
                x[members[rng.random_range(0..members.len())]] = 1;
            }
        }
        if cross.iter().all(|c| c.satisfied(&x)) {
            return true;
        }
    }
    false
}
