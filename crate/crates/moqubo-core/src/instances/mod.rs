//! Problem data model: decision variables, objectives, logical constraints,
//! and assignment evaluation.
//!
//! An instance is immutable after construction and safe to share across
//! concurrent solver runs. Parsers and generators are pure functions of their
//! inputs and seed.

mod classic;
mod dimacs;
mod generate;

pub use classic::{parse_classic_nrp, serialize_classic_nrp};
pub use dimacs::parse_dimacs_fm;
pub use generate::{generate_fm, generate_nrp};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// What a decision variable stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum VariableKind {
    Requirement,
    Customer,
    Feature,
}

/// A binary decision variable.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Variable {
    pub id: usize,
    pub label: String,
    pub kind: VariableKind,
}

/// Optimization direction of an objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Sense {
    Minimize,
    Maximize,
}

/// A linear objective over the instance's variables.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Objective {
    pub name: String,
    pub sense: Sense,
    /// One coefficient per variable, indexed by variable id.
    pub coefficients: Vec<f64>,
    pub offset: f64,
}

impl Objective {
    /// Objective value of a bit assignment, in natural units.
    pub fn value(&self, x: &[u8]) -> f64 {
        assert_eq!(x.len(), self.coefficients.len(), "assignment length mismatch");
        let mut v = self.offset;
        for (c, &b) in self.coefficients.iter().zip(x) {
            if b != 0 {
                v += c;
            }
        }
        v
    }
}

/// A signed reference to a variable: `positive` literals hold when the bit is
/// 1, negative literals when it is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    /// True when the literal is satisfied under `x`.
    pub fn holds(&self, x: &[u8]) -> bool {
        (x[self.var] != 0) == self.positive
    }

    /// The complementary literal.
    pub fn negated(&self) -> Self {
        Literal { var: self.var, positive: !self.positive }
    }

    /// DIMACS-style signed encoding: `+(var+1)` / `-(var+1)`.
    pub fn to_signed(&self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    /// Inverse of [`Literal::to_signed`]. Zero is not a literal.
    pub fn from_signed(s: i64) -> Option<Self> {
        if s == 0 {
            return None;
        }
        Some(Literal { var: (s.unsigned_abs() as usize) - 1, positive: s > 0 })
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Literal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_i64(self.to_signed())
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Literal {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = i64::deserialize(deserializer)?;
        Literal::from_signed(s)
            .ok_or_else(|| serde::de::Error::custom("literal 0 is not a variable reference"))
    }
}

/// Logical constraint kinds over binary variables.
///
/// * `Implies(a, b)` holds iff `x_a <= x_b`.
/// * `Excludes(a, b)` holds iff `x_a * x_b = 0`.
/// * `Iff(a, b)` holds iff `x_a = x_b`.
/// * `OrGroup` holds iff `x_parent <= max(children)`.
/// * `AltGroup` holds iff the children sum to exactly `x_parent`.
/// * `Clause` holds iff at least one literal holds.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Constraint {
    Implies { a: usize, b: usize },
    Excludes { a: usize, b: usize },
    Iff { a: usize, b: usize },
    OrGroup { parent: usize, children: Vec<usize> },
    AltGroup { parent: usize, children: Vec<usize> },
    Clause { literals: Vec<Literal> },
}

/// Constraint kind tags, used for violation bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintKind {
    Implies,
    Excludes,
    Iff,
    OrGroup,
    AltGroup,
    Clause,
}

impl ConstraintKind {
    pub const ALL: [ConstraintKind; 6] = [
        ConstraintKind::Implies,
        ConstraintKind::Excludes,
        ConstraintKind::Iff,
        ConstraintKind::OrGroup,
        ConstraintKind::AltGroup,
        ConstraintKind::Clause,
    ];

    fn index(self) -> usize {
        match self {
            ConstraintKind::Implies => 0,
            ConstraintKind::Excludes => 1,
            ConstraintKind::Iff => 2,
            ConstraintKind::OrGroup => 3,
            ConstraintKind::AltGroup => 4,
            ConstraintKind::Clause => 5,
        }
    }
}

impl Constraint {
    pub fn kind(&self) -> ConstraintKind {
        match self {
            Constraint::Implies { .. } => ConstraintKind::Implies,
            Constraint::Excludes { .. } => ConstraintKind::Excludes,
            Constraint::Iff { .. } => ConstraintKind::Iff,
            Constraint::OrGroup { .. } => ConstraintKind::OrGroup,
            Constraint::AltGroup { .. } => ConstraintKind::AltGroup,
            Constraint::Clause { .. } => ConstraintKind::Clause,
        }
    }

    /// True when the constraint is satisfied under `x`.
    pub fn satisfied(&self, x: &[u8]) -> bool {
        match self {
            Constraint::Implies { a, b } => x[*a] <= x[*b],
            Constraint::Excludes { a, b } => x[*a] & x[*b] == 0,
            Constraint::Iff { a, b } => x[*a] == x[*b],
            Constraint::OrGroup { parent, children } => {
                x[*parent] == 0 || children.iter().any(|&c| x[c] != 0)
            }
            Constraint::AltGroup { parent, children } => {
                children.iter().map(|&c| usize::from(x[c])).sum::<usize>() == usize::from(x[*parent])
            }
            Constraint::Clause { literals } => literals.iter().any(|l| l.holds(x)),
        }
    }

    /// All variable ids the constraint references.
    pub fn variables(&self) -> Vec<usize> {
        match self {
            Constraint::Implies { a, b }
            | Constraint::Excludes { a, b }
            | Constraint::Iff { a, b } => alloc::vec![*a, *b],
            Constraint::OrGroup { parent, children } | Constraint::AltGroup { parent, children } => {
                let mut v = alloc::vec![*parent];
                v.extend_from_slice(children);
                v
            }
            Constraint::Clause { literals } => literals.iter().map(|l| l.var).collect(),
        }
    }

    /// Largest variable id referenced; `None` for constraints over nothing.
    pub fn max_var(&self) -> Option<usize> {
        self.variables().into_iter().max()
    }
}

/// Violation tally per constraint kind.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ViolationCounts {
    pub implies: usize,
    pub excludes: usize,
    pub iff: usize,
    pub or_group: usize,
    pub alt_group: usize,
    pub clause: usize,
}

impl ViolationCounts {
    fn bump(&mut self, kind: ConstraintKind) {
        let slot = match kind.index() {
            0 => &mut self.implies,
            1 => &mut self.excludes,
            2 => &mut self.iff,
            3 => &mut self.or_group,
            4 => &mut self.alt_group,
            _ => &mut self.clause,
        };
        *slot += 1;
    }

    pub fn total(&self) -> usize {
        self.implies + self.excludes + self.iff + self.or_group + self.alt_group + self.clause
    }
}

/// Result of evaluating one assignment against an instance.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Evaluation {
    /// Per-objective values in natural units (maximization reported as-is).
    pub objective_values: Vec<f64>,
    pub violations: ViolationCounts,
    pub feasible: bool,
}

/// A multi-objective binary optimization instance.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProblemInstance {
    pub name: String,
    pub variables: Vec<Variable>,
    pub objectives: Vec<Objective>,
    pub constraints: Vec<Constraint>,
}

impl ProblemInstance {
    /// Number of decision variables.
    pub fn n(&self) -> usize {
        self.variables.len()
    }

    /// Per-objective optimization senses.
    pub fn senses(&self) -> Vec<Sense> {
        self.objectives.iter().map(|o| o.sense).collect()
    }

    /// Checks the structural invariants: dense unique ids, at least two
    /// objectives of full length, and constraints over declared ids only.
    pub fn validate(&self) -> Result<(), InstanceError> {
        let n = self.n();
        for (i, v) in self.variables.iter().enumerate() {
            if v.id != i {
                return Err(InstanceError::Invalid(format!(
                    "variable ids must be dense 0..{}, found {} at position {}",
                    n, v.id, i
                )));
            }
        }
        if self.objectives.len() < 2 {
            return Err(InstanceError::Invalid(format!(
                "need at least 2 objectives, got {}",
                self.objectives.len()
            )));
        }
        for o in &self.objectives {
            if o.coefficients.len() != n {
                return Err(InstanceError::Invalid(format!(
                    "objective '{}' has {} coefficients for {} variables",
                    o.name,
                    o.coefficients.len(),
                    n
                )));
            }
        }
        for (ci, c) in self.constraints.iter().enumerate() {
            match c {
                Constraint::OrGroup { children, .. } | Constraint::AltGroup { children, .. }
                    if children.is_empty() =>
                {
                    return Err(InstanceError::Invalid(format!(
                        "constraint {} has an empty child group",
                        ci
                    )));
                }
                Constraint::Clause { literals } if literals.is_empty() => {
                    return Err(InstanceError::Invalid(format!("constraint {} is an empty clause", ci)));
                }
                _ => {}
            }
            for v in c.variables() {
                if v >= n {
                    return Err(InstanceError::Invalid(format!(
                        "constraint {} references undeclared variable {}",
                        ci, v
                    )));
                }
            }
        }
        Ok(())
    }

    /// Evaluates `x`: objective values in natural units, per-kind violation
    /// counts, and the feasibility flag.
    pub fn evaluate(&self, x: &[u8]) -> Result<Evaluation, InstanceError> {
        if x.len() != self.n() {
            return Err(InstanceError::LengthMismatch { expected: self.n(), got: x.len() });
        }
        let objective_values = self.objectives.iter().map(|o| o.value(x)).collect();
        let mut violations = ViolationCounts::default();
        for c in &self.constraints {
            if !c.satisfied(x) {
                violations.bump(c.kind());
            }
        }
        let feasible = violations.total() == 0;
        Ok(Evaluation { objective_values, violations, feasible })
    }
}

/// Errors from instance construction, parsing, and evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceError {
    /// Structural invariant violation.
    Invalid(String),
    /// Assignment length differs from the variable count.
    LengthMismatch { expected: usize, got: usize },
    /// Malformed instance file; `line` is 1-based.
    Parse { line: usize, message: String },
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::Invalid(msg) => write!(f, "invalid instance: {}", msg),
            InstanceError::LengthMismatch { expected, got } => {
                write!(f, "assignment has {} bits, instance has {} variables", got, expected)
            }
            InstanceError::Parse { line, message } => write!(f, "parse error at line {}: {}", line, message),
        }
    }
}

impl core::error::Error for InstanceError {}
