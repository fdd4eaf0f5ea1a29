//! Compiling an instance plus a weight vector into a QUBO.
//!
//! Objectives are min-max scaled into `[0, 1]` minimization form using
//! analytic coefficient-sum bounds, aggregated with simplex weights, and
//! constraints become quadratic penalties. With the default penalty `P = 2`
//! the aggregated objective of any assignment lies in `[0, 1]`, so every
//! constraint violation costs more than any objective difference and feasible
//! optima of the penalized model coincide with constrained optima.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::instances::{Constraint, Literal, ProblemInstance, Sense};

use super::Qubo;

/// One objective after scaling: a minimization objective whose value over all
/// assignments spans `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledObjective {
    pub coefficients: Vec<f64>,
    pub offset: f64,
}

impl ScaledObjective {
    pub fn value(&self, x: &[u8]) -> f64 {
        let mut v = self.offset;
        for (c, &b) in self.coefficients.iter().zip(x) {
            if b != 0 {
                v += c;
            }
        }
        v
    }
}

/// All objectives of an instance in scaled minimization form.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledObjectives {
    n: usize,
    objectives: Vec<ScaledObjective>,
}

impl ScaledObjectives {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.objectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objectives.is_empty()
    }

    pub fn objectives(&self) -> &[ScaledObjective] {
        &self.objectives
    }

    /// `Σ_m w_m · f̂_m(x)` over the original variables.
    pub fn weighted_value(&self, weights: &Weights, x: &[u8]) -> f64 {
        self.objectives
            .iter()
            .zip(weights.values())
            .map(|(o, w)| w * o.value(x))
            .sum()
    }
}

/// An objective whose value is the same for every assignment cannot be
/// scaled into `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleError {
    pub objective: String,
}

impl fmt::Display for ScaleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "objective '{}' is constant over all assignments and cannot be scaled", self.objective)
    }
}

impl core::error::Error for ScaleError {}

/// Rescales every objective into `[0, 1]` minimization form.
///
/// The bounds are analytic: the lower bound sums the negative coefficients,
/// the upper bound the positive ones, so one fixed scaling serves every
/// weight vector and solver on the instance. Minimization objectives map
/// `v -> (v - l) / (u - l)`; maximization objectives flip to
/// `v -> (u - v) / (u - l)`.
pub fn scale_objectives(instance: &ProblemInstance) -> Result<ScaledObjectives, ScaleError> {
    let mut out = Vec::with_capacity(instance.objectives.len());
    for obj in &instance.objectives {
        let lower: f64 = obj.offset + obj.coefficients.iter().map(|c| c.min(0.0)).sum::<f64>();
        let upper: f64 = obj.offset + obj.coefficients.iter().map(|c| c.max(0.0)).sum::<f64>();
        let range = upper - lower;
        if range <= 0.0 {
            return Err(ScaleError { objective: obj.name.clone() });
        }
        let scaled = match obj.sense {
            Sense::Minimize => ScaledObjective {
                coefficients: obj.coefficients.iter().map(|c| c / range).collect(),
                offset: (obj.offset - lower) / range,
            },
            Sense::Maximize => ScaledObjective {
                coefficients: obj.coefficients.iter().map(|c| -c / range).collect(),
                offset: (upper - obj.offset) / range,
            },
        };
        out.push(scaled);
    }
    Ok(ScaledObjectives { n: instance.n(), objectives: out })
}

/// A point on the objective-weight simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights {
    values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightsError(pub String);

impl fmt::Display for WeightsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid weights: {}", self.0)
    }
}

impl core::error::Error for WeightsError {}

impl Weights {
    /// Validates nonnegativity and unit sum (within 1e-12).
    pub fn new(values: Vec<f64>) -> Result<Self, WeightsError> {
        if values.iter().any(|&w| w < 0.0 || !w.is_finite()) {
            return Err(WeightsError("components must be finite and nonnegative".into()));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(WeightsError(format!("components sum to {}, expected 1", sum)));
        }
        Ok(Weights { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Draws a weight vector uniformly from the `(M-1)`-simplex by normalizing
/// independent exponential variates.
pub fn random_weight<R: Rng>(m: usize, rng: &mut R) -> Weights {
    assert!(m >= 2, "need at least two objectives");
    let mut draws: Vec<f64> = (0..m)
        .map(|_| {
            let u: f64 = rng.random();
            -libm::log(1.0 - u)
        })
        .collect();
    let sum: f64 = draws.iter().sum();
    if sum <= 0.0 {
        draws = alloc::vec![1.0; m];
    }
    let sum: f64 = draws.iter().sum();
    Weights { values: draws.into_iter().map(|d| d / sum).collect() }
}

/// Penalty magnitudes for constraint encoding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuboBuildConfig {
    /// Cost of one elementary constraint violation. Must exceed 1 so that it
    /// dominates the `[0, 1]` aggregated objective.
    pub penalty: f64,
    /// Penalty of the product-reification gadget; must be at least twice
    /// `penalty` so wrong auxiliary values never pay off.
    pub reification_penalty: f64,
}

impl Default for QuboBuildConfig {
    fn default() -> Self {
        QuboBuildConfig { penalty: 2.0, reification_penalty: 4.0 }
    }
}

impl QuboBuildConfig {
    pub fn validate(&self) -> Result<(), WeightsError> {
        if !(self.penalty > 1.0) {
            return Err(WeightsError(format!("penalty {} must exceed 1", self.penalty)));
        }
        if self.reification_penalty < 2.0 * self.penalty {
            return Err(WeightsError(format!(
                "reification penalty {} must be at least twice the penalty {}",
                self.reification_penalty, self.penalty
            )));
        }
        Ok(())
    }
}

/// Truth indicator of a literal as an affine function `k0 + k1 * x_var`.
#[derive(Clone, Copy)]
struct Affine {
    var: usize,
    k0: f64,
    k1: f64,
}

impl Affine {
    fn of(lit: Literal) -> Self {
        if lit.positive {
            Affine { var: lit.var, k0: 0.0, k1: 1.0 }
        } else {
            Affine { var: lit.var, k0: 1.0, k1: -1.0 }
        }
    }
}

fn add_affine(q: &mut Qubo, a: Affine, scale: f64) {
    q.add_offset(scale * a.k0);
    q.add_linear(a.var, scale * a.k1);
}

fn add_affine_product(q: &mut Qubo, a: Affine, b: Affine, scale: f64) {
    q.add_offset(scale * a.k0 * b.k0);
    q.add_linear(b.var, scale * a.k0 * b.k1);
    q.add_linear(a.var, scale * a.k1 * b.k0);
    q.add_quadratic(a.var, b.var, scale * a.k1 * b.k1);
}

/// Introduces an auxiliary `z` constrained to equal `truth(u) * truth(v)` at
/// any energy minimum: adds `p_r * (uv - 2uz - 2vz + 3z)`, which is zero when
/// `z` matches the product and at least `p_r` otherwise.
fn reify_product(q: &mut Qubo, u: Literal, v: Literal, p_r: f64) -> Literal {
    let z = q.push_aux(u, v);
    let ua = Affine::of(u);
    let va = Affine::of(v);
    let za = Affine::of(Literal::pos(z));
    add_affine_product(q, ua, va, p_r);
    add_affine_product(q, ua, za, -2.0 * p_r);
    add_affine_product(q, va, za, -2.0 * p_r);
    add_affine(q, za, 3.0 * p_r);
    Literal::pos(z)
}

/// Penalizes a clause by `penalty * Π (literal unsatisfied)`. Each factor is
/// affine, so clauses of one or two literals expand directly; longer clauses
/// fold left-to-right through product reification, adding `len - 2`
/// auxiliaries.
fn add_clause_penalty(q: &mut Qubo, literals: &[Literal], cfg: &QuboBuildConfig) {
    assert!(!literals.is_empty(), "clauses must have at least one literal");
    let falsities: Vec<Literal> = literals.iter().map(Literal::negated).collect();
    match falsities.as_slice() {
        [] => unreachable!(),
        [single] => add_affine(q, Affine::of(*single), cfg.penalty),
        [first, second] => {
            add_affine_product(q, Affine::of(*first), Affine::of(*second), cfg.penalty)
        }
        [first, middle @ .., last] => {
            let mut product = *first;
            for &lit in middle {
                product = reify_product(q, product, lit, cfg.reification_penalty);
            }
            add_affine_product(q, Affine::of(product), Affine::of(*last), cfg.penalty);
        }
    }
}

/// Compiles scaled objectives, a weight vector, and constraints into a QUBO.
///
/// For any constraint-satisfying assignment with auxiliaries completed, the
/// energy equals the weighted scaled objective; each violated constraint adds
/// at least `penalty`.
pub fn model_to_qubo(
    scaled: &ScaledObjectives,
    weights: &Weights,
    constraints: &[Constraint],
    cfg: &QuboBuildConfig,
) -> Qubo {
    assert_eq!(scaled.len(), weights.len(), "one weight per objective");
    cfg.validate().expect("invalid build config");
    let p = cfg.penalty;

    let mut q = Qubo::new(scaled.n());
    for (obj, &w) in scaled.objectives().iter().zip(weights.values()) {
        q.add_offset(w * obj.offset);
        for (i, &c) in obj.coefficients.iter().enumerate() {
            q.add_linear(i, w * c);
        }
    }

    for constraint in constraints {
        match constraint {
            // p * x_a * (1 - x_b)
            Constraint::Implies { a, b } => {
                q.add_linear(*a, p);
                q.add_quadratic(*a, *b, -p);
            }
            Constraint::Excludes { a, b } => q.add_quadratic(*a, *b, p),
            // p * (x_a + x_b - 2 x_a x_b)
            Constraint::Iff { a, b } => {
                q.add_linear(*a, p);
                q.add_linear(*b, p);
                q.add_quadratic(*a, *b, -2.0 * p);
            }
            // p * (Σ children - x_parent)^2, with x^2 = x.
            Constraint::AltGroup { parent, children } => {
                q.add_linear(*parent, p);
                for (ci, &c) in children.iter().enumerate() {
                    q.add_linear(c, p);
                    q.add_quadratic(c, *parent, -2.0 * p);
                    for &d in &children[ci + 1..] {
                        q.add_quadratic(c, d, 2.0 * p);
                    }
                }
            }
            // x_parent <= max(children) is the clause (!parent or any child).
            Constraint::OrGroup { parent, children } => {
                let mut literals = alloc::vec![Literal::neg(*parent)];
                literals.extend(children.iter().map(|&c| Literal::pos(c)));
                add_clause_penalty(&mut q, &literals, cfg);
            }
            Constraint::Clause { literals } => add_clause_penalty(&mut q, literals, cfg),
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{Objective, ProblemInstance, Variable, VariableKind};
    use alloc::string::ToString;
    use alloc::vec;

    fn instance(objectives: Vec<Objective>, constraints: Vec<Constraint>) -> ProblemInstance {
        let n = objectives[0].coefficients.len();
        ProblemInstance {
            name: "t".to_string(),
            variables: (0..n)
                .map(|i| Variable { id: i, label: format!("x{}", i), kind: VariableKind::Requirement })
                .collect(),
            objectives,
            constraints,
        }
    }

    fn obj(name: &str, sense: Sense, coefficients: Vec<f64>) -> Objective {
        Objective { name: name.to_string(), sense, coefficients, offset: 0.0 }
    }

    #[test]
    fn scaling_endpoints() {
        let inst = instance(
            vec![
                obj("cost", Sense::Minimize, vec![3.0, 5.0]),
                obj("profit", Sense::Maximize, vec![1.0, 1.0]),
            ],
            vec![],
        );
        let scaled = scale_objectives(&inst).unwrap();
        assert_eq!(scaled.objectives()[0].value(&[0, 0]), 0.0);
        assert_eq!(scaled.objectives()[0].value(&[1, 1]), 1.0);
    }

    #[test]
    fn maximization_flips_to_zero_at_full_selection() {
        let inst = instance(
            vec![obj("profit", Sense::Maximize, vec![10.0]), obj("cost", Sense::Minimize, vec![1.0])],
            vec![],
        );
        let scaled = scale_objectives(&inst).unwrap();
        assert_eq!(scaled.objectives()[0].value(&[1]), 0.0);
        assert_eq!(scaled.objectives()[0].value(&[0]), 1.0);
    }

    #[test]
    fn mixed_sign_bounds() {
        let inst = instance(
            vec![obj("m", Sense::Minimize, vec![-2.0, 3.0]), obj("p", Sense::Maximize, vec![1.0, 1.0])],
            vec![],
        );
        let scaled = scale_objectives(&inst).unwrap();
        // l = -2, u = 3: assignment (1, 0) sits exactly at the lower bound.
        assert_eq!(scaled.objectives()[0].value(&[1, 0]), 0.0);
        assert_eq!(scaled.objectives()[0].value(&[0, 1]), 1.0);
    }

    #[test]
    fn constant_objective_rejected() {
        let inst = instance(
            vec![obj("flat", Sense::Minimize, vec![0.0, 0.0]), obj("p", Sense::Maximize, vec![1.0, 1.0])],
            vec![],
        );
        let err = scale_objectives(&inst).unwrap_err();
        assert_eq!(err.objective, "flat");
    }

    #[test]
    fn scaled_values_stay_in_unit_interval() {
        let inst = crate::instances::generate_nrp(6, 4, 0.3, 2).unwrap();
        let scaled = scale_objectives(&inst).unwrap();
        for bits in 0u32..(1 << 10) {
            let x: Vec<u8> = (0..10).map(|i| ((bits >> i) & 1) as u8).collect();
            for o in scaled.objectives() {
                let v = o.value(&x);
                assert!((-1e-12..=1.0 + 1e-12).contains(&v), "scaled value {} out of range", v);
            }
        }
    }

    #[test]
    fn weights_live_on_the_simplex() {
        let mut rng = crate::rng::derive_rng(1, &[]);
        for _ in 0..100 {
            let w = random_weight(2, &mut rng);
            assert!(w.values().iter().all(|&v| v >= 0.0));
            assert!((w.values().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            Weights::new(w.values().to_vec()).unwrap();
        }
    }

    #[test]
    fn weights_deterministic_per_stream() {
        let a = random_weight(3, &mut crate::rng::derive_rng(4, &[1]));
        let b = random_weight(3, &mut crate::rng::derive_rng(4, &[1]));
        assert_eq!(a, b);
    }

    #[test]
    fn weight_components_are_uniform_on_average() {
        // Monte-Carlo check of uniform simplex sampling: component means
        // converge to 1/3.
        let mut rng = crate::rng::derive_rng(7, &[2]);
        let mut sums = [0.0f64; 3];
        let draws = 10_000;
        for _ in 0..draws {
            let w = random_weight(3, &mut rng);
            for (s, &v) in sums.iter_mut().zip(w.values()) {
                *s += v;
            }
        }
        for s in sums {
            assert!((s / draws as f64 - 1.0 / 3.0).abs() < 0.02);
        }
    }

    #[test]
    fn invalid_weights_rejected() {
        assert!(Weights::new(vec![0.5, 0.6]).is_err());
        assert!(Weights::new(vec![-0.1, 1.1]).is_err());
        assert!(Weights::new(vec![0.25, 0.75]).is_ok());
    }

    #[test]
    fn build_config_bounds() {
        assert!(QuboBuildConfig::default().validate().is_ok());
        assert!(QuboBuildConfig { penalty: 1.0, reification_penalty: 4.0 }.validate().is_err());
        assert!(QuboBuildConfig { penalty: 2.0, reification_penalty: 3.0 }.validate().is_err());
    }

    #[test]
    fn toy_release_model_energies() {
        // One requirement (cost 4), one customer (profit 8) requesting it,
        // equal weights, penalty 2. Enumerating (x, y):
        //   (0,0) -> 0.5, (1,1) -> 0.5, (1,0) -> 1.0, (0,1) -> 2.0.
        let inst = instance(
            vec![
                obj("cost", Sense::Minimize, vec![4.0, 0.0]),
                obj("profit", Sense::Maximize, vec![0.0, 8.0]),
            ],
            vec![Constraint::Implies { a: 1, b: 0 }],
        );
        let scaled = scale_objectives(&inst).unwrap();
        let w = Weights::new(vec![0.5, 0.5]).unwrap();
        let q = model_to_qubo(&scaled, &w, &inst.constraints, &QuboBuildConfig::default());
        assert_eq!(q.n_total(), 2);
        assert!((q.energy(&[0, 0]) - 0.5).abs() < 1e-12);
        assert!((q.energy(&[1, 1]) - 0.5).abs() < 1e-12);
        assert!((q.energy(&[1, 0]) - 1.0).abs() < 1e-12);
        assert!((q.energy(&[0, 1]) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn unconstrained_model_has_no_penalty_terms() {
        let inst = instance(
            vec![obj("a", Sense::Minimize, vec![1.0, 2.0]), obj("b", Sense::Maximize, vec![2.0, 1.0])],
            vec![],
        );
        let scaled = scale_objectives(&inst).unwrap();
        let w = Weights::new(vec![0.5, 0.5]).unwrap();
        let q = model_to_qubo(&scaled, &w, &[], &QuboBuildConfig::default());
        assert_eq!(q.n_total(), q.origin_n());
        assert!(q.quadratic().is_empty());
    }

    #[test]
    fn three_literal_clause_penalty() {
        // (a or b or c): falsified assignment pays exactly the penalty once
        // auxiliaries are completed; satisfying assignments pay nothing.
        let scaled = ScaledObjectives {
            n: 3,
            objectives: vec![
                ScaledObjective { coefficients: vec![0.0; 3], offset: 0.0 },
                ScaledObjective { coefficients: vec![0.0; 3], offset: 0.0 },
            ],
        };
        let w = Weights::new(vec![0.5, 0.5]).unwrap();
        let cfg = QuboBuildConfig::default();
        let clause = Constraint::Clause {
            literals: vec![Literal::pos(0), Literal::pos(1), Literal::pos(2)],
        };
        let q = model_to_qubo(&scaled, &w, core::slice::from_ref(&clause), &cfg);
        assert_eq!(q.n_total(), 4);
        for bits in 0u32..8 {
            let x: Vec<u8> = (0..3).map(|i| ((bits >> i) & 1) as u8).collect();
            let completed = q.complete_auxiliaries(&x);
            let expected = if bits == 0 { cfg.penalty } else { 0.0 };
            assert!((q.energy(&completed) - expected).abs() < 1e-12);
            // Completion must match the minimum over both auxiliary values.
            let mut best = f64::INFINITY;
            for z in 0..=1u8 {
                let mut full = x.clone();
                full.push(z);
                best = best.min(q.energy(&full));
            }
            assert!((q.energy(&completed) - best).abs() < 1e-12);
        }
    }

    #[test]
    fn completion_minimizes_energy_with_long_clause() {
        use rand::Rng;
        // Ten variables, one four-literal clause (two auxiliaries).
        let scaled = ScaledObjectives {
            n: 10,
            objectives: vec![
                ScaledObjective { coefficients: vec![0.1; 10], offset: 0.0 },
                ScaledObjective { coefficients: vec![0.0; 10], offset: 0.5 },
            ],
        };
        let w = Weights::new(vec![0.6, 0.4]).unwrap();
        let clause = Constraint::Clause {
            literals: vec![Literal::pos(0), Literal::neg(3), Literal::pos(7), Literal::neg(9)],
        };
        let q = model_to_qubo(&scaled, &w, core::slice::from_ref(&clause), &QuboBuildConfig::default());
        assert_eq!(q.n_total(), 12);
        let mut rng = crate::rng::derive_rng(3, &[9]);
        for _ in 0..200 {
            let x: Vec<u8> = (0..10).map(|_| u8::from(rng.random_bool(0.5))).collect();
            let completed = q.complete_auxiliaries(&x);
            let mut best = f64::INFINITY;
            for aux_bits in 0u32..4 {
                let mut full = x.clone();
                full.push((aux_bits & 1) as u8);
                full.push(((aux_bits >> 1) & 1) as u8);
                best = best.min(q.energy(&full));
            }
            assert!((q.energy(&completed) - best).abs() < 1e-12);
        }
    }

    #[test]
    fn penalty_soundness_exhaustive_small() {
        // On a small generated model: feasible assignments cost exactly the
        // weighted scaled objective, infeasible ones cost at least the
        // penalty more than any feasible one.
        let inst = crate::instances::generate_nrp(5, 3, 0.3, 4).unwrap();
        let scaled = scale_objectives(&inst).unwrap();
        let cfg = QuboBuildConfig::default();
        let w = random_weight(2, &mut crate::rng::derive_rng(8, &[0]));
        let q = model_to_qubo(&scaled, &w, &inst.constraints, &cfg);
        let n = inst.n();
        let mut max_feasible = f64::NEG_INFINITY;
        let mut min_infeasible = f64::INFINITY;
        for bits in 0u32..(1 << n) {
            let x: Vec<u8> = (0..n).map(|i| ((bits >> i) & 1) as u8).collect();
            let full = q.complete_auxiliaries(&x);
            let energy = q.energy(&full);
            let ev = inst.evaluate(&x).unwrap();
            if ev.feasible {
                let expected = scaled.weighted_value(&w, &x);
                assert!((energy - expected).abs() < 1e-9);
                max_feasible = max_feasible.max(energy);
            } else {
                let floor = scaled.weighted_value(&w, &x)
                    + ev.violations.total() as f64 * cfg.penalty;
                assert!(energy >= floor - 1e-9, "energy {} below violation floor {}", energy, floor);
                min_infeasible = min_infeasible.min(energy);
            }
        }
        // Separation: violations always cost more than any feasible solution.
        assert!(min_infeasible - max_feasible >= cfg.penalty - 1.0 - 1e-9);
    }
}
