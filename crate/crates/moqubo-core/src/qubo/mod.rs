//! Quadratic unconstrained binary optimization models.
//!
//! A [`Qubo`] stores an energy function `offset + Σ linear[i]·x_i +
//! Σ quadratic[(i,j)]·x_i·x_j` over binary variables `0..n_total`. Variables
//! `origin_n..n_total` are auxiliaries introduced by clause quadratization;
//! each reifies the product of a pair of earlier literals, recorded in
//! registry order so any assignment of the original variables extends to an
//! energy-minimal full assignment.

mod compile;

pub use compile::{
    model_to_qubo, random_weight, scale_objectives, QuboBuildConfig, ScaleError, ScaledObjective,
    ScaledObjectives, Weights, WeightsError,
};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::instances::Literal;

/// An auxiliary variable reifying the conjunction of two literals. Literals
/// may refer to original variables or to earlier auxiliaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuxVar {
    pub id: usize,
    pub parents: (Literal, Literal),
}

/// A quadratic pseudo-boolean energy function.
#[derive(Debug, Clone, PartialEq)]
pub struct Qubo {
    n_total: usize,
    origin_n: usize,
    linear: BTreeMap<usize, f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    offset: f64,
    aux_registry: Vec<AuxVar>,
}

impl Qubo {
    /// An empty model over `n` original variables.
    pub fn new(n: usize) -> Self {
        Qubo {
            n_total: n,
            origin_n: n,
            linear: BTreeMap::new(),
            quadratic: BTreeMap::new(),
            offset: 0.0,
            aux_registry: Vec::new(),
        }
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn origin_n(&self) -> usize {
        self.origin_n
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn linear(&self) -> &BTreeMap<usize, f64> {
        &self.linear
    }

    /// Quadratic coefficients keyed by normalized `(lo, hi)` pairs.
    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    pub fn aux_registry(&self) -> &[AuxVar] {
        &self.aux_registry
    }

    pub fn add_offset(&mut self, c: f64) {
        self.offset += c;
    }

    pub fn add_linear(&mut self, i: usize, c: f64) {
        assert!(i < self.n_total, "variable {} out of range", i);
        if c != 0.0 {
            *self.linear.entry(i).or_insert(0.0) += c;
        }
    }

    /// Adds `c·x_i·x_j`. Since bits are idempotent, `i == j` folds into the
    /// linear term.
    pub fn add_quadratic(&mut self, i: usize, j: usize, c: f64) {
        assert!(i < self.n_total && j < self.n_total, "variable pair ({}, {}) out of range", i, j);
        if c == 0.0 {
            return;
        }
        if i == j {
            self.add_linear(i, c);
        } else {
            let key = (i.min(j), i.max(j));
            *self.quadratic.entry(key).or_insert(0.0) += c;
        }
    }

    /// Registers a fresh auxiliary variable reifying `u AND v`.
    pub fn push_aux(&mut self, u: Literal, v: Literal) -> usize {
        let id = self.n_total;
        self.n_total += 1;
        self.aux_registry.push(AuxVar { id, parents: (u, v) });
        id
    }

    /// Energy of a full assignment (original variables plus auxiliaries).
    ///
    /// Panics when `x.len() != n_total`.
    pub fn energy(&self, x: &[u8]) -> f64 {
        assert_eq!(x.len(), self.n_total, "assignment length mismatch");
        let mut e = self.offset;
        for (&i, &c) in &self.linear {
            if x[i] != 0 {
                e += c;
            }
        }
        for (&(i, j), &c) in &self.quadratic {
            if x[i] != 0 && x[j] != 0 {
                e += c;
            }
        }
        e
    }

    /// Extends an assignment of the original variables with auxiliary values
    /// taken in registry order, each the product of its parent literals. When
    /// the reification penalty dominates the clause penalty this completion
    /// minimizes energy over all auxiliary choices.
    pub fn complete_auxiliaries(&self, x: &[u8]) -> Vec<u8> {
        assert_eq!(x.len(), self.origin_n, "assignment must cover the original variables");
        let mut full = Vec::with_capacity(self.n_total);
        full.extend_from_slice(x);
        for aux in &self.aux_registry {
            let (u, v) = aux.parents;
            let value = u8::from(u.holds(&full) && v.holds(&full));
            debug_assert_eq!(full.len(), aux.id);
            full.push(value);
        }
        full
    }

    /// Largest absolute coefficient, linear or quadratic.
    pub fn max_abs_coeff(&self) -> f64 {
        let lin = self.linear.values().fold(0.0f64, |m, c| m.max(c.abs()));
        self.quadratic.values().fold(lin, |m, c| m.max(c.abs()))
    }

    /// Smallest nonzero absolute coefficient.
    pub fn min_abs_nonzero_coeff(&self) -> f64 {
        let mut m = f64::INFINITY;
        for &c in self.linear.values().chain(self.quadratic.values()) {
            if c != 0.0 {
                m = m.min(c.abs());
            }
        }
        m
    }

    /// Per-variable adjacency: for each variable, its quadratic neighbors and
    /// coupling coefficients.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = alloc::vec![Vec::new(); self.n_total];
        for (&(i, j), &c) in &self.quadratic {
            adj[i].push((j, c));
            adj[j].push((i, c));
        }
        adj
    }

    /// Dense linear coefficients, zero-filled.
    pub fn linear_dense(&self) -> Vec<f64> {
        let mut v = alloc::vec![0.0; self.n_total];
        for (&i, &c) in &self.linear {
            v[i] = c;
        }
        v
    }

    /// Restricts the model to `free` variables, substituting every other
    /// variable with its value from `fixed`. For any assignment `y` of the
    /// free variables (in `free` order), the returned model's energy equals
    /// this model's energy on the combined assignment.
    pub fn clamp(&self, fixed: &BTreeMap<usize, u8>, free: &[usize]) -> Result<Qubo, ClampError> {
        let mut position = BTreeMap::new();
        for (pos, &v) in free.iter().enumerate() {
            if v >= self.n_total {
                return Err(ClampError(format!("free variable {} out of range", v)));
            }
            if fixed.contains_key(&v) {
                return Err(ClampError(format!("variable {} is both fixed and free", v)));
            }
            if position.insert(v, pos).is_some() {
                return Err(ClampError(format!("variable {} listed free twice", v)));
            }
        }
        for &v in fixed.keys() {
            if v >= self.n_total {
                return Err(ClampError(format!("fixed variable {} out of range", v)));
            }
        }
        if fixed.len() + free.len() != self.n_total {
            return Err(ClampError(format!(
                "fixed ({}) and free ({}) variables must cover all {}",
                fixed.len(),
                free.len(),
                self.n_total
            )));
        }

        let mut out = Qubo::new(free.len());
        out.offset = self.offset;
        for (&i, &c) in &self.linear {
            match position.get(&i) {
                Some(&p) => out.add_linear(p, c),
                None => {
                    if fixed[&i] != 0 {
                        out.offset += c;
                    }
                }
            }
        }
        for (&(i, j), &c) in &self.quadratic {
            match (position.get(&i), position.get(&j)) {
                (Some(&p), Some(&q)) => out.add_quadratic(p, q, c),
                (Some(&p), None) => {
                    if fixed[&j] != 0 {
                        out.add_linear(p, c);
                    }
                }
                (None, Some(&q)) => {
                    if fixed[&i] != 0 {
                        out.add_linear(q, c);
                    }
                }
                (None, None) => {
                    if fixed[&i] != 0 && fixed[&j] != 0 {
                        out.offset += c;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Invalid fixed/free split passed to [`Qubo::clamp`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClampError(pub String);

impl fmt::Display for ClampError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "clamp error: {}", self.0)
    }
}

impl core::error::Error for ClampError {}

#[cfg(feature = "serde")]
mod wire {
    use super::*;

    /// Serialized form: coefficient triples instead of maps, literals as
    /// signed 1-based integers.
    #[derive(serde::Serialize, serde::Deserialize)]
    struct QuboWire {
        n_total: usize,
        origin_n: usize,
        offset: f64,
        linear: Vec<(usize, f64)>,
        quadratic: Vec<(usize, usize, f64)>,
        aux: Vec<(usize, i64, i64)>,
    }

    impl serde::Serialize for Qubo {
        fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
            let wire = QuboWire {
                n_total: self.n_total,
                origin_n: self.origin_n,
                offset: self.offset,
                linear: self.linear.iter().map(|(&i, &c)| (i, c)).collect(),
                quadratic: self.quadratic.iter().map(|(&(i, j), &c)| (i, j, c)).collect(),
                aux: self
                    .aux_registry
                    .iter()
                    .map(|a| (a.id, a.parents.0.to_signed(), a.parents.1.to_signed()))
                    .collect(),
            };
            wire.serialize(serializer)
        }
    }

    impl<'de> serde::Deserialize<'de> for Qubo {
        fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
            use serde::de::Error;
            let wire = QuboWire::deserialize(deserializer)?;
            if wire.origin_n > wire.n_total {
                return Err(D::Error::custom("origin_n exceeds n_total"));
            }
            let mut q = Qubo::new(wire.origin_n);
            q.n_total = wire.n_total;
            for (i, c) in wire.linear {
                if i >= wire.n_total {
                    return Err(D::Error::custom("linear index out of range"));
                }
                q.add_linear(i, c);
            }
            for (i, j, c) in wire.quadratic {
                if i >= wire.n_total || j >= wire.n_total || i == j {
                    return Err(D::Error::custom("bad quadratic pair"));
                }
                q.add_quadratic(i, j, c);
            }
            if wire.aux.len() != wire.n_total - wire.origin_n {
                return Err(D::Error::custom("aux registry does not match n_total - origin_n"));
            }
            for (pos, (id, u, v)) in wire.aux.into_iter().enumerate() {
                if id != wire.origin_n + pos {
                    return Err(D::Error::custom("aux ids must be dense from origin_n"));
                }
                let u = Literal::from_signed(u).ok_or_else(|| D::Error::custom("bad aux literal"))?;
                let v = Literal::from_signed(v).ok_or_else(|| D::Error::custom("bad aux literal"))?;
                if u.var >= id || v.var >= id {
                    return Err(D::Error::custom("aux parents must precede the auxiliary"));
                }
                q.aux_registry.push(AuxVar { id, parents: (u, v) });
            }
            Ok(q)
        }
    }
}
