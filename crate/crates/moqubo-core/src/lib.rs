//! Multi-objective binary optimization over QUBO models.
//!
//! The crate models two software-engineering optimization problems — release
//! planning (pick requirements and the customers they satisfy) and product-line
//! feature selection — as [`instances::ProblemInstance`] values, compiles them
//! into quadratic unconstrained binary optimization models with penalty-encoded
//! constraints ([`qubo`]), and searches for Pareto-optimal solution sets with
//! several methods:
//!
//! * [`moqa`] — weighted-aggregation search: draw random objective weights,
//!   compile one QUBO per weight, sample each with an annealing-style sampler,
//!   and keep the non-dominated union.
//! * [`cqha`] — decompose-solve-compose hybrid for models too large to sample
//!   whole: split the QUBO into bounded sub-QUBOs by energy impact, solve each
//!   against the incumbent, and refine with steepest descent.
//! * [`baselines`] — NSGA-II and an exact ε-constraint sweep over a built-in
//!   branch-and-bound solver.
//!
//! [`indicators`] provides the shared non-dominated filter and the HV / IGD /
//! SP / NoP front-quality measures computed against a union reference front.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command-line
//! harness live in the companion `moqubo-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod baselines;
pub mod cqha;
pub mod indicators;
pub mod instances;
pub mod moqa;
pub mod qubo;
pub mod rng;
pub mod samplers;

pub use indicators::{pareto_filter, union_front, ParetoArchive};
pub use instances::{Constraint, Evaluation, Objective, ProblemInstance, Sense};
pub use qubo::{QuboBuildConfig, Qubo, Weights};
pub use samplers::{Sample, SamplerKind, SamplerSpec};

/// Lifecycle notifications emitted by the long-running solvers so an embedding
/// application can attribute wall time to phases. The core crate cannot read
/// clocks; implementors typically capture timestamps on each callback.
pub trait PhaseObserver {
    fn phase_start(&mut self, _phase: Phase) {}
    fn phase_end(&mut self, _phase: Phase) {}
}

/// Solver phases reported to a [`PhaseObserver`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Objective scaling and QUBO construction.
    Compile,
    /// Sub-QUBO decomposition (hybrid solver only).
    Decompose,
    /// Drawing samples from the backend.
    Sample,
    /// Non-dominated filtering of the pooled candidates.
    Sort,
}

/// Observer that ignores all notifications.
pub struct NoopObserver;

impl PhaseObserver for NoopObserver {}
