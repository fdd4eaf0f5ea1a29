//! Solver boundary standing in for annealing hardware.
//!
//! All backends sit behind [`sample`]: simulated annealing (the default),
//! exhaustive enumeration for small models, and multi-start steepest descent.
//! A remote backend kind exists for HTTP samplers; its client lives in the
//! std companion crate, so requesting it here yields a capability error.
//!
//! Backends are stateless between calls. Each read derives its own random
//! substream from `(seed, read index)`, so reads are order-independent and a
//! `(model, spec)` pair always reproduces the same sample sequence.

mod annealing;
mod descent;
mod exact;

pub use descent::steepest_descent;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::qubo::Qubo;

/// Exhaustive enumeration is refused beyond this many variables.
pub const EXACT_MAX_VARS: usize = 22;

/// One solution drawn from a sampler, with its exact energy and how many
/// reads produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub assignment: Vec<u8>,
    pub energy: f64,
    pub occurrences: usize,
}

/// Which backend to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SamplerKind {
    SimulatedAnnealing,
    Exact,
    SteepestDescent,
    Remote,
}

/// Sampler configuration.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SamplerSpec {
    pub kind: SamplerKind,
    /// Number of reads (independent chains / returned states).
    pub reads: usize,
    /// Full variable passes per annealing chain.
    pub sweeps: usize,
    /// Inverse-temperature range; derived from the coefficient magnitudes
    /// when unset.
    pub beta: Option<(f64, f64)>,
    pub seed: u64,
    /// Remote sampler URL (remote kind only).
    pub endpoint: Option<String>,
}

impl SamplerSpec {
    pub fn simulated_annealing(reads: usize, sweeps: usize, seed: u64) -> Self {
        SamplerSpec { kind: SamplerKind::SimulatedAnnealing, reads, sweeps, beta: None, seed, endpoint: None }
    }

    pub fn exact(reads: usize) -> Self {
        SamplerSpec { kind: SamplerKind::Exact, reads, sweeps: 1, beta: None, seed: 0, endpoint: None }
    }

    pub fn validate(&self) -> Result<(), SamplerError> {
        if self.reads == 0 {
            return Err(SamplerError::Spec("reads must be at least 1".into()));
        }
        if self.sweeps == 0 {
            return Err(SamplerError::Spec("sweeps must be at least 1".into()));
        }
        if let Some((lo, hi)) = self.beta {
            if !(lo < hi) || lo <= 0.0 {
                return Err(SamplerError::Spec(format!("invalid beta range ({}, {})", lo, hi)));
            }
        }
        if self.kind == SamplerKind::Remote && self.endpoint.is_none() {
            return Err(SamplerError::Spec("remote sampler needs an endpoint".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SamplerError {
    /// The backend cannot handle the model (e.g. too many variables for
    /// exhaustive enumeration).
    Capability(String),
    /// Invalid sampler specification.
    Spec(String),
    /// The requested backend is not available in this build.
    Unavailable(String),
}

impl fmt::Display for SamplerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SamplerError::Capability(msg) => write!(f, "sampler capability error: {}", msg),
            SamplerError::Spec(msg) => write!(f, "sampler spec error: {}", msg),
            SamplerError::Unavailable(msg) => write!(f, "sampler unavailable: {}", msg),
        }
    }
}

impl core::error::Error for SamplerError {}

/// Draws up to `spec.reads` samples, sorted by ascending energy, identical
/// assignments merged with their occurrence counts.
pub fn sample(q: &Qubo, spec: &SamplerSpec) -> Result<Vec<Sample>, SamplerError> {
    spec.validate()?;
    if q.n_total() == 0 {
        return Err(SamplerError::Spec("cannot sample an empty model".into()));
    }
    match spec.kind {
        SamplerKind::SimulatedAnnealing => Ok(annealing::run(q, spec)),
        SamplerKind::Exact => exact::run(q, spec.reads),
        SamplerKind::SteepestDescent => Ok(descent::run_multistart(q, spec)),
        SamplerKind::Remote => Err(SamplerError::Unavailable(
            "remote sampling requires the std client (moqubo-cli)".into(),
        )),
    }
}

/// Merges equal assignments into occurrence counts and sorts by energy
/// (ties broken by assignment bits so output order is reproducible).
pub(crate) fn aggregate(mut raw: Vec<(Vec<u8>, f64)>) -> Vec<Sample> {
    raw.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    let mut out: Vec<Sample> = Vec::new();
    for (assignment, energy) in raw {
        match out.iter_mut().find(|s| s.assignment == assignment) {
            Some(s) => s.occurrences += 1,
            None => out.push(Sample { assignment, energy, occurrences: 1 }),
        }
    }
    out
}
