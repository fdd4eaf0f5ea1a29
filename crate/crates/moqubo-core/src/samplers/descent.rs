//! Steepest-descent local search: repeatedly flip the single bit with the
//! largest strict energy decrease until no flip improves.

use alloc::vec::Vec;

use rand::Rng;

use crate::qubo::Qubo;
use crate::rng::derive_rng;

use super::{aggregate, Sample, SamplerSpec};

/// Descends from `start` to a 1-flip local minimum. Among equally good flips
/// the lowest variable index wins, so runs are reproducible.
pub fn steepest_descent(q: &Qubo, start: &[u8]) -> Sample {
    assert_eq!(start.len(), q.n_total(), "assignment length mismatch");
    let n = q.n_total();
    let adjacency = q.adjacency();
    let mut x = start.to_vec();
    let mut local_field = q.linear_dense();
    for i in 0..n {
        for &(j, c) in &adjacency[i] {
            if x[j] != 0 {
                local_field[i] += c;
            }
        }
    }

    let mut energy = q.energy(&x);
    loop {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..n {
            let delta = if x[i] == 0 { local_field[i] } else { -local_field[i] };
            if delta < 0.0 && best.map_or(true, |(_, d)| delta < d) {
                best = Some((i, delta));
            }
        }
        let Some((i, delta)) = best else { break };
        let direction = if x[i] == 0 { 1.0 } else { -1.0 };
        x[i] ^= 1;
        energy += delta;
        for &(j, c) in &adjacency[i] {
            local_field[j] += direction * c;
        }
    }
    // Recompute to drop incremental floating-point drift.
    let energy_exact = q.energy(&x);
    debug_assert!((energy - energy_exact).abs() < 1e-6);
    Sample { assignment: x, energy: energy_exact, occurrences: 1 }
}

/// Multi-start descent: one random start per read.
pub(super) fn run_multistart(q: &Qubo, spec: &SamplerSpec) -> Vec<Sample> {
    let n = q.n_total();
    let mut raw = Vec::with_capacity(spec.reads);
    for read in 0..spec.reads {
        let mut rng = derive_rng(spec.seed, &[0xd5, read as u64]);
        let start: Vec<u8> = (0..n).map(|_| u8::from(rng.random_bool(0.5))).collect();
        let s = steepest_descent(q, &start);
        raw.push((s.assignment, s.energy));
    }
    aggregate(raw)
}
