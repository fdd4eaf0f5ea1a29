//! Simulated annealing over QUBO models.
//!
//! Each read runs one independent Metropolis chain from a random assignment,
//! sweeping all variables per step under a geometric inverse-temperature
//! schedule, and contributes its final state.

use alloc::vec::Vec;

use rand::Rng;

use crate::qubo::Qubo;
use crate::rng::derive_rng;

use super::{aggregate, Sample, SamplerSpec};

/// Inverse-temperature range derived from the coefficient magnitudes: hot
/// enough to accept flips across the largest coefficient, cold enough to
/// freeze the smallest.
fn default_beta_range(q: &Qubo) -> (f64, f64) {
    let hi_coeff = q.max_abs_coeff();
    let lo_coeff = q.min_abs_nonzero_coeff();
    if hi_coeff == 0.0 || !lo_coeff.is_finite() {
        return (0.1, 10.0);
    }
    let beta_min = 0.1 / hi_coeff;
    let beta_max = 10.0 / lo_coeff;
    if beta_min < beta_max {
        (beta_min, beta_max)
    } else {
        (beta_max / 2.0, beta_min * 2.0)
    }
}

pub(super) fn run(q: &Qubo, spec: &SamplerSpec) -> Vec<Sample> {
    let n = q.n_total();
    let (beta_min, beta_max) = spec.beta.unwrap_or_else(|| default_beta_range(q));
    let linear = q.linear_dense();
    let adjacency = q.adjacency();

    // Geometric schedule: beta multiplies by a constant factor each sweep.
    let steps = spec.sweeps.max(1);
    let growth = if steps > 1 {
        libm::pow(beta_max / beta_min, 1.0 / (steps - 1) as f64)
    } else {
        1.0
    };

    let mut raw = Vec::with_capacity(spec.reads);
    for read in 0..spec.reads {
        let mut rng = derive_rng(spec.seed, &[0x5a, read as u64]);
        let mut x: Vec<u8> = (0..n).map(|_| u8::from(rng.random_bool(0.5))).collect();
        // local_field[i] = linear[i] + sum over neighbors j of c_ij * x_j;
        // flipping i changes energy by (1 - 2 x_i) * local_field[i].
        let mut local_field = linear.clone();
        for i in 0..n {
            for &(j, c) in &adjacency[i] {
                if x[j] != 0 {
                    local_field[i] += c;
                }
            }
        }

        let mut beta = beta_min;
        for _ in 0..steps {
            for i in 0..n {
                let delta = if x[i] == 0 { local_field[i] } else { -local_field[i] };
                let accept = delta <= 0.0 || rng.random::<f64>() < libm::exp(-beta * delta);
                if accept {
                    let direction = if x[i] == 0 { 1.0 } else { -1.0 };
                    x[i] ^= 1;
                    for &(j, c) in &adjacency[i] {
                        local_field[j] += direction * c;
                    }
                }
            }
            beta *= growth;
        }
        let energy = q.energy(&x);
        raw.push((x, energy));
    }
    aggregate(raw)
}
