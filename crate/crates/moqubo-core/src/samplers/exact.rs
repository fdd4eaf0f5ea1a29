//! Exhaustive enumeration backend.
//!
//! Walks all `2^n` assignments in Gray-code order with incremental energy
//! updates and keeps the `r` lowest-energy assignments. Deterministic: ties
//! are broken by the assignment's integer value.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec::Vec;

use crate::qubo::Qubo;

use super::{Sample, SamplerError, EXACT_MAX_VARS};

/// Max-heap entry so the worst kept assignment is always on top.
#[derive(PartialEq)]
struct Kept {
    energy: f64,
    bits: u64,
}

impl Eq for Kept {}

impl PartialOrd for Kept {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Kept {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.energy.total_cmp(&other.energy).then(self.bits.cmp(&other.bits))
    }
}

pub(super) fn run(q: &Qubo, reads: usize) -> Result<Vec<Sample>, SamplerError> {
    let n = q.n_total();
    if n > EXACT_MAX_VARS {
        return Err(SamplerError::Capability(format!(
            "exact enumeration supports at most {} variables, model has {}",
            EXACT_MAX_VARS, n
        )));
    }

    let linear = q.linear_dense();
    let adjacency = q.adjacency();
    let mut x = alloc::vec![0u8; n];
    // local_field[i] is the energy delta of setting bit i from 0 to 1 given
    // the current assignment; maintained incrementally across Gray steps.
    let mut local_field = linear;
    let mut energy = q.offset();
    let mut heap: BinaryHeap<Kept> = BinaryHeap::new();
    let push = |energy: f64, bits: u64, heap: &mut BinaryHeap<Kept>| {
        heap.push(Kept { energy, bits });
        if heap.len() > reads {
            heap.pop();
        }
    };

    push(energy, 0, &mut heap);
    let total: u64 = 1 << n;
    let mut gray_prev = 0u64;
    for counter in 1..total {
        let gray = counter ^ (counter >> 1);
        let flipped = (gray ^ gray_prev).trailing_zeros() as usize;
        gray_prev = gray;

        let delta = if x[flipped] == 0 { local_field[flipped] } else { -local_field[flipped] };
        energy += delta;
        let direction = if x[flipped] == 0 { 1.0 } else { -1.0 };
        x[flipped] ^= 1;
        for &(j, c) in &adjacency[flipped] {
            local_field[j] += direction * c;
        }
        push(energy, gray, &mut heap);
    }

    let mut kept: Vec<Kept> = heap.into_vec();
    kept.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.bits.cmp(&b.bits)));
    Ok(kept
        .into_iter()
        .map(|k| {
            let assignment: Vec<u8> = (0..n).map(|i| ((k.bits >> i) & 1) as u8).collect();
            // Re-evaluate to shed accumulated floating-point drift.
            let energy = q.energy(&assignment);
            Sample { assignment, energy, occurrences: 1 }
        })
        .collect())
}
