//! Archive filtering and front-quality indicators.
//!
//! All methods report their results as a [`ParetoArchive`]; the reference
//! front for comparisons is the filtered union of every method's archive.
//! Hypervolume is computed in per-dimension normalized space (reference point
//! all-ones), so it lies in `[0, 1]`; IGD and spacing use natural objective
//! units.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::instances::Sense;

/// A solution retained in an archive: the assignment and its objective
/// vector in natural units.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ArchiveEntry {
    pub assignment: Vec<u8>,
    pub objectives: Vec<f64>,
}

/// A mutually non-dominated solution set with unique objective vectors.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParetoArchive {
    pub senses: Vec<Sense>,
    pub solutions: Vec<ArchiveEntry>,
}

impl ParetoArchive {
    pub fn empty(senses: Vec<Sense>) -> Self {
        ParetoArchive { senses, solutions: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    /// Objective vectors of all members.
    pub fn points(&self) -> Vec<&[f64]> {
        self.solutions.iter().map(|s| s.objectives.as_slice()).collect()
    }
}

/// True when `a` dominates `b`: no worse in every objective and strictly
/// better in at least one.
pub fn dominates(a: &[f64], b: &[f64], senses: &[Sense]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    debug_assert_eq!(a.len(), senses.len());
    let mut strictly_better = false;
    for ((&av, &bv), &sense) in a.iter().zip(b).zip(senses) {
        let (better, worse) = match sense {
            Sense::Minimize => (av < bv, av > bv),
            Sense::Maximize => (av > bv, av < bv),
        };
        if worse {
            return false;
        }
        if better {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Keeps the maximal mutually non-dominated subset. Entries with equal
/// objective vectors collapse to the first occurrence.
pub fn pareto_filter(entries: Vec<ArchiveEntry>, senses: Vec<Sense>) -> ParetoArchive {
    let mut unique: Vec<ArchiveEntry> = Vec::new();
    for e in entries {
        if !unique.iter().any(|u| u.objectives == e.objectives) {
            unique.push(e);
        }
    }
    let keep: Vec<bool> = (0..unique.len())
        .map(|i| {
            !unique
                .iter()
                .enumerate()
                .any(|(j, other)| j != i && dominates(&other.objectives, &unique[i].objectives, &senses))
        })
        .collect();
    let solutions =
        unique.into_iter().zip(keep).filter_map(|(e, k)| k.then_some(e)).collect();
    ParetoArchive { senses, solutions }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorError(pub String);

impl fmt::Display for IndicatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "indicator error: {}", self.0)
    }
}

impl core::error::Error for IndicatorError {}

/// Filters the concatenation of several archives into one reference front.
pub fn union_front(archives: &[&ParetoArchive]) -> Result<ParetoArchive, IndicatorError> {
    let Some(first) = archives.first() else {
        return Err(IndicatorError("cannot union zero archives".into()));
    };
    let senses = first.senses.clone();
    let mut entries = Vec::new();
    for a in archives {
        if a.senses != senses {
            return Err(IndicatorError("archives disagree on objective senses".into()));
        }
        entries.extend(a.solutions.iter().cloned());
    }
    Ok(pareto_filter(entries, senses))
}

/// Orients a value so smaller is always better.
fn to_min(v: f64, sense: Sense) -> f64 {
    match sense {
        Sense::Minimize => v,
        Sense::Maximize => -v,
    }
}

/// Hypervolume of the region the archive dominates, after normalizing every
/// dimension by the reference front's ideal and nadir; the reference point is
/// all-ones, so the result lies in `[0, 1]`. Supports 2 to 4 objectives.
pub fn hv(archive: &ParetoArchive, reference: &ParetoArchive) -> f64 {
    if archive.is_empty() || reference.is_empty() {
        return 0.0;
    }
    let senses = &archive.senses;
    let d = senses.len();
    assert!((2..=4).contains(&d), "hypervolume supports 2 to 4 objectives, got {}", d);

    let mut ideal = alloc::vec![f64::INFINITY; d];
    let mut nadir = alloc::vec![f64::NEG_INFINITY; d];
    for entry in &reference.solutions {
        for m in 0..d {
            let z = to_min(entry.objectives[m], senses[m]);
            ideal[m] = ideal[m].min(z);
            nadir[m] = nadir[m].max(z);
        }
    }

    let mut points: Vec<Vec<f64>> = Vec::new();
    'entry: for entry in &archive.solutions {
        let mut p = alloc::vec![0.0; d];
        for m in 0..d {
            let z = to_min(entry.objectives[m], senses[m]);
            let range = nadir[m] - ideal[m];
            let norm = if range > 0.0 {
                (z - ideal[m]) / range
            } else if z <= ideal[m] {
                0.0
            } else {
                1.0
            };
            if norm >= 1.0 {
                // No extent toward the reference point in this dimension.
                continue 'entry;
            }
            p[m] = norm.max(0.0);
        }
        points.push(p);
    }
    if points.is_empty() {
        return 0.0;
    }
    hv_recursive(&points)
}

/// Hypervolume of minimization points inside the unit box against the
/// all-ones reference point, by slicing along the last dimension.
fn hv_recursive(points: &[Vec<f64>]) -> f64 {
    let d = points[0].len();
    if d == 1 {
        let best = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        return (1.0 - best).max(0.0);
    }
    if d == 2 {
        let mut pts: Vec<(f64, f64)> = points.iter().map(|p| (p[0], p[1])).collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut area = 0.0;
        let mut best_y = f64::INFINITY;
        for (i, &(x, y)) in pts.iter().enumerate() {
            best_y = best_y.min(y);
            let next_x = pts.get(i + 1).map_or(1.0, |&(nx, _)| nx);
            area += (next_x - x).max(0.0) * (1.0 - best_y);
        }
        return area;
    }
    // Slice along the last dimension: between consecutive cut heights the
    // dominated cross-section is constant.
    let mut cuts: Vec<f64> = points.iter().map(|p| p[d - 1]).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut volume = 0.0;
    for (k, &z) in cuts.iter().enumerate() {
        let height = cuts.get(k + 1).copied().unwrap_or(1.0) - z;
        if height <= 0.0 {
            continue;
        }
        let slab: Vec<Vec<f64>> = points
            .iter()
            .filter(|p| p[d - 1] <= z)
            .map(|p| p[..d - 1].to_vec())
            .collect();
        if !slab.is_empty() {
            volume += height * hv_recursive(&slab);
        }
    }
    volume
}

/// Mean over reference points of the Euclidean distance to the nearest
/// archive point, in natural units. An empty archive yields infinity.
pub fn igd(archive: &ParetoArchive, reference: &ParetoArchive) -> f64 {
    assert!(!reference.is_empty(), "reference front must be nonempty");
    if archive.is_empty() {
        return f64::INFINITY;
    }
    let total: f64 = reference
        .solutions
        .iter()
        .map(|r| {
            archive
                .solutions
                .iter()
                .map(|a| euclid(&r.objectives, &a.objectives))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    total / reference.len() as f64
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    let sq: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    libm::sqrt(sq)
}

/// Population standard deviation of each member's distance to its nearest
/// neighbor, in natural units. Undefined below two members.
pub fn spacing(archive: &ParetoArchive) -> Option<f64> {
    let n = archive.len();
    if n < 2 {
        return None;
    }
    let dists: Vec<f64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| euclid(&archive.solutions[i].objectives, &archive.solutions[j].objectives))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mean = dists.iter().sum::<f64>() / n as f64;
    let var = dists.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n as f64;
    Some(libm::sqrt(var))
}

/// How many archive members appear in the reference front, by exact
/// objective-vector equality.
pub fn nop(archive: &ParetoArchive, reference: &ParetoArchive) -> usize {
    archive
        .solutions
        .iter()
        .filter(|a| reference.solutions.iter().any(|r| r.objectives == a.objectives))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn entry(objectives: Vec<f64>) -> ArchiveEntry {
        ArchiveEntry { assignment: vec![], objectives }
    }

    fn archive(points: &[&[f64]], senses: Vec<Sense>) -> ParetoArchive {
        ParetoArchive {
            senses,
            solutions: points.iter().map(|p| entry(p.to_vec())).collect(),
        }
    }

    fn min2() -> Vec<Sense> {
        vec![Sense::Minimize, Sense::Minimize]
    }

    #[test]
    fn filter_drops_dominated_and_duplicate_points() {
        let entries = vec![entry(vec![1.0, 2.0]), entry(vec![2.0, 1.0]), entry(vec![2.0, 2.0])];
        let arch = pareto_filter(entries, min2());
        assert_eq!(arch.len(), 2);
        assert_eq!(arch.solutions[0].objectives, vec![1.0, 2.0]);
        assert_eq!(arch.solutions[1].objectives, vec![2.0, 1.0]);
    }

    #[test]
    fn filter_empty_input() {
        assert!(pareto_filter(vec![], min2()).is_empty());
    }

    #[test]
    fn filter_respects_senses() {
        let entries = vec![entry(vec![1.0, 5.0]), entry(vec![1.0, 3.0])];
        let arch = pareto_filter(entries, vec![Sense::Minimize, Sense::Maximize]);
        assert_eq!(arch.len(), 1);
        assert_eq!(arch.solutions[0].objectives, vec![1.0, 5.0]);
    }

    #[test]
    fn filter_collapses_duplicates_to_first() {
        let entries = vec![
            ArchiveEntry { assignment: vec![1], objectives: vec![1.0, 1.0] },
            ArchiveEntry { assignment: vec![2], objectives: vec![1.0, 1.0] },
        ];
        let arch = pareto_filter(entries, min2());
        assert_eq!(arch.len(), 1);
        assert_eq!(arch.solutions[0].assignment, vec![1]);
    }

    #[test]
    fn filter_matches_naive_oracle_on_random_sets() {
        use rand::Rng;
        let mut rng = crate::rng::derive_rng(31, &[7]);
        let senses = vec![Sense::Minimize, Sense::Maximize, Sense::Minimize, Sense::Maximize];
        let entries: Vec<ArchiveEntry> = (0..500)
            .map(|_| entry((0..4).map(|_| rng.random_range(0.0..1.0)).collect()))
            .collect();
        let arch = pareto_filter(entries.clone(), senses.clone());
        // Naive filter: point kept iff nothing dominates it (duplicates by
        // first occurrence).
        let mut expected = Vec::new();
        for (i, e) in entries.iter().enumerate() {
            let duplicate = entries[..i].iter().any(|o| o.objectives == e.objectives);
            let dominated =
                entries.iter().any(|o| dominates(&o.objectives, &e.objectives, &senses));
            if !duplicate && !dominated {
                expected.push(e.clone());
            }
        }
        assert_eq!(arch.solutions, expected);
    }

    #[test]
    fn filter_is_idempotent() {
        use rand::Rng;
        let mut rng = crate::rng::derive_rng(37, &[1]);
        let entries: Vec<ArchiveEntry> =
            (0..100).map(|_| entry(vec![rng.random(), rng.random()])).collect();
        let once = pareto_filter(entries, min2());
        let twice = pareto_filter(once.solutions.clone(), min2());
        assert_eq!(once.solutions, twice.solutions);
    }

    #[test]
    fn union_of_archive_with_itself_is_identity() {
        let a = pareto_filter(vec![entry(vec![1.0, 2.0]), entry(vec![2.0, 1.0])], min2());
        let u = union_front(&[&a, &a]).unwrap();
        assert_eq!(u.solutions, a.solutions);
    }

    #[test]
    fn union_keeps_mutually_nondominated_points() {
        let a = archive(&[&[1.0, 2.0]], min2());
        let b = archive(&[&[2.0, 1.0]], min2());
        let u = union_front(&[&a, &b]).unwrap();
        assert_eq!(u.len(), 2);
    }

    #[test]
    fn union_rejects_mismatched_senses() {
        let a = archive(&[&[1.0, 2.0]], min2());
        let b = archive(&[&[2.0, 1.0]], vec![Sense::Minimize, Sense::Maximize]);
        assert!(union_front(&[&a, &b]).is_err());
    }

    #[test]
    fn hv_single_point_at_ideal_fills_the_box() {
        let reference = archive(&[&[0.0, 0.0], &[1.0, 5.0]], min2());
        let a = archive(&[&[0.0, 0.0]], min2());
        assert!((hv(&a, &reference) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hv_two_half_points() {
        // Points normalizing to (0, 0.5) and (0.5, 0) dominate 3/4 of the box.
        let reference = archive(&[&[0.0, 0.0], &[2.0, 0.0], &[0.0, 2.0]], min2());
        let a = archive(&[&[0.0, 1.0], &[1.0, 0.0]], min2());
        assert!((hv(&a, &reference) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn hv_at_reference_point_is_zero() {
        let reference = archive(&[&[0.0, 0.0], &[2.0, 2.0]], min2());
        let a = archive(&[&[2.0, 2.0]], min2());
        assert_eq!(hv(&a, &reference), 0.0);
    }

    #[test]
    fn hv_empty_archive_is_zero() {
        let reference = archive(&[&[0.0, 0.0]], min2());
        assert_eq!(hv(&ParetoArchive::empty(min2()), &reference), 0.0);
    }

    #[test]
    fn hv_is_monotone_under_nondominated_additions() {
        use rand::Rng;
        let mut rng = crate::rng::derive_rng(41, &[3]);
        for _ in 0..20 {
            let pts: Vec<Vec<f64>> =
                (0..12).map(|_| vec![rng.random(), rng.random(), rng.random()]).collect();
            let senses = vec![Sense::Minimize; 3];
            let reference =
                pareto_filter(pts.iter().map(|p| entry(p.clone())).collect(), senses.clone());
            if reference.len() < 2 {
                continue;
            }
            let smaller = ParetoArchive {
                senses: senses.clone(),
                solutions: reference.solutions[..reference.len() - 1].to_vec(),
            };
            assert!(hv(&reference, &reference) >= hv(&smaller, &reference) - 1e-12);
        }
    }

    /// Monte-Carlo estimate of the normalized dominated volume.
    fn hv_monte_carlo(archive: &ParetoArchive, reference: &ParetoArchive, samples: usize) -> f64 {
        use rand::Rng;
        let senses = &archive.senses;
        let d = senses.len();
        let mut ideal = vec![f64::INFINITY; d];
        let mut nadir = vec![f64::NEG_INFINITY; d];
        for e in &reference.solutions {
            for m in 0..d {
                let z = to_min(e.objectives[m], senses[m]);
                ideal[m] = ideal[m].min(z);
                nadir[m] = nadir[m].max(z);
            }
        }
        let norm_points: Vec<Vec<f64>> = archive
            .solutions
            .iter()
            .map(|e| {
                (0..d)
                    .map(|m| {
                        let z = to_min(e.objectives[m], senses[m]);
                        let range = nadir[m] - ideal[m];
                        if range > 0.0 {
                            (z - ideal[m]) / range
                        } else if z <= ideal[m] {
                            0.0
                        } else {
                            2.0
                        }
                    })
                    .collect()
            })
            .collect();
        let mut rng = crate::rng::derive_rng(97, &[d as u64]);
        let mut hits = 0usize;
        for _ in 0..samples {
            let u: Vec<f64> = (0..d).map(|_| rng.random()).collect();
            if norm_points.iter().any(|p| p.iter().zip(&u).all(|(pi, ui)| pi <= ui)) {
                hits += 1;
            }
        }
        hits as f64 / samples as f64
    }

    #[test]
    fn hv_matches_monte_carlo_in_three_dimensions() {
        use rand::Rng;
        let mut rng = crate::rng::derive_rng(43, &[0]);
        let senses = vec![Sense::Minimize, Sense::Maximize, Sense::Minimize];
        let pts: Vec<Vec<f64>> = (0..15)
            .map(|_| vec![rng.random_range(0.0..4.0), rng.random_range(0.0..4.0), rng.random_range(0.0..4.0)])
            .collect();
        let reference =
            pareto_filter(pts.iter().map(|p| entry(p.clone())).collect(), senses.clone());
        let estimate = hv_monte_carlo(&reference, &reference, 200_000);
        let exact = hv(&reference, &reference);
        assert!((exact - estimate).abs() < 5e-3, "exact {} vs MC {}", exact, estimate);
    }

    #[test]
    fn igd_of_identical_fronts_is_zero() {
        let a = archive(&[&[1.0, 2.0], &[2.0, 1.0]], min2());
        assert_eq!(igd(&a, &a), 0.0);
    }

    #[test]
    fn igd_single_distance() {
        let reference = archive(&[&[0.0, 0.0]], min2());
        let a = archive(&[&[3.0, 4.0]], min2());
        assert_eq!(igd(&a, &reference), 5.0);
    }

    #[test]
    fn igd_empty_archive_is_infinite() {
        let reference = archive(&[&[0.0, 0.0]], min2());
        assert_eq!(igd(&ParetoArchive::empty(min2()), &reference), f64::INFINITY);
    }

    #[test]
    fn igd_matches_naive_double_loop() {
        use rand::Rng;
        let mut rng = crate::rng::derive_rng(47, &[2]);
        let a = archive(
            &(0..20).map(|_| [rng.random::<f64>(), rng.random::<f64>()]).collect::<Vec<_>>()
                .iter().map(|p| p.as_slice()).collect::<Vec<_>>(),
            min2(),
        );
        let r = archive(
            &(0..30).map(|_| [rng.random::<f64>(), rng.random::<f64>()]).collect::<Vec<_>>()
                .iter().map(|p| p.as_slice()).collect::<Vec<_>>(),
            min2(),
        );
        let mut total = 0.0;
        for rp in &r.solutions {
            let mut best = f64::INFINITY;
            for ap in &a.solutions {
                let d: f64 = rp
                    .objectives
                    .iter()
                    .zip(&ap.objectives)
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum();
                best = best.min(libm::sqrt(d));
            }
            total += best;
        }
        let expected = total / r.len() as f64;
        assert!((igd(&a, &r) - expected).abs() < 1e-12);
    }

    #[test]
    fn spacing_equally_spaced_collinear_points_is_zero() {
        let a = archive(&[&[0.0, 2.0], &[1.0, 1.0], &[2.0, 0.0]], min2());
        assert!(spacing(&a).unwrap() < 1e-12);
    }

    #[test]
    fn spacing_two_points_is_zero() {
        let a = archive(&[&[0.0, 1.0], &[1.0, 0.0]], min2());
        assert_eq!(spacing(&a), Some(0.0));
    }

    #[test]
    fn spacing_singleton_is_undefined() {
        let a = archive(&[&[0.0, 1.0]], min2());
        assert_eq!(spacing(&a), None);
    }

    #[test]
    fn spacing_matches_naive_oracle() {
        use rand::Rng;
        let mut rng = crate::rng::derive_rng(53, &[4]);
        let pts: Vec<Vec<f64>> =
            (0..30).map(|_| vec![rng.random::<f64>() * 10.0, rng.random::<f64>() * 10.0]).collect();
        let a = ParetoArchive { senses: min2(), solutions: pts.iter().map(|p| entry(p.clone())).collect() };
        let mut dists = Vec::new();
        for (i, p) in pts.iter().enumerate() {
            let mut best = f64::INFINITY;
            for (j, q) in pts.iter().enumerate() {
                if i != j {
                    let d: f64 = p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum();
                    best = best.min(libm::sqrt(d));
                }
            }
            dists.push(best);
        }
        let mean = dists.iter().sum::<f64>() / dists.len() as f64;
        let var = dists.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / dists.len() as f64;
        assert!((spacing(&a).unwrap() - libm::sqrt(var)).abs() < 1e-12);
    }

    #[test]
    fn nop_counts_membership() {
        let reference = archive(&[&[1.0, 2.0], &[2.0, 1.0]], min2());
        assert_eq!(nop(&reference, &reference), 2);
        let dominated = archive(&[&[3.0, 3.0]], min2());
        assert_eq!(nop(&dominated, &reference), 0);
        let partial = archive(&[&[1.0, 2.0], &[5.0, 5.0]], min2());
        assert_eq!(nop(&partial, &reference), 1);
    }
}
