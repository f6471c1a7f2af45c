//! Cityblock (L1) k-means over surface features.
//!
//! Runs many independently seeded replicates and keeps the cheapest, which is
//! what makes the clustering robust against bad initializations. Under the
//! L1 metric the cost-minimizing centroid update is the component-wise
//! median, so that is what the update step computes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::numerics::FeatureMatrix;

/// Parameters for replicated L1 k-means.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterParams {
    pub k: usize,
    pub replicates: usize,
    pub max_iterations: usize,
    pub seed: u64,
}

impl ClusterParams {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::argument("cluster count k must be at least 1"));
        }
        Ok(ClusterParams {
            k,
            replicates: 100,
            max_iterations: 1000,
            seed: 0,
        })
    }

    pub fn with_replicates(mut self, replicates: usize) -> Self {
        self.replicates = replicates;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Best clustering found across all replicates.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterResult {
    /// One label in `[0, k)` per feature column.
    pub assignments: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    /// Total L1 distance of every point to its assigned centroid.
    pub cost: f64,
    pub winning_replicate: usize,
}

/// Cluster labels painted back onto the pixel grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    height: usize,
    width: usize,
    labels: Vec<u32>,
}

impl LabelMap {
    pub fn new(height: usize, width: usize, labels: Vec<u32>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::argument("label map dimensions must be positive"));
        }
        if labels.len() != height * width {
            return Err(Error::argument(format!(
                "label map needs {} entries, got {}",
                height * width,
                labels.len()
            )));
        }
        Ok(LabelMap {
            height,
            width,
            labels,
        })
    }

    pub fn filled(height: usize, width: usize, label: u32) -> Result<Self> {
        LabelMap::new(height, width, vec![label; height * width])
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.labels[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, label: u32) {
        self.labels[row * self.width + col] = label;
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn max_label(&self) -> u32 {
        self.labels.iter().copied().max().unwrap_or(0)
    }
}

pub fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut total = 0.0;
    for i in 0..a.len() {
        total += (a[i] - b[i]).abs();
    }
    total
}

/// Replicated L1 k-means.
///
/// Each replicate seeds its own RNG stream with `seed + replicate_index`, so
/// running replicates in parallel cannot change the result; among equal-cost
/// replicates the lowest index wins.
pub fn kmeans_l1(features: &FeatureMatrix, params: &ClusterParams) -> Result<ClusterResult> {
    let n = features.n_cols();
    if params.k == 0 || params.replicates == 0 || params.max_iterations == 0 {
        return Err(Error::argument(
            "k, replicates and max_iterations must all be at least 1",
        ));
    }
    if params.k > n {
        return Err(Error::argument(format!(
            "k = {} exceeds the number of points ({n})",
            params.k
        )));
    }

    let runs: Vec<(f64, Vec<usize>, Vec<Vec<f64>>)> = (0..params.replicates)
        .into_par_iter()
        .map(|rep| {
            let (assignments, centroids) = run_replicate(
                features,
                params.k,
                params.max_iterations,
                params.seed.wrapping_add(rep as u64),
            );
            let cost = total_cost(features, &assignments, &centroids);
            (cost, assignments, centroids)
        })
        .collect();

    let (winning_replicate, best) = runs
        .iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| {
            a.0.partial_cmp(&b.0)
                .expect("finite costs")
                .then(ia.cmp(ib))
        })
        .expect("at least one replicate");

    Ok(ClusterResult {
        assignments: best.1.clone(),
        centroids: best.2.clone(),
        cost: best.0,
        winning_replicate,
    })
}

/// One Lloyd-style run: assign to the L1-nearest centroid (ties pick the
/// lowest index), update centroids to component-wise medians, stop at an
/// assignment fixpoint or the iteration cap.
fn run_replicate(
    features: &FeatureMatrix,
    k: usize,
    max_iterations: usize,
    seed: u64,
) -> (Vec<usize>, Vec<Vec<f64>>) {
    let n = features.n_cols();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centroids: Vec<Vec<f64>> = rand::seq::index::sample(&mut rng, n, k)
        .into_iter()
        .map(|j| features.column(j).to_vec())
        .collect();

    let mut assignments = assign_nearest(features, &centroids);
    repair_empty_clusters(features, &mut centroids, &mut assignments, k);
    for _ in 0..max_iterations {
        update_medians(features, &assignments, &mut centroids, k);
        let mut next = assign_nearest(features, &centroids);
        repair_empty_clusters(features, &mut centroids, &mut next, k);
        if next == assignments {
            break;
        }
        assignments = next;
    }
    (assignments, centroids)
}

fn assign_nearest(features: &FeatureMatrix, centroids: &[Vec<f64>]) -> Vec<usize> {
    features
        .columns()
        .map(|col| {
            let mut best = 0usize;
            let mut best_dist = f64::INFINITY;
            for (c, centroid) in centroids.iter().enumerate() {
                let dist = l1_distance(col, centroid);
                if dist < best_dist {
                    best_dist = dist;
                    best = c;
                }
            }
            best
        })
        .collect()
}

/// Re-seeds each empty cluster at the point farthest from its assigned
/// centroid, drawn from a cluster that still holds at least two points so
/// the donor never empties in turn.
fn repair_empty_clusters(
    features: &FeatureMatrix,
    centroids: &mut [Vec<f64>],
    assignments: &mut [usize],
    k: usize,
) {
    loop {
        let mut counts = vec![0usize; k];
        for &a in assignments.iter() {
            counts[a] += 1;
        }
        let Some(empty) = counts.iter().position(|&c| c == 0) else {
            break;
        };
        let mut donor: Option<(f64, usize)> = None;
        for (p, &a) in assignments.iter().enumerate() {
            if counts[a] < 2 {
                continue;
            }
            let dist = l1_distance(features.column(p), &centroids[a]);
            if donor.is_none_or(|(best, _)| dist > best) {
                donor = Some((dist, p));
            }
        }
        let (_, p) = donor.expect("an empty cluster implies another holds at least two points");
        centroids[empty] = features.column(p).to_vec();
        assignments[p] = empty;
    }
}

fn update_medians(
    features: &FeatureMatrix,
    assignments: &[usize],
    centroids: &mut [Vec<f64>],
    k: usize,
) {
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (p, &a) in assignments.iter().enumerate() {
        members[a].push(p);
    }
    let mut values = Vec::new();
    for (c, cluster) in members.iter().enumerate() {
        if cluster.is_empty() {
            continue;
        }
        for (dim, slot) in centroids[c].iter_mut().enumerate() {
            values.clear();
            values.extend(cluster.iter().map(|&p| features.column(p)[dim]));
            values.sort_by(|a, b| a.partial_cmp(b).expect("finite features"));
            // Even counts take the lower-middle value, keeping the update
            // deterministic.
            *slot = values[(values.len() - 1) / 2];
        }
    }
}

fn total_cost(features: &FeatureMatrix, assignments: &[usize], centroids: &[Vec<f64>]) -> f64 {
    features
        .columns()
        .zip(assignments)
        .map(|(col, &a)| l1_distance(col, &centroids[a]))
        .sum()
}

/// Paints each surface's cluster label onto all of its pixels.
pub fn paint_labels(d: &Decomposition, r: &ClusterResult) -> Result<LabelMap> {
    if r.assignments.len() != d.surfaces.len() {
        return Err(Error::argument(format!(
            "{} assignments for {} surfaces",
            r.assignments.len(),
            d.surfaces.len()
        )));
    }
    let mut labels = LabelMap::filled(d.height, d.width, 0)?;
    for (surface, &label) in d.surfaces.iter().zip(&r.assignments) {
        for &(row, col) in &surface.pixel_locs {
            labels.set(row, col, label as u32);
        }
    }
    Ok(labels)
}
