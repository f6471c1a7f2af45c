//! The end-to-end pipeline: load, decompose, cluster, paint, write.
//!
//! Each stage's failure is tagged with the stage name so CLI users can see
//! where a run broke. Batch runs process files independently and report in
//! filename order regardless of completion order.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::BoundReport;
use crate::cluster::{kmeans_l1, paint_labels, ClusterParams};
use crate::decompose::{decompose, surface_features, DecomposeParams};
use crate::error::{Error, Result};
use crate::image_io;

/// One pipeline invocation: where to read, how to decompose and cluster,
/// and which artifacts to write.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: PathBuf,
    pub decompose: DecomposeParams,
    /// Absent means decompose-only: no clustering, no label artifacts.
    pub cluster: Option<ClusterParams>,
    pub out_labels: Option<PathBuf>,
    pub out_overlay: Option<PathBuf>,
    pub out_json: Option<PathBuf>,
    pub report_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.decompose.validate()?;
        if self.out_labels.is_none()
            && self.out_overlay.is_none()
            && self.out_json.is_none()
            && self.report_path.is_none()
        {
            return Err(Error::argument("no output requested"));
        }
        if self.out_labels.is_some() && self.cluster.is_none() {
            return Err(Error::argument("label output needs cluster parameters"));
        }
        Ok(())
    }
}

/// Wall-clock per stage, milliseconds.
#[derive(Debug, Clone, Default, Serialize)]
pub struct StageTimings {
    pub load_ms: f64,
    pub decompose_ms: f64,
    pub cluster_ms: f64,
    pub paint_ms: f64,
    pub write_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClusterSummary {
    pub k: usize,
    pub replicates: usize,
    pub max_iterations: usize,
    pub seed: u64,
    pub cost: f64,
    pub winning_replicate: usize,
}

/// Summary of one pipeline run.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub input: String,
    pub height: usize,
    pub width: usize,
    pub n_features: usize,
    pub m_pixels: usize,
    pub epsilon: f64,
    pub npar: f64,
    pub formulation: String,
    pub surface_count: usize,
    /// Pixels per surface actually achieved, `M / surface_count`.
    pub reduction_factor: f64,
    /// Theoretical quantities for this configuration; absent for images so
    /// small that the pixel count does not exceed the feature count.
    pub bounds: Option<BoundReport>,
    pub cluster: Option<ClusterSummary>,
    pub timings: StageTimings,
}

/// Runs load -> decompose -> (cluster -> paint) -> write and returns the
/// summary. The observed surface count is reported next to the theoretical
/// expectation, never asserted against it.
pub fn run_segment(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    let mut timings = StageTimings::default();

    let t0 = Instant::now();
    let image = image_io::load_image(&config.input).map_err(|e| e.in_stage("load"))?;
    timings.load_ms = ms_since(t0);

    // The low side (epsilon <= N) is warned about by the decomposer; the
    // admissible interval is open on both ends.
    if config.decompose.epsilon >= image.n_pixels() as f64 {
        log::warn!(
            "epsilon {} is at or above the pixel count {}; the admissible interval is empty",
            config.decompose.epsilon,
            image.n_pixels()
        );
    }

    let t0 = Instant::now();
    let decomposition =
        decompose(&image, &config.decompose).map_err(|e| e.in_stage("decompose"))?;
    timings.decompose_ms = ms_since(t0);

    let mut cluster_summary = None;
    let mut labels = None;
    if let Some(cluster_params) = &config.cluster {
        let t0 = Instant::now();
        let features = surface_features(&decomposition);
        let result = kmeans_l1(&features, cluster_params).map_err(|e| e.in_stage("cluster"))?;
        timings.cluster_ms = ms_since(t0);

        let t0 = Instant::now();
        let map = paint_labels(&decomposition, &result).map_err(|e| e.in_stage("paint"))?;
        timings.paint_ms = ms_since(t0);

        cluster_summary = Some(ClusterSummary {
            k: cluster_params.k,
            replicates: cluster_params.replicates,
            max_iterations: cluster_params.max_iterations,
            seed: cluster_params.seed,
            cost: result.cost,
            winning_replicate: result.winning_replicate,
        });
        labels = Some(map);
    }

    let t0 = Instant::now();
    if let Some(path) = &config.out_labels {
        let map = labels
            .as_ref()
            .expect("validate() ensured cluster params accompany label output");
        image_io::write_label_map(map, path).map_err(|e| e.in_stage("write"))?;
    }
    if let Some(path) = &config.out_overlay {
        image_io::write_surface_overlay(&decomposition, path).map_err(|e| e.in_stage("write"))?;
    }
    if let Some(path) = &config.out_json {
        image_io::export_decomposition(&decomposition, path).map_err(|e| e.in_stage("write"))?;
    }
    timings.write_ms = ms_since(t0);

    let m_pixels = image.n_pixels();
    let bounds = if m_pixels > image.n_features() {
        Some(BoundReport::new(
            image.n_features(),
            m_pixels,
            Some(config.decompose.epsilon),
        )?)
    } else {
        None
    };

    let report = RunReport {
        input: config.input.display().to_string(),
        height: image.height(),
        width: image.width(),
        n_features: image.n_features(),
        m_pixels,
        epsilon: config.decompose.epsilon,
        npar: config.decompose.npar,
        formulation: config.decompose.formulation.to_string(),
        surface_count: decomposition.surfaces.len(),
        reduction_factor: decomposition.reduction_factor(),
        bounds,
        cluster: cluster_summary,
        timings,
    };

    if let Some(path) = &config.report_path {
        let text = serde_json::to_string_pretty(&report)
            .map_err(|e| Error::Invariant(format!("report serialization failed: {e}")))?;
        std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e).in_stage("write"))?;
    }

    Ok(report)
}

fn ms_since(t0: Instant) -> f64 {
    t0.elapsed().as_secs_f64() * 1e3
}

/// Outcome of one file in a batch run.
#[derive(Debug)]
pub struct BatchEntry {
    pub input: PathBuf,
    pub outcome: Result<RunReport>,
}

/// Runs the pipeline over every PNG/PPM/PGM in a directory, concurrently but
/// with per-file isolation: one failure does not stop the rest. Entries come
/// back sorted by filename.
pub fn run_batch(
    input_dir: &Path,
    out_dir: &Path,
    decompose_params: &DecomposeParams,
    cluster_params: &ClusterParams,
    write_overlay: bool,
) -> Result<Vec<BatchEntry>> {
    let mut inputs: Vec<PathBuf> = std::fs::read_dir(input_dir)
        .map_err(|e| Error::io(input_dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension()
                .and_then(|e| e.to_str())
                .map(|e| matches!(e.to_ascii_lowercase().as_str(), "png" | "ppm" | "pgm"))
                .unwrap_or(false)
        })
        .collect();
    inputs.sort();
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;

    let entries: Vec<BatchEntry> = inputs
        .into_par_iter()
        .map(|input| {
            let stem = input
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("image")
                .to_string();
            let config = RunConfig {
                input: input.clone(),
                decompose: decompose_params.clone(),
                cluster: Some(cluster_params.clone()),
                out_labels: Some(out_dir.join(format!("{stem}_labels.png"))),
                out_overlay: write_overlay.then(|| out_dir.join(format!("{stem}_overlay.png"))),
                out_json: None,
                report_path: Some(out_dir.join(format!("{stem}_report.json"))),
            };
            BatchEntry {
                input,
                outcome: run_segment(&config),
            }
        })
        .collect();
    Ok(entries)
}
