//! Boundary extraction and tolerance-based precision/recall scoring.
//!
//! This is a deliberately simple matcher: a predicted boundary pixel counts
//! as correct when any true boundary pixel lies within a Chebyshev distance
//! of `tol_px`, and symmetrically for recall. Scores from it are not
//! comparable with benchmark scores produced by gradient-based boundary
//! detectors; they exist to sanity-check segmentations at desk scale.

use serde::{Deserialize, Serialize};

use crate::cluster::LabelMap;
use crate::error::{Error, Result};

/// Boolean boundary mask, same dimensions as its source label map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMap {
    height: usize,
    width: usize,
    data: Vec<bool>,
}

impl BoundaryMap {
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.data[row * self.width + col]
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }
}

/// Precision/recall/F of a predicted boundary against a reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PRFScore {
    pub precision: f64,
    pub recall: f64,
    pub f_score: f64,
    pub matched_pred: usize,
    pub matched_truth: usize,
    pub pred_total: usize,
    pub truth_total: usize,
}

/// Marks a pixel as boundary when its right or down neighbor exists and
/// carries a different label.
pub fn boundary_map(labels: &LabelMap) -> BoundaryMap {
    let (h, w) = (labels.height(), labels.width());
    let mut data = vec![false; h * w];
    for r in 0..h {
        for c in 0..w {
            let here = labels.get(r, c);
            let right_differs = c + 1 < w && labels.get(r, c + 1) != here;
            let down_differs = r + 1 < h && labels.get(r + 1, c) != here;
            data[r * w + c] = right_differs || down_differs;
        }
    }
    BoundaryMap {
        height: h,
        width: w,
        data,
    }
}

/// Dilates a mask by a Chebyshev ball of radius `tol`.
fn dilate(map: &BoundaryMap, tol: usize) -> Vec<bool> {
    let (h, w) = (map.height, map.width);
    let mut out = vec![false; h * w];
    for r in 0..h {
        for c in 0..w {
            if !map.data[r * w + c] {
                continue;
            }
            let r_lo = r.saturating_sub(tol);
            let r_hi = (r + tol).min(h - 1);
            let c_lo = c.saturating_sub(tol);
            let c_hi = (c + tol).min(w - 1);
            for rr in r_lo..=r_hi {
                for cc in c_lo..=c_hi {
                    out[rr * w + cc] = true;
                }
            }
        }
    }
    out
}

/// Scores a predicted boundary map against a reference at a pixel tolerance.
///
/// An empty prediction scores precision 1 (vacuously correct) and an empty
/// reference scores recall 1, so two empty maps score a perfect 1/1/1.
pub fn boundary_fscore(pred: &BoundaryMap, truth: &BoundaryMap, tol_px: usize) -> Result<PRFScore> {
    if pred.height != truth.height || pred.width != truth.width {
        return Err(Error::argument(format!(
            "boundary maps differ in size: {}x{} vs {}x{}",
            pred.height, pred.width, truth.height, truth.width
        )));
    }
    let truth_zone = dilate(truth, tol_px);
    let pred_zone = dilate(pred, tol_px);

    let w = pred.width;
    let mut matched_pred = 0usize;
    let mut matched_truth = 0usize;
    for r in 0..pred.height {
        for c in 0..w {
            let i = r * w + c;
            if pred.data[i] && truth_zone[i] {
                matched_pred += 1;
            }
            if truth.data[i] && pred_zone[i] {
                matched_truth += 1;
            }
        }
    }

    let pred_total = pred.count();
    let truth_total = truth.count();
    let precision = if pred_total == 0 {
        1.0
    } else {
        matched_pred as f64 / pred_total as f64
    };
    let recall = if truth_total == 0 {
        1.0
    } else {
        matched_truth as f64 / truth_total as f64
    };
    let f_score = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Ok(PRFScore {
        precision,
        recall,
        f_score,
        matched_pred,
        matched_truth,
        pred_total,
        truth_total,
    })
}

/// Fraction of pixels whose predicted label matches the truth under the best
/// relabeling of the predicted clusters (exhaustive over permutations, so
/// keep the label count small).
pub fn pixel_accuracy_up_to_permutation(pred: &LabelMap, truth: &LabelMap) -> Result<f64> {
    if pred.height() != truth.height() || pred.width() != truth.width() {
        return Err(Error::argument("label maps differ in size"));
    }
    let k_pred = pred.max_label() as usize + 1;
    let k_truth = truth.max_label() as usize + 1;
    let k = k_pred.max(k_truth);
    if k > 8 {
        return Err(Error::argument(
            "permutation search supports at most 8 labels",
        ));
    }
    // Confusion counts, then best assignment over all permutations.
    let mut confusion = vec![vec![0usize; k]; k];
    for (p, t) in pred.labels().iter().zip(truth.labels()) {
        confusion[*p as usize][*t as usize] += 1;
    }
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best = 0usize;
    permute(&mut perm, 0, &mut |perm| {
        let hits: usize = (0..k).map(|p| confusion[p][perm[p]]).sum();
        best = best.max(hits);
    });
    Ok(best as f64 / pred.labels().len() as f64)
}

fn permute(items: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, visit);
        items.swap(start, i);
    }
}
