//! Segments a two-region image and scores the recovered boundary against
//! the generator's ground truth with the tolerance-based matcher.
//!
//! ```text
//! cargo run --example boundary_scoring
//! ```

use chebsurf::cluster::{kmeans_l1, paint_labels, ClusterParams};
use chebsurf::decompose::{decompose, surface_features, DecomposeParams};
use chebsurf::eval::{boundary_fscore, boundary_map, pixel_accuracy_up_to_permutation};
use chebsurf::synth::{make_synthetic, SyntheticKind};

fn main() -> chebsurf::Result<()> {
    let (image, truth) = make_synthetic(SyntheticKind::TwoRegionCurve, 64, 3)?;

    let d = decompose(&image, &DecomposeParams::new(4.0, 0.95)?)?;
    let clusters = kmeans_l1(&surface_features(&d), &ClusterParams::new(2)?.with_seed(0))?;
    let labels = paint_labels(&d, &clusters)?;

    let accuracy = pixel_accuracy_up_to_permutation(&labels, &truth)?;
    println!("pixel accuracy (best relabeling): {accuracy:.4}");

    let pred_boundary = boundary_map(&labels);
    let truth_boundary = boundary_map(&truth);
    println!(
        "boundary pixels: predicted {}, truth {}",
        pred_boundary.count(),
        truth_boundary.count()
    );
    for tolerance in [0usize, 1, 2] {
        let score = boundary_fscore(&pred_boundary, &truth_boundary, tolerance)?;
        println!(
            "tolerance {tolerance} px: precision {:.4}, recall {:.4}, F {:.4}",
            score.precision, score.recall, score.f_score
        );
    }
    Ok(())
}
