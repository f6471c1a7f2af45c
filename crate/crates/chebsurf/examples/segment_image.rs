//! The full pipeline as library calls: decompose into surfaces, cluster the
//! surface means with cityblock k-means, paint labels back onto pixels.
//!
//! ```text
//! cargo run --example segment_image [output-dir]
//! ```

use std::path::PathBuf;

use chebsurf::cluster::{kmeans_l1, paint_labels, ClusterParams};
use chebsurf::decompose::{decompose, surface_features, DecomposeParams};
use chebsurf::image_io::{write_image, write_label_map};
use chebsurf::synth::{make_synthetic, SyntheticKind};

fn main() -> chebsurf::Result<()> {
    let out_dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("target/example-output/segment"));
    std::fs::create_dir_all(&out_dir).map_err(|e| chebsurf::Error::io(out_dir.clone(), e))?;

    let (image, _) = make_synthetic(SyntheticKind::NoisyGradient, 64, 7)?;
    write_image(&image, &out_dir.join("input.png"))?;

    let d = decompose(&image, &DecomposeParams::new(4.0, 0.95)?)?;
    println!(
        "decomposed {} pixels into {} surfaces (reduction {:.1})",
        d.n_pixels(),
        d.surfaces.len(),
        d.reduction_factor()
    );

    // The clustering runs on one mean vector per surface, not on pixels;
    // that is where the sample-size reduction pays off.
    let features = surface_features(&d);
    for k in [2usize, 5] {
        let params = ClusterParams::new(k)?.with_seed(42);
        let clusters = kmeans_l1(&features, &params)?;
        println!(
            "k = {k}: cost {:.1}, best of {} replicates was #{}",
            clusters.cost, params.replicates, clusters.winning_replicate
        );
        let labels = paint_labels(&d, &clusters)?;
        write_label_map(&labels, &out_dir.join(format!("labels_k{k}.png")))?;
    }

    println!("artifacts in {}", out_dir.display());
    Ok(())
}
