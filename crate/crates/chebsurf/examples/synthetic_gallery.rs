//! Writes every synthetic test-image kind with its ground-truth labels.
//!
//! ```text
//! cargo run --example synthetic_gallery [output-dir]
//! ```

use std::path::PathBuf;

use chebsurf::image_io::{write_image, write_label_map};
use chebsurf::synth::{make_synthetic, SYNTHETIC_KINDS};

fn main() -> chebsurf::Result<()> {
    let out_dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("target/example-output/gallery"));
    std::fs::create_dir_all(&out_dir).map_err(|e| chebsurf::Error::io(out_dir.clone(), e))?;

    for kind in SYNTHETIC_KINDS {
        let (image, truth) = make_synthetic(kind, 64, 11)?;
        let regions = truth.max_label() + 1;
        write_image(&image, &out_dir.join(format!("{kind}.png")))?;
        write_label_map(&truth, &out_dir.join(format!("{kind}_truth.png")))?;
        println!("{kind:>18}: {regions} region(s)");
    }

    println!("gallery in {}", out_dir.display());
    Ok(())
}
